#include "vlp/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "vlp/lattice.hpp"

namespace vlp {

using nlohmann::json;

void RunConfig::validate() const {
    if (!(t_upper > a && a > 1.0)) throw domain_error("RunConfig: needs T > a > 1");
    if (n_paths < 1 || n_steps < 1) throw domain_error("RunConfig: counts must be positive");
    for (double e : eps_list) {
        if (!(e > 0.0)) throw domain_error("RunConfig: eps values must be positive");
    }
    for (int p : p_list) {
        if (p < 1) throw domain_error("RunConfig: p values must be >= 1");
    }
    if (format != "csv" && format != "json") {
        throw domain_error("RunConfig: format must be csv or json");
    }
}

std::vector<double> RunConfig::figure_x_list() const {
    if (!x_list.empty()) return x_list;
    std::vector<double> xs;
    for (int x = 1; x <= 50; ++x) xs.push_back(static_cast<double>(x));
    return xs;
}

namespace {

json config_to_json(const RunConfig& c) {
    return json{{"seed", c.seed},         {"n_paths", c.n_paths}, {"n_steps", c.n_steps},
                {"a", c.a},               {"T", c.t_upper},       {"x_list", c.x_list},
                {"eps_list", c.eps_list}, {"p_list", c.p_list},   {"out_dir", c.out_dir},
                {"format", c.format}};
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.seed = j.at("seed").get<std::uint64_t>();
    c.n_paths = j.at("n_paths").get<int>();
    c.n_steps = j.at("n_steps").get<int>();
    c.a = j.at("a").get<double>();
    c.t_upper = j.at("T").get<double>();
    c.x_list = j.at("x_list").get<std::vector<double>>();
    c.eps_list = j.at("eps_list").get<std::vector<double>>();
    c.p_list = j.at("p_list").get<std::vector<int>>();
    c.out_dir = j.at("out_dir").get<std::string>();
    c.format = j.at("format").get<std::string>();
    return c;
}

} // namespace

std::string RunConfig::to_json_string() const { return config_to_json(*this).dump(); }

RunConfig RunConfig::from_json_string(const std::string& text) {
    return config_from_json(json::parse(text));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

ReportWriter::ReportWriter(std::string path, const RunConfig& cfg,
                           std::vector<std::string> columns,
                           std::vector<std::pair<std::string, double>> extras)
    : path_(std::move(path)), json_(cfg.format == "json"), columns_(std::move(columns)) {
    json header{{"config", config_to_json(cfg)}};
    for (const auto& [key, value] : extras) header[key] = value;
    if (json_) {
        buffer_ = header.dump();
        buffer_.pop_back(); // strip the closing brace, rows are appended
        buffer_ += ",\"columns\":[";
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) buffer_ += ',';
            buffer_ += '"' + columns_[i] + '"';
        }
        buffer_ += "],\"rows\":[";
    } else {
        buffer_ = "# " + header.dump() + "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) buffer_ += ',';
            buffer_ += columns_[i];
        }
        buffer_ += '\n';
    }
}

void ReportWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) {
        throw domain_error("ReportWriter: row width differs from the declared columns");
    }
    if (json_) {
        buffer_ += n_rows_ ? ",[" : "[";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) buffer_ += ',';
            buffer_ += format_double(values[i]);
        }
        buffer_ += ']';
    } else {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) buffer_ += ',';
            buffer_ += format_double(values[i]);
        }
        buffer_ += '\n';
    }
    ++n_rows_;
}

void ReportWriter::close() {
    if (closed_) return;
    closed_ = true;
    if (json_) buffer_ += "]}";
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw domain_error("ReportWriter: cannot write " + path_);
    out << buffer_;
}

ReportWriter::~ReportWriter() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; an explicit close() reports the error
    }
}

RunConfig read_embedded_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("read_embedded_config: cannot open " + path);
    std::string first;
    std::getline(in, first);
    json j;
    if (first.rfind("# ", 0) == 0) {
        j = json::parse(first.substr(2));
    } else {
        // JSON artifact: the whole file is one document.
        std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        j = json::parse(first + rest);
    }
    return config_from_json(j.at("config"));
}

} // namespace vlp
