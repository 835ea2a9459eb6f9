#ifndef VLP_REPORT_HPP
#define VLP_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace vlp {

/// Everything a run needs for exact replay; every emitted file embeds it.
struct RunConfig {
    std::uint64_t seed = 42;
    int n_paths = 8;
    int n_steps = 4096;
    double a = 1.5;
    double t_upper = 3.0;
    std::vector<double> x_list;                        // empty: 1..50 step 1
    std::vector<double> eps_list = {0.2, 0.1, 0.05, 0.02};
    std::vector<int> p_list = {1, 2, 3, 4};
    std::string out_dir = ".";
    std::string format = "csv";

    void validate() const;
    std::vector<double> figure_x_list() const;
    std::string to_json_string() const;
    static RunConfig from_json_string(const std::string& text);
};

/// Locale-independent shortest-round-trip formatting used in every file.
std::string format_double(double v);

/// Tabular artifact writer: CSV with a one-line JSON header comment, or a
/// single JSON document, depending on the config format.
class ReportWriter {
public:
    ReportWriter(std::string path, const RunConfig& cfg, std::vector<std::string> columns,
                 std::vector<std::pair<std::string, double>> extras = {});

    void row(const std::vector<double>& values);
    /// Flushes and closes; called by the destructor when not invoked.
    void close();
    ~ReportWriter();

    ReportWriter(const ReportWriter&) = delete;
    ReportWriter& operator=(const ReportWriter&) = delete;

private:
    std::string path_;
    bool json_ = false;
    bool closed_ = false;
    std::vector<std::string> columns_;
    std::string buffer_;
    std::size_t n_rows_ = 0;
};

/// Reads back the JSON header comment of an emitted CSV file.
RunConfig read_embedded_config(const std::string& path);

} // namespace vlp

#endif
