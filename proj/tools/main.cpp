#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "vlp/experiments.hpp"

namespace {

void add_common_options(CLI::App* cmd, vlp::RunConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "master seed")->envname("VLP_SEED");
    cmd->add_option("--paths", cfg.n_paths, "ensemble size")->envname("VLP_PATHS");
    cmd->add_option("--steps", cfg.n_steps, "grid steps on [0, T]")->envname("VLP_STEPS");
    cmd->add_option("--a", cfg.a, "bridge start (T > a > 1)")->envname("VLP_A");
    cmd->add_option("--T", cfg.t_upper, "bridge end")->envname("VLP_T");
    cmd->add_option("--x", cfg.x_list, "x values (default 1..50)")->envname("VLP_X");
    cmd->add_option("--eps", cfg.eps_list, "noise levels")->envname("VLP_EPS");
    cmd->add_option("--p", cfg.p_list, "Lp exponents")->envname("VLP_P");
    cmd->add_option("--out", cfg.out_dir, "output directory")->envname("VLP_OUT");
    cmd->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("VLP_FORMAT");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vlp: vector-lattice Lp spaces, moment operators and bridge experiments"};
    app.require_subcommand(1);

    vlp::RunConfig cfg;
    std::string suite = "all";
    bool inject_tamper = false;

    auto* figures = app.add_subcommand("figures", "emit the f^2 trajectories and Phi surface");
    add_common_options(figures, cfg);

    auto* verify = app.add_subcommand("verify", "run a verification suite and gate on it");
    add_common_options(verify, cfg);
    verify->add_option("--suite", suite, "inequalities | lp | convergence | stochastic | all")
        ->check(CLI::IsMember({"inequalities", "lp", "convergence", "stochastic", "all"}))
        ->envname("VLP_SUITE");
    verify->add_flag("--inject-tamper", inject_tamper,
                     "corrupt a certificate first (negative control)")
        ->group("");

    auto* recover = app.add_subcommand("recover", "signal recovery from bridge noise");
    add_common_options(recover, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (figures->parsed()) {
            vlp::write_figures(cfg);
            std::printf("wrote %s, %s, %s\n", vlp::artifact_path(cfg, "figure1").c_str(),
                        vlp::artifact_path(cfg, "figure2").c_str(),
                        vlp::artifact_path(cfg, "section").c_str());
            return 0;
        }
        if (verify->parsed()) {
            auto report = vlp::verify_suite(cfg, suite, inject_tamper);
            std::fputs(report.text().c_str(), stdout);
            std::printf("%s: %zu checks, %s\n", suite.c_str(), report.lines.size(),
                        report.all_pass() ? "all passed" : "FAILURES PRESENT");
            return report.all_pass() ? 0 : 1;
        }
        if (recover->parsed()) {
            auto summary = vlp::write_recovery(cfg);
            for (const auto& row : summary) {
                std::printf("eps=%s sup_error=%s\n", vlp::format_double(row.eps).c_str(),
                            vlp::format_double(row.sup_error).c_str());
            }
            std::printf("wrote %s, %s\n", vlp::artifact_path(cfg, "recovery").c_str(),
                        vlp::artifact_path(cfg, "recovery_summary").c_str());
            return 0;
        }
    } catch (const vlp::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
