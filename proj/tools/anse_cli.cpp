#include "anse/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using anse::ExitCode;

int code(ExitCode c)
{
    return static_cast<int>(c);
}

void print_run(const anse::RunSummary& s)
{
    const auto& acc = s.ledger.audit;
    std::cout << "status=" << s.status << " t=" << s.t_final << " steps=" << s.ledger.step
              << " theta_max=" << acc.theta_max << " psi_max=" << acc.psi_max
              << " C0=" << acc.c0 << " C1=" << acc.c1 << '\n';
    if (!s.message.empty()) {
        std::cout << s.message << '\n';
    }
    std::cout << "csv: " << s.csv_path.string() << "\ncheckpoint: " << s.final_checkpoint.string()
              << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Anisotropic rescaled Navier-Stokes harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
    app.add_option("-c,--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
    app.add_option("-o,--output-dir", output_dir, "Overrides outputs.directory");
    app.add_option("--seed", seed, "Overrides init.seed");
    app.add_flag("-q,--quiet", quiet, "No progress lines on stderr");

    auto* run = app.add_subcommand("run-rns", "Integrate the rescaled system with the monitor");
    auto* toy = app.add_subcommand("run-toy", "Run the scalar toy model");

    auto* lp = app.add_subcommand("verify-lp", "Numerical checks of the Littlewood-Paley toolkit");
    std::string baseline;
    std::string write_baseline;
    lp->add_option("--baseline", baseline, "Envelope JSON to compare against (within 2x)")
        ->check(CLI::ExistingFile);
    lp->add_option("--write-baseline", write_baseline, "Store this run's report as a baseline");

    auto* sw = app.add_subcommand("sweep", "One run-rns per parameter value, in parallel");
    std::string param;
    std::vector<double> values;
    sw->add_option("--param", param, "eps, eta, lambda, a, s, dt, n or a dotted numeric key")
        ->required();
    sw->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');

    auto* res = app.add_subcommand("resume", "Continue run-rns from a checkpoint");
    std::string checkpoint;
    res->add_option("--checkpoint", checkpoint, "Checkpoint file (with its .audit sidecar)")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(ExitCode::usage);
    }

    try {
        anse::RunConfig cfg = config_path.empty() ? anse::RunConfig{} : anse::load_config(config_path);
        if (!output_dir.empty()) {
            cfg.outputs.directory = output_dir;
        }
        if (seed) {
            cfg.init.seed = *seed;
        }
        if (!baseline.empty()) {
            cfg.lp.baseline = baseline;
        }
        std::ostream* log = quiet ? nullptr : &std::cerr;

        if (*run) {
            const auto s = anse::run_rns(cfg, log);
            print_run(s);
            return code(s.exit_code);
        }
        if (*res) {
            const auto s = anse::resume_rns(cfg, checkpoint, log);
            print_run(s);
            return code(s.exit_code);
        }
        if (*toy) {
            const auto s = anse::run_toy(cfg);
            std::cout << "C_quad=" << s.cquad << " lambda=" << s.lambda
                      << " theta_final=" << s.result.final_theta
                      << " radius_exhausted=" << s.result.radius_exhausted << '\n';
            return code(s.exit_code);
        }
        if (*lp) {
            const auto s = anse::verify_lp(cfg);
            std::cout << s.report_json;
            if (!write_baseline.empty()) {
                std::ofstream(write_baseline, std::ios::binary) << s.report_json;
            }
            return code(s.exit_code);
        }
        if (*sw) {
            const auto rows = anse::sweep(cfg, param, values);
            int worst = 0;
            std::optional<double> smallest_dominating;
            for (const auto& r : rows) {
                std::cout << param << '=' << r.value << ' ';
                print_run(r.summary);
                worst = std::max(worst, code(r.summary.exit_code));
                if (r.summary.ledger.smoothing_dominated &&
                    (!smallest_dominating || r.value < *smallest_dominating)) {
                    smallest_dominating = r.value;
                }
            }
            if (param == "lambda" || param == "analytic.lambda") {
                if (smallest_dominating) {
                    std::cout << "smallest lambda with smoothing dominating: " << *smallest_dominating
                              << '\n';
                } else {
                    std::cout << "smoothing did not dominate for any lambda\n";
                }
            }
            return worst;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return code(ExitCode::usage);
    }
    return code(ExitCode::usage);
}
