#pragma once

#include "anse/analyticity_monitor.hpp"
#include "anse/run_config.hpp"
#include "anse/toy_model.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace anse {

enum class ExitCode : int {
    success = 0,
    usage = 1,
    continuation_violated = 2,
    radius_exhausted = 3,
    blow_up = 4,
};

inline constexpr const char* kMonitorCsvHeader =
    "t,theta,theta_dot,psi,radius,continuation_ok,prop31_fit_C0,prop32_fit_C1,E_weighted,"
    "dissipation,div_max,zero_h_mode_energy";
inline constexpr const char* kToyCsvHeader = "t,theta,x_norm_weighted,radius,bound_rhs";

/// ||e^{a|D3|} v0||_{H^{0,s}} + ||e^{a|D3|} v0||_{H^{-1/2,s}}.
double initial_data_norm(const VelocityState& v0, const AnalyticParams& params);

/// Seeded initial velocity per cfg.init; throws std::invalid_argument for
/// malformed mode lists, non-solenoidal modes, or a zero random sample.
VelocityState make_initial_data(const RunConfig& cfg);

/// Run bookkeeping beyond the checkpoint, persisted next to each checkpoint
/// as "<checkpoint>.audit" so a resumed run continues bit for bit.
struct RunLedger {
    long step = 0;
    double psi_integral = 0.0;
    AuditAccumulators audit;
    double initial_energy = 0.0;
    bool smoothing_dominated = true;
    double min_radius = 0.0;
    double max_divergence = 0.0;
    double max_hermitian_drift = 0.0;
};

void save_ledger(const std::filesystem::path& path, const RunLedger& ledger);
RunLedger load_ledger(const std::filesystem::path& path);

struct RunSummary {
    ExitCode exit_code = ExitCode::success;
    std::string status;
    std::string message;
    double t_final = 0.0;
    AnalyticityState monitor;
    RunLedger ledger;
    std::filesystem::path csv_path;
    std::filesystem::path final_checkpoint;
};

/// Integrates the rescaled system with the monitor and audit, writing
/// monitor.csv, checkpoints and report.json under cfg.outputs.directory.
/// Configuration errors (including CFL) throw std::invalid_argument.
RunSummary run_rns(const RunConfig& cfg, std::ostream* log = nullptr);

/// Continues from a checkpoint and its ledger up to cfg.time.t_end. The
/// CSV gets the rows after the checkpoint step.
RunSummary resume_rns(const RunConfig& cfg, const std::filesystem::path& checkpoint,
                      std::ostream* log = nullptr);

struct ToySummary {
    ExitCode exit_code = ExitCode::success;
    double cquad = 0.0;
    double lambda = 0.0;
    ToyRunResult result;
};

/// Measures C_quad, sets lambda = 4 C_quad unless configured, runs the toy
/// model and writes toy.csv and toy_report.json.
ToySummary run_toy(const RunConfig& cfg);

struct LpSummary {
    ExitCode exit_code = ExitCode::success;
    std::string report_json;
    bool bernstein_stable = false;
    double measured_k = 0.0;
    bool baseline_checked = false;
    double baseline_worst_ratio = 1.0; ///< max over entries of max(r, 1/r)
};

/// Partition residuals, Bernstein envelopes, product-law envelope and
/// norm-equivalence K on the configured grid; writes lp_report.json and
/// lp_trials.jsonl. Exit code 2 when a check fails.
LpSummary verify_lp(const RunConfig& cfg);

/// max over shared envelope entries of max(r, 1/r) between two lp reports.
double compare_lp_envelopes(const std::string& report_json, const std::string& baseline_json);

struct SweepRow {
    std::string parameter;
    double value = 0.0;
    RunSummary summary;
};

/// One run_rns per value, in parallel, each under <directory>/sweep_<i>;
/// writes sweep.csv. Throws std::invalid_argument for an unknown parameter.
std::vector<SweepRow> sweep(const RunConfig& cfg, const std::string& parameter,
                            const std::vector<double>& values);

} // namespace anse
