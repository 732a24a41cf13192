#include "anse/harness.hpp"

#include "anse/checkpoint.hpp"
#include "anse/lp_verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace anse {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string bits(double x)
{
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(x)));
    return buf;
}

double from_bits(const json& j)
{
    return std::bit_cast<double>(
        static_cast<std::uint64_t>(std::stoull(j.get<std::string>(), nullptr, 16)));
}

// Finite JSON number, or null for inf/nan.
json number(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

double velocity_neg_half(const VelocityState& v, const AnalyticParams& p)
{
    double sum = 0.0;
    for (const auto& f : v.v) {
        sum += aniso_norm_sq(f, {-0.5, p.s}, p.a);
    }
    return sum;
}

void rescale(VelocityState& v, double factor)
{
    for (auto& f : v.v) {
        f *= factor;
    }
}

VelocityState modes_data(const RunConfig& cfg, const Grid& grid)
{
    VelocityState v(grid, cfg.physics.eps);
    std::istringstream entries(cfg.init.modes);
    std::string entry;
    while (std::getline(entries, entry, ';')) {
        if (entry.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        std::istringstream is(entry);
        ModeIndex k;
        std::array<double, 6> c{};
        is >> k.k1 >> k.k2 >> k.k3;
        for (auto& x : c) {
            is >> x;
        }
        if (!is || !(is >> std::ws).eof()) {
            throw std::invalid_argument("init.modes: expected 'k1 k2 k3 re1 im1 re2 im2 re3 im3', got '" +
                                        entry + "'");
        }
        if (!grid.contains(k) || !grid.in_dealias_band(k)) {
            throw std::invalid_argument("init.modes: mode outside the dealias band");
        }
        if (k.k1 == 0 && k.k2 == 0 && k.k3 == 0) {
            throw std::invalid_argument("init.modes: the mean mode is not allowed");
        }
        const ModeIndex neg{-k.k1, -k.k2, -k.k3};
        for (int i = 0; i < 3; ++i) {
            const Complex z(c[2 * i], c[2 * i + 1]);
            v.v[i].at(k) += z;
            v.v[i].at(neg) += std::conj(z);
        }
    }
    if (relative_divergence(v) > 1e-12) {
        throw std::invalid_argument("init.modes: field is not divergence-free");
    }
    return v;
}

VelocityState random_analytic_data(const RunConfig& cfg, const Grid& grid)
{
    std::mt19937_64 rng(cfg.init.seed);
    RandomFieldOptions opts;
    const double a = cfg.analytic.a;
    const double m = cfg.init.envelope_power;
    opts.envelope = [a, m](const Wavevector& xi) {
        const double r2 = xi.x1 * xi.x1 + xi.x2 * xi.x2 + xi.x3 * xi.x3;
        return std::exp(-2.0 * a * std::abs(xi.x3)) * std::pow(1.0 + r2, -m);
    };
    opts.dealias_band = true;
    opts.drop_zero_horizontal = true;
    VelocityState v(grid, cfg.physics.eps);
    for (auto& f : v.v) {
        f = random_field(grid, rng, opts);
    }
    leray_project(v);
    return v;
}

struct RunContext {
    VelocityState v;
    AnalyticityState monitor;
    BootstrapAudit audit;
    RunLedger ledger;
};

std::string csv_row(const VelocityState& v, const AnalyticityState& mon, const AuditReport& r)
{
    std::ostringstream os;
    os << fmt(v.t) << ',' << fmt(mon.theta) << ',' << fmt(mon.theta_dot) << ',' << fmt(mon.psi)
       << ',' << fmt(mon.radius()) << ',' << (r.continuation_ok ? 1 : 0) << ','
       << fmt(r.prop31_fit_c0) << ',' << fmt(r.prop32_fit_c1) << ',' << fmt(weighted_energy(v))
       << ',' << fmt(dissipation_rate(v)) << ',' << fmt(relative_divergence(v)) << ','
       << fmt(r.zero_h_mode_energy) << '\n';
    return os.str();
}

fs::path checkpoint_path(const fs::path& dir, long step)
{
    char name[32];
    std::snprintf(name, sizeof name, "step_%08ld.anse", step);
    return dir / "checkpoints" / name;
}

void persist(const fs::path& path, const RunContext& ctx)
{
    const CheckpointScalars sc{ctx.monitor.params.a, ctx.monitor.params.lambda,
                               ctx.monitor.params.s, ctx.monitor.theta, ctx.monitor.psi};
    save_checkpoint(path, ctx.v, sc);
    RunLedger ledger = ctx.ledger;
    ledger.psi_integral = ctx.monitor.psi_integral;
    ledger.audit = ctx.audit.accumulators();
    save_ledger(fs::path(path.string() + ".audit"), ledger);
}

json smallness_conditions(const AuditAccumulators& acc, const AnalyticParams& p)
{
    const double eta2 = p.eta * p.eta;
    return {{"exp_2C0_eta2_below_2", std::exp(2.0 * acc.c0 * eta2) < 2.0},
            {"exp_2C1_eta2_below_2", std::exp(2.0 * acc.c1 * eta2) < 2.0},
            {"four_C0_eta2_below_half", 4.0 * acc.c0 * eta2 < 0.5},
            {"four_eta2_within_a_over_lambda", 4.0 * eta2 <= p.a / p.lambda}};
}

void write_report(const fs::path& dir, const RunConfig& cfg, const RunSummary& s)
{
    const auto& acc = s.ledger.audit;
    const double eta2 = cfg.analytic.eta * cfg.analytic.eta;
    json j;
    j["status"] = s.status;
    j["exit_code"] = static_cast<int>(s.exit_code);
    j["message"] = s.message;
    j["t_final"] = s.t_final;
    j["steps"] = s.ledger.step;
    j["theta_final"] = number(s.monitor.theta);
    j["psi_final"] = number(s.monitor.psi);
    j["theta_max"] = number(acc.theta_max);
    j["psi_max"] = number(acc.psi_max);
    j["theta_bound"] = 4.0 * eta2;
    j["psi_bound"] = 2.0 * eta2;
    j["continuation_held"] = acc.continuation_held;
    j["prop31_fit_C0"] = number(acc.c0);
    j["prop32_fit_C1"] = number(acc.c1);
    j["smallness_conditions"] = smallness_conditions(acc, cfg.analytic);
    j["smoothing_dominated"] = s.ledger.smoothing_dominated;
    j["min_radius"] = number(s.ledger.min_radius);
    j["max_divergence"] = number(s.ledger.max_divergence);
    j["max_hermitian_drift"] = number(s.ledger.max_hermitian_drift);
    j["initial_energy"] = number(s.ledger.initial_energy);
    j["config"] = to_ini(cfg);
    write_text(dir / "report.json", j.dump(2) + "\n");
}

RunSummary drive(const RunConfig& cfg, RunContext ctx, bool write_initial_row, std::ostream* log)
{
    const fs::path dir = cfg.outputs.directory;
    fs::create_directories(dir / "checkpoints");
    const SolverConfig solver = cfg.solver();
    const RnsOptions opts = cfg.rns_options();
    check_solver_config(ctx.v, solver, opts);

    RunSummary summary;
    summary.csv_path = dir / "monitor.csv";
    std::ofstream csv(summary.csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) {
        throw std::runtime_error("cannot write " + summary.csv_path.string());
    }
    csv << kMonitorCsvHeader << '\n';

    const auto sample = [&] {
        const AuditReport r = ctx.audit.report(ctx.v, ctx.monitor);
        csv << csv_row(ctx.v, ctx.monitor, r);
        if (!ctx.monitor.exhausted()) {
            const SmoothingBalance b = smoothing_balance(ctx.v, ctx.monitor, opts);
            ctx.ledger.smoothing_dominated = ctx.ledger.smoothing_dominated && b.dominates();
        }
        if (log) {
            *log << "t=" << ctx.v.t << " theta=" << ctx.monitor.theta << " psi=" << ctx.monitor.psi
                 << " radius=" << ctx.monitor.radius() << '\n';
        }
    };
    if (write_initial_row) {
        sample();
    }

    const long total = std::lround(cfg.time.t_end / cfg.time.dt);
    summary.exit_code = ExitCode::success;
    summary.status = "completed";
    while (ctx.ledger.step < total) {
        VelocityState next = [&] {
            try {
                return step(ctx.v, solver, opts);
            } catch (const NumericalBlowUp& e) {
                summary.exit_code = ExitCode::blow_up;
                summary.status = "blow_up";
                summary.message = e.what();
                return ctx.v;
            }
        }();
        if (summary.exit_code == ExitCode::blow_up) {
            break;
        }
        const AnalyticityState mon = advance_monitor(ctx.monitor, ctx.v, next, solver.dt);
        ctx.audit.record(ctx.monitor, mon, solver.dt);
        ctx.v = std::move(next);
        ctx.monitor = mon;
        ++ctx.ledger.step;
        ctx.ledger.min_radius = std::min(ctx.ledger.min_radius, mon.radius());
        ctx.ledger.max_divergence = std::max(ctx.ledger.max_divergence, relative_divergence(ctx.v));
        ctx.ledger.max_hermitian_drift =
            std::max(ctx.ledger.max_hermitian_drift, hermitian_drift(ctx.v));

        const bool exhausted = mon.exhausted();
        const double energy = weighted_energy(ctx.v);
        const bool runaway = energy > 10.0 * ctx.ledger.initial_energy;
        const long n = ctx.ledger.step;
        if (n % cfg.time.sample_every == 0 || n == total || exhausted || runaway) {
            sample();
        }
        if (cfg.outputs.checkpoint_every > 0 && n % cfg.outputs.checkpoint_every == 0) {
            persist(checkpoint_path(dir, n), ctx);
        }
        if (exhausted) {
            summary.exit_code = ExitCode::radius_exhausted;
            summary.status = "radius_exhausted";
            summary.message = "a - lambda theta < 0 at t = " + fmt(ctx.v.t);
            break;
        }
        if (runaway) {
            summary.exit_code = ExitCode::blow_up;
            summary.status = "blow_up";
            summary.message = "weighted energy exceeded 10 E(0) at t = " + fmt(ctx.v.t);
            break;
        }
    }
    if (summary.exit_code == ExitCode::success && !ctx.audit.accumulators().continuation_held) {
        summary.exit_code = ExitCode::continuation_violated;
        summary.status = "continuation_violated";
        summary.message = "theta <= 4 eta^2 or Psi <= 2 eta^2 failed during the run";
    }
    csv.close();

    summary.final_checkpoint = dir / "final.anse";
    persist(summary.final_checkpoint, ctx);
    summary.t_final = ctx.v.t;
    summary.monitor = ctx.monitor;
    summary.ledger = ctx.ledger;
    summary.ledger.psi_integral = ctx.monitor.psi_integral;
    summary.ledger.audit = ctx.audit.accumulators();
    write_report(dir, cfg, summary);
    return summary;
}

} // namespace

double initial_data_norm(const VelocityState& v0, const AnalyticParams& params)
{
    return std::sqrt(weighted_energy_hs(v0, params.a, params.s)) +
           std::sqrt(velocity_neg_half(v0, params));
}

VelocityState make_initial_data(const RunConfig& cfg)
{
    cfg.validate();
    const Grid grid = cfg.make_grid();
    VelocityState v(grid, cfg.physics.eps);
    double target = cfg.init.target_norm;
    switch (cfg.init.type) {
    case InitType::random_analytic:
        v = random_analytic_data(cfg, grid);
        if (target == 0.0) {
            target = cfg.analytic.eta;
        }
        break;
    case InitType::modes:
        v = modes_data(cfg, grid);
        break;
    case InitType::file: {
        Checkpoint c = load_checkpoint(cfg.init.file);
        if (!(c.state.grid() == grid)) {
            throw std::invalid_argument("init.file: grid differs from the configured grid");
        }
        v = std::move(c.state);
        v.t = 0.0;
        v.eps = cfg.physics.eps;
        break;
    }
    }
    if (target > 0.0) {
        const double norm = initial_data_norm(v, cfg.analytic);
        if (norm == 0.0) {
            throw std::invalid_argument("initial data: zero field cannot be rescaled");
        }
        rescale(v, target / norm);
    }
    return v;
}

void save_ledger(const fs::path& path, const RunLedger& l)
{
    const auto& a = l.audit;
    json j;
    j["version"] = 1;
    j["step"] = l.step;
    j["psi_integral"] = bits(l.psi_integral);
    j["data_neg_half"] = bits(a.data_neg_half);
    j["data_zero"] = bits(a.data_zero);
    j["theta_psi_integral"] = bits(a.theta_psi_integral);
    j["c0"] = bits(a.c0);
    j["c1"] = bits(a.c1);
    j["continuation_held"] = a.continuation_held;
    j["theta_max"] = bits(a.theta_max);
    j["psi_max"] = bits(a.psi_max);
    j["initial_energy"] = bits(l.initial_energy);
    j["smoothing_dominated"] = l.smoothing_dominated;
    j["min_radius"] = bits(l.min_radius);
    j["max_divergence"] = bits(l.max_divergence);
    j["max_hermitian_drift"] = bits(l.max_hermitian_drift);
    write_text(path, j.dump(2) + "\n");
}

RunLedger load_ledger(const fs::path& path)
{
    json j;
    try {
        j = json::parse(read_text(path));
        RunLedger l;
        l.step = j.at("step").get<long>();
        l.psi_integral = from_bits(j.at("psi_integral"));
        l.audit.data_neg_half = from_bits(j.at("data_neg_half"));
        l.audit.data_zero = from_bits(j.at("data_zero"));
        l.audit.theta_psi_integral = from_bits(j.at("theta_psi_integral"));
        l.audit.c0 = from_bits(j.at("c0"));
        l.audit.c1 = from_bits(j.at("c1"));
        l.audit.continuation_held = j.at("continuation_held").get<bool>();
        l.audit.theta_max = from_bits(j.at("theta_max"));
        l.audit.psi_max = from_bits(j.at("psi_max"));
        l.initial_energy = from_bits(j.at("initial_energy"));
        l.smoothing_dominated = j.at("smoothing_dominated").get<bool>();
        l.min_radius = from_bits(j.at("min_radius"));
        l.max_divergence = from_bits(j.at("max_divergence"));
        l.max_hermitian_drift = from_bits(j.at("max_hermitian_drift"));
        return l;
    } catch (const json::exception& e) {
        throw std::invalid_argument("run ledger " + path.string() + ": " + e.what());
    }
}

RunSummary run_rns(const RunConfig& cfg, std::ostream* log)
{
    VelocityState v0 = make_initial_data(cfg);
    AnalyticityState mon = start_monitor(v0, cfg.analytic);
    BootstrapAudit audit(v0, cfg.analytic);
    RunLedger ledger;
    ledger.initial_energy = weighted_energy(v0);
    ledger.min_radius = mon.radius();
    ledger.max_divergence = relative_divergence(v0);
    ledger.max_hermitian_drift = hermitian_drift(v0);
    return drive(cfg, RunContext{std::move(v0), mon, audit, ledger}, true, log);
}

RunSummary resume_rns(const RunConfig& cfg, const fs::path& checkpoint, std::ostream* log)
{
    cfg.validate();
    Checkpoint c = load_checkpoint(checkpoint);
    const RunLedger ledger = load_ledger(fs::path(checkpoint.string() + ".audit"));
    if (!(c.state.grid() == cfg.make_grid())) {
        throw std::invalid_argument("resume: checkpoint grid differs from the configuration");
    }
    if (c.state.eps != cfg.physics.eps || c.scalars.a != cfg.analytic.a ||
        c.scalars.lambda != cfg.analytic.lambda || c.scalars.s != cfg.analytic.s) {
        throw std::invalid_argument("resume: checkpoint parameters differ from the configuration");
    }
    AnalyticityState mon;
    mon.params = cfg.analytic;
    mon.eps = c.state.eps;
    mon.theta = c.scalars.theta;
    mon.psi = c.scalars.psi;
    mon.psi_integral = ledger.psi_integral;
    mon.theta_dot = theta_rate(c.state, mon.radius(), mon.params.s);
    BootstrapAudit audit(ledger.audit, cfg.analytic);
    return drive(cfg, RunContext{std::move(c.state), mon, audit, ledger}, false, log);
}

ToySummary run_toy(const RunConfig& cfg)
{
    cfg.validate();
    const auto& tc = cfg.toy;
    ToySummary s;
    s.cquad = measure_cquad(tc.max_mode, tc.cquad_trials, cfg.init.seed);
    s.lambda = tc.lambda > 0.0 ? tc.lambda : 4.0 * s.cquad;
    const ToyParams params{tc.gamma, tc.a, s.lambda, tc.multiplier};
    const ToySpectrum u0 = toy_initial_data(tc.max_mode, tc.a, tc.eta0, cfg.init.seed + 1);
    s.result = toy_run(u0, params, tc.dt, tc.t_end, tc.sample_every, tc.eta0);
    s.exit_code = s.result.radius_exhausted ? ExitCode::radius_exhausted : ExitCode::success;

    const fs::path dir = cfg.outputs.directory;
    fs::create_directories(dir);
    std::ostringstream csv;
    csv << kToyCsvHeader << '\n';
    for (const auto& row : s.result.samples) {
        csv << fmt(row.t) << ',' << fmt(row.theta) << ',' << fmt(row.x_norm_weighted) << ','
            << fmt(row.radius) << ',' << fmt(row.bound_rhs) << '\n';
    }
    write_text(dir / "toy.csv", csv.str());

    json j;
    j["cquad"] = s.cquad;
    j["lambda"] = s.lambda;
    j["eta0"] = tc.eta0;
    j["gamma"] = tc.gamma;
    j["a"] = tc.a;
    j["radius_exhausted"] = s.result.radius_exhausted;
    j["exhaustion_time"] = s.result.exhaustion_time;
    j["theta_final"] = s.result.final_theta;
    j["theta_bound"] = tc.eta0 / tc.gamma;
    j["max_bound_excess"] = s.result.max_bound_excess;
    j["max_tail_fraction"] = s.result.max_tail_fraction;
    j["exit_code"] = static_cast<int>(s.exit_code);
    write_text(dir / "toy_report.json", j.dump(2) + "\n");
    return s;
}

LpSummary verify_lp(const RunConfig& cfg)
{
    cfg.validate();
    const Grid grid = cfg.make_grid();
    const DyadicPartition part = build_partition(grid);
    const auto& lc = cfg.lp;
    const std::uint64_t seed = cfg.init.seed;
    LpSummary s;
    json j;
    j["grid"] = {grid.n_h(), grid.n_v()};
    j["partition_residual"] = {{"vertical", part.vertical_residual()},
                               {"horizontal", part.horizontal_residual()}};
    std::string trials;

    const BernsteinReport bern = verify_bernstein(grid, lc.bernstein_trials, seed);
    trials += to_json_lines(bern);
    json jb;
    jb["shells"] = bern.shells;
    for (const auto& [c, env] : bern.envelope) {
        jb["envelope"][c.label()] = env;
        jb["spread"][c.label()] = bern.spread.at(c);
    }
    jb["stable"] = bern.stable;
    j["bernstein"] = jb;
    s.bernstein_stable = bern.stable;

    const AnisoNormParams p1{lc.sigma1, lc.s};
    const AnisoNormParams p2{lc.sigma2, lc.s};
    const ProductLawReport prod = verify_product_law(grid, p1, p2, lc.product_trials, seed + 1,
                                                     lc.psi_rate);
    trials += to_json_lines(prod);
    j["product_law"] = {{"sigma1", lc.sigma1}, {"sigma2", lc.sigma2}, {"s", lc.s},
                        {"psi_rate", lc.psi_rate}, {"envelope", prod.envelope}};

    double k = 0.0;
    for (const double sigma : {0.0, 0.5, -0.5}) {
        const NormEquivalenceReport ne =
            measure_norm_equivalence(grid, {sigma, 1.0}, lc.norm_trials, seed + 2);
        trials += to_json_lines(ne);
        j["norm_equivalence"][fmt(sigma)] = ne.measured_k;
        k = std::max(k, ne.measured_k);
    }
    j["norm_equivalence_k"] = k;
    j["norm_equivalence_constant"] = kNormEquivalenceK;
    s.measured_k = k;

    bool ok = bern.stable && k <= kNormEquivalenceK;
    if (!lc.baseline.empty()) {
        s.baseline_checked = true;
        s.baseline_worst_ratio = compare_lp_envelopes(j.dump(), read_text(lc.baseline));
        j["baseline_worst_ratio"] = s.baseline_worst_ratio;
        ok = ok && s.baseline_worst_ratio <= 2.0;
    }
    j["ok"] = ok;
    s.exit_code = ok ? ExitCode::success : ExitCode::continuation_violated;
    s.report_json = j.dump(2) + "\n";

    const fs::path dir = cfg.outputs.directory;
    fs::create_directories(dir);
    write_text(dir / "lp_report.json", s.report_json);
    write_text(dir / "lp_trials.jsonl", trials);
    return s;
}

double compare_lp_envelopes(const std::string& report_json, const std::string& baseline_json)
{
    const json cur = json::parse(report_json);
    const json base = json::parse(baseline_json);
    double worst = 1.0;
    const auto compare = [&](double x, double y) {
        if (x <= 0.0 || y <= 0.0) {
            worst = x == y ? worst : std::numeric_limits<double>::infinity();
            return;
        }
        worst = std::max(worst, std::max(x / y, y / x));
    };
    const auto& cb = cur.at("bernstein");
    const auto& bb = base.at("bernstein");
    if (cb.at("shells") != bb.at("shells")) {
        throw std::invalid_argument("lp baseline: shell ranges differ");
    }
    for (const auto& [label, env] : bb.at("envelope").items()) {
        const auto& c = cb.at("envelope").at(label);
        for (std::size_t i = 0; i < env.size(); ++i) {
            compare(c.at(i).get<double>(), env.at(i).get<double>());
        }
    }
    compare(cur.at("product_law").at("envelope").get<double>(),
            base.at("product_law").at("envelope").get<double>());
    for (const auto& [sigma, k] : base.at("norm_equivalence").items()) {
        compare(cur.at("norm_equivalence").at(sigma).get<double>(), k.get<double>());
    }
    return worst;
}

std::vector<SweepRow> sweep(const RunConfig& cfg, const std::string& parameter,
                            const std::vector<double>& values)
{
    if (values.empty()) {
        throw std::invalid_argument("sweep: no values");
    }
    std::vector<RunConfig> configs;
    for (std::size_t i = 0; i < values.size(); ++i) {
        RunConfig c = cfg;
        set_parameter(c, parameter, values[i]);
        c.outputs.directory = (fs::path(cfg.outputs.directory) / ("sweep_" + std::to_string(i))).string();
        configs.push_back(std::move(c));
    }
    std::vector<std::future<RunSummary>> futures;
    for (const auto& c : configs) {
        futures.push_back(std::async(std::launch::async, [&c] { return run_rns(c); }));
    }
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < values.size(); ++i) {
        rows.push_back({parameter, values[i], futures[i].get()});
    }

    fs::create_directories(cfg.outputs.directory);
    std::ostringstream csv;
    csv << "parameter,value,exit_code,continuation_held,theta_max,psi_max,prop31_fit_C0,"
           "prop32_fit_C1,smoothing_dominated,min_radius\n";
    for (const auto& r : rows) {
        const auto& acc = r.summary.ledger.audit;
        csv << r.parameter << ',' << fmt(r.value) << ',' << static_cast<int>(r.summary.exit_code)
            << ',' << (acc.continuation_held ? 1 : 0) << ',' << fmt(acc.theta_max) << ','
            << fmt(acc.psi_max) << ',' << fmt(acc.c0) << ',' << fmt(acc.c1) << ','
            << (r.summary.ledger.smoothing_dominated ? 1 : 0) << ','
            << fmt(r.summary.ledger.min_radius) << '\n';
    }
    write_text(fs::path(cfg.outputs.directory) / "sweep.csv", csv.str());
    return rows;
}

} // namespace anse
