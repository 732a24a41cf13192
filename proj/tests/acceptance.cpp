// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "test_util.hpp"

#include "anse/harness.hpp"
#include "anse/lp_toolkit.hpp"
#include "anse/lp_verify.hpp"
#include "anse/scaling.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace anse;
using namespace anse::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path workdir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "anse_acceptance" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Outcome toy_model()
{
    RunConfig cfg;
    cfg.outputs.directory = workdir("toy").string();
    cfg.toy.max_mode = 256;
    cfg.toy.dt = 0.01;
    cfg.toy.t_end = 20.0;
    cfg.toy.eta0 = 1e-3;
    cfg.toy.a = 0.5;
    cfg.toy.gamma = 1.0;
    cfg.toy.lambda = 0.0;
    cfg.toy.sample_every = 1;
    const ToySummary s = run_toy(cfg);
    double excess = -1.0;
    for (const auto& row : s.result.samples) {
        excess = std::max(excess, row.x_norm_weighted - (2e-3 * std::exp(-row.t) + 1e-8));
    }
    const double t_final = s.result.samples.back().t;
    const bool pass = !s.result.radius_exhausted && excess <= 0.0 &&
                      s.result.final_theta <= 1e-3 && std::abs(t_final - 20.0) < 1e-9;
    return {pass, "C_quad=" + fmt(s.cquad) + " lambda=" + fmt(s.lambda) +
                      " max(theta_dot - bound)=" + fmt(excess) + " theta(20)=" +
                      fmt(s.result.final_theta) + " tail=" + fmt(s.result.max_tail_fraction) +
                      (s.result.radius_exhausted ? " radius exhausted" : "")};
}

Outcome bony_reconstruction()
{
    const Grid g(32, 32);
    const DyadicPartition part = build_partition(g);
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const SpectralField f = random_field(g, rng);
        const SpectralField h = random_field(g, rng);
        const SpectralField prod = dealias_product(f, h);
        const double scale = std::sqrt(l2_norm_sq(prod));
        const VerticalBony vb = bony_vertical(f, h, part);
        const HorizontalBony hb = bony_horizontal(f, h, part);
        worst = std::max(worst, std::sqrt(l2_norm_sq(vb.paraproduct + vb.remainder - prod)) / scale);
        worst = std::max(worst, std::sqrt(l2_norm_sq(hb.paraproduct_fg + hb.paraproduct_gf +
                                                     hb.remainder - prod)) /
                                    scale);
    }
    return {worst < 1e-12, "100 pairs at 32^3, worst relative error " + fmt(worst)};
}

Outcome norm_equivalence()
{
    bool pass = true;
    std::string detail = "K=" + fmt(kNormEquivalenceK);
    for (const double sigma : {0.0, 0.5, -0.5}) {
        double k[2] = {};
        int gi = 0;
        for (const int n : {32, 64}) {
            const NormEquivalenceReport r = measure_norm_equivalence(Grid(n, n), {sigma, 1.0}, 200, 77);
            for (const double ratio : r.ratios) {
                pass = pass && ratio <= kNormEquivalenceK && ratio >= 1.0 / kNormEquivalenceK;
            }
            k[gi++] = r.measured_k;
        }
        const double drift = std::abs(k[1] / k[0] - 1.0);
        pass = pass && drift < 0.05;
        detail += " sigma=" + fmt(sigma) + ": " + fmt(k[0]) + "->" + fmt(k[1]) + " (" +
                  fmt(100 * drift) + "%)";
    }
    return {pass, detail};
}

Outcome product_law()
{
    const AnisoNormParams p{0.5, 1.0};
    double invariance = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Grid g(32, 32);
        const SpectralField a = product_trial_field(g, 2 * seed);
        const SpectralField b = product_trial_field(g, 2 * seed + 1);
        const double r = product_law_ratio(a, b, p, p, 0.1);
        invariance = std::max(invariance,
                              std::abs(product_law_ratio(7.5 * a, 1e-3 * b, p, p, 0.1) / r - 1.0));
    }
    const double e32 = verify_product_law(Grid(32, 32), p, p, 200, 5).envelope;
    const double e64 = verify_product_law(Grid(64, 64), p, p, 200, 5).envelope;
    const double spread = std::max(e32 / e64, e64 / e32);
    return {invariance <= 1e-12 && spread <= 2.0,
            "scaling invariance " + fmt(invariance) + ", envelope 32^3=" + fmt(e32) +
                " 64^3=" + fmt(e64) + " (x" + fmt(spread) + ")"};
}

Outcome solver()
{
    const Grid g(32, 32);
    bool pass = true;
    std::string detail;
    double decay_err = 0.0;
    for (const double eps : {1.0, 0.1}) {
        const VelocityState v0 = random_state(g, eps, 3, 1.0, 0.5);
        SolverConfig cfg;
        cfg.dt = 1e-2;
        RnsOptions lin;
        lin.nonlinear = false;
        VelocityState v = v0;
        for (int n = 0; n < 100; ++n) {
            v = step(v, cfg, lin);
        }
        for (int i = 0; i < 3; ++i) {
            const SpectralField exact = apply_multiplier(v0.v[i], [eps](const Wavevector& xi) {
                return std::exp(-(xi.x1 * xi.x1 + xi.x2 * xi.x2 + eps * eps * xi.x3 * xi.x3));
            });
            decay_err = std::max(decay_err, max_abs_diff(v.v[i], exact));
        }
    }
    pass = pass && decay_err <= 1e-12;
    detail += "linear decay err " + fmt(decay_err);

    VelocityState v = random_state(g, 0.1, 8, 2.0);
    const double div0 = relative_divergence(v);
    SolverConfig cfg;
    cfg.dt = 1e-2;
    for (int n = 0; n < 1000; ++n) {
        v = step(v, cfg);
    }
    const double drift = std::abs(relative_divergence(v) - div0);
    pass = pass && drift < 1e-11;
    detail += ", div drift/1000 steps " + fmt(drift);

    const VelocityState e0 = random_state(Grid(16, 16), 0.5, 4, 10.0, 3.0);
    for (const int order : {2, 3, 4}) {
        const double observed =
            std::log2(energy_residual(e0, order, 0.00625, 1.0) / energy_residual(e0, order, 0.003125, 1.0));
        pass = pass && std::abs(observed - order) <= 0.3;
        detail += ", energy order " + std::to_string(order) + "->" + fmt(observed);
    }
    return {pass, detail};
}

Outcome scaling()
{
    RunConfig cfg;
    cfg.grid.n_h = 32;
    cfg.grid.n_v = 32;
    cfg.physics.eps = 0.25;
    cfg.init.target_norm = 1.0;
    VelocityState v = make_initial_data(cfg);
    SolverConfig sc;
    sc.dt = 1e-2;
    for (int n = 0; n < 50; ++n) {
        v = step(v, sc);
    }
    const ScalingReport r = scaling_report(v);
    const Grid target = build_data_slow_vertical(v, v.eps).grid();
    const bool grid_ok = target.n_h() == 32 && target.n_v() == 128;
    return {grid_ok && r.residual < 10.0 * r.truncation_floor,
            "t=" + fmt(v.t) + " residual " + fmt(r.residual) + " floor " + fmt(r.truncation_floor) +
                " retained " + fmt(r.retained_residual)};
}

Outcome continuation()
{
    RunConfig cfg;
    cfg.grid.n_h = 32;
    cfg.grid.n_v = 32;
    cfg.physics.eps = 0.1;
    cfg.analytic = {0.2, 40.0, 1.0, 1e-2};
    cfg.time.dt = 1e-2;
    cfg.time.t_end = 10.0;
    cfg.outputs.directory = workdir("continuation").string();
    const RunSummary small = run_rns(cfg);
    const auto& acc = small.ledger.audit;
    const bool small_ok = small.exit_code == ExitCode::success && acc.continuation_held;

    RunConfig control = cfg;
    control.analytic.eta = 1.0;
    control.outputs.directory = workdir("control").string();
    const RunSummary big = run_rns(control);
    const bool control_ok =
        big.exit_code == ExitCode::continuation_violated || big.exit_code == ExitCode::radius_exhausted;
    return {small_ok && control_ok,
            "eta=1e-2: " + small.status + " theta_max=" + fmt(acc.theta_max) + " (<= " +
                fmt(4e-4) + ") psi_max=" + fmt(acc.psi_max) + " (<= " + fmt(2e-4) + ") C0=" +
                fmt(acc.c0) + " C1=" + fmt(acc.c1) + "; eta=1: " + big.status + " (exit " +
                std::to_string(static_cast<int>(big.exit_code)) + ")"};
}

Outcome multipliers()
{
    double worst = 0.0;
    for (const double eps : {1.0, 0.1, 0.01}) {
        for (const int n : {32, 64}) {
            worst = std::max(worst, multiplier_boundedness_diag(Grid(n, n), eps).max());
        }
    }
    return {worst <= 1.0 + 1e-12, "max symbol " + fmt(worst)};
}

Outcome reproducibility()
{
    RunConfig cfg;
    cfg.grid.n_h = 32;
    cfg.grid.n_v = 32;
    cfg.time.t_end = 0.5;
    cfg.time.sample_every = 5;
    cfg.outputs.checkpoint_every = 25;
    cfg.outputs.directory = workdir("repro_a").string();
    const RunSummary a = run_rns(cfg);
    RunConfig again = cfg;
    again.outputs.directory = workdir("repro_b").string();
    const RunSummary b = run_rns(again);
    const bool same_csv = slurp(a.csv_path) == slurp(b.csv_path);

    RunConfig resumed = cfg;
    resumed.outputs.directory = workdir("repro_resume").string();
    const RunSummary r =
        resume_rns(resumed, fs::path(cfg.outputs.directory) / "checkpoints" / "step_00000025.anse");
    const std::string full = slurp(a.csv_path);
    const std::string tail = slurp(r.csv_path);
    const std::string body = tail.substr(tail.find('\n') + 1);
    const bool same_tail = !body.empty() && full.size() >= body.size() &&
                           full.compare(full.size() - body.size(), body.size(), body) == 0;
    const bool same_state = slurp(a.final_checkpoint) == slurp(r.final_checkpoint);
    return {same_csv && same_tail && same_state,
            std::string("csv ") + (same_csv ? "identical" : "differs") + ", resumed rows " +
                (same_tail ? "identical" : "differ") + ", resumed state " +
                (same_state ? "bitwise equal" : "differs")};
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "toy model stays analytic", toy_model},
        {2, "Bony decompositions reconstruct the product", bony_reconstruction},
        {3, "block and Fourier norms are equivalent", norm_equivalence},
        {4, "product law envelope", product_law},
        {5, "solver exactness and order", solver},
        {6, "scaling map to Navier-Stokes", scaling},
        {7, "continuation of the bootstrap", continuation},
        {8, "pressure multipliers bounded", multipliers},
        {9, "determinism and bitwise resume", reproducibility},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
