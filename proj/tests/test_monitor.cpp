#include "test_util.hpp"

#include "anse/analyticity_monitor.hpp"

#include <gtest/gtest.h>

using namespace anse;
using namespace anse::testing;

namespace {

AnalyticityState run_monitor(const VelocityState& v0, const AnalyticParams& p, double dt, double t_end,
                             bool nonlinear)
{
    SolverConfig cfg;
    cfg.dt = dt;
    RnsOptions opts;
    opts.nonlinear = nonlinear;
    VelocityState v = v0;
    AnalyticityState st = start_monitor(v0, p);
    const long n = std::lround(t_end / dt);
    for (long i = 0; i < n; ++i) {
        VelocityState next = step(v, cfg, opts);
        st = advance_monitor(st, v, next, dt);
        v = std::move(next);
    }
    return st;
}

} // namespace

TEST(Monitor, ThetaRateOfSingleMode)
{
    // k = (1, 0, 1), v = (0, 1, 0): eps |xi_h| (1 + xi_3^2) e^{2 r} |c|^2 on the pair.
    const Grid g(16, 16);
    const VelocityState v = single_mode(g, 1.0, {1, 0, 1}, {0.0, 1.0, 0.0});
    EXPECT_NEAR(theta_rate(v, 0.1, 1.0), 4.0 * std::exp(0.2), 1e-13);
    const VelocityState w = single_mode(g, 0.25, {1, 0, 1}, {0.0, 1.0, 0.0});
    EXPECT_NEAR(theta_rate(w, 0.1, 1.0), std::exp(0.2), 1e-13);
    const VelocityState vert = single_mode(g, 0.25, {1, 0, 1}, {-1.0, 0.0, 1.0});
    // Horizontal part 0.25 * 4 e^{0.2}, vertical part 4 e^{0.2}.
    EXPECT_NEAR(theta_rate(vert, 0.1, 1.0), 5.0 * std::exp(0.2), 1e-13);
}

TEST(Monitor, WeightedNormsOfSingleMode)
{
    const Grid g(16, 16);
    const VelocityState v = single_mode(g, 1.0, {3, 4, 2}, {0.0, 0.0, 1.0});
    const double e = std::exp(2 * 0.2 * 2);
    EXPECT_NEAR(weighted_energy_hs(v, 0.2, 1.0), 2.0 * 5.0 * e, 1e-12);
    EXPECT_NEAR(weighted_dissipation_hs(v, 0.2, 1.0), 2.0 * 25.0 * 5.0 * e, 1e-10);
    EXPECT_EQ(zero_horizontal_mode_energy(v, 0.2, 1.0), 0.0);
    const VelocityState z = single_mode(g, 1.0, {0, 0, 2}, {1.0, 0.0, 0.0});
    EXPECT_NEAR(zero_horizontal_mode_energy(z, 0.2, 1.0), 2.0 * 5.0 * e, 1e-12);
    EXPECT_THROW(weighted_field(v, -1e-3), std::domain_error);
}

TEST(Monitor, StartValues)
{
    const Grid g(16, 16);
    const VelocityState v = random_state(g, 0.1, 2, 1e-2);
    const AnalyticParams p;
    const AnalyticityState st = start_monitor(v, p);
    EXPECT_EQ(st.theta, 0.0);
    EXPECT_EQ(st.radius(), p.a);
    EXPECT_DOUBLE_EQ(st.psi, weighted_energy_hs(v, p.a, p.s));
    EXPECT_DOUBLE_EQ(st.theta_dot, theta_rate(v, p.a, p.s));
    AnalyticParams bad = p;
    bad.s = 0.5;
    EXPECT_THROW(start_monitor(v, bad), std::invalid_argument);
}

TEST(Monitor, ThetaIsSecondOrderAccurate)
{
    const Grid g(16, 16);
    const VelocityState v0 = random_state(g, 0.5, 9, 0.05, 1.0);
    AnalyticParams p{0.2, 40.0, 1.0, 1e-2};
    const double ref = run_monitor(v0, p, 0.05 / 64, 1.0, false).theta;
    const double e1 = std::abs(run_monitor(v0, p, 0.05, 1.0, false).theta - ref);
    const double e2 = std::abs(run_monitor(v0, p, 0.025, 1.0, false).theta - ref);
    // The radius feedback is active, otherwise the test is vacuous.
    ASSERT_GT(p.lambda * ref, 0.02);
    EXPECT_GE(std::log2(e1 / e2), 1.8);
}

TEST(Monitor, ThetaGrowsAndRadiusShrinks)
{
    const Grid g(16, 16);
    VelocityState v = random_state(g, 0.1, 4, 0.05);
    AnalyticParams p;
    AnalyticityState st = start_monitor(v, p);
    SolverConfig cfg;
    for (int i = 0; i < 50; ++i) {
        VelocityState next = step(v, cfg);
        const AnalyticityState nst = advance_monitor(st, v, next, cfg.dt);
        EXPECT_GE(nst.theta, st.theta);
        EXPECT_LE(nst.radius(), st.radius());
        EXPECT_GE(nst.psi_integral, st.psi_integral);
        st = nst;
        v = std::move(next);
    }
}

TEST(Audit, FittedConstantsAreTight)
{
    const double c0 = fit_prop31_constant(2.0, 0.5, 1.0, 0.3);
    EXPECT_GE(std::exp(c0 * 0.5) * (1.0 + c0 * 0.3), 2.0);
    const double below = c0 * (1 - 1e-9);
    EXPECT_LT(std::exp(below * 0.5) * (1.0 + below * 0.3), 2.0);
    EXPECT_EQ(fit_prop31_constant(0.5, 0.5, 1.0, 0.3), 0.0);
    EXPECT_EQ(fit_prop31_constant(1.0, 0.0, 0.5, 0.0), std::numeric_limits<double>::infinity());
    EXPECT_DOUBLE_EQ(fit_prop32_constant(2.0, 1.0), std::log(2.0) / 2.0);
    EXPECT_EQ(fit_prop32_constant(0.5, 1.0), 0.0);
}

TEST(Audit, LinearRunNeedsNoGrowthConstant)
{
    const Grid g(16, 16);
    VelocityState v = random_state(g, 0.1, 14, 1e-2);
    const AnalyticParams p;
    AnalyticityState st = start_monitor(v, p);
    BootstrapAudit audit(v, p);
    SolverConfig cfg;
    RnsOptions lin;
    lin.nonlinear = false;
    for (int i = 0; i < 100; ++i) {
        VelocityState next = step(v, cfg, lin);
        const AnalyticityState nst = advance_monitor(st, v, next, cfg.dt);
        audit.record(st, nst, cfg.dt);
        st = nst;
        v = std::move(next);
    }
    EXPECT_EQ(audit.accumulators().c1, 0.0);
    const AuditReport r = audit.report(v, st);
    EXPECT_LE(r.prop32_lhs, r.prop32_rhs_factor);
    EXPECT_LE(r.prop31_lhs, r.prop31_rhs_factor * (1 + 1e-12));
}

TEST(Audit, RestoredAccumulatorsReproduceReports)
{
    const Grid g(16, 16);
    const VelocityState v = random_state(g, 0.1, 15, 1e-2);
    const AnalyticParams p;
    const AnalyticityState st = start_monitor(v, p);
    const BootstrapAudit a(v, p);
    const BootstrapAudit b(a.accumulators(), p);
    EXPECT_EQ(a.report(v, st).prop31_rhs_factor, b.report(v, st).prop31_rhs_factor);
    EXPECT_EQ(a.report(v, st).prop32_rhs_factor, b.report(v, st).prop32_rhs_factor);
}

TEST(Pressure, PartsSumToPressure)
{
    const Grid g(16, 16);
    for (const double eps : {1.0, 0.1}) {
        const VelocityState v = random_state(g, eps, 21, 3.0);
        const PressureParts parts = pressure_parts(v);
        const SpectralField q = pressure_solve(v);
        EXPECT_LT(max_abs_diff(parts.horizontal + parts.mixed + parts.vertical, q), 1e-13 * max_abs(q));
        const PressureNorms norms = pressure_decomposition_diag(v, start_monitor(v, AnalyticParams{}));
        EXPECT_GT(norms.horizontal, 0.0);
        EXPECT_GT(norms.mixed, 0.0);
        EXPECT_GT(norms.vertical, 0.0);
    }
}

TEST(Pressure, MultiplierSupremaBounded)
{
    for (const double eps : {1.0, 0.1, 0.01}) {
        const MultiplierBounds b = multiplier_boundedness_diag(Grid(32, 32), eps);
        EXPECT_LE(b.max(), 1.0 + 1e-12);
        EXPECT_LE(b.horizontal_pair, 1.0 + 1e-12);
        EXPECT_LE(b.vertical_pair, 1.0 + 1e-12);
        EXPECT_LE(b.mixed, 0.5 + 1e-12);
        // max over t > 0 of sqrt(t) / (1 + t^2), attained at t = 1/sqrt(3).
        EXPECT_LE(b.fractional, 0.75 * std::pow(3.0, -0.25) + 1e-12);
    }
    EXPECT_GT(multiplier_boundedness_diag(Grid(64, 64), 0.1).fractional, 0.56);
}

TEST(Smoothing, LinearFlowHasNoTransfer)
{
    const Grid g(16, 16);
    const VelocityState v = random_state(g, 0.1, 30, 1e-2);
    AnalyticityState st = start_monitor(v, AnalyticParams{});
    RnsOptions lin;
    lin.nonlinear = false;
    const SmoothingBalance b = smoothing_balance(v, st, lin);
    EXPECT_EQ(b.transfer, 0.0);
    EXPECT_TRUE(b.dominates());
}

TEST(Monitor, WeightExamples)
{
    const Grid g(16, 16);
    const VelocityState v = single_mode(g, 0.1, {1, 0, 3}, {Complex{}, Complex(0.01, 0.0), Complex{}});
    EXPECT_EQ(max_abs_diff(weighted_field(v, 0.0).v[1], v.v[1]), 0.0);
    EXPECT_NEAR(weighted_field(v, 0.2).v[1].at({1, 0, 3}).real(), 0.01 * std::exp(0.6), 1e-16);

    AnalyticParams p;
    AnalyticityState st = start_monitor(v, p);
    st.theta = p.a / p.lambda;
    EXPECT_NEAR(st.radius(), 0.0, 1e-16);

    const VelocityState r = random_state(g, 0.1, 41, 0.1);
    EXPECT_GE(velocity_norm(weighted_field(r, 0.3)), velocity_norm(r));
}

TEST(Monitor, HorizontalFlowRateIsLinearInEps)
{
    const Grid g(16, 16);
    VelocityState v = random_state(g, 0.1, 42, 0.1);
    v.v[2] = SpectralField(g);
    const double base = theta_rate(v, 0.2, 1.0);
    ASSERT_GT(base, 0.0);
    for (const double eps : {0.05, 0.4}) {
        VelocityState w = v;
        w.eps = eps;
        EXPECT_NEAR(theta_rate(w, 0.2, 1.0) / base, eps / 0.1, 1e-13);
    }
}

TEST(Monitor, ZeroFieldLeavesStateUnchanged)
{
    const Grid g(8, 8);
    const VelocityState zero(g, 0.1);
    const AnalyticParams p;
    AnalyticityState st = start_monitor(zero, p);
    BootstrapAudit audit(zero, p);
    for (int i = 0; i < 10; ++i) {
        const AnalyticityState next = advance_monitor(st, zero, zero, 0.01);
        audit.record(st, next, 0.01);
        st = next;
    }
    EXPECT_EQ(st.theta, 0.0);
    EXPECT_EQ(st.psi, 0.0);
    EXPECT_EQ(audit.accumulators().c0, 0.0);
    EXPECT_EQ(audit.accumulators().c1, 0.0);
    EXPECT_TRUE(audit.report(zero, st).continuation_ok);
}

TEST(Monitor, FrozenFieldGivesLinearTheta)
{
    const Grid g(16, 16);
    const VelocityState v = random_state(g, 0.1, 43, 0.01);
    AnalyticParams p;
    p.lambda = 1e-9;
    AnalyticityState st = start_monitor(v, p);
    const double rate = st.theta_dot;
    for (int i = 0; i < 50; ++i) {
        st = advance_monitor(st, v, v, 0.02);
    }
    EXPECT_NEAR(st.theta / (rate * 1.0), 1.0, 1e-6);
}

TEST(Pressure, HorizontalLayerFlowHasNoVerticalParts)
{
    const Grid g(16, 16);
    VelocityState v(g, 0.1);
    v.v[0] = sample(g, [](double, double x2, double) { return std::cos(x2); });
    v.v[1] = sample(g, [](double x1, double, double) { return std::cos(x1); });
    const PressureParts parts = pressure_parts(v);
    EXPECT_GT(max_abs(parts.horizontal), 0.0);
    EXPECT_EQ(max_abs(parts.mixed), 0.0);
    EXPECT_EQ(max_abs(parts.vertical), 0.0);
    EXPECT_NEAR(multiplier_boundedness_diag(g, 0.1).horizontal_pair, 1.0, 1e-15);
}
