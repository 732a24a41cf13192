#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace anse;
using namespace anse::testing;

namespace {

double decay_rate(const Wavevector& xi, double eps)
{
    return xi.x1 * xi.x1 + xi.x2 * xi.x2 + eps * eps * xi.x3 * xi.x3;
}

} // namespace

TEST(RnsNonlinear, CellularFlowIsSteadyUnderTransport)
{
    // v = (sin x2, sin x1, 0): v . grad v = grad(cos x1 cos x2) after projection.
    const Grid g(16, 16);
    for (const double eps : {1.0, 0.1}) {
        VelocityState s(g, eps);
        s.v[0] = sample(g, [](double, double x2, double) { return std::sin(x2); });
        s.v[1] = sample(g, [](double x1, double, double) { return std::sin(x1); });
        const VectorField n = nonlinear_term(s);
        EXPECT_LT(max_abs_diff(n[0], sample(g, [](double x1, double x2, double) {
                                   return std::sin(x1) * std::cos(x2);
                               })),
                  1e-15);
        EXPECT_LT(max_abs_diff(n[1], sample(g, [](double x1, double x2, double) {
                                   return std::cos(x1) * std::sin(x2);
                               })),
                  1e-15);
        const double f = std::sqrt(eps);
        EXPECT_LT(max_abs_diff(pressure_solve(s), sample(g, [f](double x1, double x2, double) {
                                   return f * std::cos(x1) * std::cos(x2);
                               })),
                  1e-15);
        EXPECT_LT(max_norm(transport_tendency(s)), 1e-15);
    }
}

TEST(RnsNonlinear, TaylorGreenMatchesPointwiseAdvection)
{
    const Grid g(16, 16);
    const auto u1 = [](double x, double y, double z) { return std::sin(x) * std::cos(y) * std::cos(z); };
    const auto u2 = [](double x, double y, double z) { return -std::cos(x) * std::sin(y) * std::cos(z); };
    VelocityState s(g, 0.5);
    s.v[0] = sample(g, u1);
    s.v[1] = sample(g, u2);
    ASSERT_LT(relative_divergence(s), 1e-15);
    // u . grad u for the Taylor-Green field, evaluated by hand.
    const auto a1 = [&](double x, double y, double z) {
        const double d1 = std::cos(x) * std::cos(y) * std::cos(z);
        const double d2 = -std::sin(x) * std::sin(y) * std::cos(z);
        return u1(x, y, z) * d1 + u2(x, y, z) * d2;
    };
    const auto a2 = [&](double x, double y, double z) {
        const double d1 = std::sin(x) * std::sin(y) * std::cos(z);
        const double d2 = -std::cos(x) * std::cos(y) * std::cos(z);
        return u1(x, y, z) * d1 + u2(x, y, z) * d2;
    };
    const VectorField n = nonlinear_term(s);
    EXPECT_LT(max_abs_diff(n[0], sample(g, a1)), 1e-15);
    EXPECT_LT(max_abs_diff(n[1], sample(g, a2)), 1e-15);
    EXPECT_LT(max_abs(n[2]), 1e-15);
}

TEST(RnsPressure, TendencyIsSolenoidal)
{
    const Grid g(16, 16);
    const VelocityState s = random_state(g, 0.1, 3, 1.0);
    VelocityState t(transport_tendency(s), 0.1);
    EXPECT_LT(relative_divergence(t), 1e-13);
}

TEST(RnsPressure, UnitEpsAndFactorReducesToNavierStokes)
{
    const Grid g(16, 16);
    const VelocityState s = random_state(g, 1.0, 8, 2.0);
    EXPECT_LT(max_diff(rhs_rns(s), rhs_ns(s)), 1e-13 * max_norm(rhs_ns(s)));
    RnsOptions unit;
    unit.nonlinear_factor = 1.0;
    VelocityState s2 = s;
    s2.eps = 1.0;
    EXPECT_LT(max_diff(rhs_rns(s2, unit), rhs_ns(s2)), 1e-13 * max_norm(rhs_ns(s2)));
}

TEST(RnsPressure, LinearRightHandSideIsViscousOnly)
{
    const Grid g(16, 16);
    const double eps = 0.3;
    const VelocityState s = random_state(g, eps, 2, 1.0);
    RnsOptions lin;
    lin.nonlinear = false;
    const VectorField r = rhs_rns(s, lin);
    for (int i = 0; i < 3; ++i) {
        const SpectralField expected = apply_multiplier(
            s.v[i], [eps](const Wavevector& xi) { return -decay_rate(xi, eps); });
        EXPECT_LT(max_abs_diff(r[i], expected), 1e-15);
    }
}

TEST(RnsStepper, LinearDecayIsExact)
{
    const Grid g(16, 16);
    for (const double eps : {1.0, 0.1}) {
        for (const int order : {2, 3, 4}) {
            const ModeIndex k{2, -1, 3};
            const VelocityState s0 = single_mode(g, eps, k, {Complex(1, 0.5), Complex(2, 1), Complex(0, 0)});
            SolverConfig cfg;
            cfg.dt = 0.05;
            cfg.order = order;
            RnsOptions lin;
            lin.nonlinear = false;
            VelocityState s = s0;
            for (int n = 0; n < 20; ++n) {
                s = step(s, cfg, lin);
            }
            EXPECT_NEAR(s.t, 1.0, 1e-14);
            const double decay = std::exp(-(4.0 + 1.0 + eps * eps * 9.0));
            for (int i = 0; i < 3; ++i) {
                EXPECT_LT(std::abs(s.v[i].at(k) - decay * s0.v[i].at(k)), 1e-14);
            }
        }
    }
}

TEST(RnsStepper, DivergenceAndSymmetryPreserved)
{
    const Grid g(16, 16);
    VelocityState s = random_state(g, 0.1, 12, 3.0);
    SolverConfig cfg;
    cfg.dt = 1e-2;
    for (int n = 0; n < 200; ++n) {
        s = step(s, cfg);
    }
    EXPECT_LT(relative_divergence(s), 1e-13);
    EXPECT_LT(hermitian_drift(s), 1e-15);
}

TEST(RnsStepper, EnergyBalanceConvergesAtStepperOrder)
{
    const Grid g(16, 16);
    const VelocityState s = random_state(g, 0.5, 4, 10.0, 3.0);
    for (const int order : {2, 3, 4}) {
        const double coarse = energy_residual(s, order, 0.00625, 1.0);
        const double fine = energy_residual(s, order, 0.003125, 1.0);
        EXPECT_NEAR(std::log2(coarse / fine), order, 0.3) << "order " << order;
    }
}

TEST(RnsStepper, TransportConservesWeightedEnergy)
{
    const Grid g(16, 16);
    const VelocityState s = random_state(g, 0.2, 6, 2.0);
    const VectorField t = transport_tendency(s);
    double inner = 0.0;
    const double e2 = s.eps * s.eps;
    for (int i = 0; i < 3; ++i) {
        const double w = i == 2 ? 1.0 / e2 : 1.0;
        for (std::size_t m = 0; m < s.v[i].size(); ++m) {
            inner += w * std::real(std::conj(s.v[i][m]) * t[i][m]);
        }
    }
    EXPECT_LT(std::abs(inner), 1e-12 * velocity_norm(s) * max_norm(t));
}

TEST(RnsStepper, RejectsCflViolationsAndBadOrders)
{
    const Grid g(16, 16);
    const VelocityState s = random_state(g, 1.0, 1, 1e3);
    SolverConfig cfg;
    EXPECT_GT(cfg.dt, cfl_limit(s, cfg.cfl_safety));
    EXPECT_THROW(check_solver_config(s, cfg), std::invalid_argument);
    cfg.dt = 1e-6;
    cfg.order = 5;
    EXPECT_THROW(check_solver_config(s, cfg), std::invalid_argument);
    EXPECT_EQ(cfl_limit(VelocityState(g, 1.0), 0.5), std::numeric_limits<double>::infinity());
}

TEST(RnsStepper, NonFiniteStateRaisesBlowUp)
{
    const Grid g(8, 8);
    VelocityState s(g, 1.0);
    s.v[0].at({1, 0, 0}) = std::numeric_limits<double>::quiet_NaN();
    RnsOptions lin;
    lin.nonlinear = false;
    EXPECT_THROW(step(s, SolverConfig{}, lin), NumericalBlowUp);
}

TEST(RnsDiagnostics, EnergyAndDissipationOfSingleMode)
{
    const Grid g(16, 16);
    const double eps = 0.5;
    // k = (1, 0, 2) with v = (0, 1, 0): horizontal-only amplitude.
    const VelocityState s = single_mode(g, eps, {1, 0, 2}, {0.0, 1.0, 0.0});
    EXPECT_DOUBLE_EQ(weighted_energy(s), 1.0);
    EXPECT_DOUBLE_EQ(dissipation_rate(s), 2.0 * (1.0 + eps * eps * 4.0));
    const VelocityState w = single_mode(g, eps, {1, 0, 2}, {-2.0, 0.0, 1.0});
    EXPECT_DOUBLE_EQ(weighted_energy(w), 0.5 * (8.0 + 2.0 / (eps * eps)));
    EXPECT_EQ(relative_divergence(w), 0.0);
}

TEST(RnsStepper, ViscousDecayOfAnisotropicMode)
{
    const Grid g(16, 16);
    const VelocityState v = single_mode(g, 0.1, {1, 0, 2}, {Complex{}, Complex(1e-3, 0.0), Complex{}});
    SolverConfig cfg;
    cfg.dt = 0.5;
    RnsOptions lin;
    lin.nonlinear = false;
    const VelocityState next = step(v, cfg, lin);
    EXPECT_NEAR(next.v[1].at({1, 0, 2}).real() / 1e-3, std::exp(-1.04 * 0.5), 1e-14);
    EXPECT_EQ(next.t, 0.5);
}

TEST(RnsStepper, ZeroStateStaysZero)
{
    const Grid g(8, 8);
    const VelocityState zero(g, 0.25);
    for (const int order : {2, 3, 4}) {
        SolverConfig cfg;
        cfg.order = order;
        const VelocityState next = step(zero, cfg);
        EXPECT_EQ(velocity_norm(next), 0.0);
    }
    EXPECT_EQ(max_abs(pressure_solve(zero)), 0.0);
    EXPECT_EQ(weighted_energy(zero), 0.0);
}

TEST(RnsStepper, SelfConvergenceMatchesOrder)
{
    const Grid g(16, 16);
    const VelocityState v0 = random_state(g, 0.5, 31, 2.0, 3.0);
    const auto run = [&](int order, double dt) {
        SolverConfig cfg;
        cfg.order = order;
        cfg.dt = dt;
        VelocityState v = v0;
        const long n = std::lround(0.1 / dt);
        for (long i = 0; i < n; ++i) {
            v = step(v, cfg);
        }
        return v;
    };
    const auto diff = [](const VelocityState& a, const VelocityState& b) {
        double m = 0.0;
        for (int c = 0; c < 3; ++c) {
            m = std::max(m, max_abs_diff(a.v[c], b.v[c]));
        }
        return m;
    };
    for (const int order : {2, 3, 4}) {
        const VelocityState coarse = run(order, 0.01);
        const VelocityState mid = run(order, 0.005);
        const VelocityState fine = run(order, 0.0025);
        const double rate = std::log2(diff(coarse, mid) / diff(mid, fine));
        EXPECT_GT(rate, order - 0.3) << "order " << order;
    }
}
