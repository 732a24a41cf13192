#pragma once

#include "anse/rns_solver.hpp"

#include <cmath>
#include <array>
#include <functional>
#include <numbers>
#include <random>

namespace anse::testing {

inline constexpr double kPi = std::numbers::pi;

/// Physical coordinates of storage point idx.
inline std::array<double, 3> point(const Grid& g, std::size_t idx)
{
    const std::size_t nh = g.n_h();
    const std::size_t nv = g.n_v();
    const std::size_t i3 = idx % nv;
    const std::size_t i2 = (idx / nv) % nh;
    const std::size_t i1 = idx / (nv * nh);
    return {i1 * g.dx_h(), i2 * g.dx_h(), i3 * g.dx_v()};
}

inline SpectralField sample(const Grid& g, const std::function<double(double, double, double)>& fn)
{
    std::vector<double> values(g.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto x = point(g, i);
        values[i] = fn(x[0], x[1], x[2]);
    }
    return forward_transform(values, g);
}

/// Real solenoidal field with one Fourier pair +-k and amplitude vector c
/// (c must be orthogonal to k).
inline VelocityState single_mode(const Grid& g, double eps, ModeIndex k,
                                 std::array<Complex, 3> c)
{
    VelocityState s(g, eps);
    const ModeIndex neg{-k.k1, -k.k2, -k.k3};
    for (int i = 0; i < 3; ++i) {
        s.v[i].at(k) = c[i];
        s.v[i].at(neg) = std::conj(c[i]);
    }
    return s;
}

/// Divergence-free random state inside the dealias band, no xi_h = 0 content.
inline VelocityState random_state(const Grid& g, double eps, std::uint64_t seed, double amplitude,
                                  double decay = 2.0)
{
    std::mt19937_64 rng(seed);
    RandomFieldOptions opts;
    opts.envelope = [decay](const Wavevector& xi) {
        return std::pow(1.0 + xi.norm() * xi.norm(), -decay);
    };
    opts.drop_zero_horizontal = true;
    VelocityState s(g, eps);
    for (auto& f : s.v) {
        f = random_field(g, rng, opts);
    }
    leray_project(s);
    const double n = velocity_norm(s);
    for (auto& f : s.v) {
        f *= amplitude / n;
    }
    return s;
}

inline double max_diff(const VectorField& a, const VectorField& b)
{
    double m = 0.0;
    for (int i = 0; i < 3; ++i) {
        m = std::max(m, max_abs_diff(a[i], b[i]));
    }
    return m;
}

inline double max_norm(const VectorField& a)
{
    double m = 0.0;
    for (const auto& f : a) {
        m = std::max(m, max_abs(f));
    }
    return m;
}

} // namespace anse::testing

namespace anse::testing {

/// |E(T) - E(0) + int_0^T D| along a run of T/dt steps, with D integrated by
/// composite Boole (sixth order; T/dt must be divisible by 4) so that the
/// quadrature error stays below the stepper's.
inline double energy_residual(const VelocityState& v0, int order, double dt, double t_end,
                              const RnsOptions& opts = {})
{
    const long n = std::lround(t_end / dt);
    if (n % 4 != 0) {
        throw std::invalid_argument("energy_residual: step count must be divisible by 4");
    }
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.order = order;
    std::vector<double> d{dissipation_rate(v0)};
    VelocityState v = v0;
    for (long i = 0; i < n; ++i) {
        v = step(v, cfg, opts);
        d.push_back(dissipation_rate(v));
    }
    double integral = 0.0;
    for (long i = 0; i + 4 <= n; i += 4) {
        integral += 2.0 * dt / 45.0 *
                    (7.0 * d[i] + 32.0 * d[i + 1] + 12.0 * d[i + 2] + 32.0 * d[i + 3] + 7.0 * d[i + 4]);
    }
    return std::abs(weighted_energy(v) - weighted_energy(v0) + integral);
}

} // namespace anse::testing
