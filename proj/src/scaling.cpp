#include "anse/scaling.hpp"

#include <cmath>

namespace anse {

namespace {

// Copies the coefficients of v into out with labels (k1, k2, k3) ->
// (mh k1, mh k2, k3), scaling the horizontal and vertical components.
VectorField remap(const VectorField& v, const Grid& out_grid, int mh, double horizontal_scale,
                  double vertical_scale)
{
    VectorField out = zero_vector_field(out_grid);
    const Grid& in = v[0].grid();
    for_each_mode(in, [&](std::size_t idx, const ModeIndex& k, const Wavevector&) {
        const bool nyquist = k.k1 == in.n_h() / 2 || k.k2 == in.n_h() / 2 || k.k3 == in.n_v() / 2;
        if (nyquist) {
            // Self-conjugate labels have no partner after relabeling; the
            // solver never populates them.
            if (v[0][idx] != Complex{} || v[1][idx] != Complex{} || v[2][idx] != Complex{}) {
                throw std::invalid_argument("scaling: Nyquist modes must be empty");
            }
            return;
        }
        const std::size_t j = out_grid.index_of({mh * k.k1, mh * k.k2, k.k3});
        out[0][j] = horizontal_scale * v[0][idx];
        out[1][j] = horizontal_scale * v[1][idx];
        out[2][j] = vertical_scale * v[2][idx];
    });
    return out;
}

} // namespace

int reciprocal_integer(double eps)
{
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("eps must lie in (0, 1]");
    }
    const double m = std::round(1.0 / eps);
    if (std::abs(m * eps - 1.0) > 1e-12) {
        throw std::invalid_argument("eps must be the reciprocal of an integer");
    }
    return static_cast<int>(m);
}

VelocityState build_data_slow_vertical(const VelocityState& v0, double eps)
{
    const int m = reciprocal_integer(eps);
    const Grid& g = v0.grid();
    const Grid out(g.n_h(), m * g.n_v(), g.L_h(), m * g.L_v());
    return VelocityState(remap(v0.v, out, 1, std::sqrt(eps), 1.0 / std::sqrt(eps)), 1.0, v0.t);
}

VelocityState build_data_fast_horizontal(const VelocityState& v0, double eps)
{
    const int m = reciprocal_integer(eps);
    const Grid& g = v0.grid();
    const Grid out(m * g.n_h(), g.n_v(), g.L_h(), g.L_v());
    return VelocityState(remap(v0.v, out, m, 1.0 / std::sqrt(eps), std::pow(eps, -1.5)), 1.0,
                         v0.t);
}

ScalingReport scaling_report(const VelocityState& v, const RnsOptions& opts)
{
    const VelocityState u = build_data_slow_vertical(v, v.eps);
    const double norm_u = velocity_norm(u);
    ScalingReport report;
    if (norm_u == 0.0) {
        return report;
    }
    VelocityState dudt(remap(rhs_rns(v, opts), u.grid(), 1, std::sqrt(v.eps), 1.0 / std::sqrt(v.eps)),
                       1.0, v.t);
    const VectorField ns = rhs_ns(u, opts.nonlinear);

    const Grid& slow = v.grid();
    const int cut_h = slow.dealias_cutoff_h();
    const int cut_v = slow.dealias_cutoff_v();
    double total = 0.0;
    double retained = 0.0;
    double floor = 0.0;
    for_each_mode(u.grid(), [&](std::size_t idx, const ModeIndex& k, const Wavevector&) {
        double diff = 0.0;
        double outside = 0.0;
        for (int i = 0; i < 3; ++i) {
            diff += std::norm(dudt.v[i][idx] - ns[i][idx]);
            outside += std::norm(ns[i][idx]);
        }
        total += diff;
        const bool in_band = std::abs(k.k1) <= cut_h && std::abs(k.k2) <= cut_h &&
                             std::abs(k.k3) <= cut_v;
        if (in_band) {
            retained += diff;
        } else {
            floor += outside;
        }
    });
    report.residual = std::sqrt(total) / norm_u;
    report.retained_residual = std::sqrt(retained) / norm_u;
    report.truncation_floor = std::sqrt(floor) / norm_u;
    return report;
}

double scaling_residual(const VelocityState& v, const RnsOptions& opts)
{
    return scaling_report(v, opts).residual;
}

} // namespace anse
