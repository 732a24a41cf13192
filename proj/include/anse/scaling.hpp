#pragma once

#include "anse/rns_solver.hpp"

namespace anse {

/// m with eps = 1/m; throws std::invalid_argument unless eps is the
/// reciprocal of a positive integer (to 1e-12).
int reciprocal_integer(double eps);

/// Slow-vertical data u(x) = (eps^{1/2} v^h(x_h, eps x3), eps^{-1/2} v^3(x_h, eps x3)).
/// The output lives on a box m times taller with m times more vertical
/// points; labels are unchanged, so xi_3 -> xi_3 / m.
VelocityState build_data_slow_vertical(const VelocityState& v0, double eps);

/// Fast-horizontal data u(x) = (eps^{-1/2} v^h(x_h / eps, x3), eps^{-3/2} v^3(x_h / eps, x3)).
/// The output has m times more horizontal points on the same box; horizontal
/// labels are multiplied by m.
VelocityState build_data_fast_horizontal(const VelocityState& v0, double eps);

struct ScalingReport {
    /// ||d_t u + u . grad u - Delta u + grad p|| / ||u|| with d_t u from the
    /// mapped rescaled tendency.
    double residual = 0.0;
    /// Part of the residual on modes that the rescaled run's band maps to.
    double retained_residual = 0.0;
    /// Norm of the unit-viscosity tendency outside that band, relative to ||u||:
    /// what the rescaled grid cannot represent.
    double truncation_floor = 0.0;
};

/// Maps the rescaled snapshot v to u = build_data_slow_vertical(v, eps) and
/// compares the mapped rescaled tendency with rhs_ns(u).
ScalingReport scaling_report(const VelocityState& v, const RnsOptions& opts = {});
double scaling_residual(const VelocityState& v, const RnsOptions& opts = {});

} // namespace anse
