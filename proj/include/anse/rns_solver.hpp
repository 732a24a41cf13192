#pragma once

#include "anse/spectral_field.hpp"

#include <array>
#include <optional>
#include <stdexcept>

namespace anse {

using VectorField = std::array<SpectralField, 3>;

VectorField zero_vector_field(const Grid& grid);

/// Velocity of the rescaled system: v[0], v[1] horizontal, v[2] vertical.
struct VelocityState {
    VelocityState(const Grid& grid, double eps, double t = 0.0);
    VelocityState(VectorField fields, double eps, double t = 0.0);

    VectorField v;
    double t = 0.0;
    double eps = 1.0;

    const Grid& grid() const { return v[0].grid(); }
};

/// Switches for the right-hand side. The nonlinear factor defaults to eps^{1/2}.
struct RnsOptions {
    bool nonlinear = true;
    std::optional<double> nonlinear_factor;

    double factor(double eps) const;
};

struct SolverConfig {
    double dt = 1e-2;
    double t_end = 1.0;
    int order = 4; ///< 2, 3 or 4
    double cfl_safety = 0.5;
};

/// Raised by step() when the new state has a non-finite coefficient.
class NumericalBlowUp : public std::runtime_error {
public:
    explicit NumericalBlowUp(double time);
    double time() const { return time_; }

private:
    double time_;
};

// ---------------------------------------------------------------------------
// Diagnostics

/// sqrt(sum_i ||v^i||^2).
double velocity_norm(const VelocityState& s);
/// max over modes of |xi . v(xi)| divided by velocity_norm (0 for the zero field).
double relative_divergence(const VelocityState& s);
double hermitian_drift(const VelocityState& s);

/// E = (||v^h||^2 + eps^{-2} ||v^3||^2) / 2.
double weighted_energy(const VelocityState& s);
/// ||grad_h v^h||^2 + eps^2 ||d3 v^h||^2 + eps^{-2} ||grad_h v^3||^2 + ||d3 v^3||^2,
/// the exact decay rate of weighted_energy in the semi-discrete system.
double dissipation_rate(const VelocityState& s);

/// Full Leray projection v - xi (xi . v) / |xi|^2.
void leray_project(VelocityState& s);

// ---------------------------------------------------------------------------
// Right-hand sides

/// N^i = d_j(v^i v^j) of the truncated field, dealiased; equals v . grad v^i
/// on the retained band for divergence-free v.
VectorField nonlinear_term(const VelocityState& s);

/// Rescaled pressure: q(xi) = f i xi . N(xi) / (|xi_h|^2 + eps^2 xi_3^2), q(0) = 0,
/// with f the nonlinear factor.
SpectralField pressure_solve(const VelocityState& s, const RnsOptions& opts = {});

/// Nonlinear and pressure part of the tendency,
/// -f N - (grad_h q, eps^2 d3 q); divergence-free by construction.
VectorField transport_tendency(const VelocityState& s, const RnsOptions& opts = {});

/// Full tendency: viscous part -(|xi_h|^2 + eps^2 xi_3^2) v plus transport_tendency.
VectorField rhs_rns(const VelocityState& s, const RnsOptions& opts = {});

/// Unit-viscosity Navier-Stokes tendency -|xi|^2 u - P(u . grad u) with the
/// Leray projector P; eps of the state is ignored.
VectorField rhs_ns(const VelocityState& u, bool nonlinear = true);

// ---------------------------------------------------------------------------
// Time stepping

/// Largest dt allowed by dt * f * sum_i max|v^i| / dx_i <= cfl_safety
/// (infinity for the zero field).
double cfl_limit(const VelocityState& s, double cfl_safety, const RnsOptions& opts = {});

/// Throws std::invalid_argument when cfg.dt exceeds cfl_limit or the
/// config is out of range.
void check_solver_config(const VelocityState& s, const SolverConfig& cfg,
                         const RnsOptions& opts = {});

/// One Lawson step: the viscous part is integrated exactly by the factor
/// e^{-(|xi_h|^2 + eps^2 xi_3^2) t}, the transport part by explicit RK of
/// order cfg.order. Throws NumericalBlowUp on non-finite output.
VelocityState step(const VelocityState& s, const SolverConfig& cfg, const RnsOptions& opts = {});

} // namespace anse
