#pragma once

#include "anse/rns_solver.hpp"

namespace anse {

struct AnalyticParams {
    double a = 0.2;      ///< initial vertical analyticity radius
    double lambda = 40.0; ///< radius consumption rate
    double s = 1.0;      ///< vertical regularity, > 1/2
    double eta = 1e-2;   ///< smallness budget

    void validate() const;
};

/// theta, Psi and the integral part of Psi along a run.
struct AnalyticityState {
    AnalyticParams params;
    double eps = 1.0;
    double theta = 0.0;
    double theta_dot = 0.0;    ///< at the current time, current radius
    double psi = 0.0;
    double psi_integral = 0.0; ///< int_0^t ||grad_h v_Phi||^2_{H^{0,s}}

    double radius() const { return params.a - params.lambda * theta; }
    bool exhausted() const { return radius() < 0.0; }
};

/// e^{r |xi_3|} v for each component; throws std::domain_error when r < 0.
VelocityState weighted_field(const VelocityState& v, double radius);
VelocityState weighted_field(const VelocityState& v, const AnalyticityState& st);

/// eps ||v_Phi^h||^2_{H^{1/2,s}} + ||v_Phi^3||^2_{H^{1/2,s}} at the given radius.
double theta_rate(const VelocityState& v, double radius, double s);
double theta_dot(const VelocityState& v, const AnalyticityState& st);

/// ||v_Phi||^2_{H^{0,s}} and ||grad_h v_Phi||^2_{H^{0,s}}.
double weighted_energy_hs(const VelocityState& v, double radius, double s);
double weighted_dissipation_hs(const VelocityState& v, double radius, double s);

/// H^{0,s} energy of v_Phi on the xi_h = 0 modes, summed over components.
double zero_horizontal_mode_energy(const VelocityState& v, double radius, double s);

/// Monitor at t = 0: theta = 0, Psi = ||e^{a|D3|} v0||^2_{H^{0,s}}.
AnalyticityState start_monitor(const VelocityState& v0, const AnalyticParams& params);

/// Advances theta by a trapezoid predictor-corrector: the predictor uses the
/// beginning-of-step radius at both ends, the corrector evaluates the end
/// rate at the predicted radius. The Psi integral uses the trapezoid rule
/// with the radius of each endpoint. Throws std::domain_error if the
/// beginning-of-step radius is negative.
AnalyticityState advance_monitor(const AnalyticityState& st, const VelocityState& v_before,
                                 const VelocityState& v_after, double dt);

// ---------------------------------------------------------------------------
// Bootstrap audit

struct AuditReport {
    double t = 0.0;
    double theta = 0.0;
    double theta_dot = 0.0;
    double psi = 0.0;
    double radius = 0.0;
    double prop31_lhs = 0.0;         ///< theta
    double prop31_rhs_factor = 0.0;  ///< exp(C0 Psi) (A + C0 int theta_dot Psi)
    double prop31_fit_c0 = 0.0;
    double prop32_lhs = 0.0;         ///< Psi
    double prop32_rhs_factor = 0.0;  ///< B exp(C1 Psi)
    double prop32_fit_c1 = 0.0;
    bool continuation_ok = false;    ///< theta <= 4 eta^2 and Psi <= 2 eta^2
    double zero_h_mode_energy = 0.0; ///< left out of the H^{-1/2,s} quantities
};

/// Running accumulators of the audit; plain data so runs can persist them.
struct AuditAccumulators {
    double data_neg_half = 0.0;     ///< A = ||e^{a|D3|} v0||^2_{H^{-1/2,s}}
    double data_zero = 0.0;         ///< B = ||e^{a|D3|} v0||^2_{H^{0,s}}
    double theta_psi_integral = 0.0; ///< int_0^t theta_dot Psi
    double c0 = 0.0;
    double c1 = 0.0;
    bool continuation_held = true;
    double theta_max = 0.0;
    double psi_max = 0.0;
};

/// Smallest C >= 0 with exp(C psi) (a + C j) >= theta (infinity if none).
double fit_prop31_constant(double theta, double psi, double a, double j);
/// Smallest C >= 0 with b exp(C psi) >= psi.
double fit_prop32_constant(double psi, double b);

/// Fits the smallest constants for which both propositions hold at every
/// step seen so far, independent of how often reports are taken.
class BootstrapAudit {
public:
    BootstrapAudit(const VelocityState& v0, const AnalyticParams& params);
    explicit BootstrapAudit(const AuditAccumulators& acc, const AnalyticParams& params);

    /// Accounts for the step from `before` to `after`.
    void record(const AnalyticityState& before, const AnalyticityState& after, double dt);

    AuditReport report(const VelocityState& v, const AnalyticityState& st) const;
    const AuditAccumulators& accumulators() const { return acc_; }

private:
    void absorb(const AnalyticityState& st);

    AnalyticParams params_;
    AuditAccumulators acc_;
};

// ---------------------------------------------------------------------------
// Diagnostics

struct PressureParts {
    SpectralField horizontal; ///< f (-Delta_eps)^{-1} d_i d_j (v^i v^j), i, j horizontal
    SpectralField mixed;      ///< 2 f (-Delta_eps)^{-1} d_i d3 (v^i v^3), i horizontal
    SpectralField vertical;   ///< -2 f (-Delta_eps)^{-1} d3 (v^3 div_h v^h)
};

/// Sums to pressure_solve for divergence-free v. f is the nonlinear factor.
PressureParts pressure_parts(const VelocityState& v, const RnsOptions& opts = {});

struct PressureNorms {
    double horizontal = 0.0;
    double mixed = 0.0;
    double vertical = 0.0;
};

/// H^{-1/2,s} norms of the three weighted pressure parts.
PressureNorms pressure_decomposition_diag(const VelocityState& v, const AnalyticityState& st,
                                          const RnsOptions& opts = {});

/// Grid suprema of the anisotropic pressure symbols, with L = |xi_h|^2 + eps^2 xi_3^2.
struct MultiplierBounds {
    double horizontal_pair = 0.0; ///< max_{i,j<=2} |xi_i xi_j| / L
    double vertical_pair = 0.0;   ///< eps^2 xi_3^2 / L
    double mixed = 0.0;           ///< max_{i<=2} |xi_i| |eps xi_3| / L
    double fractional = 0.0;      ///< |xi_h| |xi_h|^{1/2} |eps xi_3|^{1/2} / L

    double max() const;
};

MultiplierBounds multiplier_boundedness_diag(const Grid& grid, double eps);

/// Balance of the H^{0,s} energy of v_Phi: the radius-loss smoothing
/// lambda theta_dot || |D3|^{1/2} v_Phi ||^2_{H^{0,s}} against the transport
/// transfer |<(transport tendency)_Phi, v_Phi>_{H^{0,s}}|.
struct SmoothingBalance {
    double smoothing = 0.0;
    double transfer = 0.0;
    bool dominates() const { return smoothing >= transfer; }
};

SmoothingBalance smoothing_balance(const VelocityState& v, const AnalyticityState& st,
                                   const RnsOptions& opts = {});

} // namespace anse
