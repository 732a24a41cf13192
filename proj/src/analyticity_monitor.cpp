#include "anse/analyticity_monitor.hpp"

#include "anse/lp_toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace anse {

namespace {

// Separable mode weight w_h(xi_h) w_v(xi_3), tabulated per axis.
struct WeightTable {
    std::vector<double> horizontal; ///< indexed by i1 * n_h + i2
    std::vector<double> vertical;   ///< indexed by i3
};

WeightTable weight_table(const Grid& g, double sigma, double s, double radius)
{
    WeightTable w;
    const int nh = g.n_h();
    w.horizontal.resize(static_cast<std::size_t>(nh) * nh);
    for (int i1 = 0; i1 < nh; ++i1) {
        for (int i2 = 0; i2 < nh; ++i2) {
            const double h = std::hypot(Grid::label(i1, nh), Grid::label(i2, nh)) / g.L_h();
            double wh = 1.0;
            if (h == 0.0) {
                wh = sigma == 0.0 ? 1.0 : 0.0;
            } else if (sigma != 0.0) {
                wh = std::pow(h, 2.0 * sigma);
            }
            w.horizontal[static_cast<std::size_t>(i1) * nh + i2] = wh;
        }
    }
    w.vertical.resize(g.n_v());
    for (int i3 = 0; i3 < g.n_v(); ++i3) {
        const double x3 = std::abs(Grid::label(i3, g.n_v()) / g.L_v());
        w.vertical[i3] = std::pow(1.0 + x3 * x3, s) * std::exp(2.0 * radius * x3);
    }
    return w;
}

double weighted_sum(const SpectralField& f, const WeightTable& w)
{
    const std::size_t nv = w.vertical.size();
    double sum = 0.0;
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        const double c2 = std::norm(f[idx]);
        if (c2 != 0.0) {
            sum += w.horizontal[idx / nv] * w.vertical[idx % nv] * c2;
        }
    }
    return sum;
}

double velocity_sum(const VelocityState& v, double sigma, double s, double radius)
{
    const WeightTable w = weight_table(v.grid(), sigma, s, radius);
    return weighted_sum(v.v[0], w) + weighted_sum(v.v[1], w) + weighted_sum(v.v[2], w);
}

double inverse_aniso(const Wavevector& xi, double eps)
{
    const double d = xi.x1 * xi.x1 + xi.x2 * xi.x2 + eps * eps * xi.x3 * xi.x3;
    return d == 0.0 ? 0.0 : 1.0 / d;
}

} // namespace

void AnalyticParams::validate() const
{
    if (!(a > 0.0) || !(lambda > 0.0) || !(eta > 0.0)) {
        throw std::invalid_argument("analytic: a, lambda and eta must be positive");
    }
    if (!(s > 0.5)) {
        throw std::invalid_argument("analytic: s must exceed 1/2");
    }
}

VelocityState weighted_field(const VelocityState& v, double radius)
{
    if (radius < 0.0) {
        throw std::domain_error("weighted_field: analyticity radius exhausted");
    }
    VelocityState out(v.grid(), v.eps, v.t);
    const auto mult = symbols::exp_vertical(radius);
    for (int i = 0; i < 3; ++i) {
        out.v[i] = apply_multiplier(v.v[i], mult);
    }
    return out;
}

VelocityState weighted_field(const VelocityState& v, const AnalyticityState& st)
{
    return weighted_field(v, st.radius());
}

double theta_rate(const VelocityState& v, double radius, double s)
{
    const WeightTable w = weight_table(v.grid(), 0.5, s, radius);
    return v.eps * (weighted_sum(v.v[0], w) + weighted_sum(v.v[1], w)) + weighted_sum(v.v[2], w);
}

double theta_dot(const VelocityState& v, const AnalyticityState& st)
{
    if (st.radius() < 0.0) {
        throw std::domain_error("theta_dot: analyticity radius exhausted");
    }
    return theta_rate(v, st.radius(), st.params.s);
}

double weighted_energy_hs(const VelocityState& v, double radius, double s)
{
    return velocity_sum(v, 0.0, s, radius);
}

double weighted_dissipation_hs(const VelocityState& v, double radius, double s)
{
    return velocity_sum(v, 1.0, s, radius);
}

double zero_horizontal_mode_energy(const VelocityState& v, double radius, double s)
{
    double sum = 0.0;
    for (const auto& f : v.v) {
        sum += zero_horizontal_energy(f, s, radius);
    }
    return sum;
}

AnalyticityState start_monitor(const VelocityState& v0, const AnalyticParams& params)
{
    params.validate();
    AnalyticityState st;
    st.params = params;
    st.eps = v0.eps;
    st.theta_dot = theta_rate(v0, params.a, params.s);
    st.psi = weighted_energy_hs(v0, params.a, params.s);
    return st;
}

AnalyticityState advance_monitor(const AnalyticityState& st, const VelocityState& v_before,
                                 const VelocityState& v_after, double dt)
{
    if (!(dt > 0.0)) {
        throw std::invalid_argument("advance_monitor: dt must be positive");
    }
    const double r0 = st.radius();
    if (r0 < 0.0) {
        throw std::domain_error("advance_monitor: analyticity radius exhausted");
    }
    const double s = st.params.s;
    const double lambda = st.params.lambda;
    const double rate0 = theta_rate(v_before, r0, s);
    const double predicted = st.theta + 0.5 * dt * (rate0 + theta_rate(v_after, r0, s));
    const double rate1 = theta_rate(v_after, st.params.a - lambda * predicted, s);

    AnalyticityState out = st;
    out.theta = st.theta + 0.5 * dt * (rate0 + rate1);
    const double r1 = out.radius();
    out.theta_dot = theta_rate(v_after, r1, s);
    out.psi_integral = st.psi_integral + 0.5 * dt *
                                             (weighted_dissipation_hs(v_before, r0, s) +
                                              weighted_dissipation_hs(v_after, r1, s));
    out.psi = weighted_energy_hs(v_after, r1, s) + out.psi_integral;
    return out;
}

// ---------------------------------------------------------------------------
// Audit

double fit_prop31_constant(double theta, double psi, double a, double j)
{
    if (theta <= a) {
        return 0.0;
    }
    const auto rhs = [&](double c) { return std::exp(c * psi) * (a + c * j); };
    if (psi == 0.0 && j == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    double lo = 0.0;
    double hi = 1.0;
    while (rhs(hi) < theta) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            return std::numeric_limits<double>::infinity();
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (rhs(mid) >= theta) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double fit_prop32_constant(double psi, double b)
{
    if (psi <= b) {
        return 0.0;
    }
    if (b <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::log(psi / b) / psi;
}

BootstrapAudit::BootstrapAudit(const VelocityState& v0, const AnalyticParams& params)
    : params_(params)
{
    const AnalyticityState st = start_monitor(v0, params);
    acc_.data_neg_half = velocity_sum(v0, -0.5, params.s, params.a);
    acc_.data_zero = st.psi;
    absorb(st);
}

BootstrapAudit::BootstrapAudit(const AuditAccumulators& acc, const AnalyticParams& params)
    : params_(params), acc_(acc)
{
}

void BootstrapAudit::absorb(const AnalyticityState& st)
{
    acc_.c0 = std::max(acc_.c0, fit_prop31_constant(st.theta, st.psi, acc_.data_neg_half,
                                                    acc_.theta_psi_integral));
    acc_.c1 = std::max(acc_.c1, fit_prop32_constant(st.psi, acc_.data_zero));
    const double eta2 = params_.eta * params_.eta;
    acc_.continuation_held =
        acc_.continuation_held && st.theta <= 4.0 * eta2 && st.psi <= 2.0 * eta2;
    acc_.theta_max = std::max(acc_.theta_max, st.theta);
    acc_.psi_max = std::max(acc_.psi_max, st.psi);
}

void BootstrapAudit::record(const AnalyticityState& before, const AnalyticityState& after,
                            double dt)
{
    acc_.theta_psi_integral +=
        0.5 * dt * (before.theta_dot * before.psi + after.theta_dot * after.psi);
    absorb(after);
}

AuditReport BootstrapAudit::report(const VelocityState& v, const AnalyticityState& st) const
{
    AuditReport r;
    r.t = v.t;
    r.theta = st.theta;
    r.theta_dot = st.theta_dot;
    r.psi = st.psi;
    r.radius = st.radius();
    r.prop31_lhs = st.theta;
    r.prop31_fit_c0 = acc_.c0;
    r.prop31_rhs_factor =
        std::exp(acc_.c0 * st.psi) * (acc_.data_neg_half + acc_.c0 * acc_.theta_psi_integral);
    r.prop32_lhs = st.psi;
    r.prop32_fit_c1 = acc_.c1;
    r.prop32_rhs_factor = acc_.data_zero * std::exp(acc_.c1 * st.psi);
    const double eta2 = params_.eta * params_.eta;
    r.continuation_ok = st.theta <= 4.0 * eta2 && st.psi <= 2.0 * eta2;
    r.zero_h_mode_energy = zero_horizontal_mode_energy(v, st.radius(), params_.s);
    return r;
}

// ---------------------------------------------------------------------------
// Diagnostics

PressureParts pressure_parts(const VelocityState& v, const RnsOptions& opts)
{
    const Grid& g = v.grid();
    const double f = opts.factor(v.eps);
    PressureParts out{SpectralField(g), SpectralField(g), SpectralField(g)};
    if (f == 0.0) {
        return out;
    }
    const SpectralField p11 = dealias_product(v.v[0], v.v[0]);
    const SpectralField p12 = dealias_product(v.v[0], v.v[1]);
    const SpectralField p22 = dealias_product(v.v[1], v.v[1]);
    const SpectralField p13 = dealias_product(v.v[0], v.v[2]);
    const SpectralField p23 = dealias_product(v.v[1], v.v[2]);
    SpectralField div_h = apply_multiplier(v.v[0], symbols::derivative(0));
    div_h += apply_multiplier(v.v[1], symbols::derivative(1));
    const SpectralField q3 = dealias_product(v.v[2], div_h);

    for_each_mode(g, [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const double inv = inverse_aniso(xi, v.eps);
        if (inv == 0.0) {
            return;
        }
        const Complex hh = xi.x1 * xi.x1 * p11[idx] + 2.0 * xi.x1 * xi.x2 * p12[idx] +
                           xi.x2 * xi.x2 * p22[idx];
        out.horizontal[idx] = -f * inv * hh;
        out.mixed[idx] = -2.0 * f * inv * xi.x3 * (xi.x1 * p13[idx] + xi.x2 * p23[idx]);
        out.vertical[idx] = -2.0 * f * inv * Complex(0.0, xi.x3) * q3[idx];
    });
    return out;
}

PressureNorms pressure_decomposition_diag(const VelocityState& v, const AnalyticityState& st,
                                          const RnsOptions& opts)
{
    const PressureParts parts = pressure_parts(v, opts);
    const AnisoNormParams p{-0.5, st.params.s};
    const double r = st.radius();
    if (r < 0.0) {
        throw std::domain_error("pressure_decomposition_diag: analyticity radius exhausted");
    }
    return {std::sqrt(aniso_norm_sq(parts.horizontal, p, r)),
            std::sqrt(aniso_norm_sq(parts.mixed, p, r)),
            std::sqrt(aniso_norm_sq(parts.vertical, p, r))};
}

double MultiplierBounds::max() const
{
    return std::max({horizontal_pair, vertical_pair, mixed, fractional});
}

MultiplierBounds multiplier_boundedness_diag(const Grid& grid, double eps)
{
    if (!(eps > 0.0)) {
        throw std::invalid_argument("multiplier_boundedness_diag: eps must be positive");
    }
    MultiplierBounds b;
    for_each_mode(grid, [&](std::size_t, const ModeIndex&, const Wavevector& xi) {
        const double inv = inverse_aniso(xi, eps);
        if (inv == 0.0) {
            return;
        }
        const double a1 = std::abs(xi.x1);
        const double a2 = std::abs(xi.x2);
        const double h = xi.horizontal_norm();
        const double v = std::abs(eps * xi.x3);
        b.horizontal_pair = std::max({b.horizontal_pair, a1 * a1 * inv, a1 * a2 * inv, a2 * a2 * inv});
        b.vertical_pair = std::max(b.vertical_pair, v * v * inv);
        b.mixed = std::max(b.mixed, std::max(a1, a2) * v * inv);
        b.fractional = std::max(b.fractional, h * std::sqrt(h * v) * inv);
    });
    return b;
}

SmoothingBalance smoothing_balance(const VelocityState& v, const AnalyticityState& st,
                                   const RnsOptions& opts)
{
    const double r = st.radius();
    const VelocityState w = weighted_field(v, r);
    const VectorField g = transport_tendency(v, opts);
    const double s = st.params.s;
    SmoothingBalance out;
    double transfer = 0.0;
    for_each_mode(v.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const double x3 = std::abs(xi.x3);
        const double ws = std::pow(1.0 + x3 * x3, s);
        const double e = std::exp(r * x3);
        for (int i = 0; i < 3; ++i) {
            out.smoothing += ws * x3 * std::norm(w.v[i][idx]);
            transfer += ws * (std::conj(w.v[i][idx]) * e * g[i][idx]).real();
        }
    });
    out.smoothing *= st.params.lambda * st.theta_dot;
    out.transfer = std::abs(transfer);
    return out;
}

} // namespace anse
