#include "anse/rns_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace anse {

namespace {

double viscous_symbol(const Wavevector& xi, double eps)
{
    return xi.x1 * xi.x1 + xi.x2 * xi.x2 + eps * eps * xi.x3 * xi.x3;
}

double component(const Wavevector& xi, int axis)
{
    return axis == 0 ? xi.x1 : (axis == 1 ? xi.x2 : xi.x3);
}

// Butcher tableau with strictly lower-triangular a.
struct Tableau {
    std::vector<double> c;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
};

Tableau tableau(int order)
{
    switch (order) {
    case 2:
        return {{0.0, 1.0}, {{}, {1.0}}, {0.5, 0.5}};
    case 3:
        return {{0.0, 0.5, 1.0}, {{}, {0.5}, {-1.0, 2.0}}, {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}};
    case 4:
        return {{0.0, 0.5, 0.5, 1.0},
                {{}, {0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}},
                {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0}};
    default:
        throw std::invalid_argument("step: order must be 2, 3 or 4");
    }
}

// Viscous integrating factors e^{-L tau}, cached per tau within one step.
class IntegratingFactors {
public:
    IntegratingFactors(const Grid& grid, double eps) : symbol_(grid.size())
    {
        for_each_mode(grid, [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
            symbol_[idx] = viscous_symbol(xi, eps);
        });
    }

    const std::vector<double>& get(double tau)
    {
        auto it = cache_.find(tau);
        if (it == cache_.end()) {
            std::vector<double> e(symbol_.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = std::exp(-symbol_[i] * tau);
            }
            it = cache_.emplace(tau, std::move(e)).first;
        }
        return it->second;
    }

private:
    std::vector<double> symbol_;
    std::map<double, std::vector<double>> cache_;
};

// out += alpha * factor .* f
void add_scaled(SpectralField& out, double alpha, const std::vector<double>& factor,
                const SpectralField& f)
{
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += alpha * factor[i] * f[i];
    }
}

bool all_finite(const VelocityState& s)
{
    for (const auto& f : s.v) {
        for (const auto& c : f.coeffs()) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                return false;
            }
        }
    }
    return true;
}

double max_physical(const SpectralField& f)
{
    double m = 0.0;
    for (const auto& z : inverse_transform(f)) {
        m = std::max(m, std::abs(z.real()));
    }
    return m;
}

} // namespace

VectorField zero_vector_field(const Grid& grid)
{
    return {SpectralField(grid), SpectralField(grid), SpectralField(grid)};
}

VelocityState::VelocityState(const Grid& grid, double eps_, double t_)
    : v(zero_vector_field(grid)), t(t_), eps(eps_)
{
}

VelocityState::VelocityState(VectorField fields, double eps_, double t_)
    : v(std::move(fields)), t(t_), eps(eps_)
{
    require_same_grid(v[0], v[1], "VelocityState");
    require_same_grid(v[0], v[2], "VelocityState");
}

double RnsOptions::factor(double eps) const
{
    if (!nonlinear) {
        return 0.0;
    }
    return nonlinear_factor.value_or(std::sqrt(eps));
}

NumericalBlowUp::NumericalBlowUp(double time)
    : std::runtime_error("non-finite velocity at t = " + std::to_string(time)), time_(time)
{
}

double velocity_norm(const VelocityState& s)
{
    return std::sqrt(l2_norm_sq(s.v[0]) + l2_norm_sq(s.v[1]) + l2_norm_sq(s.v[2]));
}

double relative_divergence(const VelocityState& s)
{
    const double norm = velocity_norm(s);
    if (norm == 0.0) {
        return 0.0;
    }
    double worst = 0.0;
    for_each_mode(s.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const Complex d = xi.x1 * s.v[0][idx] + xi.x2 * s.v[1][idx] + xi.x3 * s.v[2][idx];
        worst = std::max(worst, std::abs(d));
    });
    return worst / norm;
}

double hermitian_drift(const VelocityState& s)
{
    return std::max({hermitian_defect(s.v[0]), hermitian_defect(s.v[1]), hermitian_defect(s.v[2])});
}

double weighted_energy(const VelocityState& s)
{
    return 0.5 * (l2_norm_sq(s.v[0]) + l2_norm_sq(s.v[1]) + l2_norm_sq(s.v[2]) / (s.eps * s.eps));
}

double dissipation_rate(const VelocityState& s)
{
    const double e2 = s.eps * s.eps;
    double sum = 0.0;
    for_each_mode(s.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const double h2 = xi.x1 * xi.x1 + xi.x2 * xi.x2;
        const double v2 = xi.x3 * xi.x3;
        const double horiz = std::norm(s.v[0][idx]) + std::norm(s.v[1][idx]);
        const double vert = std::norm(s.v[2][idx]);
        sum += (h2 + e2 * v2) * horiz + (h2 / e2 + v2) * vert;
    });
    return sum;
}

void leray_project(VelocityState& s)
{
    for_each_mode(s.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const double k2 = xi.x1 * xi.x1 + xi.x2 * xi.x2 + xi.x3 * xi.x3;
        if (k2 == 0.0) {
            return;
        }
        const Complex d = (xi.x1 * s.v[0][idx] + xi.x2 * s.v[1][idx] + xi.x3 * s.v[2][idx]) / k2;
        s.v[0][idx] -= xi.x1 * d;
        s.v[1][idx] -= xi.x2 * d;
        s.v[2][idx] -= xi.x3 * d;
    });
}

VectorField nonlinear_term(const VelocityState& s)
{
    const Grid& grid = s.grid();
    std::array<std::vector<Complex>, 3> phys;
    for (int i = 0; i < 3; ++i) {
        phys[i] = inverse_transform(dealias(s.v[i]));
    }
    // products[i][j] = hat(v^i v^j), symmetric
    std::array<std::array<std::optional<SpectralField>, 3>, 3> products;
    std::vector<Complex> buf(grid.size());
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            for (std::size_t p = 0; p < buf.size(); ++p) {
                buf[p] = Complex((phys[i][p] * phys[j][p]).real(), 0.0);
            }
            SpectralField f = dealias(forward_transform(std::span<const Complex>(buf), grid));
            f.set_real(true);
            products[i][j] = f;
            products[j][i] = std::move(f);
        }
    }
    VectorField out = zero_vector_field(grid);
    for_each_mode(grid, [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        for (int i = 0; i < 3; ++i) {
            Complex acc{};
            for (int j = 0; j < 3; ++j) {
                acc += Complex(0.0, component(xi, j)) * (*products[i][j])[idx];
            }
            out[i][idx] = acc;
        }
    });
    return out;
}

namespace {

SpectralField pressure_from(const VectorField& n, double factor, double eps)
{
    SpectralField q(n[0].grid());
    for_each_mode(q.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const double d = viscous_symbol(xi, eps);
        if (d == 0.0) {
            return;
        }
        const Complex div = Complex(0.0, xi.x1) * n[0][idx] + Complex(0.0, xi.x2) * n[1][idx] +
                            Complex(0.0, xi.x3) * n[2][idx];
        q[idx] = factor * div / d;
    });
    return q;
}

} // namespace

SpectralField pressure_solve(const VelocityState& s, const RnsOptions& opts)
{
    const double f = opts.factor(s.eps);
    if (f == 0.0) {
        return SpectralField(s.grid());
    }
    return pressure_from(nonlinear_term(s), f, s.eps);
}

VectorField transport_tendency(const VelocityState& s, const RnsOptions& opts)
{
    const double f = opts.factor(s.eps);
    VectorField out = zero_vector_field(s.grid());
    if (f == 0.0) {
        return out;
    }
    const VectorField n = nonlinear_term(s);
    const SpectralField q = pressure_from(n, f, s.eps);
    const double e2 = s.eps * s.eps;
    for_each_mode(s.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const Complex qi = Complex(0.0, 1.0) * q[idx];
        out[0][idx] = -f * n[0][idx] - xi.x1 * qi;
        out[1][idx] = -f * n[1][idx] - xi.x2 * qi;
        out[2][idx] = -f * n[2][idx] - e2 * xi.x3 * qi;
    });
    return out;
}

VectorField rhs_rns(const VelocityState& s, const RnsOptions& opts)
{
    VectorField out = transport_tendency(s, opts);
    for_each_mode(s.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const double l = viscous_symbol(xi, s.eps);
        for (int i = 0; i < 3; ++i) {
            out[i][idx] -= l * s.v[i][idx];
        }
    });
    return out;
}

VectorField rhs_ns(const VelocityState& u, bool nonlinear)
{
    VectorField out = zero_vector_field(u.grid());
    std::optional<VectorField> n;
    if (nonlinear) {
        n = nonlinear_term(u);
    }
    for_each_mode(u.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const double k2 = xi.x1 * xi.x1 + xi.x2 * xi.x2 + xi.x3 * xi.x3;
        for (int i = 0; i < 3; ++i) {
            out[i][idx] = -k2 * u.v[i][idx];
        }
        if (!n || k2 == 0.0) {
            return;
        }
        const Complex proj =
            (xi.x1 * (*n)[0][idx] + xi.x2 * (*n)[1][idx] + xi.x3 * (*n)[2][idx]) / k2;
        for (int i = 0; i < 3; ++i) {
            out[i][idx] -= (*n)[i][idx] - component(xi, i) * proj;
        }
    });
    return out;
}

double cfl_limit(const VelocityState& s, double cfl_safety, const RnsOptions& opts)
{
    const double f = opts.factor(s.eps);
    const Grid& g = s.grid();
    const double rate = f * (max_physical(s.v[0]) / g.dx_h() + max_physical(s.v[1]) / g.dx_h() +
                             max_physical(s.v[2]) / g.dx_v());
    if (rate == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return cfl_safety / rate;
}

void check_solver_config(const VelocityState& s, const SolverConfig& cfg, const RnsOptions& opts)
{
    if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0)) {
        throw std::invalid_argument("solver: dt and t_end must be positive");
    }
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety < 1.0)) {
        throw std::invalid_argument("solver: cfl_safety must lie in (0, 1)");
    }
    tableau(cfg.order);
    if (!(s.eps > 0.0 && s.eps <= 1.0)) {
        throw std::invalid_argument("solver: eps must lie in (0, 1]");
    }
    const double limit = cfl_limit(s, cfg.cfl_safety, opts);
    if (cfg.dt > limit) {
        throw std::invalid_argument("solver: dt = " + std::to_string(cfg.dt) +
                                    " violates the CFL limit " + std::to_string(limit));
    }
}

VelocityState step(const VelocityState& s, const SolverConfig& cfg, const RnsOptions& opts)
{
    const Tableau tab = tableau(cfg.order);
    const double h = cfg.dt;
    const std::size_t stages = tab.c.size();
    IntegratingFactors factors(s.grid(), s.eps);

    std::vector<VectorField> k;
    k.reserve(stages);
    for (std::size_t i = 0; i < stages; ++i) {
        VelocityState y(s.grid(), s.eps, s.t + tab.c[i] * h);
        const auto& e0 = factors.get(tab.c[i] * h);
        for (int comp = 0; comp < 3; ++comp) {
            add_scaled(y.v[comp], 1.0, e0, s.v[comp]);
            for (std::size_t j = 0; j < i; ++j) {
                const double aij = tab.a[i][j];
                if (aij == 0.0) {
                    continue;
                }
                add_scaled(y.v[comp], h * aij, factors.get((tab.c[i] - tab.c[j]) * h), k[j][comp]);
            }
        }
        k.push_back(transport_tendency(y, opts));
    }

    VelocityState out(s.grid(), s.eps, s.t + h);
    const auto& eh = factors.get(h);
    for (int comp = 0; comp < 3; ++comp) {
        add_scaled(out.v[comp], 1.0, eh, s.v[comp]);
        for (std::size_t j = 0; j < stages; ++j) {
            add_scaled(out.v[comp], h * tab.b[j], factors.get((1.0 - tab.c[j]) * h), k[j][comp]);
        }
    }
    if (!all_finite(out)) {
        throw NumericalBlowUp(out.t);
    }
    return out;
}

} // namespace anse
