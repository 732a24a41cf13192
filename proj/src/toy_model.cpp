#include "anse/toy_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace anse {

using Complex = std::complex<double>;

ToySpectrum::ToySpectrum(int max_mode) : max_mode_(max_mode)
{
    if (max_mode < 0) {
        throw std::invalid_argument("ToySpectrum: max_mode must be nonnegative");
    }
    coeffs_.assign(2 * static_cast<std::size_t>(max_mode) + 1, Complex{});
}

std::size_t ToySpectrum::index(int xi) const
{
    if (xi < -max_mode_ || xi > max_mode_) {
        throw std::out_of_range("ToySpectrum: mode out of range");
    }
    return static_cast<std::size_t>(xi + max_mode_);
}

bool ToySpectrum::is_hermitian() const
{
    for (int xi = 0; xi <= max_mode_; ++xi) {
        if ((*this)(-xi) != std::conj((*this)(xi))) {
            return false;
        }
    }
    return true;
}

namespace {

void require_same_size(const ToySpectrum& u, const ToySpectrum& v)
{
    if (u.max_mode() != v.max_mode()) {
        throw std::invalid_argument("toy: spectra of different sizes");
    }
}

Complex convolve_at(const ToySpectrum& u, const ToySpectrum& v, int xi)
{
    const int m = u.max_mode();
    const int lo = std::max(-m, xi - m);
    const int hi = std::min(m, xi + m);
    const auto& a = u.coeffs();
    const auto& b = v.coeffs();
    // u(eta) v(xi - eta), with storage offsets eta + m and xi - eta + m.
    double re = 0.0;
    double im = 0.0;
    for (int eta = lo; eta <= hi; ++eta) {
        const Complex& x = a[eta + m];
        const Complex& y = b[xi - eta + m];
        re += x.real() * y.real() - x.imag() * y.imag();
        im += x.real() * y.imag() + x.imag() * y.real();
    }
    return {re, im};
}

ToySpectrum axpy(const ToySpectrum& u, double alpha, const ToySpectrum& k)
{
    ToySpectrum out = u;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.coeffs()[i] += alpha * k.coeffs()[i];
    }
    return out;
}

} // namespace

ToySpectrum toy_convolve(const ToySpectrum& u, const ToySpectrum& v)
{
    require_same_size(u, v);
    const int m = u.max_mode();
    ToySpectrum out(m);
    // The product of two Hermitian spectra is Hermitian: evaluate xi >= 0 only.
    if (u.is_hermitian() && v.is_hermitian()) {
        for (int xi = 0; xi <= m; ++xi) {
            out(xi) = convolve_at(u, v, xi);
        }
        out(0) = Complex(out(0).real(), 0.0);
        for (int xi = 1; xi <= m; ++xi) {
            out(-xi) = std::conj(out(xi));
        }
        return out;
    }
    for (int xi = -m; xi <= m; ++xi) {
        out(xi) = convolve_at(u, v, xi);
    }
    return out;
}

ToySpectrum toy_rhs(const ToySpectrum& u, const ToyParams& params)
{
    const ToySpectrum q = toy_convolve(u, u);
    ToySpectrum out(u.max_mode());
    for (int xi = -u.max_mode(); xi <= u.max_mode(); ++xi) {
        const Complex m = params.multiplier == ToyMultiplier::modulus
                              ? Complex(std::abs(xi), 0.0)
                              : Complex(0.0, static_cast<double>(xi));
        out(xi) = -params.gamma * u(xi) - m * q(xi);
    }
    return out;
}

double toy_x_norm(const ToySpectrum& u, double weight_radius)
{
    double sum = 0.0;
    for (int xi = -u.max_mode(); xi <= u.max_mode(); ++xi) {
        sum += std::exp(weight_radius * std::abs(xi)) * std::abs(u(xi));
    }
    return sum;
}

double toy_quadratic_ratio(const ToySpectrum& u)
{
    ToySpectrum mod(u.max_mode());
    for (std::size_t i = 0; i < u.size(); ++i) {
        mod.coeffs()[i] = std::abs(u.coeffs()[i]);
    }
    const ToySpectrum conv = toy_convolve(mod, mod);
    double numer = 0.0;
    double weighted = 0.0;
    double plain = 0.0;
    for (int xi = -u.max_mode(); xi <= u.max_mode(); ++xi) {
        numer += std::abs(xi) * conv(xi).real();
        weighted += std::abs(xi) * mod(xi).real();
        plain += mod(xi).real();
    }
    const double denom = 2.0 * weighted * plain;
    return denom == 0.0 ? 0.0 : numer / denom;
}

double measure_cquad(int max_mode, int trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double r = 1e-2 * std::pow(200.0, unit(rng));
        ToySpectrum u(max_mode);
        for (int xi = 1; xi <= max_mode; ++xi) {
            const double re = normal(rng);
            const double im = normal(rng);
            u(xi) = std::exp(-r * xi) * Complex(re, im);
            u(-xi) = std::conj(u(xi));
        }
        best = std::max(best, toy_quadratic_ratio(u));
    }
    for (int k = 1; k <= std::min(max_mode, 8); ++k) {
        ToySpectrum u(max_mode);
        u(k) = 1.0;
        u(-k) = 1.0;
        best = std::max(best, toy_quadratic_ratio(u));
    }
    return best;
}

ToySpectrum toy_initial_data(int max_mode, double a, double eta0, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ToySpectrum u(max_mode);
    for (int xi = 1; xi <= max_mode; ++xi) {
        const double re = normal(rng);
        const double im = normal(rng);
        u(xi) = std::exp(-(a + 0.5) * xi) * Complex(re, im);
        u(-xi) = std::conj(u(xi));
    }
    const double norm = toy_x_norm(u, a);
    if (norm == 0.0) {
        throw std::invalid_argument("toy_initial_data: zero sample");
    }
    for (auto& c : u.coeffs()) {
        c *= eta0 / norm;
    }
    return u;
}

double toy_tail_fraction(const ToySpectrum& u, double weight_radius)
{
    const double total = toy_x_norm(u, weight_radius);
    if (total == 0.0) {
        return 0.0;
    }
    double tail = 0.0;
    for (int xi = -u.max_mode(); xi <= u.max_mode(); ++xi) {
        if (std::abs(xi) > 0.9 * u.max_mode()) {
            tail += std::exp(weight_radius * std::abs(xi)) * std::abs(u(xi));
        }
    }
    return tail / total;
}

ToyRunResult toy_run(const ToySpectrum& u0, const ToyParams& params, double dt, double t_end,
                     int sample_every, double eta0)
{
    if (!(dt > 0.0) || !(t_end > 0.0) || sample_every < 1) {
        throw std::invalid_argument("toy_run: dt, t_end and sample_every must be positive");
    }
    if (!(params.gamma > 0.0) || !(params.a > 0.0) || !(params.lambda > 0.0)) {
        throw std::invalid_argument("toy_run: gamma, a and lambda must be positive");
    }
    const auto theta_rate = [&](const ToySpectrum& u, double theta) {
        return toy_x_norm(u, params.a - params.lambda * theta);
    };

    ToyRunResult result;
    ToySpectrum u = u0;
    double theta = 0.0;
    double t = 0.0;
    const auto sample = [&] {
        ToySample s;
        s.t = t;
        s.theta = theta;
        s.x_norm_weighted = theta_rate(u, theta);
        s.radius = params.a - params.lambda * theta;
        s.bound_rhs = 2.0 * eta0 * std::exp(-params.gamma * t);
        result.max_bound_excess = std::max(result.max_bound_excess, s.x_norm_weighted - s.bound_rhs);
        result.max_tail_fraction =
            std::max(result.max_tail_fraction, toy_tail_fraction(u, std::max(s.radius, 0.0)));
        result.samples.push_back(s);
    };
    sample();

    const long steps = std::lround(t_end / dt);
    for (long n = 1; n <= steps; ++n) {
        const ToySpectrum k1 = toy_rhs(u, params);
        const double l1 = theta_rate(u, theta);
        const ToySpectrum u2 = axpy(u, 0.5 * dt, k1);
        const double th2 = theta + 0.5 * dt * l1;
        const ToySpectrum k2 = toy_rhs(u2, params);
        const double l2 = theta_rate(u2, th2);
        const ToySpectrum u3 = axpy(u, 0.5 * dt, k2);
        const double th3 = theta + 0.5 * dt * l2;
        const ToySpectrum k3 = toy_rhs(u3, params);
        const double l3 = theta_rate(u3, th3);
        const ToySpectrum u4 = axpy(u, dt, k3);
        const double th4 = theta + dt * l3;
        const ToySpectrum k4 = toy_rhs(u4, params);
        const double l4 = theta_rate(u4, th4);
        for (std::size_t i = 0; i < u.size(); ++i) {
            u.coeffs()[i] += dt / 6.0 *
                             (k1.coeffs()[i] + 2.0 * k2.coeffs()[i] + 2.0 * k3.coeffs()[i] +
                              k4.coeffs()[i]);
        }
        theta += dt / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
        t = n * dt;
        const bool exhausted = params.a - params.lambda * theta < 0.0;
        if (n % sample_every == 0 || n == steps || exhausted) {
            sample();
        }
        if (exhausted) {
            result.radius_exhausted = true;
            result.exhaustion_time = t;
            break;
        }
    }
    result.final_state = u;
    result.final_theta = theta;
    return result;
}

} // namespace anse
