#include "anse/spectral_field.hpp"

#include "anse/fft.hpp"

#include <algorithm>

namespace anse {

SpectralField& SpectralField::operator+=(const SpectralField& other)
{
    require_same_grid(*this, other, "SpectralField::operator+=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += other.coeffs_[i];
    }
    real_ = real_ && other.real_;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other)
{
    require_same_grid(*this, other, "SpectralField::operator-=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] -= other.coeffs_[i];
    }
    real_ = real_ && other.real_;
    return *this;
}

SpectralField& SpectralField::operator*=(double alpha)
{
    for (auto& c : coeffs_) {
        c *= alpha;
    }
    return *this;
}

SpectralField& SpectralField::operator*=(Complex alpha)
{
    for (auto& c : coeffs_) {
        c *= alpha;
    }
    real_ = real_ && alpha.imag() == 0.0;
    return *this;
}

SpectralField& SpectralField::axpy(Complex alpha, const SpectralField& other)
{
    require_same_grid(*this, other, "SpectralField::axpy");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += alpha * other.coeffs_[i];
    }
    real_ = real_ && other.real_ && alpha.imag() == 0.0;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double alpha, SpectralField f) { return f *= alpha; }
SpectralField operator*(Complex alpha, SpectralField f) { return f *= alpha; }

void require_same_grid(const SpectralField& f, const SpectralField& g, const char* where)
{
    if (!(f.grid() == g.grid())) {
        throw std::invalid_argument(std::string(where) + ": grid mismatch");
    }
}

SpectralField forward_transform(std::span<const double> values, const Grid& grid)
{
    if (values.size() != grid.size()) {
        throw std::invalid_argument("forward_transform: array size does not match grid");
    }
    SpectralField out(grid, true);
    auto c = out.coeffs();
    std::copy(values.begin(), values.end(), c.begin());
    fft::transform(c, grid, fft::Direction::forward);
    return out;
}

SpectralField forward_transform(std::span<const Complex> values, const Grid& grid)
{
    if (values.size() != grid.size()) {
        throw std::invalid_argument("forward_transform: array size does not match grid");
    }
    SpectralField out(grid, false);
    auto c = out.coeffs();
    std::copy(values.begin(), values.end(), c.begin());
    fft::transform(c, grid, fft::Direction::forward);
    return out;
}

std::vector<Complex> inverse_transform(const SpectralField& f)
{
    std::vector<Complex> out(f.coeffs().begin(), f.coeffs().end());
    fft::transform(out, f.grid(), fft::Direction::backward);
    return out;
}

std::vector<double> inverse_transform_real(const SpectralField& f)
{
    const auto values = inverse_transform(f);
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(),
                   [](const Complex& z) { return z.real(); });
    return out;
}

namespace symbols {

Multiplier derivative(int axis)
{
    if (axis < 0 || axis > 2) {
        throw std::invalid_argument("symbols::derivative: axis must be 0, 1 or 2");
    }
    return [axis](const Wavevector& xi) {
        const double k = axis == 0 ? xi.x1 : (axis == 1 ? xi.x2 : xi.x3);
        return Complex(0.0, k);
    };
}

Multiplier exp_vertical(double radius)
{
    return [radius](const Wavevector& xi) { return Complex(std::exp(radius * std::abs(xi.x3))); };
}

Multiplier horizontal_power(double sigma)
{
    return [sigma](const Wavevector& xi) {
        const double h = xi.horizontal_norm();
        if (h == 0.0) {
            return Complex(sigma == 0.0 ? 1.0 : 0.0);
        }
        return Complex(std::pow(h, sigma));
    };
}

Multiplier vertical_bracket(double s)
{
    return [s](const Wavevector& xi) { return Complex(std::pow(1.0 + xi.x3 * xi.x3, 0.5 * s)); };
}

Multiplier inverse_aniso_laplacian(double eps)
{
    return [eps](const Wavevector& xi) {
        const double d = xi.x1 * xi.x1 + xi.x2 * xi.x2 + eps * eps * xi.x3 * xi.x3;
        return Complex(d == 0.0 ? 0.0 : 1.0 / d);
    };
}

} // namespace symbols

SpectralField dealias(const SpectralField& f)
{
    SpectralField out(f.grid(), f.is_real());
    const Grid& grid = f.grid();
    for_each_mode(grid, [&](std::size_t idx, const ModeIndex& k, const Wavevector&) {
        if (grid.in_dealias_band(k)) {
            out[idx] = f[idx];
        }
    });
    return out;
}

SpectralField dealias_product(const SpectralField& f, const SpectralField& g)
{
    require_same_grid(f, g, "dealias_product");
    const auto pf = inverse_transform(dealias(f));
    auto pg = inverse_transform(dealias(g));
    const bool real = f.is_real() && g.is_real();
    for (std::size_t i = 0; i < pg.size(); ++i) {
        pg[i] *= pf[i];
        if (real) {
            pg[i].imag(0.0);
        }
    }
    SpectralField prod = forward_transform(std::span<const Complex>(pg), f.grid());
    prod.set_real(real);
    return dealias(prod);
}

SpectralField modulus_spectrum(const SpectralField& f)
{
    SpectralField out(f.grid(), f.is_real());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = std::abs(f[i]);
    }
    return out;
}

double l2_norm_sq(const SpectralField& f)
{
    double sum = 0.0;
    for (const auto& c : f.coeffs()) {
        sum += std::norm(c);
    }
    return sum;
}

double max_abs(const SpectralField& f)
{
    double m = 0.0;
    for (const auto& c : f.coeffs()) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

double max_abs_diff(const SpectralField& f, const SpectralField& g)
{
    require_same_grid(f, g, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        m = std::max(m, std::abs(f[i] - g[i]));
    }
    return m;
}

double hermitian_defect(const SpectralField& f)
{
    const Grid& grid = f.grid();
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        m = std::max(m, std::abs(f[grid.negated(i)] - std::conj(f[i])));
    }
    return m;
}

void make_hermitian(SpectralField& f)
{
    const Grid& grid = f.grid();
    std::vector<Complex> sym(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        sym[i] = 0.5 * (f[i] + std::conj(f[grid.negated(i)]));
    }
    std::copy(sym.begin(), sym.end(), f.coeffs().begin());
    f.set_real(true);
}

SpectralField random_field(const Grid& grid, std::mt19937_64& rng,
                           const RandomFieldOptions& options)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    SpectralField f(grid, true);
    for_each_mode(grid, [&](std::size_t idx, const ModeIndex& k, const Wavevector& xi) {
        // Draw unconditionally so the stream does not depend on the filters.
        const double re = normal(rng);
        const double im = normal(rng);
        const bool nyquist = k.k1 == grid.n_h() / 2 || k.k2 == grid.n_h() / 2 ||
                             k.k3 == grid.n_v() / 2;
        if (nyquist) {
            return;
        }
        if (options.dealias_band && !grid.in_dealias_band(k)) {
            return;
        }
        if (options.drop_zero_horizontal && k.k1 == 0 && k.k2 == 0) {
            return;
        }
        f[idx] = options.envelope(xi) * Complex(re, im);
    });
    make_hermitian(f);
    return f;
}

} // namespace anse
