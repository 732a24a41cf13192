#pragma once

#include "anse/grid.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace anse {

using Complex = std::complex<double>;

/// Fourier coefficients c_xi of a scalar field on a Grid, with the convention
/// f(x) = sum_xi c_xi e^{i xi.x}. The `real` flag records that the field
/// represents a real-valued function, i.e. c(-xi) = conj(c(xi)).
class SpectralField {
public:
    explicit SpectralField(const Grid& grid, bool real = true)
        : grid_(grid), coeffs_(grid.size()), real_(real)
    {
    }

    const Grid& grid() const { return grid_; }
    bool is_real() const { return real_; }
    void set_real(bool real) { real_ = real; }

    std::size_t size() const { return coeffs_.size(); }
    std::span<Complex> coeffs() { return coeffs_; }
    std::span<const Complex> coeffs() const { return coeffs_; }

    Complex& operator[](std::size_t idx) { return coeffs_[idx]; }
    const Complex& operator[](std::size_t idx) const { return coeffs_[idx]; }

    Complex& at(const ModeIndex& k) { return coeffs_[grid_.index_of(k)]; }
    const Complex& at(const ModeIndex& k) const { return coeffs_[grid_.index_of(k)]; }

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double alpha);
    SpectralField& operator*=(Complex alpha);

    /// Adds alpha * other in place.
    SpectralField& axpy(Complex alpha, const SpectralField& other);

private:
    Grid grid_;
    std::vector<Complex> coeffs_;
    bool real_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double alpha, SpectralField f);
SpectralField operator*(Complex alpha, SpectralField f);

/// Throws std::invalid_argument when the grids differ.
void require_same_grid(const SpectralField& f, const SpectralField& g, const char* where);

// ---------------------------------------------------------------------------
// Transforms

SpectralField forward_transform(std::span<const double> values, const Grid& grid);
SpectralField forward_transform(std::span<const Complex> values, const Grid& grid);
std::vector<Complex> inverse_transform(const SpectralField& f);
/// Real part of the inverse transform; meaningful for fields flagged real.
std::vector<double> inverse_transform_real(const SpectralField& f);

// ---------------------------------------------------------------------------
// Multipliers

/// Symbol xi -> m(xi). Singular symbols must return a finite value at their
/// singular modes (by convention 0).
using Multiplier = std::function<Complex(const Wavevector&)>;

/// Pointwise product of the coefficients with the symbol. Throws
/// std::domain_error if the symbol is not finite at a mode carrying a
/// nonzero coefficient.
template <class Symbol>
SpectralField apply_multiplier(const SpectralField& f, Symbol&& symbol)
{
    SpectralField out(f.grid(), f.is_real());
    for_each_mode(f.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const Complex c = f[idx];
        if (c == Complex{}) {
            return;
        }
        const Complex m = Complex(symbol(xi));
        if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
            throw std::domain_error("apply_multiplier: symbol not finite at an occupied mode");
        }
        out[idx] = m * c;
    });
    return out;
}

namespace symbols {

/// i xi_axis, axis in {0, 1, 2}.
Multiplier derivative(int axis);
/// e^{r |xi_3|}.
Multiplier exp_vertical(double radius);
/// |xi_h|^sigma, value 0 at xi_h = 0 when sigma < 0.
Multiplier horizontal_power(double sigma);
/// (1 + xi_3^2)^{s/2}.
Multiplier vertical_bracket(double s);
/// (|xi_h|^2 + eps^2 xi_3^2)^{-1}, value 0 at xi = 0.
Multiplier inverse_aniso_laplacian(double eps);

} // namespace symbols

// ---------------------------------------------------------------------------
// Products and spectral maps

/// Zeroes every mode outside the 2/3-rule band.
SpectralField dealias(const SpectralField& f);

/// Spectrum of f*g truncated to the 2/3 band. Both inputs are truncated to
/// the band first, so the retained modes are the exact convolution of the
/// truncated inputs.
SpectralField dealias_product(const SpectralField& f, const SpectralField& g);

/// f+ : coefficients replaced by their moduli.
SpectralField modulus_spectrum(const SpectralField& f);

// ---------------------------------------------------------------------------
// Utilities

/// sum |c_xi|^2 (the L^2 norm squared in the normalized-volume convention).
double l2_norm_sq(const SpectralField& f);
double max_abs(const SpectralField& f);
double max_abs_diff(const SpectralField& f, const SpectralField& g);
/// max |c(-xi) - conj(c(xi))|.
double hermitian_defect(const SpectralField& f);
/// Replaces c by the Hermitian part (c(xi) + conj(c(-xi)))/2 and zeroes the
/// self-conjugate Nyquist labels' imaginary parts.
void make_hermitian(SpectralField& f);

struct RandomFieldOptions {
    /// Amplitude envelope as a function of the wavevector.
    std::function<double(const Wavevector&)> envelope = [](const Wavevector&) { return 1.0; };
    /// Restrict to the dealias band (keeps quadratic products exact).
    bool dealias_band = true;
    /// Drop xi_h = 0 modes.
    bool drop_zero_horizontal = false;
};

/// Real random field with Gaussian coefficients times the envelope.
SpectralField random_field(const Grid& grid, std::mt19937_64& rng,
                           const RandomFieldOptions& options = {});

} // namespace anse
