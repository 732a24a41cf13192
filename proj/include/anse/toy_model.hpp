#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

namespace anse {

/// Symbol of the order-one multiplier in front of the quadratic term.
enum class ToyMultiplier { modulus, derivative }; ///< |xi| or i xi

/// Coefficients u(xi) for integer xi in [-M, M].
class ToySpectrum {
public:
    explicit ToySpectrum(int max_mode);

    int max_mode() const { return max_mode_; }
    std::size_t size() const { return coeffs_.size(); }

    std::complex<double>& operator()(int xi) { return coeffs_[index(xi)]; }
    const std::complex<double>& operator()(int xi) const { return coeffs_[index(xi)]; }

    std::vector<std::complex<double>>& coeffs() { return coeffs_; }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

    /// u(-xi) == conj(u(xi)) exactly for every xi.
    bool is_hermitian() const;

private:
    std::size_t index(int xi) const;

    int max_mode_;
    std::vector<std::complex<double>> coeffs_;
};

struct ToyParams {
    double gamma = 1.0;
    double a = 0.5;
    double lambda = 1.0;
    ToyMultiplier multiplier = ToyMultiplier::modulus;
};

/// (u * v)(xi) = sum_eta u(eta) v(xi - eta), truncated to [-M, M].
ToySpectrum toy_convolve(const ToySpectrum& u, const ToySpectrum& v);

/// -gamma u - m(xi) (u * u)(xi).
ToySpectrum toy_rhs(const ToySpectrum& u, const ToyParams& params);

/// sum e^{r |xi|} |u(xi)|.
double toy_x_norm(const ToySpectrum& u, double weight_radius);

/// sum |xi| (|u| * |u|)(xi) / [2 (sum |xi| |u|)(sum |u|)]; at most 1 by
/// |xi| <= |xi - eta| + |eta|. Zero when the denominator vanishes.
double toy_quadratic_ratio(const ToySpectrum& u);

/// Largest toy_quadratic_ratio over seeded random Hermitian spectra with
/// envelopes e^{-r|xi|}, r log-uniform in [1e-2, 2], plus two-mode packets.
double measure_cquad(int max_mode, int trials, std::uint64_t seed);

/// Hermitian spectrum with Gaussian coefficients times e^{-(a + 1/2)|xi|},
/// zero mean mode, rescaled so that toy_x_norm(u, a) == eta0.
ToySpectrum toy_initial_data(int max_mode, double a, double eta0, std::uint64_t seed);

/// Share of toy_x_norm(u, r) carried by modes with |xi| > 0.9 M.
double toy_tail_fraction(const ToySpectrum& u, double weight_radius);

struct ToySample {
    double t = 0.0;
    double theta = 0.0;
    double x_norm_weighted = 0.0; ///< ||u_Phi||_X, which is also theta_dot
    double radius = 0.0;          ///< a - lambda theta
    double bound_rhs = 0.0;       ///< 2 eta0 e^{-gamma t}
};

struct ToyRunResult {
    std::vector<ToySample> samples;
    bool radius_exhausted = false;
    double exhaustion_time = 0.0;
    double max_tail_fraction = 0.0;
    double max_bound_excess = -std::numeric_limits<double>::infinity(); ///< max over samples of x_norm_weighted - bound_rhs
    ToySpectrum final_state{0};
    double final_theta = 0.0;
};

/// Classical RK4 on (u, theta) jointly with theta' = ||u_Phi||_X. Samples
/// every `sample_every` steps (and at t = 0); stops after a step leaving
/// theta > a / lambda. eta0 only enters bound_rhs.
ToyRunResult toy_run(const ToySpectrum& u0, const ToyParams& params, double dt, double t_end,
                     int sample_every, double eta0);

} // namespace anse
