#pragma once

// Empirical checks of the Littlewood-Paley lemmas: Bernstein inequalities,
// the anisotropic product law and the c_{j,k} block profile. Constants are
// measured, never assumed; reports carry one record per trial.

#include "anse/lp_toolkit.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace anse {

// ---------------------------------------------------------------------------
// Bernstein

/// (p, q, |alpha|) with p, q in {1, 2, inf}; inf is encoded as 0.
struct BernsteinCase {
    int p = 2;
    int q = 2;
    int alpha = 0;
    auto operator<=>(const BernsteinCase&) const = default;
    std::string label() const;
};

/// The six cases checked: (p,q) in {(2,inf),(2,2),(1,2)} times |alpha| in {0,1}.
std::vector<BernsteinCase> bernstein_cases();

/// ||d^alpha f||_{L^q} / (2^{j|alpha| + 3j(1/p - 1/q)} ||f||_{L^p}), with
/// |alpha| = 1 meaning the largest of the three first derivatives. L^p norms
/// use the normalized measure on the box.
double bernstein_ratio(const SpectralField& f, int shell, const BernsteinCase& c);

/// Deterministic packet with coefficients phi(2^{-j}|xi|) (chi(|xi|) for j = -1).
SpectralField shell_packet(const Grid& grid, int shell);

struct BernsteinTrial {
    int shell = 0;
    int trial = 0; ///< -1 for the coherent shell packet
    std::uint64_t seed = 0;
    bool modulus = false; ///< trial field has nonnegative coefficients (f+ or packet)
    std::map<BernsteinCase, double> ratios;
};

struct BernsteinReport {
    std::vector<int> shells;
    std::vector<BernsteinTrial> trials;
    /// envelope[case][i] = max ratio over trials in shells[i].
    std::map<BernsteinCase, std::vector<double>> envelope;
    /// max/min of the envelope over shells >= 1, per case.
    std::map<BernsteinCase, double> spread;
    bool stable = false; ///< every spread <= 2
};

/// Per shell: the coherent packet, random shell-localized fields
/// phi(2^{-j}|xi|) f and their f+ companions, for every shell that fits
/// strictly inside the grid's band.
BernsteinReport verify_bernstein(const Grid& grid, int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Product law

struct ProductLawTrial {
    std::uint64_t seed = 0;
    double ratio = 0.0;          ///< Psi = 0
    double ratio_weighted = 0.0; ///< Psi = psi_rate |xi_3|
};

struct ProductLawReport {
    AnisoNormParams first;
    AnisoNormParams second;
    double psi_rate = 0.0;
    std::vector<ProductLawTrial> trials;
    double envelope = 0.0; ///< max ratio over all trials and both weights
};

/// ||(ab)_Psi||_{H^{s1+s2-1,s}} / (||a_Psi||_{H^{s1,s}} ||b_Psi||_{H^{s2,s}})
/// with Psi = psi_rate |xi_3|. The product is the dealiased product.
double product_law_ratio(const SpectralField& a, const SpectralField& b,
                         const AnisoNormParams& first, const AnisoNormParams& second,
                         double psi_rate = 0.0);

/// Throws std::invalid_argument unless sigma_i < 1, sigma_1 + sigma_2 > 0,
/// s > 1/2 and both params share s.
void check_product_hypotheses(const AnisoNormParams& first, const AnisoNormParams& second);

/// Trial field class used by the product-law sweep: analytic-type envelope
/// e^{-0.2|xi_3|} (1+|xi|^2)^{-2}, no xi_h = 0 content, inside the dealias band.
SpectralField product_trial_field(const Grid& grid, std::uint64_t seed);

ProductLawReport verify_product_law(const Grid& grid, const AnisoNormParams& first,
                                    const AnisoNormParams& second, int trials,
                                    std::uint64_t seed, double psi_rate = 0.1);

// ---------------------------------------------------------------------------
// c_{j,k} profile

struct CjkProfile {
    int j_min = 0;
    int k_min = 0;
    /// values[j - j_min][k - k_min]
    std::vector<std::vector<double>> values;
    double l1_sum = 0.0;
    std::size_t nonzero_count(double threshold = 1e-14) const;
};

/// Normalized block profile of T^v_a b + R^v_a b. Throws std::invalid_argument
/// when either input has zero norm.
CjkProfile cjk_profile(const SpectralField& a, const SpectralField& b,
                       const AnisoNormParams& first, const AnisoNormParams& second,
                       const DyadicPartition& part);

// ---------------------------------------------------------------------------
// Norm equivalence

struct NormEquivalenceReport {
    AnisoNormParams params;
    std::vector<double> ratios; ///< aniso_norm_lp / aniso_norm per trial
    double measured_k = 0.0;    ///< max over trials of max(r, 1/r)
};

/// Random fields without xi_h = 0 content, envelope (1+|xi|^2)^{-2}.
NormEquivalenceReport measure_norm_equivalence(const Grid& grid, const AnisoNormParams& p,
                                               int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Reporting

/// One JSON object per line for each trial record.
std::string to_json_lines(const BernsteinReport& report);
std::string to_json_lines(const ProductLawReport& report);
std::string to_json_lines(const NormEquivalenceReport& report);

/// Per-trial seed derivation shared by the verifiers.
std::uint64_t trial_seed(std::uint64_t base, int stream, int trial);

} // namespace anse
