#pragma once

#include "anse/spectral_field.hpp"

#include <vector>

namespace anse {

/// Regularity pair of the anisotropic space H^{sigma,s}, with weight
/// |xi_h|^{2 sigma} (1 + xi_3^2)^s.
struct AnisoNormParams {
    double sigma = 0.0;
    double s = 0.0;
};

/// Largest ratio max(r, 1/r) of aniso_norm_lp / aniso_norm observed over
/// random fields without xi_h = 0 content, for (sigma, s) in
/// {(0,1), (1/2,1), (-1/2,1)} on 32^3 and 64^3 unit boxes; rounded up.
/// Measured with tools/anse `verify-lp` and asserted by the acceptance suite.
inline constexpr double kNormEquivalenceK = 4.0;

// ---------------------------------------------------------------------------
// Dyadic partition

/// chi: smooth, nonincreasing, 1 on [0, 3/4], 0 on [4/3, inf).
double lp_chi(double r);
/// phi(r) = chi(r/2) - chi(r), supported in [3/4, 8/3].
double lp_phi(double r);

enum class BlockDirection { vertical, horizontal };

/// Delta^v_j (j >= -1, with Delta^v_{-1} = S^v_0) or homogeneous
/// horizontal block Delta^h_j (j in Z).
struct BlockIndex {
    BlockDirection direction = BlockDirection::vertical;
    int j = 0;
};

/// Dyadic bumps sampled on the moduli of a grid, with the block ranges that
/// cover its vertical and horizontal spectra.
class DyadicPartition {
public:
    explicit DyadicPartition(const Grid& grid);

    const Grid& grid() const { return grid_; }

    int j_min() const { return -1; }
    int j_max() const { return j_max_; }
    int k_min() const { return k_min_; }
    int k_max() const { return k_max_; }

    /// Symbols of Delta^v_j and S^v_j at |xi_3|.
    double vertical_block(int j, double abs_xi3) const;
    double vertical_low(int j, double abs_xi3) const;
    /// Symbols of Delta^h_k and S^h_k at |xi_h|; both vanish at xi_h = 0.
    double horizontal_block(int k, double abs_xih) const;
    double horizontal_low(int k, double abs_xih) const;

    double symbol(const BlockIndex& b, const Wavevector& xi) const;

    /// max over grid modes of |chi + sum_j phi_j - 1| (vertical) and
    /// |sum_k phi_k - 1| over xi_h != 0 (horizontal).
    double vertical_residual() const;
    double horizontal_residual() const;

    /// Sampled bumps: chi(|xi_3|) and phi(|xi_3|) per vertical storage index.
    const std::vector<double>& sampled_chi() const { return chi_v_; }
    const std::vector<double>& sampled_phi() const { return phi_v_; }

private:
    Grid grid_;
    int j_max_ = 0;
    int k_min_ = 0;
    int k_max_ = 0;
    std::vector<double> chi_v_;
    std::vector<double> phi_v_;
};

/// Throws std::invalid_argument when the vertical band cannot host the
/// j = 0 shell (max |xi_3| < 8/3).
DyadicPartition build_partition(const Grid& grid);

/// Delta_j f for the block b.
SpectralField lp_block(const SpectralField& f, const BlockIndex& b, const DyadicPartition& part);
/// S_j f (vertical: chi(2^{-j}|xi_3|) for j >= 0, zero for j < 0;
/// horizontal: chi(2^{-j}|xi_h|) on xi_h != 0).
SpectralField lp_low(const SpectralField& f, const BlockIndex& b, const DyadicPartition& part);

// ---------------------------------------------------------------------------
// Norms

/// Weight |xi_h|^{2 sigma} (1 + xi_3^2)^s; modes with xi_h = 0 get weight 1
/// when sigma == 0 and 0 otherwise (sigma < 0: excluded by convention).
double aniso_weight(const Wavevector& xi, const AnisoNormParams& p);

/// ||e^{r|D_3|} f||^2_{H^{sigma,s}} without materializing the weighted field.
double aniso_norm_sq(const SpectralField& f, const AnisoNormParams& p, double radius = 0.0);
double aniso_norm(const SpectralField& f, const AnisoNormParams& p);

/// Energy sum (1 + xi_3^2)^s |e^{r|xi_3|} c|^2 over the xi_h = 0 modes, the
/// part that negative-sigma norms leave out.
double zero_horizontal_energy(const SpectralField& f, double s, double radius = 0.0);

/// Block-sum norm (sum_{j,k} 2^{2js} 2^{2k sigma} ||Delta_j Delta_k f||^2)^{1/2}.
double aniso_norm_lp(const SpectralField& f, const AnisoNormParams& p,
                     const DyadicPartition& part);

// ---------------------------------------------------------------------------
// Bony decompositions

struct VerticalBony {
    SpectralField paraproduct; ///< T^v_f g = sum_j S^v_{j-1} f Delta^v_j g
    SpectralField remainder;   ///< R^v_f g = sum_j Delta^v_j f S^v_{j+2} g
};

struct HorizontalBony {
    SpectralField paraproduct_fg; ///< T^h_f g
    SpectralField paraproduct_gf; ///< T^h_g f
    SpectralField remainder;      ///< R^h(f, g), including all xi_h = 0 content
};

/// T + R equals dealias_product(f, g) up to rounding.
VerticalBony bony_vertical(const SpectralField& f, const SpectralField& g,
                           const DyadicPartition& part);
/// T_fg + T_gf + R equals dealias_product(f, g) up to rounding.
HorizontalBony bony_horizontal(const SpectralField& f, const SpectralField& g,
                               const DyadicPartition& part);

} // namespace anse
