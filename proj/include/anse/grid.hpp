#pragma once

#include <cmath>
#include <cstddef>

namespace anse {

/// Physical wavevector xi = (xi_1, xi_2, xi_3) of one grid mode.
struct Wavevector {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    double horizontal_norm() const { return std::hypot(x1, x2); }
    double norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }
};

/// Integer mode labels (k1, k2, k3); xi_i = k_i / L.
struct ModeIndex {
    int k1 = 0;
    int k2 = 0;
    int k3 = 0;
    bool operator==(const ModeIndex&) const = default;
};

/// Anisotropic periodic box [0, 2 pi L_h)^2 x [0, 2 pi L_v) sampled with
/// n_h x n_h x n_v points. Storage is row-major with x3 fastest.
///
/// Mode labels on an axis with n points are k in {-n/2+1, ..., n/2}; the
/// storage index i maps to k = i for i <= n/2 and k = i - n otherwise.
class Grid {
public:
    Grid(int n_h, int n_v, double L_h = 1.0, double L_v = 1.0);

    int n_h() const { return n_h_; }
    int n_v() const { return n_v_; }
    double L_h() const { return L_h_; }
    double L_v() const { return L_v_; }
    std::size_t size() const { return static_cast<std::size_t>(n_h_) * n_h_ * n_v_; }

    std::size_t index(int i1, int i2, int i3) const
    {
        return (static_cast<std::size_t>(i1) * n_h_ + i2) * n_v_ + i3;
    }
    /// Storage index of the mode with labels k (each must lie in the axis range).
    std::size_t index_of(const ModeIndex& k) const;
    /// Storage index of the mode -k (the Nyquist label maps onto itself).
    std::size_t negated(std::size_t idx) const;

    ModeIndex mode(std::size_t idx) const;
    Wavevector wavevector(std::size_t idx) const;

    static int label(int i, int n) { return i <= n / 2 ? i : i - n; }
    static int storage(int k, int n) { return k >= 0 ? k : k + n; }

    bool contains(const ModeIndex& k) const;

    /// Largest |k| kept by the 2/3 rule on each axis; quadratic products of
    /// fields supported in |k_i| <= cutoff never alias back onto that band.
    int dealias_cutoff_h() const { return (n_h_ - 1) / 3; }
    int dealias_cutoff_v() const { return (n_v_ - 1) / 3; }
    bool in_dealias_band(const ModeIndex& k) const;

    /// Grid spacing in physical space.
    double dx_h() const;
    double dx_v() const;

    bool operator==(const Grid& other) const = default;

private:
    int n_h_;
    int n_v_;
    double L_h_;
    double L_v_;
};

/// Visits every mode as fn(storage index, integer labels, wavevector).
template <class Fn>
void for_each_mode(const Grid& grid, Fn&& fn)
{
    const int nh = grid.n_h();
    const int nv = grid.n_v();
    std::size_t idx = 0;
    for (int i1 = 0; i1 < nh; ++i1) {
        const int k1 = Grid::label(i1, nh);
        const double x1 = k1 / grid.L_h();
        for (int i2 = 0; i2 < nh; ++i2) {
            const int k2 = Grid::label(i2, nh);
            const double x2 = k2 / grid.L_h();
            for (int i3 = 0; i3 < nv; ++i3, ++idx) {
                const int k3 = Grid::label(i3, nv);
                fn(idx, ModeIndex{k1, k2, k3}, Wavevector{x1, x2, k3 / grid.L_v()});
            }
        }
    }
}

} // namespace anse
