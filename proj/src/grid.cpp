#include "anse/grid.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace anse {

Grid::Grid(int n_h, int n_v, double L_h, double L_v)
    : n_h_(n_h), n_v_(n_v), L_h_(L_h), L_v_(L_v)
{
    if (n_h < 8 || n_v < 8 || n_h % 2 != 0 || n_v % 2 != 0) {
        throw std::invalid_argument("Grid: n_h and n_v must be even and >= 8 (got " +
                                    std::to_string(n_h) + ", " + std::to_string(n_v) + ")");
    }
    if (!(L_h > 0.0) || !(L_v > 0.0) || !std::isfinite(L_h) || !std::isfinite(L_v)) {
        throw std::invalid_argument("Grid: box scales must be positive and finite");
    }
}

std::size_t Grid::index_of(const ModeIndex& k) const
{
    if (!contains(k)) {
        throw std::out_of_range("Grid::index_of: mode outside grid");
    }
    return index(storage(k.k1, n_h_), storage(k.k2, n_h_), storage(k.k3, n_v_));
}

std::size_t Grid::negated(std::size_t idx) const
{
    const std::size_t i3 = idx % n_v_;
    const std::size_t i2 = (idx / n_v_) % n_h_;
    const std::size_t i1 = idx / (static_cast<std::size_t>(n_v_) * n_h_);
    const auto neg = [](std::size_t i, int n) { return (n - static_cast<int>(i)) % n; };
    return index(neg(i1, n_h_), neg(i2, n_h_), neg(i3, n_v_));
}

ModeIndex Grid::mode(std::size_t idx) const
{
    const int i3 = static_cast<int>(idx % n_v_);
    const int i2 = static_cast<int>((idx / n_v_) % n_h_);
    const int i1 = static_cast<int>(idx / (static_cast<std::size_t>(n_v_) * n_h_));
    return {label(i1, n_h_), label(i2, n_h_), label(i3, n_v_)};
}

Wavevector Grid::wavevector(std::size_t idx) const
{
    const ModeIndex k = mode(idx);
    return {k.k1 / L_h_, k.k2 / L_h_, k.k3 / L_v_};
}

bool Grid::contains(const ModeIndex& k) const
{
    const auto in = [](int m, int n) { return m > -n / 2 && m <= n / 2; };
    return in(k.k1, n_h_) && in(k.k2, n_h_) && in(k.k3, n_v_);
}

bool Grid::in_dealias_band(const ModeIndex& k) const
{
    const int ch = dealias_cutoff_h();
    const int cv = dealias_cutoff_v();
    return std::abs(k.k1) <= ch && std::abs(k.k2) <= ch && std::abs(k.k3) <= cv;
}

double Grid::dx_h() const { return 2.0 * std::numbers::pi * L_h_ / n_h_; }
double Grid::dx_v() const { return 2.0 * std::numbers::pi * L_v_ / n_v_; }

} // namespace anse
