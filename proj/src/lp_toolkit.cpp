#include "anse/lp_toolkit.hpp"

#include "anse/fft.hpp"

#include <algorithm>
#include <cmath>

namespace anse {

namespace {

double smooth_step(double t)
{
    // exp(-1/t) / (exp(-1/t) + exp(-1/(1-t))), C-infinity on R.
    if (t <= 0.0) {
        return 0.0;
    }
    if (t >= 1.0) {
        return 1.0;
    }
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

constexpr double kInner = 3.0 / 4.0;
constexpr double kOuter = 4.0 / 3.0;

// Physical-space accumulator for sums of products sum_i A_i * B_i.
class ProductSum {
public:
    explicit ProductSum(const Grid& grid) : grid_(grid), acc_(grid.size()) {}

    void add(const SpectralField& a, const SpectralField& b)
    {
        const auto pa = inverse_transform(a);
        const auto pb = inverse_transform(b);
        for (std::size_t i = 0; i < acc_.size(); ++i) {
            acc_[i] += pa[i] * pb[i];
        }
        real_ = real_ && a.is_real() && b.is_real();
    }

    SpectralField finish()
    {
        if (real_) {
            for (auto& z : acc_) {
                z.imag(0.0);
            }
        }
        SpectralField out = forward_transform(std::span<const Complex>(acc_), grid_);
        out.set_real(real_);
        return dealias(out);
    }

private:
    Grid grid_;
    std::vector<Complex> acc_;
    bool real_ = true;
};

} // namespace

double lp_chi(double r)
{
    r = std::abs(r);
    return smooth_step((kOuter - r) / (kOuter - kInner));
}

double lp_phi(double r) { return lp_chi(0.5 * r) - lp_chi(r); }

DyadicPartition::DyadicPartition(const Grid& grid) : grid_(grid)
{
    const double xi3_max = (grid.n_v() / 2) / grid.L_v();
    if (xi3_max < 8.0 / 3.0) {
        throw std::invalid_argument(
            "build_partition: vertical band too small to host one full dyadic shell");
    }
    j_max_ = 0;
    while (std::ldexp(xi3_max, -(j_max_ + 1)) > kInner) {
        ++j_max_;
    }
    const double xih_max = std::sqrt(2.0) * (grid.n_h() / 2) / grid.L_h();
    const double xih_min = 1.0 / grid.L_h();
    k_max_ = static_cast<int>(std::floor(std::log2(xih_min)));
    while (std::ldexp(xih_max, -(k_max_ + 1)) > kInner) {
        ++k_max_;
    }
    k_min_ = static_cast<int>(std::floor(std::log2(3.0 * xih_min / 8.0))) + 1;
    while (lp_phi(std::ldexp(xih_min, -(k_min_ - 1))) > 0.0) {
        --k_min_;
    }

    chi_v_.resize(grid.n_v());
    phi_v_.resize(grid.n_v());
    for (int i = 0; i < grid.n_v(); ++i) {
        const double r = std::abs(Grid::label(i, grid.n_v()) / grid.L_v());
        chi_v_[i] = lp_chi(r);
        phi_v_[i] = lp_phi(r);
    }
}

double DyadicPartition::vertical_block(int j, double abs_xi3) const
{
    if (j < -1) {
        return 0.0;
    }
    if (j == -1) {
        return lp_chi(abs_xi3);
    }
    return lp_phi(std::ldexp(abs_xi3, -j));
}

double DyadicPartition::vertical_low(int j, double abs_xi3) const
{
    if (j < 0) {
        return 0.0;
    }
    return lp_chi(std::ldexp(abs_xi3, -j));
}

double DyadicPartition::horizontal_block(int k, double abs_xih) const
{
    if (abs_xih == 0.0) {
        return 0.0;
    }
    return lp_phi(std::ldexp(abs_xih, -k));
}

double DyadicPartition::horizontal_low(int k, double abs_xih) const
{
    if (abs_xih == 0.0) {
        return 0.0;
    }
    return lp_chi(std::ldexp(abs_xih, -k));
}

double DyadicPartition::symbol(const BlockIndex& b, const Wavevector& xi) const
{
    return b.direction == BlockDirection::vertical ? vertical_block(b.j, std::abs(xi.x3))
                                                   : horizontal_block(b.j, xi.horizontal_norm());
}

double DyadicPartition::vertical_residual() const
{
    double worst = 0.0;
    for (int i = 0; i < grid_.n_v(); ++i) {
        const double r = std::abs(Grid::label(i, grid_.n_v()) / grid_.L_v());
        double sum = 0.0;
        for (int j = j_min(); j <= j_max_; ++j) {
            sum += vertical_block(j, r);
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

double DyadicPartition::horizontal_residual() const
{
    double worst = 0.0;
    for (int i1 = 0; i1 < grid_.n_h(); ++i1) {
        for (int i2 = 0; i2 < grid_.n_h(); ++i2) {
            const double r = std::hypot(Grid::label(i1, grid_.n_h()) / grid_.L_h(),
                                        Grid::label(i2, grid_.n_h()) / grid_.L_h());
            if (r == 0.0) {
                continue;
            }
            double sum = 0.0;
            for (int k = k_min_; k <= k_max_; ++k) {
                sum += horizontal_block(k, r);
            }
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    }
    return worst;
}

DyadicPartition build_partition(const Grid& grid) { return DyadicPartition(grid); }

SpectralField lp_block(const SpectralField& f, const BlockIndex& b, const DyadicPartition& part)
{
    return apply_multiplier(f, [&](const Wavevector& xi) { return part.symbol(b, xi); });
}

SpectralField lp_low(const SpectralField& f, const BlockIndex& b, const DyadicPartition& part)
{
    if (b.direction == BlockDirection::vertical) {
        return apply_multiplier(
            f, [&](const Wavevector& xi) { return part.vertical_low(b.j, std::abs(xi.x3)); });
    }
    return apply_multiplier(
        f, [&](const Wavevector& xi) { return part.horizontal_low(b.j, xi.horizontal_norm()); });
}

double aniso_weight(const Wavevector& xi, const AnisoNormParams& p)
{
    const double h = xi.horizontal_norm();
    double wh = 1.0;
    if (h == 0.0) {
        wh = p.sigma == 0.0 ? 1.0 : 0.0;
    } else if (p.sigma != 0.0) {
        wh = std::pow(h, 2.0 * p.sigma);
    }
    return wh * std::pow(1.0 + xi.x3 * xi.x3, p.s);
}

double aniso_norm_sq(const SpectralField& f, const AnisoNormParams& p, double radius)
{
    double sum = 0.0;
    for_each_mode(f.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const double c2 = std::norm(f[idx]);
        if (c2 == 0.0) {
            return;
        }
        const double w = radius == 0.0 ? 1.0 : std::exp(2.0 * radius * std::abs(xi.x3));
        sum += aniso_weight(xi, p) * w * c2;
    });
    return sum;
}

double aniso_norm(const SpectralField& f, const AnisoNormParams& p)
{
    return std::sqrt(aniso_norm_sq(f, p));
}

double zero_horizontal_energy(const SpectralField& f, double s, double radius)
{
    double sum = 0.0;
    for_each_mode(f.grid(), [&](std::size_t idx, const ModeIndex& k, const Wavevector& xi) {
        if (k.k1 != 0 || k.k2 != 0) {
            return;
        }
        sum += std::pow(1.0 + xi.x3 * xi.x3, s) * std::exp(2.0 * radius * std::abs(xi.x3)) *
               std::norm(f[idx]);
    });
    return sum;
}

double aniso_norm_lp(const SpectralField& f, const AnisoNormParams& p,
                     const DyadicPartition& part)
{
    const Grid& grid = f.grid();
    std::vector<double> wv(grid.n_v());
    for (int i = 0; i < grid.n_v(); ++i) {
        const double v = std::abs(Grid::label(i, grid.n_v()) / grid.L_v());
        for (int j = part.j_min(); j <= part.j_max(); ++j) {
            const double b = part.vertical_block(j, v);
            wv[i] += std::exp2(2.0 * j * p.s) * b * b;
        }
    }
    const auto nh = static_cast<std::size_t>(grid.n_h());
    std::vector<double> wh(nh * nh);
    for (std::size_t i1 = 0; i1 < nh; ++i1) {
        for (std::size_t i2 = 0; i2 < nh; ++i2) {
            const double h = std::hypot(Grid::label(static_cast<int>(i1), grid.n_h()),
                                        Grid::label(static_cast<int>(i2), grid.n_h())) /
                             grid.L_h();
            double w = 0.0;
            for (int k = part.k_min(); k <= part.k_max(); ++k) {
                const double b = part.horizontal_block(k, h);
                w += std::exp2(2.0 * k * p.sigma) * b * b;
            }
            wh[i1 * nh + i2] = w;
        }
    }
    const auto nv = static_cast<std::size_t>(grid.n_v());
    double sum = 0.0;
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        sum += wh[idx / nv] * wv[idx % nv] * std::norm(f[idx]);
    }
    return std::sqrt(sum);
}

VerticalBony bony_vertical(const SpectralField& f, const SpectralField& g,
                           const DyadicPartition& part)
{
    require_same_grid(f, g, "bony_vertical");
    if (!(f.grid() == part.grid())) {
        throw std::invalid_argument("bony_vertical: partition built for another grid");
    }
    const SpectralField ft = dealias(f);
    const SpectralField gt = dealias(g);
    ProductSum para(f.grid());
    ProductSum rem(f.grid());
    const auto vb = [&](const SpectralField& h, int j) {
        return lp_block(h, {BlockDirection::vertical, j}, part);
    };
    const auto vl = [&](const SpectralField& h, int j) {
        return lp_low(h, {BlockDirection::vertical, j}, part);
    };
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        if (j - 1 >= 0) {
            para.add(vl(ft, j - 1), vb(gt, j));
        }
        rem.add(vb(ft, j), vl(gt, j + 2));
    }
    return {para.finish(), rem.finish()};
}

HorizontalBony bony_horizontal(const SpectralField& f, const SpectralField& g,
                               const DyadicPartition& part)
{
    require_same_grid(f, g, "bony_horizontal");
    if (!(f.grid() == part.grid())) {
        throw std::invalid_argument("bony_horizontal: partition built for another grid");
    }
    const SpectralField ft = dealias(f);
    const SpectralField gt = dealias(g);
    const auto hb = [&](const SpectralField& h, int k) {
        return lp_block(h, {BlockDirection::horizontal, k}, part);
    };
    const auto hl = [&](const SpectralField& h, int k) {
        return lp_low(h, {BlockDirection::horizontal, k}, part);
    };
    const auto zero_h = [](const SpectralField& h) {
        return apply_multiplier(h, [](const Wavevector& xi) {
            return xi.x1 == 0.0 && xi.x2 == 0.0 ? 1.0 : 0.0;
        });
    };

    ProductSum t_fg(f.grid());
    ProductSum t_gf(f.grid());
    ProductSum rem(f.grid());
    for (int k = part.k_min(); k <= part.k_max(); ++k) {
        const SpectralField fk = hb(ft, k);
        const SpectralField gk = hb(gt, k);
        t_fg.add(hl(ft, k - 1), gk);
        t_gf.add(hl(gt, k - 1), fk);
        SpectralField near = hb(gt, k - 1);
        near += gk;
        near += hb(gt, k + 1);
        rem.add(fk, near);
    }
    const SpectralField f0 = zero_h(ft);
    const SpectralField g0 = zero_h(gt);
    rem.add(f0, gt);
    rem.add(ft - f0, g0);
    return {t_fg.finish(), t_gf.finish(), rem.finish()};
}

} // namespace anse
