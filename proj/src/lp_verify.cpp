#include "anse/lp_verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace anse {

namespace {

// Shells j <= 0 hold a handful of lattice points and sit off the dyadic scaling.
constexpr int kSpreadMinShell = 1;

double lp_norm(const std::vector<Complex>& values, int p)
{
    if (p == 0) {
        double m = 0.0;
        for (const auto& z : values) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }
    double sum = 0.0;
    for (const auto& z : values) {
        sum += std::pow(std::abs(z), p);
    }
    return std::pow(sum / static_cast<double>(values.size()), 1.0 / p);
}

double inverse_exponent(int p) { return p == 0 ? 0.0 : 1.0 / p; }

double shell_symbol(int shell, double r)
{
    return shell < 0 ? lp_chi(r) : lp_phi(std::ldexp(r, -shell));
}

double block_norm_sq(const SpectralField& h, const DyadicPartition& part, int j, int k)
{
    double sum = 0.0;
    for_each_mode(h.grid(), [&](std::size_t idx, const ModeIndex&, const Wavevector& xi) {
        const double c2 = std::norm(h[idx]);
        if (c2 == 0.0) {
            return;
        }
        const double bv = part.vertical_block(j, std::abs(xi.x3));
        const double bh = part.horizontal_block(k, xi.horizontal_norm());
        sum += bv * bv * bh * bh * c2;
    });
    return sum;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t base, int stream, int trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                      static_cast<std::uint32_t>(stream + 1000), static_cast<std::uint32_t>(trial)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// ---------------------------------------------------------------------------
// Bernstein

std::string BernsteinCase::label() const
{
    const auto name = [](int e) { return e == 0 ? std::string("inf") : std::to_string(e); };
    return "p=" + name(p) + ",q=" + name(q) + ",alpha=" + std::to_string(alpha);
}

std::vector<BernsteinCase> bernstein_cases()
{
    std::vector<BernsteinCase> out;
    for (const auto& [p, q] : {std::pair{2, 0}, std::pair{2, 2}, std::pair{1, 2}}) {
        for (int alpha = 0; alpha <= 1; ++alpha) {
            out.push_back({p, q, alpha});
        }
    }
    return out;
}

namespace {

// Physical values of f and its three first derivatives.
struct BernsteinSamples {
    std::vector<Complex> value;
    std::array<std::vector<Complex>, 3> gradient;
};

BernsteinSamples sample_for_bernstein(const SpectralField& f)
{
    BernsteinSamples out;
    out.value = inverse_transform(f);
    for (int axis = 0; axis < 3; ++axis) {
        out.gradient[axis] = inverse_transform(apply_multiplier(f, symbols::derivative(axis)));
    }
    return out;
}

double bernstein_ratio(const BernsteinSamples& samples, int shell, const BernsteinCase& c)
{
    const double denom_norm = lp_norm(samples.value, c.p);
    if (denom_norm == 0.0) {
        throw std::invalid_argument("bernstein_ratio: zero field");
    }
    double numer = 0.0;
    if (c.alpha == 0) {
        numer = lp_norm(samples.value, c.q);
    } else {
        for (const auto& d : samples.gradient) {
            numer = std::max(numer, lp_norm(d, c.q));
        }
    }
    const double exponent =
        shell * c.alpha + 3.0 * shell * (inverse_exponent(c.p) - inverse_exponent(c.q));
    return numer / (std::exp2(exponent) * denom_norm);
}

} // namespace

double bernstein_ratio(const SpectralField& f, int shell, const BernsteinCase& c)
{
    return bernstein_ratio(sample_for_bernstein(f), shell, c);
}

SpectralField shell_packet(const Grid& grid, int shell)
{
    SpectralField f(grid, true);
    for_each_mode(grid, [&](std::size_t idx, const ModeIndex& k, const Wavevector& xi) {
        const bool nyquist = k.k1 == grid.n_h() / 2 || k.k2 == grid.n_h() / 2 ||
                             k.k3 == grid.n_v() / 2;
        if (!nyquist) {
            f[idx] = shell_symbol(shell, xi.norm());
        }
    });
    return f;
}

BernsteinReport verify_bernstein(const Grid& grid, int trials, std::uint64_t seed)
{
    if (trials < 1) {
        throw std::invalid_argument("verify_bernstein: trials must be >= 1");
    }
    const double band =
        std::min((grid.n_h() / 2 - 1) / grid.L_h(), (grid.n_v() / 2 - 1) / grid.L_v());
    BernsteinReport report;
    for (int j = -1; std::ldexp(8.0 / 3.0, j) <= band; ++j) {
        report.shells.push_back(j);
    }
    const auto cases = bernstein_cases();
    for (const auto& c : cases) {
        report.envelope[c].assign(report.shells.size(), 0.0);
    }

    for (std::size_t si = 0; si < report.shells.size(); ++si) {
        const int j = report.shells[si];
        const auto record = [&](BernsteinTrial rec, const SpectralField& g) {
            const BernsteinSamples samples = sample_for_bernstein(g);
            for (const auto& c : cases) {
                const double r = bernstein_ratio(samples, j, c);
                rec.ratios[c] = r;
                report.envelope[c][si] = std::max(report.envelope[c][si], r);
            }
            report.trials.push_back(std::move(rec));
        };
        // trial -1 is the coherent packet, the near-extremal case for L^p -> L^q.
        record(BernsteinTrial{j, -1, 0, true, {}}, shell_packet(grid, j));
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t s = trial_seed(seed, j, t);
            std::mt19937_64 rng(s);
            RandomFieldOptions opts;
            opts.dealias_band = false;
            opts.envelope = [j](const Wavevector& xi) { return shell_symbol(j, xi.norm()); };
            const SpectralField f = random_field(grid, rng, opts);
            record(BernsteinTrial{j, t, s, false, {}}, f);
            record(BernsteinTrial{j, t, s, true, {}}, modulus_spectrum(f));
        }
    }

    report.stable = true;
    for (const auto& c : cases) {
        double lo = INFINITY;
        double hi = 0.0;
        for (std::size_t si = 0; si < report.shells.size(); ++si) {
            if (report.shells[si] < kSpreadMinShell) {
                continue;
            }
            lo = std::min(lo, report.envelope[c][si]);
            hi = std::max(hi, report.envelope[c][si]);
        }
        const double spread = hi / lo;
        report.spread[c] = spread;
        report.stable = report.stable && spread <= 2.0;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Product law

void check_product_hypotheses(const AnisoNormParams& first, const AnisoNormParams& second)
{
    if (!(first.sigma < 1.0) || !(second.sigma < 1.0)) {
        throw std::invalid_argument("product law: sigma_1, sigma_2 must be < 1");
    }
    if (!(first.sigma + second.sigma > 0.0)) {
        throw std::invalid_argument("product law: sigma_1 + sigma_2 must be > 0");
    }
    if (!(first.s > 0.5) || first.s != second.s) {
        throw std::invalid_argument("product law: s must exceed 1/2 and be shared");
    }
}

double product_law_ratio(const SpectralField& a, const SpectralField& b,
                         const AnisoNormParams& first, const AnisoNormParams& second,
                         double psi_rate)
{
    const SpectralField ab = dealias_product(a, b);
    const AnisoNormParams target{first.sigma + second.sigma - 1.0, first.s};
    const double na = std::sqrt(aniso_norm_sq(a, first, psi_rate));
    const double nb = std::sqrt(aniso_norm_sq(b, second, psi_rate));
    if (na == 0.0 || nb == 0.0) {
        throw std::invalid_argument("product_law_ratio: zero norm factor");
    }
    return std::sqrt(aniso_norm_sq(ab, target, psi_rate)) / (na * nb);
}

SpectralField product_trial_field(const Grid& grid, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    RandomFieldOptions opts;
    opts.drop_zero_horizontal = true;
    opts.envelope = [](const Wavevector& xi) {
        const double r2 = xi.x1 * xi.x1 + xi.x2 * xi.x2 + xi.x3 * xi.x3;
        return std::exp(-0.2 * std::abs(xi.x3)) / ((1.0 + r2) * (1.0 + r2));
    };
    return random_field(grid, rng, opts);
}

ProductLawReport verify_product_law(const Grid& grid, const AnisoNormParams& first,
                                    const AnisoNormParams& second, int trials,
                                    std::uint64_t seed, double psi_rate)
{
    check_product_hypotheses(first, second);
    if (trials < 1) {
        throw std::invalid_argument("verify_product_law: trials must be >= 1");
    }
    ProductLawReport report{first, second, psi_rate, {}, 0.0};
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t s = trial_seed(seed, 7, t);
        const SpectralField a = product_trial_field(grid, s);
        const SpectralField b = product_trial_field(grid, s ^ 0x9e3779b97f4a7c15ULL);
        ProductLawTrial rec{s, product_law_ratio(a, b, first, second, 0.0),
                            product_law_ratio(a, b, first, second, psi_rate)};
        report.envelope = std::max({report.envelope, rec.ratio, rec.ratio_weighted});
        report.trials.push_back(rec);
    }
    return report;
}

// ---------------------------------------------------------------------------
// c_{j,k}

std::size_t CjkProfile::nonzero_count(double threshold) const
{
    std::size_t n = 0;
    for (const auto& row : values) {
        n += std::count_if(row.begin(), row.end(), [&](double v) { return v > threshold; });
    }
    return n;
}

CjkProfile cjk_profile(const SpectralField& a, const SpectralField& b,
                       const AnisoNormParams& first, const AnisoNormParams& second,
                       const DyadicPartition& part)
{
    const double na = aniso_norm(a, first);
    const double nb = aniso_norm(b, second);
    if (na == 0.0 || nb == 0.0) {
        throw std::invalid_argument("cjk_profile: input with zero norm");
    }
    const VerticalBony bony = bony_vertical(a, b, part);
    const SpectralField product = bony.paraproduct + bony.remainder;

    CjkProfile out;
    out.j_min = part.j_min();
    out.k_min = part.k_min();
    const double s = first.s;
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        std::vector<double> row;
        for (int k = part.k_min(); k <= part.k_max(); ++k) {
            const double block = std::sqrt(block_norm_sq(product, part, j, k));
            const double scale =
                std::exp2((1.0 - first.sigma - second.sigma) * k) * std::exp2(-j * s) * na * nb;
            row.push_back(block / scale);
            out.l1_sum += row.back();
        }
        out.values.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Norm equivalence

NormEquivalenceReport measure_norm_equivalence(const Grid& grid, const AnisoNormParams& p,
                                               int trials, std::uint64_t seed)
{
    const DyadicPartition part(grid);
    NormEquivalenceReport report{p, {}, 0.0};
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(trial_seed(seed, 11, t));
        RandomFieldOptions opts;
        opts.drop_zero_horizontal = true;
        opts.dealias_band = false;
        opts.envelope = [](const Wavevector& xi) {
            const double r2 = xi.x1 * xi.x1 + xi.x2 * xi.x2 + xi.x3 * xi.x3;
            return 1.0 / ((1.0 + r2) * (1.0 + r2));
        };
        const SpectralField f = random_field(grid, rng, opts);
        const double r = aniso_norm_lp(f, p, part) / aniso_norm(f, p);
        report.ratios.push_back(r);
        report.measured_k = std::max({report.measured_k, r, 1.0 / r});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Reporting

std::string to_json_lines(const BernsteinReport& report)
{
    std::ostringstream out;
    for (const auto& t : report.trials) {
        nlohmann::json rec;
        rec["kind"] = "bernstein";
        rec["shell"] = t.shell;
        rec["trial"] = t.trial;
        rec["seed"] = t.seed;
        rec["modulus"] = t.modulus;
        for (const auto& [c, r] : t.ratios) {
            rec["ratios"][c.label()] = r;
        }
        out << rec.dump() << '\n';
    }
    nlohmann::json env;
    env["kind"] = "bernstein_envelope";
    env["shells"] = report.shells;
    for (const auto& [c, values] : report.envelope) {
        env["envelope"][c.label()] = values;
        env["spread"][c.label()] = report.spread.at(c);
    }
    env["stable"] = report.stable;
    out << env.dump() << '\n';
    return out.str();
}

std::string to_json_lines(const ProductLawReport& report)
{
    std::ostringstream out;
    for (const auto& t : report.trials) {
        nlohmann::json rec;
        rec["kind"] = "product_law";
        rec["seed"] = t.seed;
        rec["sigma1"] = report.first.sigma;
        rec["sigma2"] = report.second.sigma;
        rec["s"] = report.first.s;
        rec["ratio"] = t.ratio;
        rec["ratio_weighted"] = t.ratio_weighted;
        out << rec.dump() << '\n';
    }
    nlohmann::json env;
    env["kind"] = "product_law_envelope";
    env["sigma1"] = report.first.sigma;
    env["sigma2"] = report.second.sigma;
    env["s"] = report.first.s;
    env["psi_rate"] = report.psi_rate;
    env["envelope"] = report.envelope;
    out << env.dump() << '\n';
    return out.str();
}

std::string to_json_lines(const NormEquivalenceReport& report)
{
    std::ostringstream out;
    for (std::size_t t = 0; t < report.ratios.size(); ++t) {
        nlohmann::json rec;
        rec["kind"] = "norm_equivalence";
        rec["trial"] = t;
        rec["sigma"] = report.params.sigma;
        rec["s"] = report.params.s;
        rec["ratio"] = report.ratios[t];
        out << rec.dump() << '\n';
    }
    nlohmann::json env;
    env["kind"] = "norm_equivalence_envelope";
    env["sigma"] = report.params.sigma;
    env["s"] = report.params.s;
    env["measured_k"] = report.measured_k;
    out << env.dump() << '\n';
    return out.str();
}

} // namespace anse
