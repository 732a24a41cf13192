#include "anse/checkpoint.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace anse {

namespace {

constexpr std::array<char, 4> kMagic{'A', 'N', 'S', 'E'};

void put_u32(std::ostream& out, std::uint32_t x)
{
    std::array<char, 4> b{};
    for (int i = 0; i < 4; ++i) {
        b[i] = static_cast<char>((x >> (8 * i)) & 0xffu);
    }
    out.write(b.data(), b.size());
}

void put_f64(std::ostream& out, double x)
{
    const auto bits = std::bit_cast<std::uint64_t>(x);
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) {
        b[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
    }
    out.write(b.data(), b.size());
}

std::uint64_t get_bytes(std::istream& in, int count)
{
    std::array<unsigned char, 8> b{};
    in.read(reinterpret_cast<char*>(b.data()), count);
    if (!in) {
        throw std::runtime_error("checkpoint: truncated file");
    }
    std::uint64_t x = 0;
    for (int i = count - 1; i >= 0; --i) {
        x = (x << 8) | b[i];
    }
    return x;
}

std::uint32_t get_u32(std::istream& in) { return static_cast<std::uint32_t>(get_bytes(in, 4)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_bytes(in, 8)); }

// Visits storage indices in lexicographic order of signed labels.
template <class Fn>
void for_each_lexicographic(const Grid& g, Fn&& fn)
{
    const int nh = g.n_h();
    const int nv = g.n_v();
    for (int k1 = -nh / 2 + 1; k1 <= nh / 2; ++k1) {
        for (int k2 = -nh / 2 + 1; k2 <= nh / 2; ++k2) {
            for (int k3 = -nv / 2 + 1; k3 <= nv / 2; ++k3) {
                fn(g.index(Grid::storage(k1, nh), Grid::storage(k2, nh), Grid::storage(k3, nv)));
            }
        }
    }
}

} // namespace

void write_checkpoint(std::ostream& out, const VelocityState& state, const CheckpointScalars& sc)
{
    const Grid& g = state.grid();
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, kCheckpointVersion);
    put_u32(out, static_cast<std::uint32_t>(g.n_h()));
    put_u32(out, static_cast<std::uint32_t>(g.n_v()));
    for (double x : {g.L_h(), g.L_v(), state.eps, state.t, sc.a, sc.lambda, sc.s, sc.theta, sc.psi}) {
        put_f64(out, x);
    }
    for (const auto& f : state.v) {
        for_each_lexicographic(g, [&](std::size_t idx) {
            put_f64(out, f[idx].real());
            put_f64(out, f[idx].imag());
        });
    }
    if (!out) {
        throw std::runtime_error("checkpoint: write failed");
    }
}

Checkpoint read_checkpoint(std::istream& in)
{
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw std::runtime_error("checkpoint: bad magic");
    }
    const std::uint32_t version = get_u32(in);
    if (version != kCheckpointVersion) {
        throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
    }
    const auto n_h = get_u32(in);
    const auto n_v = get_u32(in);
    if (n_h > 4096 || n_v > 4096) {
        throw std::runtime_error("checkpoint: implausible grid size");
    }
    const double L_h = get_f64(in);
    const double L_v = get_f64(in);
    const double eps = get_f64(in);
    const double t = get_f64(in);
    CheckpointScalars sc;
    sc.a = get_f64(in);
    sc.lambda = get_f64(in);
    sc.s = get_f64(in);
    sc.theta = get_f64(in);
    sc.psi = get_f64(in);

    std::optional<Grid> grid;
    try {
        grid.emplace(static_cast<int>(n_h), static_cast<int>(n_v), L_h, L_v);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("checkpoint: ") + e.what());
    }
    VelocityState state(*grid, eps, t);
    for (auto& f : state.v) {
        for_each_lexicographic(*grid, [&](std::size_t idx) {
            const double re = get_f64(in);
            const double im = get_f64(in);
            f[idx] = Complex(re, im);
        });
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw std::runtime_error("checkpoint: trailing bytes");
    }
    return {std::move(state), sc};
}

void save_checkpoint(const std::filesystem::path& path, const VelocityState& state,
                     const CheckpointScalars& sc)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("checkpoint: cannot open " + path.string());
    }
    write_checkpoint(out, state, sc);
}

Checkpoint load_checkpoint(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("checkpoint: cannot open " + path.string());
    }
    return read_checkpoint(in);
}

} // namespace anse
