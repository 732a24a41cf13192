#pragma once

#include "anse/rns_solver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>

namespace anse {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Monitor scalars stored in the checkpoint header next to the state.
struct CheckpointScalars {
    double a = 0.0;
    double lambda = 0.0;
    double s = 0.0;
    double theta = 0.0;
    double psi = 0.0;
};

struct Checkpoint {
    VelocityState state;
    CheckpointScalars scalars;
};

/// Binary layout, all little-endian: "ANSE", u32 version, u32 n_h, u32 n_v,
/// f64 L_h, L_v, eps, t, a, lambda, s, theta, Psi, then v^1, v^2, v^3, each
/// as (re, im) f64 pairs over labels sorted lexicographically by signed
/// (k1, k2, k3).
void write_checkpoint(std::ostream& out, const VelocityState& state, const CheckpointScalars& sc);
Checkpoint read_checkpoint(std::istream& in);

void save_checkpoint(const std::filesystem::path& path, const VelocityState& state,
                     const CheckpointScalars& sc);
/// Throws std::runtime_error on I/O failure or a malformed file.
Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace anse
