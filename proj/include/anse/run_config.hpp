#pragma once

#include "anse/analyticity_monitor.hpp"
#include "anse/rns_solver.hpp"
#include "anse/toy_model.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace anse {

struct GridConfig {
    int n_h = 32;
    int n_v = 32;
    double L_h = 1.0;
    double L_v = 1.0;
};

struct PhysicsConfig {
    double eps = 0.1;
    bool nonlinear = true;
};

struct TimeConfig {
    double dt = 1e-2;
    double t_end = 1.0;
    int sample_every = 10;
    int order = 4;
    double cfl_safety = 0.5;
};

enum class InitType { random_analytic, modes, file };

struct InitConfig {
    InitType type = InitType::random_analytic;
    std::uint64_t seed = 1;
    /// "k1 k2 k3 re1 im1 re2 im2 re3 im3; ..." for type = modes.
    std::string modes;
    /// Target of ||e^{a|D3|} v0||_{H^{0,s}} + ||e^{a|D3|} v0||_{H^{-1/2,s}};
    /// 0 means analytic.eta for random data and no rescaling for modes/file.
    double target_norm = 0.0;
    std::string file;
    double envelope_power = 3.0;
};

struct OutputConfig {
    std::string directory = "out";
    int checkpoint_every = 0; ///< steps; 0 writes only the final checkpoint
};

struct ToyConfig {
    double gamma = 1.0;
    double a = 0.5;
    int max_mode = 256;
    double dt = 1e-2;
    double t_end = 20.0;
    double eta0 = 1e-3;
    double lambda = 0.0; ///< 0 means 4 * measured C_quad
    ToyMultiplier multiplier = ToyMultiplier::modulus;
    int cquad_trials = 200;
    int sample_every = 10;
};

struct LpConfig {
    int bernstein_trials = 10;
    int product_trials = 200;
    int norm_trials = 200;
    double sigma1 = 0.5;
    double sigma2 = 0.5;
    double s = 1.0;
    double psi_rate = 0.1;
    std::string baseline; ///< stored envelope JSON to compare against
};

struct RunConfig {
    GridConfig grid;
    PhysicsConfig physics;
    AnalyticParams analytic;
    TimeConfig time;
    InitConfig init;
    OutputConfig outputs;
    ToyConfig toy;
    LpConfig lp;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;

    Grid make_grid() const { return Grid(grid.n_h, grid.n_v, grid.L_h, grid.L_v); }
    SolverConfig solver() const;
    RnsOptions rns_options() const;
};

/// INI text with [section] headers and "key = value" lines; keys are the
/// dotted names section.key. Unknown sections or keys and unparsable values
/// throw std::invalid_argument. Missing keys keep their defaults.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Round-trippable INI rendering of every key.
std::string to_ini(const RunConfig& cfg);

/// Sets one numeric parameter by dotted name (or the short names eps, eta,
/// lambda, a, s, dt, n). Throws std::invalid_argument for unknown names.
void set_parameter(RunConfig& cfg, const std::string& name, double value);

std::string to_string(InitType t);
std::string to_string(ToyMultiplier m);

} // namespace anse
