#include "anse/run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace anse {

namespace pt = boost::property_tree;

namespace {

std::string format(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

InitType parse_init_type(const std::string& s)
{
    if (s == "random_analytic") {
        return InitType::random_analytic;
    }
    if (s == "modes") {
        return InitType::modes;
    }
    if (s == "file") {
        return InitType::file;
    }
    throw std::invalid_argument("init.type must be random_analytic, modes or file");
}

ToyMultiplier parse_multiplier(const std::string& s)
{
    if (s == "modulus") {
        return ToyMultiplier::modulus;
    }
    if (s == "derivative") {
        return ToyMultiplier::derivative;
    }
    throw std::invalid_argument("toy.multiplier must be modulus or derivative");
}

template <class T>
T parse_value(const std::string& key, const std::string& text)
{
    std::istringstream is(text);
    T value{};
    is >> value;
    if (!is || !(is >> std::ws).eof()) {
        throw std::invalid_argument("config: cannot parse " + key + " = '" + text + "'");
    }
    return value;
}

template <>
std::string parse_value<std::string>(const std::string&, const std::string& text)
{
    return text;
}

template <>
bool parse_value<bool>(const std::string& key, const std::string& text)
{
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    throw std::invalid_argument("config: " + key + " must be true or false");
}

// One setter and one getter per dotted key.
struct Binding {
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <class T>
Binding bind_key(const std::string& key, T RunConfig::*section_ptr, auto field)
{
    using Field = std::remove_reference_t<decltype(std::declval<T&>().*field)>;
    return {[=](RunConfig& c, const std::string& text) {
                (c.*section_ptr).*field = parse_value<Field>(key, text);
            },
            [=](const RunConfig& c) {
                const Field v = (c.*section_ptr).*field;
                if constexpr (std::is_same_v<Field, double>) {
                    return format(v);
                } else if constexpr (std::is_same_v<Field, bool>) {
                    return std::string(v ? "true" : "false");
                } else if constexpr (std::is_same_v<Field, std::string>) {
                    return v;
                } else {
                    return std::to_string(v);
                }
            }};
}

const std::map<std::string, Binding>& bindings()
{
    static const std::map<std::string, Binding> table = [] {
        std::map<std::string, Binding> m;
        const auto add = [&m](const std::string& key, Binding b) { m.emplace(key, std::move(b)); };
        add("grid.n_h", bind_key("grid.n_h", &RunConfig::grid, &GridConfig::n_h));
        add("grid.n_v", bind_key("grid.n_v", &RunConfig::grid, &GridConfig::n_v));
        add("grid.L_h", bind_key("grid.L_h", &RunConfig::grid, &GridConfig::L_h));
        add("grid.L_v", bind_key("grid.L_v", &RunConfig::grid, &GridConfig::L_v));
        add("physics.eps", bind_key("physics.eps", &RunConfig::physics, &PhysicsConfig::eps));
        add("physics.nonlinear",
            bind_key("physics.nonlinear", &RunConfig::physics, &PhysicsConfig::nonlinear));
        add("analytic.a", bind_key("analytic.a", &RunConfig::analytic, &AnalyticParams::a));
        add("analytic.lambda",
            bind_key("analytic.lambda", &RunConfig::analytic, &AnalyticParams::lambda));
        add("analytic.s", bind_key("analytic.s", &RunConfig::analytic, &AnalyticParams::s));
        add("analytic.eta", bind_key("analytic.eta", &RunConfig::analytic, &AnalyticParams::eta));
        add("time.dt", bind_key("time.dt", &RunConfig::time, &TimeConfig::dt));
        add("time.t_end", bind_key("time.t_end", &RunConfig::time, &TimeConfig::t_end));
        add("time.sample_every",
            bind_key("time.sample_every", &RunConfig::time, &TimeConfig::sample_every));
        add("time.order", bind_key("time.order", &RunConfig::time, &TimeConfig::order));
        add("time.cfl_safety", bind_key("time.cfl_safety", &RunConfig::time, &TimeConfig::cfl_safety));
        add("init.type", {[](RunConfig& c, const std::string& v) { c.init.type = parse_init_type(v); },
                          [](const RunConfig& c) { return to_string(c.init.type); }});
        add("init.seed", bind_key("init.seed", &RunConfig::init, &InitConfig::seed));
        add("init.modes", bind_key("init.modes", &RunConfig::init, &InitConfig::modes));
        add("init.target_norm",
            bind_key("init.target_norm", &RunConfig::init, &InitConfig::target_norm));
        add("init.file", bind_key("init.file", &RunConfig::init, &InitConfig::file));
        add("init.envelope_power",
            bind_key("init.envelope_power", &RunConfig::init, &InitConfig::envelope_power));
        add("outputs.directory",
            bind_key("outputs.directory", &RunConfig::outputs, &OutputConfig::directory));
        add("outputs.checkpoint_every",
            bind_key("outputs.checkpoint_every", &RunConfig::outputs, &OutputConfig::checkpoint_every));
        add("toy.gamma", bind_key("toy.gamma", &RunConfig::toy, &ToyConfig::gamma));
        add("toy.a", bind_key("toy.a", &RunConfig::toy, &ToyConfig::a));
        add("toy.max_mode", bind_key("toy.max_mode", &RunConfig::toy, &ToyConfig::max_mode));
        add("toy.dt", bind_key("toy.dt", &RunConfig::toy, &ToyConfig::dt));
        add("toy.t_end", bind_key("toy.t_end", &RunConfig::toy, &ToyConfig::t_end));
        add("toy.eta0", bind_key("toy.eta0", &RunConfig::toy, &ToyConfig::eta0));
        add("toy.lambda", bind_key("toy.lambda", &RunConfig::toy, &ToyConfig::lambda));
        add("toy.multiplier",
            {[](RunConfig& c, const std::string& v) { c.toy.multiplier = parse_multiplier(v); },
             [](const RunConfig& c) { return to_string(c.toy.multiplier); }});
        add("toy.cquad_trials", bind_key("toy.cquad_trials", &RunConfig::toy, &ToyConfig::cquad_trials));
        add("toy.sample_every", bind_key("toy.sample_every", &RunConfig::toy, &ToyConfig::sample_every));
        add("lp.bernstein_trials",
            bind_key("lp.bernstein_trials", &RunConfig::lp, &LpConfig::bernstein_trials));
        add("lp.product_trials", bind_key("lp.product_trials", &RunConfig::lp, &LpConfig::product_trials));
        add("lp.norm_trials", bind_key("lp.norm_trials", &RunConfig::lp, &LpConfig::norm_trials));
        add("lp.sigma1", bind_key("lp.sigma1", &RunConfig::lp, &LpConfig::sigma1));
        add("lp.sigma2", bind_key("lp.sigma2", &RunConfig::lp, &LpConfig::sigma2));
        add("lp.s", bind_key("lp.s", &RunConfig::lp, &LpConfig::s));
        add("lp.psi_rate", bind_key("lp.psi_rate", &RunConfig::lp, &LpConfig::psi_rate));
        add("lp.baseline", bind_key("lp.baseline", &RunConfig::lp, &LpConfig::baseline));
        return m;
    }();
    return table;
}

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw std::invalid_argument("config: " + message);
    }
}

} // namespace

std::string to_string(InitType t)
{
    switch (t) {
    case InitType::random_analytic:
        return "random_analytic";
    case InitType::modes:
        return "modes";
    case InitType::file:
        return "file";
    }
    return "unknown";
}

std::string to_string(ToyMultiplier m)
{
    return m == ToyMultiplier::modulus ? "modulus" : "derivative";
}

void RunConfig::validate() const
{
    make_grid();
    require(physics.eps > 0.0 && physics.eps <= 1.0, "physics.eps must lie in (0, 1]");
    analytic.validate();
    require(time.dt > 0.0 && time.t_end > 0.0, "time.dt and time.t_end must be positive");
    require(time.sample_every >= 1, "time.sample_every must be >= 1");
    require(time.order >= 2 && time.order <= 4, "time.order must be 2, 3 or 4");
    require(time.cfl_safety > 0.0 && time.cfl_safety < 1.0, "time.cfl_safety must lie in (0, 1)");
    require(init.target_norm >= 0.0, "init.target_norm must be nonnegative");
    require(init.envelope_power > 0.0, "init.envelope_power must be positive");
    require(init.type != InitType::modes || !init.modes.empty(), "init.modes is empty");
    require(init.type != InitType::file || !init.file.empty(), "init.file is empty");
    require(!outputs.directory.empty(), "outputs.directory is empty");
    require(outputs.checkpoint_every >= 0, "outputs.checkpoint_every must be >= 0");
    require(toy.gamma > 0.0 && toy.a > 0.0 && toy.eta0 >= 0.0, "toy.gamma, toy.a must be positive");
    require(toy.max_mode >= 1, "toy.max_mode must be >= 1");
    require(toy.dt > 0.0 && toy.t_end > 0.0, "toy.dt and toy.t_end must be positive");
    require(toy.lambda >= 0.0, "toy.lambda must be nonnegative");
    require(toy.cquad_trials >= 1 && toy.sample_every >= 1, "toy counts must be >= 1");
    require(lp.bernstein_trials >= 1 && lp.product_trials >= 1 && lp.norm_trials >= 1,
            "lp trial counts must be >= 1");
    require(lp.psi_rate >= 0.0, "lp.psi_rate must be nonnegative");
}

SolverConfig RunConfig::solver() const
{
    return {time.dt, time.t_end, time.order, time.cfl_safety};
}

RnsOptions RunConfig::rns_options() const
{
    RnsOptions o;
    o.nonlinear = physics.nonlinear;
    return o;
}

RunConfig parse_config(std::istream& in)
{
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    RunConfig cfg;
    const auto& table = bindings();
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            throw std::invalid_argument("config: key '" + section + "' outside a section");
        }
        for (const auto& [key, value] : body) {
            const std::string name = section + "." + key;
            const auto it = table.find(name);
            if (it == table.end()) {
                throw std::invalid_argument("config: unknown key '" + name + "'");
            }
            it->second.set(cfg, value.get_value<std::string>());
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open " + path.string());
    }
    return parse_config(in);
}

std::string to_ini(const RunConfig& cfg)
{
    std::ostringstream os;
    std::string current;
    for (const auto& [name, binding] : bindings()) {
        const auto dot = name.find('.');
        const std::string section = name.substr(0, dot);
        if (section != current) {
            os << (current.empty() ? "" : "\n") << "[" << section << "]\n";
            current = section;
        }
        os << name.substr(dot + 1) << " = " << binding.get(cfg) << "\n";
    }
    return os.str();
}

void set_parameter(RunConfig& cfg, const std::string& name, double value)
{
    static const std::map<std::string, std::string> aliases{
        {"eps", "physics.eps"}, {"eta", "analytic.eta"}, {"lambda", "analytic.lambda"},
        {"a", "analytic.a"},    {"s", "analytic.s"},     {"dt", "time.dt"}};
    if (name == "n" || name == "grid.n") {
        const int n = static_cast<int>(std::lround(value));
        cfg.grid.n_h = n;
        cfg.grid.n_v = n;
        cfg.validate();
        return;
    }
    const auto alias = aliases.find(name);
    const std::string key = alias == aliases.end() ? name : alias->second;
    const auto& table = bindings();
    const auto it = table.find(key);
    if (it == table.end() || key.rfind("init.type", 0) == 0 || key == "toy.multiplier" ||
        key == "outputs.directory" || key == "init.modes" || key == "init.file" ||
        key == "lp.baseline") {
        throw std::invalid_argument("unknown sweep parameter '" + name + "'");
    }
    it->second.set(cfg, format(value));
    cfg.validate();
}

} // namespace anse
