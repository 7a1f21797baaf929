#include "gnflow/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "gnflow/errors.hpp"

namespace gnflow {

namespace {

std::string join_lines(const std::vector<std::string>& v)
{
    std::string s = "invalid configuration:";
    for (const auto& line : v)
        s += "\n  " + line;
    return s;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

class Reader {
public:
    std::vector<std::string> errors;

    void check_keys(const YAML::Node& node, const std::string& path,
                    const std::set<std::string>& allowed)
    {
        if (!node.IsMap()) {
            fail(path, "expected a mapping");
            return;
        }
        for (const auto& kv : node) {
            const std::string key = kv.first.as<std::string>();
            if (!allowed.count(key))
                fail(join(path, key), "unknown key");
        }
    }

    void number(const YAML::Node& parent, const std::string& path, const char* key, double& out)
    {
        const YAML::Node v = parent[key];
        if (!v)
            return;
        try {
            const double d = v.as<double>();
            if (!std::isfinite(d))
                fail(join(path, key), "must be finite");
            else
                out = d;
        } catch (const YAML::Exception&) {
            fail(join(path, key), "expected a number");
        }
    }

    void number(const YAML::Node& parent, const std::string& path, const char* key,
                std::optional<double>& out)
    {
        if (!parent[key])
            return;
        double d = 0.0;
        const std::size_t before = errors.size();
        number(parent, path, key, d);
        if (errors.size() == before)
            out = d;
    }

    template <class Int>
    void integer(const YAML::Node& parent, const std::string& path, const char* key, Int& out)
    {
        const YAML::Node v = parent[key];
        if (!v)
            return;
        try {
            out = v.as<Int>();
        } catch (const YAML::Exception&) {
            fail(join(path, key), "expected a non-negative integer");
        }
    }

    void text(const YAML::Node& parent, const std::string& path, const char* key, std::string& out)
    {
        const YAML::Node v = parent[key];
        if (!v)
            return;
        if (!v.IsScalar())
            fail(join(path, key), "expected a string");
        else
            out = v.as<std::string>();
    }

    template <class T>
    void list(const YAML::Node& parent, const std::string& path, const char* key,
              std::vector<T>& out)
    {
        const YAML::Node v = parent[key];
        if (!v)
            return;
        if (!v.IsSequence()) {
            fail(join(path, key), "expected a list");
            return;
        }
        try {
            out = v.as<std::vector<T>>();
        } catch (const YAML::Exception&) {
            fail(join(path, key), "list entries have the wrong type");
        }
    }

    void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

    static std::string join(const std::string& path, const std::string& key)
    {
        return path.empty() ? key : path + "." + key;
    }
};

struct Preset {
    const char* name;
    BathymetrySpec bathymetry;
    InitialSpec initial;
};

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> table = [] {
        std::vector<Preset> t;
        {
            Preset p{"lake-at-rest", {}, {}};
            p.bathymetry = {"gaussian-bump", 32.0, 3.0, 0.4};
            p.initial.family = "still";
            t.push_back(p);
        }
        {
            Preset p{"gaussian-bump-splash", {}, {}};
            p.bathymetry = {"gaussian-bump", 32.0, 3.0, 0.3};
            p.initial.family = "hump";
            p.initial.center = 32.0;
            p.initial.width = 2.0;
            p.initial.amplitude = 0.1;
            t.push_back(p);
        }
        {
            Preset p{"solitary-flat", {}, {}};
            p.initial.family = "solitary";
            p.initial.amplitude = 0.2;
            p.initial.depth = 1.0;
            p.initial.center = 75.0;
            t.push_back(p);
        }
        {
            Preset p{"shoaling-over-bump", {}, {}};
            p.bathymetry = {"gaussian-bump", 55.0, 5.0, 0.5};
            p.initial.family = "hump";
            p.initial.center = 35.0;
            p.initial.width = 3.0;
            p.initial.amplitude = 0.1;
            p.initial.froude = 1.0;
            t.push_back(p);
        }
        return t;
    }();
    return table;
}

void apply_preset(RunConfig& c, Reader& r)
{
    for (const Preset& p : presets()) {
        if (c.scenario != p.name)
            continue;
        const ScenarioPreset sp = builtin_scenario(p.name);
        c.length = sp.datum.length;
        c.n = sp.n;
        c.t_end = sp.t_end;
        c.guard_tol = sp.guard_tol;
        c.bathymetry = p.bathymetry;
        c.initial = p.initial;
        return;
    }
    r.fail("scenario", "unknown scenario '" + c.scenario + "'");
}

Bathymetry make_bottom(const RunConfig& c)
{
    const BathymetrySpec& b = c.bathymetry;
    if (b.family == "gaussian-bump")
        return Bathymetry::gaussian_bump(c.length, b.center, b.width, b.height);
    if (b.family == "sinusoidal")
        return Bathymetry::sinusoidal(c.length, b.k, b.amplitude, b.phase);
    return Bathymetry::flat(c.length);
}

double bottom_peak(const BathymetrySpec& b)
{
    if (b.family == "gaussian-bump")
        return b.height;
    if (b.family == "sinusoidal")
        return std::abs(b.amplitude);
    return 0.0;
}

void semantic_checks(const RunConfig& c, std::vector<std::string>& errors)
{
    auto fail = [&](const std::string& path, const std::string& msg) {
        errors.push_back(path + ": " + msg);
    };
    const std::size_t first = errors.size();

    if (!(c.length > 0.0))
        fail("grid.length", "must be positive");
    if (!is_power_of_two(c.n) || c.n < 16 || c.n > (std::size_t{1} << 20))
        fail("grid.n", "must be a power of two in [16, 1048576], got " + std::to_string(c.n));
    if (!(c.g > 0.0))
        fail("run.g", "must be positive");
    if (!(c.cfl > 0.0 && c.cfl <= 1.0))
        fail("run.cfl", "must lie in (0, 1]");
    if (!(c.t_end > 0.0))
        fail("run.t_end", "must be positive");
    if (c.cadence && !(*c.cadence > 0.0 && *c.cadence <= c.t_end))
        fail("run.cadence", "must lie in (0, t_end]");
    if (c.sigma < 0.0)
        fail("run.sigma", "must be non-negative");

    const BathymetrySpec& b = c.bathymetry;
    if (b.family == "gaussian-bump") {
        if (!(b.width > 0.0))
            fail("bathymetry.width", "must be positive");
    } else if (b.family == "sinusoidal") {
        if (b.k < 1)
            fail("bathymetry.k", "must be a positive integer");
    } else if (b.family != "flat") {
        fail("bathymetry.family", "unknown family '" + b.family
                                      + "' (flat | gaussian-bump | sinusoidal)");
    }

    const InitialSpec& i = c.initial;
    const std::string& f = i.family;
    if (f == "still" || f == "hump") {
        if (!(i.surface > 0.0))
            fail("initial.surface", "must be positive");
        else if (bottom_peak(b) >= i.surface)
            fail(b.family == "sinusoidal" ? "bathymetry.amplitude" : "bathymetry.height",
                 "bottom height " + fmt(bottom_peak(b)) + " reaches the still-water depth "
                     + fmt(i.surface) + "; violates inf h₀ > 0");
        if (f == "hump" && !(i.width > 0.0))
            fail("initial.width", "must be positive");
    } else if (f == "solitary") {
        if (b.family != "flat")
            fail("initial.family", "solitary waves require a flat bottom");
        if (!(i.amplitude >= 0.0))
            fail("initial.amplitude", "must be non-negative");
        if (!(i.depth > 0.0))
            fail("initial.depth", "must be positive; violates inf h₀ > 0");
    } else if (f == "depression") {
        if (b.family != "flat")
            fail("initial.family", "the depression probe requires a flat bottom");
        if (!(i.depth_fraction >= 0.0 && i.depth_fraction < 1.0))
            fail("initial.depth_fraction", "must lie in [0, 1); violates inf h₀ > 0");
        if (!(i.width > 0.0))
            fail("initial.width", "must be positive");
    } else if (f == "fold") {
        if (b.family != "flat")
            fail("initial.family", "the fold probe requires a flat bottom");
        if (!(i.fold >= 0.0 && i.fold < 1.0))
            fail("initial.fold", "must lie in [0, 1)");
        if (!(i.width > 0.0))
            fail("initial.width", "must be positive");
    } else {
        fail("initial.family",
             "unknown family '" + f + "' (still | hump | solitary | depression | fold)");
    }

    auto check_ladder = [&](const std::vector<std::size_t>& r, const std::string& path,
                            std::size_t min_size) {
        if (r.size() < min_size)
            fail(path, "needs at least " + std::to_string(min_size) + " entries");
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (!is_power_of_two(r[k]) || r[k] < 16)
                fail(path, "entries must be powers of two >= 16");
            if (k > 0 && r[k] <= r[k - 1])
                fail(path, "entries must be strictly increasing");
        }
    };
    if (!c.twin_resolutions.empty())
        check_ladder(c.twin_resolutions, "twin.resolutions", 1);
    if (c.checkpoints < 1)
        fail("twin.checkpoints", "must be at least 1");
    if (!(c.guard_tol > 0.0))
        fail("twin.guard_tol", "must be positive");

    if (c.dependence_eps.empty())
        fail("dependence.eps", "must not be empty");
    for (std::size_t k = 0; k < c.dependence_eps.size(); ++k) {
        if (!(c.dependence_eps[k] > 0.0))
            fail("dependence.eps", "entries must be positive");
        if (k > 0 && !(c.dependence_eps[k] < c.dependence_eps[k - 1]))
            fail("dependence.eps", "ladder must be strictly decreasing");
    }
    if (c.dependence_s < 0.0)
        fail("dependence.s", "must be non-negative");
    if (c.dependence_directions.empty())
        fail("dependence.directions", "must not be empty");

    if (!c.convergence_resolutions.empty())
        check_ladder(c.convergence_resolutions, "convergence.resolutions", 3);
    if (c.convergence_steps0 < 1)
        fail("convergence.steps0", "must be at least 1");
    if (c.convergence_levels < 3)
        fail("convergence.levels", "must be at least 3");
    check_ladder(c.solitary_resolutions, "solitary.resolutions", 2);
    if (c.mode == RunMode::solitary && f != "solitary")
        fail("run.experiment", "the solitary benchmark requires initial.family = solitary");

    if (errors.size() != first)
        return;
    // Structural checks passed: verify the sampled depth and map on the run grid.
    try {
        const Datum d = make_datum(c);
        const Field h = Field::sample(Grid(c.length, c.n), d.h0);
        if (!(h.min() > 0.0)) {
            fail("initial", "violates inf h₀ > 0 (min h0 = " + fmt(h.min()) + ")");
            return;
        }
        sample(d, Grid(c.length, c.n));
    } catch (const std::exception& e) {
        fail("initial", e.what());
    }
}

Direction parse_direction(const std::string& s, Reader& r)
{
    if (s == "h0")
        return Direction::depth;
    if (s == "u0")
        return Direction::velocity;
    if (s == "xi")
        return Direction::bottom;
    r.fail("dependence.directions", "unknown direction '" + s + "' (h0 | u0 | xi)");
    return Direction::depth;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join_lines(violations)), violations_(std::move(violations))
{
}

const char* to_string(RunMode m)
{
    switch (m) {
    case RunMode::simulate:
        return "none";
    case RunMode::twin:
        return "twin";
    case RunMode::dependence:
        return "dependence";
    case RunMode::convergence:
        return "convergence";
    case RunMode::solitary:
        return "solitary";
    }
    return "?";
}

RunConfig parse_config(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError({"document: " + std::string(e.what())});
    }
    if (!root || root.IsNull())
        throw ConfigError({"document: empty configuration"});

    Reader r;
    RunConfig c;
    r.check_keys(root, "",
                 {"scenario", "grid", "bathymetry", "initial", "run", "twin", "dependence",
                  "convergence", "solitary"});
    if (!root.IsMap())
        throw ConfigError(r.errors);

    r.text(root, "", "scenario", c.scenario);
    if (!c.scenario.empty())
        apply_preset(c, r);
    else {
        if (!root["grid"] || !root["grid"]["length"])
            r.fail("grid.length", "required unless a scenario is given");
        if (!root["grid"] || !root["grid"]["n"])
            r.fail("grid.n", "required unless a scenario is given");
    }

    if (const YAML::Node n = root["grid"]) {
        r.check_keys(n, "grid", {"length", "n"});
        r.number(n, "grid", "length", c.length);
        r.integer(n, "grid", "n", c.n);
    }
    if (const YAML::Node n = root["bathymetry"]) {
        r.check_keys(n, "bathymetry", {"family", "center", "width", "height", "k", "amplitude", "phase"});
        BathymetrySpec& b = c.bathymetry;
        const std::string before = b.family;
        r.text(n, "bathymetry", "family", b.family);
        if (b.family != before)
            b = BathymetrySpec{b.family};
        r.number(n, "bathymetry", "center", b.center);
        r.number(n, "bathymetry", "width", b.width);
        r.number(n, "bathymetry", "height", b.height);
        r.integer(n, "bathymetry", "k", b.k);
        r.number(n, "bathymetry", "amplitude", b.amplitude);
        r.number(n, "bathymetry", "phase", b.phase);
    }
    if (const YAML::Node n = root["initial"]) {
        r.check_keys(n, "initial",
                     {"family", "surface", "center", "width", "amplitude", "froude", "depth",
                      "depth_fraction", "velocity", "fold"});
        InitialSpec& i = c.initial;
        const std::string before = i.family;
        r.text(n, "initial", "family", i.family);
        if (i.family != before)
            i = InitialSpec{i.family};
        r.number(n, "initial", "surface", i.surface);
        r.number(n, "initial", "center", i.center);
        r.number(n, "initial", "width", i.width);
        r.number(n, "initial", "amplitude", i.amplitude);
        r.number(n, "initial", "froude", i.froude);
        r.number(n, "initial", "depth", i.depth);
        r.number(n, "initial", "depth_fraction", i.depth_fraction);
        r.number(n, "initial", "velocity", i.velocity);
        r.number(n, "initial", "fold", i.fold);
    }
    if (const YAML::Node n = root["run"]) {
        r.check_keys(n, "run",
                     {"g", "cfl", "t_end", "cadence", "formulation", "experiment", "seed", "sigma"});
        r.number(n, "run", "g", c.g);
        r.number(n, "run", "cfl", c.cfl);
        r.number(n, "run", "t_end", c.t_end);
        r.number(n, "run", "cadence", c.cadence);
        r.number(n, "run", "sigma", c.sigma);
        r.integer(n, "run", "seed", c.seed);
        std::string form = to_string(c.formulation);
        r.text(n, "run", "formulation", form);
        std::string exp = "none";
        r.text(n, "run", "experiment", exp);
        if (form == "eulerian")
            c.formulation = Formulation::eulerian;
        else if (form == "lagrangian")
            c.formulation = Formulation::lagrangian;
        else if (form == "twin")
            c.mode = RunMode::twin;
        else
            r.fail("run.formulation", "expected eulerian | lagrangian | twin, got '" + form + "'");
        if (exp == "twin")
            c.mode = RunMode::twin;
        else if (exp == "dependence")
            c.mode = RunMode::dependence;
        else if (exp == "convergence")
            c.mode = RunMode::convergence;
        else if (exp == "solitary")
            c.mode = RunMode::solitary;
        else if (exp != "none")
            r.fail("run.experiment",
                   "expected none | twin | dependence | convergence | solitary, got '" + exp + "'");
        if (form == "twin" && exp != "none" && exp != "twin")
            r.fail("run.formulation", "twin conflicts with run.experiment = " + exp);
    }
    if (const YAML::Node n = root["twin"]) {
        r.check_keys(n, "twin", {"resolutions", "checkpoints", "guard_tol"});
        r.list(n, "twin", "resolutions", c.twin_resolutions);
        r.integer(n, "twin", "checkpoints", c.checkpoints);
        r.number(n, "twin", "guard_tol", c.guard_tol);
    }
    if (const YAML::Node n = root["dependence"]) {
        r.check_keys(n, "dependence", {"eps", "s", "directions"});
        r.list(n, "dependence", "eps", c.dependence_eps);
        r.number(n, "dependence", "s", c.dependence_s);
        std::vector<std::string> dirs;
        r.list(n, "dependence", "directions", dirs);
        if (n["directions"]) {
            c.dependence_directions.clear();
            for (const auto& d : dirs)
                c.dependence_directions.push_back(parse_direction(d, r));
        }
    }
    if (const YAML::Node n = root["convergence"]) {
        r.check_keys(n, "convergence", {"resolutions", "steps0", "levels"});
        r.list(n, "convergence", "resolutions", c.convergence_resolutions);
        r.integer(n, "convergence", "steps0", c.convergence_steps0);
        r.integer(n, "convergence", "levels", c.convergence_levels);
    }
    if (const YAML::Node n = root["solitary"]) {
        r.check_keys(n, "solitary", {"resolutions"});
        r.list(n, "solitary", "resolutions", c.solitary_resolutions);
    }

    if (r.errors.empty())
        semantic_checks(c, r.errors);
    else {
        // Report semantic problems too, except those caused by unreadable values.
        std::vector<std::string> more;
        semantic_checks(c, more);
        for (auto& m : more) {
            const std::string key = m.substr(0, m.find(':'));
            bool dup = false;
            for (const auto& e : r.errors)
                dup = dup || e.rfind(key + ":", 0) == 0;
            if (!dup)
                r.errors.push_back(m);
        }
    }
    if (!r.errors.empty())
        throw ConfigError(r.errors);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError({"config: cannot open '" + path + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const RunConfig& c)
{
    std::vector<std::string> errors;
    semantic_checks(c, errors);
    if (!errors.empty())
        throw ConfigError(errors);
}

Datum make_datum(const RunConfig& c)
{
    const Bathymetry bottom = make_bottom(c);
    const InitialSpec& i = c.initial;
    Datum d;
    if (i.family == "hump")
        d = hump_datum("hump", c.length, bottom, i.center, i.width, i.amplitude, i.froude,
                       i.surface, c.g);
    else if (i.family == "solitary")
        d = solitary_datum(SolitaryWave{i.amplitude, i.depth, c.g, i.center, c.length});
    else if (i.family == "depression") {
        d = depression_probe(c.length, i.center, i.width, i.depth_fraction, i.velocity);
        d.gravity = c.g;
    } else if (i.family == "fold") {
        d = fold_probe(c.length, i.center, i.width, i.fold, i.velocity);
        d.gravity = c.g;
    } else if (i.family == "still")
        d = still_datum("still", c.length, bottom, i.surface, c.g);
    else
        throw InvalidDatum("unknown initial family '" + i.family + "'");
    if (!c.scenario.empty())
        d.name = c.scenario;
    return d;
}

}  // namespace gnflow
