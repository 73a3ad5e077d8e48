#include "cpdyn_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "cpdyn/errors.hpp"

namespace cpdyn::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        throw ConfigError(key + ": expected a finite number, got '" + text + "'");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(to_double(key, item));
    return out;
}

Vec3 to_vec3(const std::string& key, const std::string& text) {
    const auto v = to_list(key, text);
    if (v.size() != 3) throw ConfigError(key + ": expected three comma-separated components");
    return {v[0], v[1], v[2]};
}

template <class E>
E to_enum(const std::string& key, const std::string& text, std::initializer_list<std::pair<const char*, E>> names) {
    const std::string t = trim(text);
    std::string allowed;
    for (const auto& [name, value] : names) {
        if (t == name) return value;
        allowed += allowed.empty() ? name : std::string("|") + name;
    }
    throw ConfigError(key + ": expected one of " + allowed + ", got '" + text + "'");
}

std::vector<double> geometric(double lo, double hi, int n) {
    if (n < 1) throw ConfigError("grid count must be positive");
    if (n == 1) return {lo};
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    v.back() = hi;
    return v;
}

void require_increasing(const std::string& name, const std::vector<double>& g) {
    if (g.empty()) throw ConfigError(name + " grid is empty");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw ConfigError(name + " grid must be strictly increasing");
}

// model-specific B inputs are collected first and assembled once the model is known
struct BInputs {
    std::string model = "static_constant";
    double mu_B = 1.0, k_B = 2.0, alpha0 = 1.0;
    TabulatedB table;
};

struct GridInputs {
    std::vector<double> list;
    double lo = 0.0, hi = 0.0;
    int count = 0;
};

using Setter = std::function<void(RunConfig&, BInputs&, GridInputs&, GridInputs&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"units.system",
         [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             c.params.units = to_enum<bool>(k, v, {{"gaussian", true}, {"natural", false}}) ? Units::gaussian()
                                                                                             : Units::natural();
         }},
        {"units.hbar", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                          const std::string& v) { c.params.units.hbar = to_double(k, v); }},
        {"units.c", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                       const std::string& v) { c.params.units.c = to_double(k, v); }},
        {"atomA.mu", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                        const std::string& v) { c.params.mu_A = to_vec3(k, v); }},
        {"atomA.k0", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                        const std::string& v) { c.params.k0 = to_double(k, v); }},
        {"atomA.gamma", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                           const std::string& v) { c.params.gamma = to_double(k, v); }},
        {"atomA.isotropic", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                               const std::string& v) { c.params.isotropic_A = to_bool(k, v); }},
        {"atomB.model",
         [](RunConfig&, BInputs& b, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             b.model = to_enum<std::string>(
                 k, v, {{"two_level", "two_level"}, {"static_constant", "static_constant"}, {"tabulated", "tabulated"}});
         }},
        {"atomB.mu_B", [](RunConfig&, BInputs& b, GridInputs&, GridInputs&, const std::string& k,
                          const std::string& v) { b.mu_B = to_double(k, v); }},
        {"atomB.k_B", [](RunConfig&, BInputs& b, GridInputs&, GridInputs&, const std::string& k,
                         const std::string& v) { b.k_B = to_double(k, v); }},
        {"atomB.alpha0", [](RunConfig&, BInputs& b, GridInputs&, GridInputs&, const std::string& k,
                            const std::string& v) { b.alpha0 = to_double(k, v); }},
        {"atomB.u", [](RunConfig&, BInputs& b, GridInputs&, GridInputs&, const std::string& k,
                       const std::string& v) { b.table.u = to_list(k, v); }},
        {"atomB.alpha", [](RunConfig&, BInputs& b, GridInputs&, GridInputs&, const std::string& k,
                           const std::string& v) { b.table.alpha = to_list(k, v); }},
        {"atomB.k_real", [](RunConfig&, BInputs& b, GridInputs&, GridInputs&, const std::string& k,
                            const std::string& v) { b.table.k_real = to_list(k, v); }},
        {"atomB.alpha_real", [](RunConfig&, BInputs& b, GridInputs&, GridInputs&, const std::string& k,
                                const std::string& v) { b.table.alpha_real = to_list(k, v); }},
        {"atomB.interpolation",
         [](RunConfig&, BInputs& b, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             b.table.interpolation =
                 to_enum<Interpolation>(k, v, {{"linear", Interpolation::linear}, {"log_linear", Interpolation::log_linear}});
         }},
        {"atomB.tail",
         [](RunConfig&, BInputs& b, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             b.table.tail = to_enum<TailRule>(k, v, {{"none", TailRule::none}, {"inverse_square", TailRule::inverse_square}});
         }},
        {"conventions.excited_sign",
         [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             c.params.excited_sign =
                 to_enum<ExcitedSign>(k, v, {{"as_printed", ExcitedSign::as_printed}, {"sign_flipped", ExcitedSign::sign_flipped}});
         }},
        {"conventions.resonant_alpha",
         [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             c.params.resonant_alpha_choice =
                 to_enum<ResonantAlpha>(k, v,
                         {{"alpha_at_k0", ResonantAlpha::alpha_at_k0},
                          {"alpha_at_iu_equals_k0ImAxis", ResonantAlpha::alpha_at_iu_equals_k0ImAxis}});
         }},
        {"conventions.dynamic_norm",
         [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             c.params.dynamic_norm = to_enum<DynamicNormalization>(
                 k, v, {{"mode_sum", DynamicNormalization::mode_sum}, {"as_printed", DynamicNormalization::as_printed}});
         }},
        {"point.R", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                       const std::string& v) { c.point_R = to_vec3(k, v); }},
        {"point.t", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                       const std::string& v) { c.point_t = to_double(k, v); }},
        {"sweep.direction", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                               const std::string& v) { c.sweep_direction = to_vec3(k, v); }},
        {"sweep.R", [](RunConfig&, BInputs&, GridInputs& r, GridInputs&, const std::string& k,
                       const std::string& v) { r.list = to_list(k, v); }},
        {"sweep.R_min", [](RunConfig&, BInputs&, GridInputs& r, GridInputs&, const std::string& k,
                           const std::string& v) { r.lo = to_double(k, v); }},
        {"sweep.R_max", [](RunConfig&, BInputs&, GridInputs& r, GridInputs&, const std::string& k,
                           const std::string& v) { r.hi = to_double(k, v); }},
        {"sweep.R_count", [](RunConfig&, BInputs&, GridInputs& r, GridInputs&, const std::string& k,
                             const std::string& v) { r.count = to_int(k, v); }},
        {"sweep.t", [](RunConfig&, BInputs&, GridInputs&, GridInputs& t, const std::string& k,
                       const std::string& v) { t.list = to_list(k, v); }},
        {"sweep.t_min", [](RunConfig&, BInputs&, GridInputs&, GridInputs& t, const std::string& k,
                           const std::string& v) { t.lo = to_double(k, v); }},
        {"sweep.t_max", [](RunConfig&, BInputs&, GridInputs&, GridInputs& t, const std::string& k,
                           const std::string& v) { t.hi = to_double(k, v); }},
        {"sweep.t_count", [](RunConfig&, BInputs&, GridInputs&, GridInputs& t, const std::string& k,
                             const std::string& v) { t.count = to_int(k, v); }},
        {"quad.tol", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                        const std::string& v) { c.eval.tol = to_double(k, v); }},
        {"quad.light_cone_eps", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                                   const std::string& v) { c.eval.light_cone_eps = to_double(k, v); }},
        {"oracle.k_max", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                            const std::string& v) { c.oracle.k_max = to_double(k, v); }},
        {"oracle.tol", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                          const std::string& v) { c.oracle.tol = to_double(k, v); }},
        {"oracle.pv_offset", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                                const std::string& v) { c.oracle.pv_offset = to_double(k, v); }},
        {"oracle.regulator",
         [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             c.oracle.regulator = to_enum<Regulator>(
                 k, v, {{"exp_damping", Regulator::exp_damping}, {"cutoff_averaging", Regulator::cutoff_averaging}});
         }},
        {"oracle.route",
         [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             c.oracle_route = to_enum<OracleRoute>(k, v,
                                      {{"mode_sum", OracleRoute::mode_sum},
                                       {"single_sum", OracleRoute::single_sum},
                                       {"both", OracleRoute::both}});
         }},
        {"oracle.bound", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                            const std::string& v) { c.oracle_bound = to_double(k, v); }},
        {"oracle.points",
         [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             c.oracle_points.clear();
             for (const auto& pair : split(v, ';')) {
                 const auto xt = split(pair, ':');
                 if (xt.size() != 2) throw ConfigError(k + ": expected 'x:tau' pairs separated by ';'");
                 c.oracle_points.emplace_back(to_double(k, xt[0]), to_double(k, xt[1]));
             }
         }},
        {"check.only",
         [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             c.check_only.clear();
             for (const auto& item : split(v, ',')) c.check_only.push_back(to_int(k, item));
         }},
        {"check.perturb_tensor", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k,
                                    const std::string& v) { c.check_perturb_tensor = to_double(k, v); }},
        {"output.format",
         [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string& k, const std::string& v) {
             c.format = to_enum<OutputFormat>(k, v, {{"csv", OutputFormat::csv}, {"json", OutputFormat::json}});
         }},
        {"output.path", [](RunConfig& c, BInputs&, GridInputs&, GridInputs&, const std::string&,
                           const std::string& v) { c.out_path = trim(v); }},
    };
    return table;
}

std::vector<double> resolve_grid(const std::string& name, const GridInputs& g, std::vector<double> fallback) {
    std::vector<double> out;
    if (!g.list.empty()) {
        out = g.list;
    } else if (g.count > 0) {
        if (!(g.lo > 0.0) || (g.count > 1 && !(g.hi > g.lo)))
            throw ConfigError(name + " geometric grid needs 0 < min < max");
        out = geometric(g.lo, g.hi, g.count);
    } else {
        out = std::move(fallback);
    }
    require_increasing(name, out);
    return out;
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_key_values(os.str());
}

RunConfig default_config() {
    RunConfig c;
    c.params.units = Units::natural();
    c.params.k0 = 1.0;
    c.params.mu_A = Vec3::UnitZ();
    c.params.pol_B = StaticConstantB{1.0};
    c.R_grid = {1.0};
    c.t_grid = {0.0};
    c.oracle_points = {{0.5, 0.75}, {0.5, 1.5}, {1.0, 1.5}, {1.0, 3.0}, {2.0, 3.0}, {2.0, 6.0}};
    return c;
}

RunConfig build_config(const KeyValues& kv) {
    RunConfig c = default_config();
    BInputs b;
    GridInputs rg, tg;
    // the unit system preset goes first so units.hbar / units.c can refine it
    if (const auto sys = kv.find("units.system"); sys != kv.end())
        setters().at(sys->first)(c, b, rg, tg, sys->first, sys->second);
    for (const auto& [key, value] : kv) {
        if (key == "units.system") continue;
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown key '" + key + "'");
        it->second(c, b, rg, tg, key, value);
    }

    if (b.model == "two_level")
        c.params.pol_B = TwoLevelB{b.mu_B, b.k_B};
    else if (b.model == "tabulated")
        c.params.pol_B = b.table;
    else
        c.params.pol_B = StaticConstantB{b.alpha0};

    c.R_grid = resolve_grid("sweep.R", rg, c.R_grid);
    c.t_grid = resolve_grid("sweep.t", tg, c.t_grid);
    if (c.R_grid.front() <= 0.0) throw ConfigError("sweep.R values must be positive");
    if (c.t_grid.front() < 0.0) throw ConfigError("sweep.t values must be non-negative");
    if (!(c.sweep_direction.norm() > 0.0)) throw ConfigError("sweep.direction must be nonzero");
    c.sweep_direction.normalize();

    if (!(c.eval.tol >= 1e-14) || !(c.eval.tol <= 1e-2)) throw ConfigError("quad.tol must lie in [1e-14, 1e-2]");
    if (!(c.eval.light_cone_eps > 0.0) || !(c.eval.light_cone_eps < 1.0))
        throw ConfigError("quad.light_cone_eps must lie in (0, 1)");
    if (!(c.oracle_bound > 0.0)) throw ConfigError("oracle.bound must be positive");
    for (const auto& [x, tau] : c.oracle_points)
        if (!(x > 0.0) || !(tau >= 0.0)) throw ConfigError("oracle.points need x > 0 and tau >= 0");
    for (int id : c.check_only)
        if (id < 1 || id > 10) throw ConfigError("check.only ids must lie in 1..10");

    try {
        validate(c.params);
        validate(c.oracle);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return c;
}

std::vector<std::string> known_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) keys.push_back(k);
    return keys;
}

}  // namespace cpdyn::cli
