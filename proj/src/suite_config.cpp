#include "qecomp/suite_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "qecomp/errors.hpp"
#include "qecomp/warped_manifold.hpp"

namespace qecomp {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(key, "empty list entry");
        items.push_back(item);
    }
    if (items.empty()) throw ConfigError(key, "empty value");
    return items;
}

double parse_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
        throw ConfigError(key, "not a finite number: '" + text + "'");
    return value;
}

int parse_int(const std::string& key, const std::string& text) {
    int value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ConfigError(key, "not an integer: '" + text + "'");
    return value;
}

std::vector<double> parse_doubles(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& item : split_list(key, value)) out.push_back(parse_double(key, item));
    return out;
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

template <typename T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        if constexpr (std::is_same_v<T, int>)
            out += std::to_string(values[i]);
        else
            out += format_double(values[i]);
    }
    return out;
}

const std::set<std::string>& family_parameter_keys(const std::string& family) {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"sphere", {"family.L"}},
        {"flat", {"family.L"}},
        {"hyperbolic", {"family.L"}},
        {"gaussian_flat", {"family.L", "family.a"}},
        {"weight_perturbed_sphere", {"family.L", "family.delta", "family.q"}},
        {"tabulated", {"family.path"}},
    };
    auto it = keys.find(family);
    if (it == keys.end()) throw ConfigError("family", "unknown family '" + family + "'");
    return it->second;
}

std::string radius_key(TheoremId id) { return "radii." + to_string(id); }

void check_radii(TheoremId id, const std::vector<double>& r) {
    const std::string key = radius_key(id);
    if (r.size() != radius_arity(id))
        throw ConfigError(key, "expected " + std::to_string(radius_arity(id)) + " values");
    for (double v : r)
        if (v < 0.0) throw ConfigError(key, "radii must be non-negative");
    switch (id) {
        case TheoremId::T1_eq16:
        case TheoremId::T1_eq17:
        case TheoremId::T1_ext_163:
        case TheoremId::T1_ext_164:
            if (!(r[0] > 0.0)) throw ConfigError(key, "r > 0 violated");
            break;
        case TheoremId::T31_eq31:
        case TheoremId::T31_eq32:
        case TheoremId::T2:
            if (!(r[0] > 0.0 && r[0] <= r[1])) throw ConfigError(key, "0 < r <= R violated");
            break;
        case TheoremId::T3:
            if (!(r[0] <= r[1] && r[1] <= r[2] && r[2] <= r[3]))
                throw ConfigError(key, "r1 <= r2 <= R1 <= R2 violated");
            if (r[1] == r[2] && !(r[0] == r[1] && r[2] == r[3]))
                throw ConfigError(key, "r2 < R1 violated");
            break;
        case TheoremId::C32_doubling:
            if (!(r[0] > 0.0 && r[0] < r[1] && r[1] <= r[2]))
                throw ConfigError(key, "0 < r1 < r2 <= R violated");
            break;
        case TheoremId::Eq21_chain:
            if (!(r[0] > 0.0 && r[0] < r[1])) throw ConfigError(key, "0 < r_min < r_max violated");
            break;
        case TheoremId::T4_threshold:
            if (!(r[0] > 0.0 && r[1] > 0.0)) throw ConfigError(key, "r > 0 and R > 0 violated");
            break;
    }
}

}  // namespace

std::size_t radius_arity(TheoremId id) {
    switch (id) {
        case TheoremId::T1_eq16:
        case TheoremId::T1_eq17:
        case TheoremId::T1_ext_163:
        case TheoremId::T1_ext_164: return 1;
        case TheoremId::T3: return 4;
        case TheoremId::C32_doubling: return 3;
        default: return 2;
    }
}

SuiteConfig parse_config(const std::string& text) {
    SuiteConfig config;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
        if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
        if (value.empty()) throw ConfigError(key, "empty value");

        if (key == "family") {
            config.family = value;
            family_parameter_keys(value);
        } else if (key == "family.path") {
            config.family_path = value;
        } else if (key == "family.L") {
            config.family_L = parse_double(key, value);
        } else if (key == "family.a") {
            config.family_a = sorted_unique(parse_doubles(key, value));
        } else if (key == "family.delta") {
            config.family_delta = sorted_unique(parse_doubles(key, value));
        } else if (key == "family.q") {
            config.family_q = sorted_unique(parse_doubles(key, value));
        } else if (key == "n") {
            std::vector<int> ns;
            for (const auto& item : split_list(key, value)) ns.push_back(parse_int(key, item));
            config.n = sorted_unique(ns);
        } else if (key == "k") {
            config.k = sorted_unique(parse_doubles(key, value));
        } else if (key == "mu") {
            config.mu = sorted_unique(parse_doubles(key, value));
        } else if (key == "H") {
            config.H = sorted_unique(parse_doubles(key, value));
        } else if (key == "p") {
            config.p = sorted_unique(parse_doubles(key, value));
        } else if (key == "omega") {
            config.omega = parse_double(key, value);
        } else if (key == "theorems") {
            std::vector<TheoremId> ids;
            if (value == "all") {
                ids = all_theorems();
            } else {
                for (const auto& item : split_list(key, value)) {
                    auto id = theorem_from_string(item);
                    if (!id) throw ConfigError(key, "unknown theorem id '" + item + "'");
                    ids.push_back(*id);
                }
            }
            config.theorems = sorted_unique(ids);
        } else if (key.rfind("radii.", 0) == 0) {
            auto id = theorem_from_string(key.substr(6));
            if (!id) throw ConfigError(key, "unknown key");
            config.radii[*id] = parse_doubles(key, value);
        } else if (key == "beta") {
            config.beta = parse_double(key, value);
        } else if (key == "grid.M") {
            config.grid_m = parse_int(key, value);
        } else if (key == "grid.gamma") {
            config.grid_gamma = parse_double(key, value);
        } else if (key == "quadrature.abs_tol") {
            config.quadrature.abs_tol = parse_double(key, value);
        } else if (key == "quadrature.rel_tol") {
            config.quadrature.rel_tol = parse_double(key, value);
        } else if (key == "quadrature.max_refinements") {
            config.quadrature.max_refinements = parse_int(key, value);
        } else if (key == "quadrature.initial_panels") {
            config.quadrature.initial_panels = parse_int(key, value);
        } else if (key == "tol") {
            config.tol = parse_double(key, value);
        } else if (key == "output.path") {
            config.output_path = value;
        } else if (key == "output.format") {
            config.output_format = value;
        } else {
            throw ConfigError(key, "unknown key");
        }
    }

    for (const char* required : {"family", "n", "k", "mu", "H", "p", "theorems", "output.path"})
        if (!seen.count(required)) throw ConfigError(required, "missing required key");
    const auto& allowed = family_parameter_keys(config.family);
    for (const char* fkey : {"family.path", "family.L", "family.a", "family.delta", "family.q"})
        if (seen.count(fkey) && !allowed.count(fkey))
            throw ConfigError(fkey, "not a parameter of family '" + config.family + "'");
    validate_config(config);
    return config;
}

SuiteConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

void validate_config(const SuiteConfig& c) {
    family_parameter_keys(c.family);
    if (c.family == "tabulated" && !c.family_path) throw ConfigError("family.path", "missing required key");
    if (c.family_L && !(*c.family_L > 0.0)) throw ConfigError("family.L", "L > 0 violated");
    auto nonempty = [](const char* key, std::size_t size) {
        if (size == 0) throw ConfigError(key, "sweep list is empty");
    };
    nonempty("n", c.n.size());
    nonempty("k", c.k.size());
    nonempty("mu", c.mu.size());
    nonempty("H", c.H.size());
    nonempty("p", c.p.size());
    nonempty("family.a", c.family_a.size());
    nonempty("family.delta", c.family_delta.size());
    nonempty("family.q", c.family_q.size());
    nonempty("theorems", c.theorems.size());
    for (int n : c.n)
        if (n < 2) throw ConfigError("n", "n >= 2 violated");
    for (double k : c.k)
        if (!(k > 0.0)) throw ConfigError("k", "k > 0 violated");
    for (double q : c.family_q)
        if (!(q >= 2.0)) throw ConfigError("family.q", "q >= 2 violated");
    for (double mu : c.mu)
        for (double k : c.k)
            if (mu < 1.0 / k) {
                std::ostringstream msg;
                msg << "mu >= 1/k violated (mu = " << mu << ", k = " << k << ")";
                throw ConfigError("mu", msg.str());
            }
    for (double p : c.p)
        for (int n : c.n)
            for (double k : c.k)
                if (!(2.0 * p > n + k)) {
                    std::ostringstream msg;
                    msg << "2p > n+k violated (p = " << p << ", n+k = " << n + k << ")";
                    throw ConfigError("p", msg.str());
                }
    if (c.omega && !(*c.omega > 0.0)) throw ConfigError("omega", "omega > 0 violated");
    if (!(c.beta > 1.0)) throw ConfigError("beta", "beta > 1 violated");
    if (c.grid_m < 64) throw ConfigError("grid.M", "M >= 64 violated");
    if (c.grid_gamma && !(*c.grid_gamma >= 1.0)) throw ConfigError("grid.gamma", "gamma >= 1 violated");
    if (!(c.quadrature.abs_tol > 0.0)) throw ConfigError("quadrature.abs_tol", "abs_tol > 0 violated");
    if (!(c.quadrature.rel_tol > 0.0)) throw ConfigError("quadrature.rel_tol", "rel_tol > 0 violated");
    if (c.quadrature.max_refinements < 1)
        throw ConfigError("quadrature.max_refinements", "max_refinements >= 1 violated");
    if (c.quadrature.initial_panels < 1)
        throw ConfigError("quadrature.initial_panels", "initial_panels >= 1 violated");
    if (!(c.tol >= 0.0)) throw ConfigError("tol", "tol >= 0 violated");
    if (c.output_path.empty()) throw ConfigError("output.path", "missing required key");
    if (c.output_format != "json" && c.output_format != "csv")
        throw ConfigError("output.format", "expected json or csv");
    for (const auto& [id, r] : c.radii) check_radii(id, r);
}

std::string serialize_config(const SuiteConfig& c) {
    std::ostringstream out;
    out << "family = " << c.family << "\n";
    const auto& allowed = family_parameter_keys(c.family);
    if (c.family_path) out << "family.path = " << *c.family_path << "\n";
    if (c.family_L) out << "family.L = " << format_double(*c.family_L) << "\n";
    if (allowed.count("family.a")) out << "family.a = " << join(c.family_a) << "\n";
    if (allowed.count("family.delta")) out << "family.delta = " << join(c.family_delta) << "\n";
    if (allowed.count("family.q")) out << "family.q = " << join(c.family_q) << "\n";
    out << "n = " << join(c.n) << "\n";
    out << "k = " << join(c.k) << "\n";
    out << "mu = " << join(c.mu) << "\n";
    out << "H = " << join(c.H) << "\n";
    out << "p = " << join(c.p) << "\n";
    if (c.omega) out << "omega = " << format_double(*c.omega) << "\n";
    out << "theorems = ";
    for (std::size_t i = 0; i < c.theorems.size(); ++i) out << (i ? ", " : "") << to_string(c.theorems[i]);
    out << "\n";
    for (const auto& [id, r] : c.radii) out << radius_key(id) << " = " << join(r) << "\n";
    out << "beta = " << format_double(c.beta) << "\n";
    out << "grid.M = " << c.grid_m << "\n";
    if (c.grid_gamma) out << "grid.gamma = " << format_double(*c.grid_gamma) << "\n";
    out << "quadrature.abs_tol = " << format_double(c.quadrature.abs_tol) << "\n";
    out << "quadrature.rel_tol = " << format_double(c.quadrature.rel_tol) << "\n";
    out << "quadrature.max_refinements = " << c.quadrature.max_refinements << "\n";
    out << "quadrature.initial_panels = " << c.quadrature.initial_panels << "\n";
    out << "tol = " << format_double(c.tol) << "\n";
    out << "output.path = " << c.output_path << "\n";
    out << "output.format = " << c.output_format << "\n";
    return out.str();
}

std::vector<SweepPoint> expand_sweep(const SuiteConfig& c) {
    std::vector<SweepPoint> points;
    for (double H : c.H)
        for (double a : c.family_a)
            for (double delta : c.family_delta)
                for (double q : c.family_q)
                    for (double k : c.k)
                        for (double mu : c.mu)
                            for (int n : c.n)
                                for (double p : c.p) points.push_back({H, a, delta, q, k, mu, n, p});
    return points;
}

}  // namespace qecomp
