#include "qecomp/suite_runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "qecomp/errors.hpp"

#ifndef QECOMP_VERSION
#define QECOMP_VERSION "0.0.0"
#endif

namespace qecomp {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

struct Job {
    TheoremId id;
    SweepPoint point;
};

json point_params(const SuiteConfig& config, const SweepPoint& pt) {
    json params = {{"family", config.family}, {"n", pt.n},   {"k", pt.k},
                   {"mu", pt.mu},             {"H", pt.H},   {"p", pt.p}};
    if (config.family == "gaussian_flat") params["family.a"] = pt.a;
    if (config.family == "weight_perturbed_sphere") {
        params["family.delta"] = pt.delta;
        params["family.q"] = pt.q;
    }
    if (config.family_path) params["family.path"] = *config.family_path;
    if (config.family_L) params["family.L"] = *config.family_L;
    if (config.omega) params["omega"] = *config.omega;
    return params;
}

// Upper end of the extended range, kept inside the space.
double extended_limit(const WarpedSpace& space, const ModelParams& model) {
    return std::min(model.period(), space.L());
}

std::vector<double> default_radii(TheoremId id, const WarpedSpace& space, const ModelParams& model) {
    switch (id) {
        case TheoremId::T1_eq16:
        case TheoremId::T1_eq17: return {1.0};
        case TheoremId::T1_ext_163:
        case TheoremId::T1_ext_164:
            return {0.5 * (model.half_period() + extended_limit(space, model))};
        case TheoremId::T31_eq31:
        case TheoremId::T2: return {0.5, 1.0};
        case TheoremId::T31_eq32: {
            const double lo = model.half_period();
            const double span = extended_limit(space, model) - lo;
            return {lo + 0.25 * span, lo + 0.75 * span};
        }
        case TheoremId::T3: return {0.2, 0.4, 0.8, 1.0};
        case TheoremId::C32_doubling: return {0.5, 1.0, 1.0};
        case TheoremId::Eq21_chain: {
            const double limit = std::min(space.L(), model.half_period());
            return {0.05 * limit, 0.95 * limit};
        }
        case TheoremId::T4_threshold: return {1.0, 1.0};
    }
    return {};
}

// Empty when the theorem applies to this point, otherwise the reason it does not.
std::string inapplicable_reason(TheoremId id, const WarpedSpace& space, const ModelParams& model) {
    switch (id) {
        case TheoremId::T1_ext_163:
        case TheoremId::T1_ext_164:
        case TheoremId::T31_eq32:
            if (!(model.H > 0.0)) return "extended range needs H > 0";
            if (!(extended_limit(space, model) > model.half_period()))
                return "space ends before pi/(2 sqrt H)";
            return {};
        case TheoremId::T4_threshold:
            if (!(model.H > 0.0)) return "diameter probe needs H > 0";
            if (!space.closing_radius()) return "diameter probe needs a compact space";
            return {};
        default: return {};
    }
}

CheckReport run_check(TheoremId id, const WarpedSpace& space, const ModelParams& model, double p,
                      const std::vector<double>& r, const SuiteConfig& config, const CheckOptions& opts) {
    switch (id) {
        case TheoremId::T1_eq16: return check_thm1_norm(space, model, p, r[0], opts);
        case TheoremId::T1_eq17: return check_thm1_pointwise(space, model, p, r[0], opts);
        case TheoremId::T1_ext_163: return check_thm1_extended(space, model, p, r[0], opts).first;
        case TheoremId::T1_ext_164: return check_thm1_extended(space, model, p, r[0], opts).second;
        case TheoremId::T31_eq31: return check_thm31_eq31(space, model, p, r[0], r[1], opts);
        case TheoremId::T31_eq32: return check_thm31_eq32(space, model, p, r[0], r[1], opts);
        case TheoremId::T2: return check_thm2(space, model, p, r[0], r[1], opts);
        case TheoremId::T3: return check_thm3(space, model, p, r[0], r[1], r[2], r[3], opts);
        case TheoremId::C32_doubling:
            return check_doubling(space, model, p, config.beta, r[0], r[1], r[2], opts);
        case TheoremId::Eq21_chain:
            return check_eq21_chain(space, model, p,
                                    RadialGrid(r[0], r[1], config.grid_m, config.grid_gamma.value_or(1.0)),
                                    opts);
        case TheoremId::T4_threshold: return diameter_probe(space, model, p, r[0], r[1], opts);
    }
    throw ParameterError("unknown theorem id");
}

struct JobOutcome {
    std::optional<CheckReport> report;
    std::optional<SkippedCheck> skipped;
};

JobOutcome execute(const Job& job, const SuiteConfig& config) {
    CheckOptions opts;
    opts.tol = config.tol;
    opts.grid_m = config.grid_m;
    opts.grid_gamma = config.grid_gamma;
    opts.quadrature = config.quadrature;
    try {
        const WarpedSpace space = build_space(config, job.point);
        const ModelParams model = space.model(job.point.H);
        const std::string reason = inapplicable_reason(job.id, space, model);
        if (!reason.empty()) return {std::nullopt, SkippedCheck{job.id, point_params(config, job.point), reason}};
        auto it = config.radii.find(job.id);
        const auto radii = it != config.radii.end() ? it->second : default_radii(job.id, space, model);
        return {run_check(job.id, space, model, job.point.p, radii, config, opts), std::nullopt};
    } catch (const std::exception& e) {
        CheckReport rep;
        rep.theorem_id = job.id;
        rep.params = point_params(config, job.point);
        auto it = config.radii.find(job.id);
        if (it != config.radii.end()) rep.params["radii"] = it->second;
        rep.lhs = rep.rhs = rep.margin = std::nan("");
        rep.pass = false;
        rep.status = Status::Error;
        rep.tolerance = config.tol;
        rep.error = e.what();
        return {rep, std::nullopt};
    }
}

struct SortKey {
    std::string theorem;
    std::uint64_t hash;
    std::string canonical;
    auto operator<=>(const SortKey&) const = default;
};

SortKey sort_key(TheoremId id, const json& params) {
    const std::string canonical = params.dump();
    return {to_string(id), fnv1a(canonical), canonical};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string csv_number(double v) {
    if (!std::isfinite(v)) return "";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

std::string tool_version() { return QECOMP_VERSION; }

int exit_code_for(const std::vector<CheckReport>& reports) {
    bool hypothesis = false;
    for (const auto& r : reports) {
        if (r.status == Status::Fail || r.status == Status::Error) return kExitFail;
        hypothesis = hypothesis || r.status == Status::HypothesisNotMet;
    }
    return hypothesis ? kExitHypothesis : kExitPass;
}

WarpedSpace build_space(const SuiteConfig& config, const SweepPoint& pt) {
    if (config.family == "tabulated")
        return load_tabulated_profile(std::filesystem::path(*config.family_path), pt.n, pt.mu, pt.k,
                                      config.omega);
    auto tag = family_from_name(config.family);
    if (!tag) throw ConfigError("family", "unknown family '" + config.family + "'");
    BuiltinFamily family{*tag, pt.a, pt.delta, pt.q, config.family_L};
    return make_space(family, pt.n, pt.mu, pt.k, config.omega);
}

SuiteResult run_suite(const SuiteConfig& config, unsigned threads) {
    validate_config(config);
    std::vector<Job> jobs;
    for (const auto& point : expand_sweep(config))
        for (TheoremId id : config.theorems) jobs.push_back({id, point});

    std::vector<JobOutcome> outcomes(jobs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, jobs.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) outcomes[i] = execute(jobs[i], config);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    SuiteResult result;
    for (auto& o : outcomes) {
        if (o.report) result.reports.push_back(std::move(*o.report));
        if (o.skipped) result.skipped.push_back(std::move(*o.skipped));
    }
    std::sort(result.reports.begin(), result.reports.end(), [](const auto& a, const auto& b) {
        return sort_key(a.theorem_id, a.params) < sort_key(b.theorem_id, b.params);
    });
    std::sort(result.skipped.begin(), result.skipped.end(), [](const auto& a, const auto& b) {
        return sort_key(a.theorem_id, a.params) < sort_key(b.theorem_id, b.params);
    });
    result.exit_code = exit_code_for(result.reports);

    json reports = json::array();
    std::map<std::string, int> counts = {{"pass", 0}, {"fail", 0}, {"hypothesis-not-met", 0}, {"error", 0}};
    for (const auto& r : result.reports) {
        reports.push_back(to_json(r));
        ++counts[to_string(r.status)];
    }
    json skipped = json::array();
    for (const auto& s : result.skipped)
        skipped.push_back({{"theorem_id", to_string(s.theorem_id)}, {"params", s.params}, {"reason", s.reason}});
    json header = {
        {"tool", "qecomp"},
        {"version", tool_version()},
        {"timestamp", utc_timestamp()},
        {"grid", {{"M", config.grid_m}, {"gamma", config.grid_gamma ? json(*config.grid_gamma) : json("2p-1")}}},
        {"quadrature",
         {{"abs_tol", config.quadrature.abs_tol},
          {"rel_tol", config.quadrature.rel_tol},
          {"max_refinements", config.quadrature.max_refinements},
          {"initial_panels", config.quadrature.initial_panels}}},
        {"tolerance", config.tol},
        {"config", serialize_config(config)}};
    json summary = {{"total", result.reports.size()}, {"skipped", result.skipped.size()}, {"exit_code", result.exit_code}};
    for (const auto& [name, count] : counts) summary[name] = count;
    result.document = {{"header", header}, {"reports", reports}, {"skipped", skipped}, {"summary", summary}};
    return result;
}

std::string render_json(const SuiteResult& result) { return result.document.dump(2) + "\n"; }

std::string render_csv(const SuiteResult& result) {
    std::ostringstream out;
    out << "theorem_id,status,pass,lhs,rhs,margin,relative_margin,tolerance,worst_node,params,error\n";
    for (const auto& r : result.reports) {
        out << to_string(r.theorem_id) << ',' << to_string(r.status) << ',' << (r.pass ? "true" : "false") << ','
            << csv_number(r.lhs) << ',' << csv_number(r.rhs) << ',' << csv_number(r.margin) << ','
            << csv_number(r.status == Status::Error ? std::nan("") : r.relative_margin()) << ','
            << csv_number(r.tolerance) << ','
            << (r.grid_meta.worst_node ? csv_number(*r.grid_meta.worst_node) : std::string()) << ','
            << csv_field(r.params.dump()) << ',' << csv_field(r.error) << '\n';
    }
    return out.str();
}

void write_suite(const SuiteResult& result, const SuiteConfig& config) {
    const std::string text = config.output_format == "csv" ? render_csv(result) : render_json(result);
    if (config.output_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(config.output_path);
    if (!out) throw std::runtime_error("cannot write '" + config.output_path + "'");
    out << text;
}

json without_timestamp(json document) {
    if (document.contains("header")) document["header"].erase("timestamp");
    return document;
}

void emit_profiles(const WarpedSpace& space, const ModelParams& model, const RadialGrid& grid,
                   std::ostream& out) {
    grid.validate();
    require_compatible(space, model);
    const auto nodes = grid.nodes();
    std::vector<double> with_origin{0.0};
    with_origin.insert(with_origin.end(), nodes.begin(), nodes.end());
    const auto volume =
        cumulative_integral([&](double t) { return weighted_area(space, t); }, with_origin, 0.0, {});
    out << "r,phi,f,m_f,m_model,lambda_min,deficit,A_f,V_f\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double r = nodes[i];
        out << r << ',' << space.phi(r) << ',' << space.f(r) << ',' << weighted_mean_curvature(space, r) << ','
            << model_mean_curvature(model, r) << ',' << lambda_min(space, r) << ','
            << ricci_deficit(space, model.H, r) << ',' << weighted_area(space, r) << ',' << volume[i + 1]
            << '\n';
    }
}

void emit_profiles(const WarpedSpace& space, const ModelParams& model, const RadialGrid& grid,
                   const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    emit_profiles(space, model, grid, out);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace qecomp
