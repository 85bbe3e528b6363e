#include "qecomp/theorem_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qecomp/errors.hpp"
#include "qecomp/integral_norms.hpp"

namespace qecomp {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

struct NodeValue {
    double t;
    double lhs;
    double rhs;
};

bool passes(double lhs, double rhs, double tol) { return lhs <= rhs + tol * (1.0 + std::abs(rhs)); }

void finalize(CheckReport& rep) {
    rep.margin = rep.rhs - rep.lhs;
    rep.pass = passes(rep.lhs, rep.rhs, rep.tolerance);
    rep.status = rep.pass ? Status::Pass : Status::Fail;
}

// Reports the worst node: a failing one if any, otherwise the smallest scale-free slack.
void aggregate_nodes(CheckReport& rep, const std::vector<NodeValue>& values) {
    if (values.empty()) throw DomainError("pointwise check has no nodes");
    bool all_pass = true;
    const NodeValue* worst = nullptr;
    double worst_slack = std::numeric_limits<double>::infinity();
    bool worst_fails = false;
    for (const auto& v : values) {
        const bool ok = passes(v.lhs, v.rhs, rep.tolerance);
        all_pass = all_pass && ok;
        const double scale = std::max(std::abs(v.lhs), std::abs(v.rhs));
        if (scale == 0.0) continue;
        const double slack = (v.rhs - v.lhs) / scale;
        // Ties go to the larger radius, which keeps the choice independent of the grid.
        const bool better = (!ok && !worst_fails) || (ok == !worst_fails && slack <= worst_slack + 1e-12);
        if (worst == nullptr || better) {
            worst = &v;
            worst_slack = slack;
            worst_fails = !ok;
        }
    }
    if (worst == nullptr) worst = &values.back();
    rep.lhs = worst->lhs;
    rep.rhs = worst->rhs;
    rep.margin = rep.rhs - rep.lhs;
    rep.pass = all_pass;
    rep.status = all_pass ? Status::Pass : Status::Fail;
    rep.grid_meta.worst_node = worst->t;
}

void validate_common(const WarpedSpace& space, const ModelParams& model, double p) {
    require_compatible(space, model);
    if (!(2.0 * p > space.N())) {
        std::ostringstream msg;
        msg << "check requires 2p > n+k (p = " << p << ", n+k = " << space.N() << ")";
        throw ParameterError(msg.str());
    }
}

void require_radius_in_space(const WarpedSpace& space, double r, const char* name) {
    if (!(r > 0.0)) throw DomainError(std::string(name) + " must be positive");
    if (r > space.L() * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << name << " = " << r << " exceeds the space's maximal radius " << space.L();
        throw DomainError(msg.str());
    }
}

void require_half_period(const ModelParams& model, double r, const char* name) {
    if (model.H > 0.0 && r > model.half_period() * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << name << " = " << r << " exceeds pi/(2 sqrt H) = " << model.half_period();
        throw DomainError(msg.str());
    }
}

void require_extended_range(const ModelParams& model, double r, const char* name) {
    if (!(model.H > 0.0)) throw DomainError("extended-range estimate requires H > 0");
    if (!(r > model.half_period() && r < model.period())) {
        std::ostringstream msg;
        msg << name << " = " << r << " outside (pi/(2 sqrt H), pi/sqrt H) = ("
            << model.half_period() << ", " << model.period() << ")";
        throw DomainError(msg.str());
    }
}

json base_params(const WarpedSpace& space, const ModelParams& model, double p) {
    json params = json::object();
    params["family"] = space.info().family;
    for (const auto& [key, value] : space.info().params) params["family." + key] = value;
    if (!space.info().source.empty()) params["family.path"] = space.info().source;
    params["n"] = space.n();
    params["k"] = space.k();
    params["mu"] = space.mu();
    params["H"] = model.H;
    params["omega"] = model.omega;
    params["p"] = p;
    return params;
}

CheckReport new_report(TheoremId id, const WarpedSpace& space, const ModelParams& model, double p,
                       const CheckOptions& opts) {
    CheckReport rep;
    rep.theorem_id = id;
    rep.params = base_params(space, model, p);
    rep.tolerance = opts.tol;
    if (space.info().reduced_accuracy) rep.details["reduced_accuracy"] = true;
    return rep;
}

RadialGrid node_grid(const WarpedSpace& space, double p, double r, const CheckOptions& opts) {
    const double lo = std::min(space.pole_radius(), 0.5 * r);
    return RadialGrid(lo, r, opts.grid_m, opts.grid_gamma.value_or(2.0 * p - 1.0));
}

void set_grid_meta(CheckReport& rep, const RadialGrid& grid) {
    rep.grid_meta.r_min = grid.r_min;
    rep.grid_meta.r_max = grid.r_max;
    rep.grid_meta.M = grid.M;
    rep.grid_meta.gamma = grid.gamma;
}

ConstantRequest make_request(const ModelParams& model, double p, double R, const CheckOptions& opts) {
    ConstantRequest req;
    req.model = model;
    req.p = p;
    req.R = R;
    req.quadrature = opts.quadrature;
    return req;
}

// (2p-1)^p ((N-1)/(2p-N))^{p-1}
double pointwise_constant(double N, double p) {
    return std::pow(2.0 * p - 1.0, p) * std::pow((N - 1.0) / (2.0 * p - N), p - 1.0);
}

// ((N-1)(2p-1)/(2p-N) ||deficit||_{p,f}(r))^{1/2}
double norm_bound(const WarpedSpace& space, const ModelParams& model, double p, double r,
                  const QuadratureSpec& spec, json& details) {
    const double N = space.N();
    const double dnorm = deficit_norm(space, model.H, p, r, spec);
    details["deficit_norm"] = dnorm;
    return std::sqrt((N - 1.0) * (2.0 * p - 1.0) / (2.0 * p - N) * dnorm);
}

// Pointwise estimate at every node, with an optional sine weight on the left side.
std::vector<NodeValue> pointwise_nodes(const WarpedSpace& space, const ModelParams& model, double p,
                                       const std::vector<double>& nodes, double sine_power,
                                       const QuadratureSpec& spec, json& details) {
    const double N = space.N();
    const double K = pointwise_constant(N, p);
    auto integrand = [&](double t) {
        const double d = ricci_deficit(space, model.H, t);
        return d == 0.0 ? 0.0 : std::pow(d, p) * weighted_area(space, t);
    };
    std::vector<double> with_origin;
    with_origin.reserve(nodes.size() + 1);
    with_origin.push_back(0.0);
    with_origin.insert(with_origin.end(), nodes.begin(), nodes.end());
    const auto cumulative = cumulative_integral(integrand, with_origin, 0.0, spec);

    std::vector<NodeValue> out;
    out.reserve(nodes.size());
    const double sqrtH = model.H > 0.0 ? std::sqrt(model.H) : 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double t = nodes[i];
        const double phi = excess_phi(space, model, t);
        double lhs = phi == 0.0 ? 0.0 : std::pow(phi, 2.0 * p - 1.0) * weighted_area(space, t);
        if (sine_power != 0.0 && lhs != 0.0) lhs *= std::pow(std::sin(sqrtH * t), sine_power);
        out.push_back({t, lhs, K * cumulative[i + 1]});
    }
    // The running integral at the last node must agree with a direct evaluation.
    const double direct = deficit_power_integral(space, model.H, p, nodes.back(), spec);
    const double running = cumulative.back();
    const double denom = std::max(std::abs(direct), std::abs(running));
    details["cumulative_crosscheck_rel_diff"] = denom == 0.0 ? 0.0 : std::abs(direct - running) / denom;
    details["rhs_at_r"] = K * running;
    return out;
}

}  // namespace

std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::T1_eq16: return "T1_eq16";
        case TheoremId::T1_eq17: return "T1_eq17";
        case TheoremId::T1_ext_163: return "T1_ext_163";
        case TheoremId::T1_ext_164: return "T1_ext_164";
        case TheoremId::T31_eq31: return "T31_eq31";
        case TheoremId::T31_eq32: return "T31_eq32";
        case TheoremId::T2: return "T2";
        case TheoremId::T3: return "T3";
        case TheoremId::C32_doubling: return "C32_doubling";
        case TheoremId::Eq21_chain: return "Eq21_chain";
        case TheoremId::T4_threshold: return "T4_threshold";
    }
    return "unknown";
}

const std::vector<TheoremId>& all_theorems() {
    static const std::vector<TheoremId> ids = {
        TheoremId::T1_eq16,    TheoremId::T1_eq17,  TheoremId::T1_ext_163,   TheoremId::T1_ext_164,
        TheoremId::T31_eq31,   TheoremId::T31_eq32, TheoremId::T2,           TheoremId::T3,
        TheoremId::C32_doubling, TheoremId::Eq21_chain, TheoremId::T4_threshold};
    return ids;
}

std::optional<TheoremId> theorem_from_string(const std::string& name) {
    for (auto id : all_theorems())
        if (to_string(id) == name) return id;
    return std::nullopt;
}

std::string to_string(Status status) {
    switch (status) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::HypothesisNotMet: return "hypothesis-not-met";
        case Status::Error: return "error";
    }
    return "unknown";
}

double CheckReport::relative_margin() const {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : margin / scale;
}

json to_json(const CheckReport& report) {
    auto number = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json grid = {{"r_min", number(report.grid_meta.r_min)},
                 {"r_max", number(report.grid_meta.r_max)},
                 {"M", report.grid_meta.M},
                 {"gamma", number(report.grid_meta.gamma)}};
    if (report.grid_meta.worst_node) grid["worst_node"] = number(*report.grid_meta.worst_node);
    json out = {{"theorem_id", to_string(report.theorem_id)},
                {"params", report.params},
                {"lhs", number(report.lhs)},
                {"rhs", number(report.rhs)},
                {"margin", number(report.margin)},
                {"pass", report.pass},
                {"status", to_string(report.status)},
                {"tolerance", number(report.tolerance)},
                {"grid_meta", grid},
                {"details", report.details}};
    if (!report.error.empty()) out["error"] = report.error;
    return out;
}

CheckReport check_thm1_norm(const WarpedSpace& space, const ModelParams& model, double p, double r,
                            const CheckOptions& opts) {
    validate_common(space, model, p);
    require_radius_in_space(space, r, "r");
    require_half_period(model, r, "r");
    CheckReport rep = new_report(TheoremId::T1_eq16, space, model, p, opts);
    rep.params["r"] = r;
    auto integrand = [&](double t) {
        const double phi = excess_phi(space, model, t);
        return phi == 0.0 ? 0.0 : std::pow(phi, 2.0 * p) * weighted_area(space, t);
    };
    const double integral = integrate_graded(integrand, 0.0, r, 0.0, opts.quadrature).value;
    rep.lhs = std::pow(std::max(0.0, integral), 1.0 / (2.0 * p));
    rep.rhs = norm_bound(space, model, p, r, opts.quadrature, rep.details);
    finalize(rep);
    return rep;
}

CheckReport check_thm1_pointwise(const WarpedSpace& space, const ModelParams& model, double p,
                                 double r, const CheckOptions& opts) {
    validate_common(space, model, p);
    require_radius_in_space(space, r, "r");
    require_half_period(model, r, "r");
    CheckReport rep = new_report(TheoremId::T1_eq17, space, model, p, opts);
    rep.params["r"] = r;
    const RadialGrid grid = node_grid(space, p, r, opts);
    set_grid_meta(rep, grid);
    aggregate_nodes(rep, pointwise_nodes(space, model, p, grid.nodes(), 0.0, opts.quadrature,
                                         rep.details));
    return rep;
}

std::pair<CheckReport, CheckReport> check_thm1_extended(const WarpedSpace& space,
                                                        const ModelParams& model, double p,
                                                        double r, const CheckOptions& opts) {
    validate_common(space, model, p);
    require_extended_range(model, r, "r");
    require_radius_in_space(space, r, "r");
    const double N = space.N();
    const double sine_power = 4.0 * p - N - 1.0;
    const double sqrtH = std::sqrt(model.H);

    CheckReport norm = new_report(TheoremId::T1_ext_163, space, model, p, opts);
    norm.params["r"] = r;
    auto integrand = [&](double t) {
        const double phi = excess_phi(space, model, t);
        if (phi == 0.0) return 0.0;
        return std::pow(std::sin(sqrtH * t), sine_power) * std::pow(phi, 2.0 * p) *
               weighted_area(space, t);
    };
    const double integral = integrate_graded(integrand, 0.0, r, 0.0, opts.quadrature).value;
    norm.lhs = std::pow(std::max(0.0, integral), 1.0 / (2.0 * p));
    norm.rhs = norm_bound(space, model, p, r, opts.quadrature, norm.details);
    finalize(norm);

    CheckReport point = new_report(TheoremId::T1_ext_164, space, model, p, opts);
    point.params["r"] = r;
    const RadialGrid grid = node_grid(space, p, r, opts);
    set_grid_meta(point, grid);
    aggregate_nodes(point, pointwise_nodes(space, model, p, grid.nodes(), sine_power,
                                           opts.quadrature, point.details));
    return {norm, point};
}

CheckReport check_eq21_chain(const WarpedSpace& space, const ModelParams& model, double p,
                             const RadialGrid& grid, const CheckOptions& opts) {
    validate_common(space, model, p);
    grid.validate();
    if (!(grid.r_min > 0.0)) throw DomainError("Eq21 grid must stay away from the pole");
    const double limit = std::min(space.L(), model.half_period());
    if (!(grid.r_max < limit)) throw DomainError("Eq21 grid must lie strictly inside (0, limit)");

    CheckReport rep = new_report(TheoremId::Eq21_chain, space, model, p, opts);
    rep.params["r_min"] = grid.r_min;
    rep.params["r_max"] = grid.r_max;
    set_grid_meta(rep, grid);

    const double N = space.N();
    const double c_sq = (2.0 * p - 1.0) / (N - 1.0) - 1.0;
    const double c_model = (4.0 * p - 2.0) / (N - 1.0) - 1.0;
    auto weighted_power = [&](double t) {
        const double phi = excess_phi(space, model, t);
        return phi == 0.0 ? 0.0 : std::pow(phi, 2.0 * p - 1.0) * weighted_area(space, t);
    };

    const auto nodes = grid.nodes();
    std::vector<NodeValue> values;
    values.reserve(nodes.size());
    double worst_scale = 0.0;
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
        const double t = nodes[i];
        double h = std::min(t - nodes[i - 1], nodes[i + 1] - t);
        h = std::min({h, t / 2.5, (limit - t) / 2.5});
        if (!(h > 1e-6 * t)) throw DomainError("finite-difference step underflow near the pole");
        const double derivative = (-weighted_power(t + 2.0 * h) + 8.0 * weighted_power(t + h) -
                                   8.0 * weighted_power(t - h) + weighted_power(t - 2.0 * h)) /
                                  (12.0 * h);
        const double phi = excess_phi(space, model, t);
        const double area = weighted_area(space, t);
        const double m_model = model_mean_curvature(model, t);
        const double phi_pow = phi == 0.0 ? 0.0 : std::pow(phi, 2.0 * p - 1.0);
        const double lhs = derivative + phi * phi_pow * area * c_sq + phi_pow * m_model * area * c_model;
        const double rhs = phi == 0.0 ? 0.0
                                      : (2.0 * p - 1.0) * ricci_deficit(space, model.H, t) *
                                            std::pow(phi, 2.0 * p - 2.0) * area;
        worst_scale = std::max({worst_scale, std::abs(derivative), std::abs(rhs)});
        values.push_back({t, lhs, rhs});
    }
    rep.details["max_term_magnitude"] = worst_scale;
    rep.details["interior_nodes"] = static_cast<int>(values.size());
    aggregate_nodes(rep, values);
    return rep;
}

CheckReport check_thm31_eq31(const WarpedSpace& space, const ModelParams& model, double p,
                             double r, double R, const CheckOptions& opts) {
    validate_common(space, model, p);
    if (!(r > 0.0 && r <= R)) throw DomainError("area estimate requires 0 < r <= R");
    require_radius_in_space(space, R, "R");
    require_half_period(model, R, "R");
    CheckReport rep = new_report(TheoremId::T31_eq31, space, model, p, opts);
    rep.params["r"] = r;
    rep.params["R"] = R;
    if (r == R) {
        finalize(rep);
        return rep;
    }
    const double e = 1.0 / (2.0 * p - 1.0);
    rep.lhs = std::pow(weighted_area(space, R) / model_area(model, R), e) -
              std::pow(weighted_area(space, r) / model_area(model, r), e);
    ConstantRequest req = make_request(model, p, R, opts);
    const double scriptC = const_thm31_scriptC(req);
    const double dnorm = deficit_norm(space, model.H, p, R, opts.quadrature);
    rep.details["constant"] = scriptC;
    rep.details["deficit_norm"] = dnorm;
    rep.rhs = scriptC * std::pow(dnorm, p * e);
    finalize(rep);
    return rep;
}

CheckReport check_thm31_eq32(const WarpedSpace& space, const ModelParams& model, double p,
                             double r, double R, const CheckOptions& opts) {
    validate_common(space, model, p);
    if (!(r <= R)) throw DomainError("area estimate requires r <= R");
    require_extended_range(model, r, "r");
    require_extended_range(model, R, "R");
    require_radius_in_space(space, R, "R");
    CheckReport rep = new_report(TheoremId::T31_eq32, space, model, p, opts);
    rep.params["r"] = r;
    rep.params["R"] = R;
    if (r == R) {
        finalize(rep);
        return rep;
    }
    const double N = space.N();
    const double e = 1.0 / (2.0 * p - 1.0);
    rep.lhs = std::pow(weighted_area(space, R) / model_area(model, R), e) -
              std::pow(weighted_area(space, r) / model_area(model, r), e);
    const double sqrtH = std::sqrt(model.H);
    // int_r^R csc^2(sqrt(H) t) dt = (cot(sqrt(H) r) - cot(sqrt(H) R)) / sqrt(H)
    const double kernel = std::pow(sqrtH, (N - 1.0) * e) *
                          (1.0 / std::tan(sqrtH * r) - 1.0 / std::tan(sqrtH * R)) / sqrtH;
    const double dnorm = deficit_norm(space, model.H, p, R, opts.quadrature);
    // omega^{-1/(2p-1)} keeps the bound homogeneous in omega, as in the area-ratio derivation.
    const double omega_factor = std::pow(model.omega, -e);
    rep.details["kernel_integral"] = kernel;
    rep.details["deficit_norm"] = dnorm;
    rep.details["omega_factor"] = omega_factor;
    rep.rhs = volume_prefactor(N, p) * std::pow(dnorm, p * e) * kernel * omega_factor;
    finalize(rep);
    return rep;
}

std::vector<CheckReport> check_thm31(const WarpedSpace& space, const ModelParams& model, double p,
                                     double r, double R, const CheckOptions& opts) {
    if (model.H > 0.0 && r > model.half_period())
        return {check_thm31_eq32(space, model, p, r, R, opts)};
    return {check_thm31_eq31(space, model, p, r, R, opts)};
}

CheckReport check_thm2(const WarpedSpace& space, const ModelParams& model, double p, double r,
                       double R, const CheckOptions& opts) {
    validate_common(space, model, p);
    if (!(r > 0.0 && r <= R)) throw DomainError("volume estimate requires 0 < r <= R");
    require_radius_in_space(space, R, "R");
    require_half_period(model, R, "R");
    CheckReport rep = new_report(TheoremId::T2, space, model, p, opts);
    rep.params["r"] = r;
    rep.params["R"] = R;
    if (r == R) {
        finalize(rep);
        return rep;
    }
    const double e = 1.0 / (2.0 * p - 1.0);
    const double ratio_R = weighted_volume(space, R, opts.quadrature) / model_volume(model, R);
    const double ratio_r = weighted_volume(space, r, opts.quadrature) / model_volume(model, r);
    rep.lhs = std::pow(ratio_R, e) - std::pow(ratio_r, e);
    ConstantRequest req = make_request(model, p, R, opts);
    const double C = const_thm2_C(req);
    const double dnorm = deficit_norm(space, model.H, p, R, opts.quadrature);
    rep.details["constant"] = C;
    rep.details["deficit_norm"] = dnorm;
    rep.rhs = C * std::pow(dnorm, p * e);
    finalize(rep);
    return rep;
}

CheckReport check_thm3(const WarpedSpace& space, const ModelParams& model, double p, double r1,
                       double r2, double R1, double R2, const CheckOptions& opts) {
    validate_common(space, model, p);
    if (!(0.0 <= r1 && r1 <= r2 && r2 <= R1 && R1 <= R2))
        throw DomainError("annulus estimate requires 0 <= r1 <= r2 <= R1 <= R2");
    require_radius_in_space(space, R2, "R2");
    require_half_period(model, R2, "R2");
    CheckReport rep = new_report(TheoremId::T3, space, model, p, opts);
    rep.params["r1"] = r1;
    rep.params["r2"] = r2;
    rep.params["R1"] = R1;
    rep.params["R2"] = R2;
    if (r1 == r2 && R1 == R2) {
        finalize(rep);
        return rep;
    }
    if (r2 == R1) throw DomainError("annulus estimate diverges when r2 == R1");
    const double e = 1.0 / (2.0 * p - 1.0);
    const double outer = weighted_volume_annulus(space, r2, R2, opts.quadrature) /
                         model_volume_annulus(model, r2, R2);
    const double inner = weighted_volume_annulus(space, r1, R1, opts.quadrature) /
                         model_volume_annulus(model, r1, R1);
    rep.lhs = std::pow(outer, e) - std::pow(inner, e);
    ConstantRequest req = make_request(model, p, R2, opts);
    req.r1 = r1;
    req.r2 = r2;
    req.R1 = R1;
    req.R2 = R2;
    const double C = const_thm3_annulus(req);
    const double dnorm = deficit_norm(space, model.H, p, R2, opts.quadrature);
    rep.details["constant"] = C;
    rep.details["deficit_norm"] = dnorm;
    rep.rhs = C * std::pow(dnorm, p * e);
    finalize(rep);
    return rep;
}

CheckReport check_doubling(const WarpedSpace& space, const ModelParams& model, double p,
                           double beta, double r1, double r2, double R, const CheckOptions& opts) {
    validate_common(space, model, p);
    if (!(beta > 1.0)) throw ParameterError("doubling requires beta > 1");
    if (!(0.0 < r1 && r1 < r2 && r2 <= R)) throw DomainError("doubling requires 0 < r1 < r2 <= R");
    require_radius_in_space(space, R, "R");
    require_half_period(model, R, "R");
    CheckReport rep = new_report(TheoremId::C32_doubling, space, model, p, opts);
    rep.params["beta"] = beta;
    rep.params["r1"] = r1;
    rep.params["r2"] = r2;
    rep.params["R"] = R;

    ConstantRequest req = make_request(model, p, R, opts);
    req.beta = beta;
    const double epsilon = epsilon_doubling(req);
    const double kb = kbar(space, p, model.H, R, opts.quadrature);
    const bool hypothesis = kb < epsilon;
    rep.details["epsilon"] = epsilon;
    rep.details["kbar"] = kb;
    rep.details["hypothesis_met"] = hypothesis;

    rep.lhs = weighted_volume(space, r2, opts.quadrature) / weighted_volume(space, r1, opts.quadrature);
    rep.rhs = beta * model_volume(model, r2) / model_volume(model, r1);
    finalize(rep);
    if (!hypothesis) rep.status = Status::HypothesisNotMet;
    return rep;
}

CheckReport diameter_probe(const WarpedSpace& space, const ModelParams& model, double p, double r,
                           double R, const CheckOptions& opts) {
    validate_common(space, model, p);
    if (!(model.H > 0.0)) throw DomainError("diameter probe requires H > 0");
    if (!space.closing_radius())
        throw DomainError("diameter probe requires a compact space (non-compact input)");
    require_radius_in_space(space, R, "R");
    CheckReport rep = new_report(TheoremId::T4_threshold, space, model, p, opts);
    rep.params["r"] = r;
    rep.params["R"] = R;
    const double K = k_threshold(model, r);
    const double kb = kbar(space, p, model.H, R, opts.quadrature);
    rep.details["k_threshold"] = K;
    rep.details["kbar"] = kb;
    rep.lhs = *space.closing_radius();
    rep.rhs = kPi / std::sqrt(model.H);
    finalize(rep);
    if (kb > 0.0) rep.status = Status::HypothesisNotMet;
    return rep;
}

}  // namespace qecomp
