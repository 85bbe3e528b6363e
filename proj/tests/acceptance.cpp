// Acceptance criteria: one PASS/FAIL line each, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qecomp/integral_norms.hpp"
#include "qecomp/suite_config.hpp"
#include "qecomp/suite_runner.hpp"
#include "qecomp/theorem_checks.hpp"

using namespace qecomp;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

WarpedSpace gaussian(double a, double mu, double k, std::optional<double> omega = std::nullopt) {
    BuiltinFamily fam{FamilyTag::GaussianFlat};
    fam.a = a;
    return make_space(fam, 3, mu, k, omega);
}

WarpedSpace perturbed(double delta, std::optional<double> omega = std::nullopt) {
    BuiltinFamily fam{FamilyTag::WeightPerturbedSphere};
    fam.delta = delta;
    return make_space(fam, 3, 1.0, 1.0, omega);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome zero_deficit() {
    const auto start = Clock::now();
    Outcome out;
    CheckOptions opts;
    opts.grid_m = 4096;
    const std::vector<std::pair<WarpedSpace, double>> cases = {
        {make_space({FamilyTag::Sphere}, 3, 1.0, 1.0), 2.0 / 3.0},
        {make_space({FamilyTag::Flat}, 3, 1.0, 1.0), 0.0},
        {make_space({FamilyTag::Hyperbolic}, 3, 1.0, 1.0), -1.0}};
    int count = 0;
    for (const auto& [s, H] : cases) {
        const ModelParams m = s.model(H);
        for (const auto& r : {check_thm1_norm(s, m, 3.0, 1.0, opts), check_thm1_pointwise(s, m, 3.0, 1.0, opts),
                              check_thm31_eq31(s, m, 3.0, 0.5, 1.0, opts), check_thm2(s, m, 3.0, 0.5, 1.0, opts),
                              check_thm3(s, m, 3.0, 0.2, 0.4, 0.8, 1.0, opts)}) {
            ++count;
            if (!r.pass || r.lhs > 1e-7 * (1 + std::abs(r.rhs))) {
                out.pass = false;
                out.note += " " + to_string(r.theorem_id) + "@" + s.info().family;
            }
        }
    }
    const double t = seconds_since(start);
    out.pass = out.pass && t < 5.0;
    out.note = std::to_string(count) + " checks" + out.note + fmt(", %.3f s at M=4096", t);
    return out;
}

Outcome mean_curvature_instance() {
    Outcome out;
    auto s = make_space({FamilyTag::Sphere}, 3, 1.0, 1.0);
    const ModelParams m = s.model(2.0 / 3.0);
    const double c = std::sqrt(2.0 / 3.0);
    const double end = pi / (2 * c);
    double worst = -1e300;
    for (int i = 1; i <= 1000; ++i) {
        const double r = 0.01 + (end - 0.01) * i / 1001.0;
        const double lhs = 2.0 / std::tan(r);
        const double rhs = 3.0 * c / std::tan(c * r);
        const double lib = weighted_mean_curvature(s, r) - model_mean_curvature(m, r);
        worst = std::max({worst, lhs - rhs, lib});
        if (lhs > rhs + 1e-9 || lib > 1e-9 || excess_phi(s, m, r) != 0.0) out.pass = false;
    }
    out.note = "1000 points, max(lhs - rhs) = " + fmt("%.3e", worst);
    return out;
}

Outcome constant_oracles() {
    Outcome out;
    double worst = 0.0;
    for (double R : {0.5, 1.0, 2.0}) {
        ConstantRequest req;
        req.model = ModelParams(3, 1.0, 0.0, 4 * pi);
        req.p = 3.0;
        req.R = R;
        worst = std::max(worst, std::abs(const_thm2_C(req) / oracle::flat_C(4, 3, 4 * pi, R) - 1));
        worst = std::max(worst, std::abs(const_thm31_scriptC(req) / oracle::flat_scriptC(4, 3, 4 * pi, R) - 1));
    }
    const double K = k_threshold(ModelParams(3, 1.0, 0.0), 1.0);
    out.pass = worst < 1e-8 && K == 3712.0 / 3.0;
    out.note = "max rel diff " + fmt("%.2e", worst) + ", K = " + fmt("%.12g", K) + " (3712/3 = " +
               fmt("%.12g", 3712.0 / 3.0) + ")";
    return out;
}

Outcome curvature_oracle() {
    Outcome out;
    std::mt19937 rng(1234);
    const std::vector<std::pair<WarpedSpace, oracle::Profile>> cases = {
        {make_space({FamilyTag::Sphere}, 3, 1.0, 1.0), oracle::sphere()},
        {make_space({FamilyTag::Flat}, 3, 1.0, 1.0), oracle::flat()},
        {make_space({FamilyTag::Hyperbolic}, 3, 1.0, 1.0), oracle::hyperbolic()},
        {gaussian(1.0, 0.5, 2.0), oracle::gaussian_flat(1.0L)},
        {perturbed(0.05), oracle::weight_perturbed_sphere(0.05L, 2.0L)}};
    double worst = 0.0;
    for (const auto& [s, prof] : cases) {
        std::uniform_real_distribution<double> radius(0.05 * s.L(), 0.95 * s.L());
        for (int i = 0; i < 20; ++i) {
            const double r = radius(rng);
            const auto got = gqe_eigenvalues(s, r);
            const auto want = oracle::fd_eigenvalues(prof, s.n(), s.mu(), r);
            worst = std::max({worst, std::abs(got.radial - want.radial), std::abs(got.tangential - want.tangential)});
        }
    }
    auto g = gaussian(1.0, 0.5, 2.0);
    const auto prof = deficit_profile(g, 1.0 / 4.0, RadialGrid(0.0, g.L(), 4096, 1.0));
    double worst_deficit = 0.0;
    for (std::size_t i = 0; i < prof.nodes.size(); ++i)
        worst_deficit = std::max(worst_deficit, std::abs(prof.deficit[i] - prof.nodes[i] * prof.nodes[i] / 2.0));
    out.pass = worst < 1e-5 && worst_deficit < 1e-10;
    out.note = "eigenvalue max abs diff " + fmt("%.2e", worst) + " over 100 radii, deficit max diff " +
               fmt("%.2e", worst_deficit);
    return out;
}

Outcome derivation_chain() {
    const auto start = Clock::now();
    Outcome out;
    CheckOptions opts;
    auto g = gaussian(1.0, 1.0, 1.0);
    auto w = perturbed(0.05);
    auto neg = gaussian(-1.0, 1.0, 1.0);
    const auto rg = check_eq21_chain(g, g.model(0.0), 3.0, RadialGrid(0.05, 4.75, 4096, 1.0), opts);
    const auto rw = check_eq21_chain(w, w.model(2.0 / 3.0), 3.0, RadialGrid(0.05, 1.85, 4096, 1.0), opts);
    const auto rn = check_eq21_chain(neg, neg.model(0.0), 3.0, RadialGrid(0.05, 3.0, 4096, 1.0), opts);
    const double t = seconds_since(start);
    out.pass = rg.pass && rw.pass && rn.pass && t < 2.0;
    out.note = "gaussian_flat a=1 " + std::string(rg.pass ? "pass" : "FAIL") + ", perturbed sphere " +
               (rw.pass ? "pass" : "FAIL") + " (both have zero excess), gaussian_flat a=-1 " +
               (rn.pass ? "pass" : "FAIL") + fmt(" with nonzero excess (min rel slack %.2e)", rn.relative_margin()) +
               fmt(", %.3f s", t);
    return out;
}

std::vector<CheckReport> perturbed_reports(double delta, int M) {
    CheckOptions opts;
    opts.grid_m = M;
    auto s = perturbed(delta);
    const ModelParams m = s.model(2.0 / 3.0);
    auto ext = check_thm1_extended(s, m, 3.0, 2.5, opts);
    return {check_thm1_norm(s, m, 3.0, 1.0, opts),
            check_thm1_pointwise(s, m, 3.0, 1.0, opts),
            ext.first,
            ext.second,
            check_thm31_eq31(s, m, 3.0, 0.5, 1.0, opts),
            check_thm31_eq32(s, m, 3.0, 2.2, 2.9, opts),
            check_thm2(s, m, 3.0, 0.5, 1.0, opts),
            check_thm3(s, m, 3.0, 0.2, 0.4, 0.8, 1.0, opts),
            check_doubling(s, m, 3.0, 2.0, 0.5, 1.0, 1.0, opts),
            check_eq21_chain(s, m, 3.0, RadialGrid(0.05, 1.85, M, 1.0), opts)};
}

Outcome perturbation_regression() {
    Outcome out;
    const std::vector<double> deltas = {0.0, 0.01, 0.05, 0.1};
    std::vector<std::vector<CheckReport>> runs;
    for (double d : deltas) runs.push_back(perturbed_reports(d, 4096));

    auto sphere = make_space({FamilyTag::Sphere}, 3, 1.0, 1.0);
    CheckOptions opts;
    const ModelParams m = sphere.model(2.0 / 3.0);
    auto ext = check_thm1_extended(sphere, m, 3.0, 2.5, opts);
    const std::vector<CheckReport> zero = {check_thm1_norm(sphere, m, 3.0, 1.0, opts),
                                           check_thm1_pointwise(sphere, m, 3.0, 1.0, opts),
                                           ext.first,
                                           ext.second,
                                           check_thm31_eq31(sphere, m, 3.0, 0.5, 1.0, opts),
                                           check_thm31_eq32(sphere, m, 3.0, 2.2, 2.9, opts),
                                           check_thm2(sphere, m, 3.0, 0.5, 1.0, opts),
                                           check_thm3(sphere, m, 3.0, 0.2, 0.4, 0.8, 1.0, opts),
                                           check_doubling(sphere, m, 3.0, 2.0, 0.5, 1.0, 1.0, opts),
                                           check_eq21_chain(sphere, m, 3.0, RadialGrid(0.05, 1.85, 4096, 1.0), opts)};
    double zero_diff = 0.0;
    for (std::size_t i = 0; i < zero.size(); ++i)
        zero_diff = std::max(zero_diff, std::abs(runs[0][i].margin - zero[i].margin));

    std::string non_monotone;
    bool all_pass = true;
    for (std::size_t i = 0; i < zero.size(); ++i) {
        int ups = 0, downs = 0;
        for (std::size_t d = 0; d < deltas.size(); ++d) {
            all_pass = all_pass && runs[d][i].status != Status::Fail && runs[d][i].status != Status::Error;
            if (d == 0) continue;
            const double step = runs[d][i].margin - runs[d - 1][i].margin;
            const double scale = 1e-9 * (1 + std::abs(runs[d][i].margin));
            ups += step > scale;
            downs += step < -scale;
        }
        if (ups && downs) non_monotone += " " + to_string(zero[i].theorem_id);
    }

    double worst_grid = 0.0;
    for (std::size_t d = 1; d < deltas.size(); ++d) {
        const auto fine = perturbed_reports(deltas[d], 8192);
        for (std::size_t i = 0; i < fine.size(); ++i) {
            const double a = runs[d][i].margin, b = fine[i].margin;
            const double scale = std::max(std::abs(a), std::abs(b));
            if (scale > 0.0) worst_grid = std::max(worst_grid, std::abs(a - b) / scale);
        }
    }
    out.pass = all_pass && zero_diff < 1e-6 && non_monotone.empty() && worst_grid < 1e-4;
    out.note = std::to_string(zero.size()) + " checks x 4 deltas, delta=0 vs sphere " + fmt("%.2e", zero_diff) +
               ", grid doubling rel " + fmt("%.2e", worst_grid) +
               (non_monotone.empty() ? ", margins monotone in delta" : ", non-monotone:" + non_monotone);
    return out;
}

Outcome doubling_gate() {
    Outcome out;
    ConstantRequest req;
    req.model = ModelParams(3, 1.0, 0.0);
    req.p = 3.0;
    req.R = 1.0;
    req.beta = 2.0;
    const double eps = epsilon_doubling(req);
    double a = -1.0;
    while (kbar(gaussian(a, 1.0, 1.0), 3.0, 0.0, 1.0) >= eps) a /= 2;
    auto small = gaussian(a, 1.0, 1.0);
    const auto r = check_doubling(small, small.model(0.0), 3.0, 2.0, 0.5, 1.0, 1.0, {});

    SuiteConfig config = parse_config(
        "family = gaussian_flat\nfamily.a = 5\nn = 3\nk = 1\nmu = 1\nH = 0\np = 3\n"
        "theorems = C32_doubling\noutput.path = -\n");
    const auto suite = run_suite(config, 1);
    out.pass = eps > 0 && r.status == Status::Pass && suite.exit_code == kExitHypothesis &&
               suite.reports.front().status == Status::HypothesisNotMet;
    out.note = "epsilon = " + fmt("%.4e", eps) + ", a = " + fmt("%g", a) + " gives kbar = " +
               fmt("%.3e", r.details["kbar"].get<double>()) + " and " + to_string(r.status) +
               ", a = 5 gives " + to_string(suite.reports.front().status) + " with exit " +
               std::to_string(suite.exit_code);
    return out;
}

Outcome extended_range() {
    Outcome out;
    const double H = 2.0 / 3.0;
    auto s = perturbed(0.05);
    const ModelParams m = s.model(H);
    const double lo = m.half_period();
    const double hi = std::min(0.95 * pi / std::sqrt(H), s.L());
    CheckOptions opts;
    int count = 0;
    for (int i = 1; i <= 12; ++i) {
        const double r = lo + (hi - lo) * i / 13.0;
        auto [a, b] = check_thm1_extended(s, m, 3.0, r, opts);
        count += 2;
        if (!a.pass || !b.pass) {
            out.pass = false;
            out.note += fmt(" fail@r=%.4f", r);
        }
    }
    out.note = std::to_string(count) + " checks on r in (" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) +
               "), upper end clipped to the space" + out.note;
    return out;
}

Outcome determinism_invariance() {
    Outcome out;
    SuiteConfig config = parse_config(
        "family = weight_perturbed_sphere\nfamily.delta = 0, 0.05, 0.1\nn = 3\nk = 1\nmu = 1\n"
        "H = 0.3, 0.6666666666666666\np = 3, 4\ntheorems = all\ngrid.M = 1024\noutput.path = -\n");
    const auto a = run_suite(config, 1);
    const auto b = run_suite(config, 3);
    const bool same = without_timestamp(a.document).dump(2) == without_timestamp(b.document).dump(2);

    config.omega = 1.0;
    const auto c = run_suite(config, 2);
    // omega enters the params, and so the sort order; pair reports by everything else.
    auto key = [](const CheckReport& r) {
        auto params = r.params;
        params.erase("omega");
        return to_string(r.theorem_id) + params.dump();
    };
    std::map<std::string, const CheckReport*> unit;
    for (const auto& r : c.reports) unit[key(r)] = &r;
    double worst = 0.0;
    bool verdicts = a.reports.size() == c.reports.size() && unit.size() == c.reports.size();
    for (const auto& r : a.reports) {
        auto it = unit.find(key(r));
        if (it == unit.end()) {
            verdicts = false;
            break;
        }
        verdicts = verdicts && r.status == it->second->status && r.pass == it->second->pass;
        worst = std::max(worst, std::abs(r.relative_margin() - it->second->relative_margin()));
    }
    out.pass = same && verdicts && worst < 1e-10;
    out.note = std::to_string(a.reports.size()) + " reports, documents " + (same ? "identical" : "DIFFER") +
               ", omega -> 1 verdicts " + (verdicts ? "unchanged" : "CHANGED") + ", max rel-margin shift " +
               fmt("%.2e", worst);
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"zero-deficit soundness", zero_deficit},
        {"mean-curvature comparison instance", mean_curvature_instance},
        {"constant oracles", constant_oracles},
        {"curvature oracle", curvature_oracle},
        {"derivation-chain check", derivation_chain},
        {"perturbation regression", perturbation_regression},
        {"doubling gate", doubling_gate},
        {"extended-range estimates", extended_range},
        {"determinism and omega invariance", determinism_invariance},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("criterion %zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.note.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
