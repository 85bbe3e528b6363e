#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qecomp/errors.hpp"
#include "qecomp/integral_norms.hpp"
#include "qecomp/theorem_checks.hpp"

using namespace qecomp;
using std::numbers::pi;

namespace {

WarpedSpace gaussian(double a, double mu = 0.5, double k = 2.0, std::optional<double> omega = std::nullopt) {
    BuiltinFamily fam{FamilyTag::GaussianFlat};
    fam.a = a;
    return make_space(fam, 3, mu, k, omega);
}

WarpedSpace perturbed(double delta, std::optional<double> omega = std::nullopt) {
    BuiltinFamily fam{FamilyTag::WeightPerturbedSphere};
    fam.delta = delta;
    return make_space(fam, 3, 1.0, 1.0, omega);
}

WarpedSpace sphere() { return make_space({FamilyTag::Sphere}, 3, 1.0, 1.0); }

void check_consistent(const CheckReport& r) {
    CHECK(r.margin == doctest::Approx(r.rhs - r.lhs));
    CHECK(r.pass == (r.lhs <= r.rhs + r.tolerance * (1 + std::abs(r.rhs))));
}

// All reports of one space, used for the invariance properties.
std::vector<CheckReport> all_reports(const WarpedSpace& s, double H, const CheckOptions& opts) {
    const ModelParams m = s.model(H);
    std::vector<CheckReport> out = {
        check_thm1_norm(s, m, 3.0, 1.0, opts),       check_thm1_pointwise(s, m, 3.0, 1.0, opts),
        check_thm31_eq31(s, m, 3.0, 0.5, 1.0, opts), check_thm2(s, m, 3.0, 0.5, 1.0, opts),
        check_thm3(s, m, 3.0, 0.2, 0.4, 0.8, 1.0, opts)};
    if (H > 0.0 && s.L() > m.half_period()) {
        const double lo = m.half_period(), hi = std::min(m.period(), s.L());
        auto ext = check_thm1_extended(s, m, 3.0, 0.5 * (lo + hi), opts);
        out.push_back(ext.first);
        out.push_back(ext.second);
        out.push_back(check_thm31_eq32(s, m, 3.0, lo + 0.25 * (hi - lo), lo + 0.75 * (hi - lo), opts));
    }
    return out;
}

}  // namespace

TEST_CASE("theorem ids round-trip through their names") {
    for (auto id : all_theorems()) CHECK(theorem_from_string(to_string(id)) == id);
    CHECK_FALSE(theorem_from_string("T9"));
}

TEST_CASE("zero-deficit soundness for every builtin family") {
    CheckOptions opts;
    struct Case {
        WarpedSpace space;
        double H;
    };
    const std::vector<Case> cases = {{sphere(), 2.0 / 3.0},
                                     {make_space({FamilyTag::Flat}, 3, 1.0, 1.0), 0.0},
                                     {make_space({FamilyTag::Hyperbolic}, 3, 1.0, 1.0), -1.0},
                                     {gaussian(0.5, 1.0, 1.0), 0.0},
                                     {perturbed(0.05), 0.0}};
    for (const auto& c : cases) {
        for (const auto& r : all_reports(c.space, c.H, opts)) {
            CAPTURE(to_string(r.theorem_id));
            CHECK(r.pass);
            CHECK(r.lhs <= r.tolerance * (1 + std::abs(r.rhs)));
            check_consistent(r);
        }
    }
}

TEST_CASE("norm estimate on nonzero deficits") {
    CheckOptions opts;
    auto g = gaussian(1.0);
    auto r = check_thm1_norm(g, g.model(0.0), 3.0, 2.0, opts);
    CHECK(r.pass);
    CHECK(r.margin > 0.0);
    auto w = perturbed(0.05);
    CHECK(check_thm1_norm(w, w.model(2.0 / 3.0), 3.0, 1.0, opts).pass);
    // Nonzero excess: negative Gaussian weight.
    auto neg = gaussian(-1.0, 1.0, 1.0);
    r = check_thm1_norm(neg, neg.model(0.0), 3.0, 2.0, opts);
    CHECK(r.lhs > 0.1);
    CHECK(r.pass);
    check_consistent(r);
    auto hyp = make_space({FamilyTag::Hyperbolic}, 3, 1.0, 1.0);
    r = check_thm1_norm(hyp, hyp.model(-0.1), 3.0, 1.5, opts);
    CHECK(r.lhs > 0.0);
    CHECK(r.pass);
}

TEST_CASE("pointwise estimate") {
    CheckOptions opts;
    opts.grid_m = 512;
    auto flat = make_space({FamilyTag::Flat}, 3, 1.0, 1.0);
    auto r = check_thm1_pointwise(flat, flat.model(0.0), 3.0, 1.0, opts);
    CHECK(r.pass);
    CHECK(r.lhs == 0.0);
    auto g = gaussian(1.0);
    r = check_thm1_pointwise(g, g.model(0.0), 3.0, 2.0, opts);
    CHECK(r.pass);
    CHECK(r.grid_meta.M == 512);
    auto s = sphere();
    r = check_thm1_pointwise(s, s.model(0.70), 3.0, 1.5, opts);
    CHECK(r.pass);
    CHECK(r.rhs > 0.0);
    auto neg = gaussian(-1.0, 1.0, 1.0);
    r = check_thm1_pointwise(neg, neg.model(0.0), 3.0, 2.0, opts);
    CHECK(r.pass);
    REQUIRE(r.grid_meta.worst_node);
    CHECK(*r.grid_meta.worst_node > 1.0);
    CHECK(r.details["cumulative_crosscheck_rel_diff"].get<double>() < 1e-8);
    check_consistent(r);
}

TEST_CASE("pointwise running integral matches the deficit norm") {
    auto g = gaussian(-1.0, 1.0, 1.0);
    const double p = 3.0, N = 4.0;
    CheckOptions opts;
    opts.grid_m = 256;
    auto r = check_thm1_pointwise(g, g.model(0.0), p, 1.7, opts);
    const double K = std::pow(2 * p - 1, p) * std::pow((N - 1) / (2 * p - N), p - 1);
    const double norm = weighted_lp_norm(g, [&](double t) { return ricci_deficit(g, 0.0, t); }, p, 1.7);
    CHECK(r.details["rhs_at_r"].get<double>() == doctest::Approx(K * std::pow(norm, p)).epsilon(1e-8));
    CHECK(r.details["cumulative_crosscheck_rel_diff"].get<double>() < 1e-8);
}

TEST_CASE("extended-range estimates") {
    CheckOptions opts;
    opts.grid_m = 1024;
    const double H = 2.0 / 3.0;
    auto s = sphere();
    auto [a, b] = check_thm1_extended(s, s.model(H), 3.0, std::min(0.75 * pi / std::sqrt(H), 0.95 * s.L()), opts);
    CHECK(a.pass);
    CHECK(b.pass);
    CHECK(a.lhs == 0.0);
    auto w = perturbed(0.05);
    auto [c, d] = check_thm1_extended(w, w.model(H), 3.0, 2.6, opts);
    CHECK(c.pass);
    CHECK(d.pass);
    CHECK(c.rhs > 0.0);
    CHECK_THROWS_AS(check_thm1_extended(w, w.model(H), 3.0, 1.5, opts), DomainError);
    auto flat = make_space({FamilyTag::Flat}, 3, 1.0, 1.0);
    CHECK_THROWS_AS(check_thm1_extended(flat, flat.model(0.0), 3.0, 1.0, opts), DomainError);
}

TEST_CASE("derivation chain residual") {
    CheckOptions opts;
    const RadialGrid grid(0.05, 1.9, 512, 1.0);
    auto g = gaussian(1.0);
    CHECK(check_eq21_chain(g, g.model(0.0), 3.0, grid, opts).pass);
    auto w = perturbed(0.05);
    CHECK(check_eq21_chain(w, w.model(2.0 / 3.0), 3.0, grid, opts).pass);
    auto neg = gaussian(-1.0, 1.0, 1.0);
    auto r = check_eq21_chain(neg, neg.model(0.0), 3.0, RadialGrid(0.05, 3.0, 1024, 1.0), opts);
    CHECK(r.pass);
    CHECK(r.details["max_term_magnitude"].get<double>() > 1.0);
    check_consistent(r);
    // Graded grids crowd nodes at the pole; the finite-difference step underflows there.
    CHECK_THROWS_AS(check_eq21_chain(g, g.model(0.0), 3.0, RadialGrid(1e-9, 1.0, 4096, 5.0), opts), DomainError);
    auto s = sphere();
    CHECK_THROWS_AS(check_eq21_chain(s, s.model(2.0 / 3.0), 3.0, RadialGrid(0.05, 2.5, 128, 1.0), opts), DomainError);
}

TEST_CASE("area and volume estimates") {
    CheckOptions opts;
    auto g = gaussian(1.0);
    auto r = check_thm31_eq31(g, g.model(0.0), 3.0, 0.5, 1.0, opts);
    CHECK(r.pass);
    CHECK(check_thm31(g, g.model(0.0), 3.0, 0.5, 1.0, opts).front().theorem_id == TheoremId::T31_eq31);
    auto w = perturbed(0.05);
    auto ext = check_thm31(w, w.model(2.0 / 3.0), 3.0, 2.1, 2.9, opts);
    REQUIRE(ext.size() == 1);
    CHECK(ext.front().theorem_id == TheoremId::T31_eq32);
    CHECK(ext.front().pass);
    CHECK(check_thm2(g, g.model(0.0), 3.0, 0.5, 1.0, opts).pass);
    auto tiny = gaussian(0.01, 1.0, 1.0);
    r = check_thm2(tiny, tiny.model(0.0), 3.0, 0.5, 1.0, opts);
    CHECK(r.pass);
    auto neg = gaussian(-1.0, 1.0, 1.0);
    r = check_thm2(neg, neg.model(0.0), 3.0, 0.5, 3.0, opts);
    CHECK(r.lhs > 0.0);
    CHECK(r.pass);
    check_consistent(r);
    CHECK(check_thm3(g, g.model(0.0), 3.0, 0.2, 0.4, 0.8, 1.0, opts).pass);
    r = check_thm3(neg, neg.model(0.0), 3.0, 0.2, 0.4, 0.8, 2.0, opts);
    CHECK(r.pass);
    auto s = sphere();
    r = check_thm3(s, s.model(2.0 / 3.0), 3.0, 0.3, 0.5, 0.9, 1.4, opts);
    CHECK(r.lhs <= 0.0);
    CHECK(r.pass);
}

TEST_CASE("degenerate radii give lhs = rhs = 0") {
    CheckOptions opts;
    auto g = gaussian(1.0);
    for (const auto& r : {check_thm2(g, g.model(0.0), 3.0, 1.0, 1.0, opts),
                          check_thm31_eq31(g, g.model(0.0), 3.0, 1.0, 1.0, opts),
                          check_thm3(g, g.model(0.0), 3.0, 0.2, 0.2, 0.8, 0.8, opts)}) {
        CHECK(r.pass);
        CHECK(r.lhs == 0.0);
        CHECK(r.rhs == 0.0);
    }
    CHECK_THROWS_AS(check_thm3(g, g.model(0.0), 3.0, 0.2, 0.5, 0.5, 0.8, opts), DomainError);
    CHECK_THROWS_AS(check_thm2(g, g.model(0.0), 2.0, 0.5, 1.0, opts), ParameterError);
}

TEST_CASE("doubling gate") {
    CheckOptions opts;
    auto s = sphere();
    auto r = check_doubling(s, s.model(2.0 / 3.0), 3.0, 1.1, 0.5, 1.0, 1.0, opts);
    CHECK(r.status == Status::Pass);
    CHECK(r.details["kbar"].get<double>() == 0.0);
    CHECK(r.lhs / r.rhs <= 1.0);

    ConstantRequest req{ModelParams(3, 1.0, 0.0), 3.0, 1.0};
    req.beta = 2.0;
    const double eps = epsilon_doubling(req);
    double a = -1.0;
    while (kbar(gaussian(a, 1.0, 1.0), 3.0, 0.0, 1.0) >= eps) a /= 2;
    auto small = gaussian(a, 1.0, 1.0);
    CHECK(kbar(small, 3.0, 0.0, 1.0) > 0.0);
    r = check_doubling(small, small.model(0.0), 3.0, 2.0, 0.5, 1.0, 1.0, opts);
    CHECK(r.status == Status::Pass);
    CHECK(r.details["hypothesis_met"].get<bool>());

    auto large = gaussian(-5.0, 1.0, 1.0);
    r = check_doubling(large, large.model(0.0), 3.0, 2.0, 0.5, 1.0, 1.0, opts);
    CHECK(r.status == Status::HypothesisNotMet);
    CHECK_FALSE(r.details["hypothesis_met"].get<bool>());
    CHECK_THROWS_AS(check_doubling(large, large.model(0.0), 3.0, 1.0, 0.5, 1.0, 1.0, opts), ParameterError);
}

TEST_CASE("diameter probe") {
    CheckOptions opts;
    auto s = sphere();
    auto r = diameter_probe(s, s.model(2.0 / 3.0), 3.0, 1.0, 1.0, opts);
    CHECK(r.pass);
    CHECK(r.lhs == doctest::Approx(pi));
    CHECK(r.rhs == doctest::Approx(pi / std::sqrt(2.0 / 3.0)));
    CHECK(r.rhs == doctest::Approx(3.848).epsilon(1e-3));
    auto flat = make_space({FamilyTag::Flat}, 3, 1.0, 1.0);
    CHECK_THROWS_AS(diameter_probe(flat, flat.model(0.0), 3.0, 1.0, 1.0, opts), DomainError);
    CHECK(k_threshold(ModelParams(3, 1.0, 0.0), 1.0) == 3712.0 / 3.0);
    auto w = perturbed(0.05);
    r = diameter_probe(w, w.model(2.0 / 3.0), 3.0, 1.0, 2.0, opts);
    CHECK(r.status == Status::HypothesisNotMet);
    CHECK(r.details.contains("k_threshold"));
}

TEST_CASE("verdicts and relative margins are invariant under omega -> 1") {
    CheckOptions opts;
    opts.grid_m = 512;
    struct Case {
        std::function<WarpedSpace(std::optional<double>)> make;
        double H;
    };
    const std::vector<Case> cases = {
        {[](auto om) { return gaussian(-1.0, 1.0, 1.0, om); }, 0.0},
        {[](auto om) { return perturbed(0.1, om); }, 2.0 / 3.0},
        {[](auto om) { return gaussian(1.0, 0.5, 2.0, om); }, 0.25},
    };
    for (const auto& c : cases) {
        const auto base = all_reports(c.make(std::nullopt), c.H, opts);
        const auto unit = all_reports(c.make(1.0), c.H, opts);
        REQUIRE(base.size() == unit.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            CAPTURE(to_string(base[i].theorem_id));
            CHECK(base[i].pass == unit[i].pass);
            CHECK(std::abs(base[i].relative_margin() - unit[i].relative_margin()) < 1e-10);
        }
    }
}

TEST_CASE("margins are stable under grid doubling") {
    auto neg = gaussian(-1.0, 1.0, 1.0);
    const ModelParams m = neg.model(0.0);
    CheckOptions a, b;
    a.grid_m = 2048;
    b.grid_m = 4096;
    const auto ra = check_thm1_pointwise(neg, m, 3.0, 2.0, a);
    const auto rb = check_thm1_pointwise(neg, m, 3.0, 2.0, b);
    CHECK(std::abs(ra.relative_margin() - rb.relative_margin()) < 1e-4);
}

TEST_CASE("report JSON carries every field") {
    auto g = gaussian(1.0);
    auto j = to_json(check_thm2(g, g.model(0.0), 3.0, 0.5, 1.0, {}));
    for (const char* key : {"theorem_id", "params", "lhs", "rhs", "margin", "pass", "tolerance", "grid_meta", "status"})
        CHECK(j.contains(key));
    CHECK(j["theorem_id"] == "T2");
    CHECK(j["params"]["family.a"] == 1.0);
}
