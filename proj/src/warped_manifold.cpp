#include "qecomp/warped_manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qecomp/errors.hpp"

namespace qecomp {

namespace {

constexpr double kPi = std::numbers::pi;

RadialTriple zero_weight() {
    auto zero = [](double) { return 0.0; };
    return {zero, zero, zero};
}

// 1 - cos t without cancellation near the pole.
double one_minus_cos(double t) {
    const double s = std::sin(0.5 * t);
    return 2.0 * s * s;
}

void require_radius(const WarpedSpace& space, double r, const char* what) {
    if (!(r > 0.0)) {
        std::ostringstream msg;
        msg << what << ": radius must be positive (got " << r << ")";
        throw DomainError(msg.str());
    }
    if (r > space.L() * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << what << ": radius " << r << " beyond the space's maximal radius " << space.L();
        throw DomainError(msg.str());
    }
}

}  // namespace

std::string family_name(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::Sphere: return "sphere";
        case FamilyTag::Flat: return "flat";
        case FamilyTag::Hyperbolic: return "hyperbolic";
        case FamilyTag::GaussianFlat: return "gaussian_flat";
        case FamilyTag::WeightPerturbedSphere: return "weight_perturbed_sphere";
        case FamilyTag::Tabulated: return "tabulated";
    }
    return "unknown";
}

std::optional<FamilyTag> family_from_name(const std::string& name) {
    for (auto tag : {FamilyTag::Sphere, FamilyTag::Flat, FamilyTag::Hyperbolic,
                     FamilyTag::GaussianFlat, FamilyTag::WeightPerturbedSphere,
                     FamilyTag::Tabulated}) {
        if (family_name(tag) == name) return tag;
    }
    return std::nullopt;
}

WarpedSpace::WarpedSpace(int n, Warp warp, RadialTriple weight, double mu, double k, double L,
                         std::optional<double> omega, SpaceInfo info,
                         std::optional<double> closing_radius)
    : n_(n),
      warp_(std::move(warp)),
      weight_(std::move(weight)),
      mu_(mu),
      k_(k),
      L_(L),
      omega_(0.0),
      info_(std::move(info)),
      closing_radius_(closing_radius) {
    if (n_ < 2) throw ParameterError("space requires n >= 2");
    omega_ = omega.value_or(unit_sphere_measure(n_ - 1));
    validate();
}

void WarpedSpace::validate() const {
    if (!(k_ > 0.0) || !std::isfinite(k_)) throw ParameterError("space requires k > 0");
    if (!(mu_ >= (1.0 / k_) * (1.0 - 1e-12))) {
        std::ostringstream msg;
        msg << "mu >= 1/k violated (mu = " << mu_ << ", 1/k = " << 1.0 / k_ << ")";
        throw ParameterError(msg.str());
    }
    if (!(L_ > 0.0) || !std::isfinite(L_)) throw ParameterError("space requires L > 0");
    if (!(omega_ > 0.0) || !std::isfinite(omega_)) throw ParameterError("space requires omega > 0");
    if (!warp_.phi.value || !warp_.phi.first || !warp_.phi.second || !weight_.value ||
        !weight_.first || !weight_.second)
        throw ParameterError("warp and weight need value, first and second derivative");

    const double t0 = pole_radius();
    if (std::abs(phi(t0) / t0 - 1.0) > 1e-4 || std::abs(dphi(t0) - 1.0) > 1e-4)
        throw ParameterError("warp is not smooth at the pole (need phi/t -> 1, phi' -> 1)");
    if (std::abs(df(0.0)) >= 1e-8)
        throw ParameterError("weight is not smooth at the pole (need f'(0) = 0)");
    constexpr int samples = 1024;
    for (int i = 1; i <= samples; ++i) {
        const double t = L_ * static_cast<double>(i) / samples;
        if (!(phi(t) > 0.0)) {
            std::ostringstream msg;
            msg << "warp must be positive on (0, L]; phi(" << t << ") = " << phi(t);
            throw ParameterError(msg.str());
        }
    }
}

double WarpedSpace::tangential_curvature(double r) const {
    if (warp_.tangential_curvature) return warp_.tangential_curvature(r);
    const double p = phi(r);
    const double dp = dphi(r);
    return (1.0 - dp) * (1.0 + dp) / (p * p);
}

WarpedSpace WarpedSpace::with_omega(double omega) const {
    WarpedSpace copy = *this;
    copy.omega_ = omega;
    copy.validate();
    return copy;
}

WarpedSpace make_space(const BuiltinFamily& family, int n, double mu, double k,
                       std::optional<double> omega) {
    SpaceInfo info;
    info.family = family_name(family.tag);
    Warp warp;
    RadialTriple weight = zero_weight();
    std::optional<double> closing;
    double L = family.L.value_or(5.0);

    auto sphere_warp = [&] {
        warp.phi = {[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
                    [](double t) { return -std::sin(t); }};
        warp.tangential_curvature = [](double) { return 1.0; };
        closing = kPi;
        L = family.L.value_or(kPi * (1.0 - 1e-4));
        if (!(L < kPi)) throw ParameterError("sphere family requires L < pi");
    };
    auto flat_warp = [&] {
        warp.phi = {[](double t) { return t; }, [](double) { return 1.0; },
                    [](double) { return 0.0; }};
        warp.tangential_curvature = [](double) { return 0.0; };
    };

    switch (family.tag) {
        case FamilyTag::Sphere:
            sphere_warp();
            break;
        case FamilyTag::Flat:
            flat_warp();
            break;
        case FamilyTag::Hyperbolic:
            warp.phi = {[](double t) { return std::sinh(t); }, [](double t) { return std::cosh(t); },
                        [](double t) { return std::sinh(t); }};
            warp.tangential_curvature = [](double) { return -1.0; };
            break;
        case FamilyTag::GaussianFlat: {
            flat_warp();
            const double a = family.a;
            weight = {[a](double t) { return 0.5 * a * t * t; }, [a](double t) { return a * t; },
                      [a](double) { return a; }};
            info.params["a"] = a;
            break;
        }
        case FamilyTag::WeightPerturbedSphere: {
            sphere_warp();
            const double delta = family.delta;
            const double q = family.q;
            if (!(q >= 2.0)) throw ParameterError("weight_perturbed_sphere requires q >= 2");
            weight = {[delta, q](double t) { return delta * std::pow(one_minus_cos(t), q); },
                      [delta, q](double t) {
                          return delta * q * std::pow(one_minus_cos(t), q - 1.0) * std::sin(t);
                      },
                      [delta, q](double t) {
                          const double c = one_minus_cos(t);
                          const double s = std::sin(t);
                          return delta * q *
                                 ((q - 1.0) * std::pow(c, q - 2.0) * s * s +
                                  std::pow(c, q - 1.0) * std::cos(t));
                      }};
            info.params["delta"] = delta;
            info.params["q"] = q;
            break;
        }
        case FamilyTag::Tabulated:
            throw ParameterError("tabulated spaces are built with load_tabulated_profile");
    }
    info.params["L"] = L;
    return WarpedSpace(n, std::move(warp), std::move(weight), mu, k, L, omega, std::move(info),
                       closing);
}

Eigenvalues gqe_eigenvalues(const WarpedSpace& space, double r) {
    require_radius(space, r, "gqe_eigenvalues");
    if (r < space.pole_radius()) throw DomainError("gqe_eigenvalues: radius inside the pole region");
    const double n = space.n();
    const double p = space.phi(r);
    const double dp = space.dphi(r);
    const double ddp = space.ddphi(r);
    const double df = space.df(r);
    Eigenvalues ev;
    ev.radial = -(n - 1.0) * ddp / p + space.ddf(r) - space.mu() * df * df;
    ev.tangential = -ddp / p + (n - 2.0) * space.tangential_curvature(r) + df * dp / p;
    return ev;
}

double lambda_min(const WarpedSpace& space, double r) {
    const auto ev = gqe_eigenvalues(space, std::max(r, space.pole_radius()));
    return std::min(ev.radial, ev.tangential);
}

double ricci_deficit(const WarpedSpace& space, double H, double r) {
    return std::max(0.0, (space.N() - 1.0) * H - lambda_min(space, r));
}

DeficitProfile deficit_profile(const WarpedSpace& space, double H, const RadialGrid& grid) {
    grid.validate();
    if (grid.r_min < 0.0 || grid.r_max > space.L() * (1.0 + 1e-12))
        throw DomainError("deficit_profile: grid must lie within [0, L]");
    DeficitProfile out;
    out.grid = grid;
    out.H = H;
    out.nodes = grid.nodes();
    out.lambda_min.reserve(out.nodes.size());
    out.deficit.reserve(out.nodes.size());
    const double level = (space.N() - 1.0) * H;
    for (double r : out.nodes) {
        const double lm = lambda_min(space, r);
        out.lambda_min.push_back(lm);
        out.deficit.push_back(std::max(0.0, level - lm));
    }
    return out;
}

double weighted_mean_curvature(const WarpedSpace& space, double r) {
    require_radius(space, r, "weighted_mean_curvature");
    const double n = space.n();
    if (r < space.pole_radius()) return (n - 1.0) / r - space.df(r);
    return (n - 1.0) * space.dphi(r) / space.phi(r) - space.df(r);
}

double excess_phi(const WarpedSpace& space, const ModelParams& model, double r) {
    if (model.H > 0.0 && !(r < model.period()))
        throw DomainError("excess_phi: radius beyond pi/sqrt(H)");
    return std::max(0.0, weighted_mean_curvature(space, r) - model_mean_curvature(model, r));
}

double weighted_area(const WarpedSpace& space, double r) {
    if (!(r >= 0.0)) throw DomainError("weighted_area: radius must be nonnegative");
    if (r > space.L() * (1.0 + 1e-12)) throw DomainError("weighted_area: radius beyond L");
    const double e = space.n() - 1.0;
    if (r < space.pole_radius()) return space.omega() * std::pow(r, e) * std::exp(-space.f(0.0));
    return space.omega() * std::pow(space.phi(r), e) * std::exp(-space.f(r));
}

double weighted_volume_annulus(const WarpedSpace& space, double r1, double r2,
                               const QuadratureSpec& spec) {
    if (!(r1 >= 0.0)) throw DomainError("weighted volume: radii must be nonnegative");
    if (r1 > r2) throw DomainError("weighted volume annulus requires r1 <= r2");
    if (r2 > space.L() * (1.0 + 1e-12)) throw DomainError("weighted volume: radius beyond L");
    auto area = [&](double t) { return weighted_area(space, t); };
    return integrate_graded(area, r1, r2, 0.0, spec).value;
}

double weighted_volume(const WarpedSpace& space, double r, const QuadratureSpec& spec) {
    return weighted_volume_annulus(space, 0.0, r, spec);
}

void require_compatible(const WarpedSpace& space, const ModelParams& model) {
    if (space.n() != model.n || std::abs(space.k() - model.k) > 1e-14 * std::abs(model.k) ||
        std::abs(space.omega() - model.omega) > 1e-12 * model.omega)
        throw ParameterError("model and space must share n, k and omega");
}

}  // namespace qecomp
