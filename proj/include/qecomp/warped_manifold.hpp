#ifndef QECOMP_WARPED_MANIFOLD_HPP
#define QECOMP_WARPED_MANIFOLD_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qecomp/model_space.hpp"
#include "qecomp/quadrature.hpp"

namespace qecomp {

/// A radial C^2 function given analytically as (value, first, second derivative).
struct RadialTriple {
    RadialFunction value;
    RadialFunction first;
    RadialFunction second;
};

/// Warp phi of g = dr^2 + phi(r)^2 g_{S^{n-1}}. The optional tangential term returns
/// (1 - phi'^2)/phi^2 without cancellation (1 for sin, -1 for sinh, 0 for t).
struct Warp {
    RadialTriple phi;
    RadialFunction tangential_curvature;
};

enum class FamilyTag { Sphere, Flat, Hyperbolic, GaussianFlat, WeightPerturbedSphere, Tabulated };

std::string family_name(FamilyTag tag);
std::optional<FamilyTag> family_from_name(const std::string& name);

/// Catalog entry. a is the GaussianFlat coefficient (f = a t^2/2), delta and q define the
/// WeightPerturbedSphere weight delta (1 - cos t)^q. L overrides the default maximal radius.
struct BuiltinFamily {
    FamilyTag tag = FamilyTag::Sphere;
    double a = 1.0;
    double delta = 0.0;
    double q = 2.0;
    std::optional<double> L;
};

/// Echo of how a space was built, for self-describing reports.
struct SpaceInfo {
    std::string family;
    std::map<std::string, double> params;
    bool reduced_accuracy = false;
    std::string source;
};

/// Weighted rotationally symmetric space (M, dr^2 + phi^2 g_{S^{n-1}}, e^{-f} dv) with the
/// parameters (mu, k) of Ric + Hess f - mu df (x) df. Immutable after construction; the
/// constructor rejects mu < 1/k, non-positive warps and non-smooth poles.
class WarpedSpace {
public:
    WarpedSpace(int n, Warp warp, RadialTriple weight, double mu, double k, double L,
                std::optional<double> omega = std::nullopt, SpaceInfo info = {},
                std::optional<double> closing_radius = std::nullopt);

    int n() const { return n_; }
    double mu() const { return mu_; }
    double k() const { return k_; }
    double L() const { return L_; }
    double omega() const { return omega_; }
    double N() const { return static_cast<double>(n_) + k_; }
    /// Radius below which leading-order pole expansions replace direct evaluation.
    double pole_radius() const { return 1e-6 * L_; }
    /// Radius at which the warp closes up (compact spaces only).
    std::optional<double> closing_radius() const { return closing_radius_; }
    const SpaceInfo& info() const { return info_; }

    double phi(double r) const { return warp_.phi.value(r); }
    double dphi(double r) const { return warp_.phi.first(r); }
    double ddphi(double r) const { return warp_.phi.second(r); }
    double f(double r) const { return weight_.value(r); }
    double df(double r) const { return weight_.first(r); }
    double ddf(double r) const { return weight_.second(r); }
    double tangential_curvature(double r) const;

    WarpedSpace with_omega(double omega) const;
    /// Model of curvature H at this space's n, k and omega.
    ModelParams model(double H) const { return ModelParams(n_, k_, H, omega_); }

private:
    void validate() const;

    int n_;
    Warp warp_;
    RadialTriple weight_;
    double mu_;
    double k_;
    double L_;
    double omega_;
    SpaceInfo info_;
    std::optional<double> closing_radius_;
};

WarpedSpace make_space(const BuiltinFamily& family, int n, double mu, double k,
                       std::optional<double> omega = std::nullopt);

/// Reads "r phi f" triples (one per line, '#' comments allowed), strictly increasing r,
/// at least 16 samples. Derivatives come from cubic splines of the odd (phi) and even (f)
/// reflections of the table, so results carry reduced accuracy.
WarpedSpace load_tabulated_profile(std::istream& in, int n, double mu, double k,
                                   std::optional<double> omega = std::nullopt,
                                   const std::string& source = "<stream>");
WarpedSpace load_tabulated_profile(const std::filesystem::path& path, int n, double mu, double k,
                                   std::optional<double> omega = std::nullopt);

struct Eigenvalues {
    double radial = 0.0;
    double tangential = 0.0;
};

/// Eigenvalues of Ric_f^mu in the radial and tangential directions at radius r.
Eigenvalues gqe_eigenvalues(const WarpedSpace& space, double r);
/// min of the two branches; evaluated at max(r, pole radius).
double lambda_min(const WarpedSpace& space, double r);
/// ((n+k-1) H - lambda_min)_+.
double ricci_deficit(const WarpedSpace& space, double H, double r);

struct DeficitProfile {
    RadialGrid grid;
    std::vector<double> nodes;
    std::vector<double> lambda_min;
    std::vector<double> deficit;
    double H = 0.0;
};

DeficitProfile deficit_profile(const WarpedSpace& space, double H, const RadialGrid& grid);

/// m_f = (n-1) phi'/phi - f'.
double weighted_mean_curvature(const WarpedSpace& space, double r);
/// (m_f - m_H^{n+k})_+.
double excess_phi(const WarpedSpace& space, const ModelParams& model, double r);

/// omega phi^{n-1} e^{-f}.
double weighted_area(const WarpedSpace& space, double r);
double weighted_volume(const WarpedSpace& space, double r, const QuadratureSpec& spec = {});
double weighted_volume_annulus(const WarpedSpace& space, double r1, double r2,
                               const QuadratureSpec& spec = {});

/// Throws ParameterError unless model and space share n, k and omega.
void require_compatible(const WarpedSpace& space, const ModelParams& model);

}  // namespace qecomp

#endif
