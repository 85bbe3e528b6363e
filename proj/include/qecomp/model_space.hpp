#ifndef QECOMP_MODEL_SPACE_HPP
#define QECOMP_MODEL_SPACE_HPP

#include <optional>

#include "qecomp/quadrature.hpp"

namespace qecomp {

/// Total measure of the unit sphere S^{dim}, 2 pi^{(dim+1)/2} / Gamma((dim+1)/2).
double unit_sphere_measure(int dim);

/// Simply connected comparison space of constant curvature H at effective dimension N = n + k.
/// omega is the angular measure multiplying every area; by default |S^{n-1}|.
struct ModelParams {
    int n = 3;
    double k = 1.0;
    double H = 0.0;
    double omega = 0.0;

    ModelParams() = default;
    ModelParams(int n, double k, double H, std::optional<double> omega = std::nullopt);

    double N() const { return static_cast<double>(n) + k; }
    /// pi / sqrt(H) for H > 0, +inf otherwise.
    double period() const;
    /// pi / (2 sqrt(H)) for H > 0, +inf otherwise.
    double half_period() const;
    void validate() const;
};

/// Inputs of the explicit comparison constants.
struct ConstantRequest {
    ModelParams model;
    double p = 3.0;
    double R = 1.0;
    std::optional<double> r1, r2, R1, R2;
    std::optional<double> beta;
    QuadratureSpec quadrature{};

    void validate() const;
};

// Generalized sine and its derivative: sin(sqrt(H) t)/sqrt(H), t, sinh(sqrt(-H) t)/sqrt(-H).
double sn(double H, double t);
double sn_prime(double H, double t);

/// Mean curvature (N-1) sn'/sn of the geodesic sphere of radius t in the model.
double model_mean_curvature(const ModelParams& model, double t);
/// omega sn(H,t)^{N-1}.
double model_area(const ModelParams& model, double t);
double model_volume(const ModelParams& model, double r);
/// Volume of the annulus r1 <= t <= r2.
double model_volume_annulus(const ModelParams& model, double r1, double r2);

/// ((N-1)/((2p-1)(2p-N)))^{(p-1)/(2p-1)}, shared by every volume estimate.
double volume_prefactor(double N, double p);

/// C(n+k,p,H,R) bounding the volume ratio difference of balls.
double const_thm2_C(const ConstantRequest& req);
/// Script-C(n+k,p,H,R) bounding the area ratio difference.
double const_thm31_scriptC(const ConstantRequest& req);
/// Constant of the annulus comparison; needs r1 <= r2 < R1 <= R2.
double const_thm3_annulus(const ConstantRequest& req);
/// Curvature smallness threshold under which volume doubling with factor beta holds.
double epsilon_doubling(const ConstantRequest& req);
/// (8/3)(V(r)/V(r/2))(7(n+k)/r + 1): any K above makes the excess-function estimate positive.
double k_threshold(const ModelParams& model, double r);

}  // namespace qecomp

#endif
