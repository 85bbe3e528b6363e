#include "qecomp/model_space.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qecomp/errors.hpp"

namespace qecomp {

namespace {

constexpr double kPi = std::numbers::pi;
// Radii this close to pi/sqrt(H) are rejected where sn appears in a denominator.
constexpr double kPeriodGuard = 1e-12;
// Slack on "r <= pi/(2 sqrt H)" so that callers may pass the endpoint computed in floating point.
constexpr double kHalfPeriodSlack = 1e-12;

QuadratureSpec volume_quadrature() {
    QuadratureSpec q;
    q.abs_tol = 1e-300;
    q.rel_tol = 1e-13;
    q.initial_panels = 4;
    q.max_refinements = 24;
    return q;
}

void require_half_period(const ModelParams& model, double r, const char* what) {
    if (model.H > 0.0 && r > model.half_period() * (1.0 + kHalfPeriodSlack)) {
        std::ostringstream msg;
        msg << what << " = " << r << " exceeds pi/(2 sqrt H) = " << model.half_period();
        throw DomainError(msg.str());
    }
}

void require_exponent(double N, double p) {
    if (!(2.0 * p > N)) {
        std::ostringstream msg;
        msg << "constant undefined: need 2p > n+k (p = " << p << ", n+k = " << N << ")";
        throw ParameterError(msg.str());
    }
}

// t / V(0, t), with the leading-order expansion where V would lose precision.
double radius_over_volume(const ModelParams& model, double t) {
    if (model.H == 0.0 || std::abs(model.H) * t * t < 1e-12)
        return model.N() / (model.omega * std::pow(t, model.N() - 1.0));
    return t / model_volume(model, t);
}

}  // namespace

double unit_sphere_measure(int dim) {
    if (dim < 0) throw ParameterError("sphere dimension must be nonnegative");
    const double half = 0.5 * (dim + 1);
    return 2.0 * std::pow(kPi, half) / std::tgamma(half);
}

ModelParams::ModelParams(int n_, double k_, double H_, std::optional<double> omega_)
    : n(n_), k(k_), H(H_), omega(omega_.value_or(unit_sphere_measure(n_ - 1))) {
    validate();
}

double ModelParams::period() const {
    return H > 0.0 ? kPi / std::sqrt(H) : std::numeric_limits<double>::infinity();
}

double ModelParams::half_period() const {
    return H > 0.0 ? 0.5 * kPi / std::sqrt(H) : std::numeric_limits<double>::infinity();
}

void ModelParams::validate() const {
    if (n < 2) throw ParameterError("model requires n >= 2");
    if (!(k > 0.0) || !std::isfinite(k)) throw ParameterError("model requires k > 0");
    if (!(N() > 2.0)) throw ParameterError("model requires n + k > 2");
    if (!std::isfinite(H)) throw ParameterError("model curvature H must be finite");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ParameterError("model requires omega > 0");
}

void ConstantRequest::validate() const {
    model.validate();
    require_exponent(model.N(), p);
    if (!(R > 0.0)) throw ParameterError("constant requires R > 0");
}

double sn(double H, double t) {
    if (!(t >= 0.0)) throw DomainError("sn requires t >= 0");
    if (H > 0.0) {
        const double s = std::sqrt(H);
        if (t >= kPi / s) throw DomainError("sn: t outside (0, pi/sqrt(H))");
        return std::sin(s * t) / s;
    }
    if (H < 0.0) {
        const double s = std::sqrt(-H);
        return std::sinh(s * t) / s;
    }
    return t;
}

double sn_prime(double H, double t) {
    if (H > 0.0) return std::cos(std::sqrt(H) * t);
    if (H < 0.0) return std::cosh(std::sqrt(-H) * t);
    return 1.0;
}

double model_mean_curvature(const ModelParams& model, double t) {
    if (!(t > 0.0)) throw DomainError("model mean curvature undefined at t <= 0");
    const double Nm1 = model.N() - 1.0;
    if (model.H > 0.0) {
        if (t >= model.period() - kPeriodGuard)
            throw DomainError("model mean curvature: t outside (0, pi/sqrt(H))");
        const double s = std::sqrt(model.H);
        return Nm1 * s / std::tan(s * t);
    }
    if (model.H < 0.0) {
        const double s = std::sqrt(-model.H);
        return Nm1 * s / std::tanh(s * t);
    }
    return Nm1 / t;
}

double model_area(const ModelParams& model, double t) {
    if (!(t >= 0.0)) throw DomainError("model area requires t >= 0");
    if (t == 0.0) return 0.0;
    double base;
    if (model.H > 0.0) {
        if (t > model.period()) throw DomainError("model area: t beyond pi/sqrt(H)");
        const double s = std::sqrt(model.H);
        base = std::max(0.0, std::sin(s * t) / s);
    } else {
        base = sn(model.H, t);
    }
    return model.omega * std::pow(base, model.N() - 1.0);
}

double model_volume_annulus(const ModelParams& model, double r1, double r2) {
    if (!(r1 >= 0.0)) throw DomainError("model volume requires radii >= 0");
    if (r1 > r2) throw DomainError("model annulus requires r1 <= r2");
    if (model.H > 0.0 && r2 > model.period()) throw DomainError("model volume: radius beyond pi/sqrt(H)");
    if (r1 == r2) return 0.0;
    const double N = model.N();
    if (model.H == 0.0) return model.omega * (std::pow(r2, N) - std::pow(r1, N)) / N;
    auto area = [&](double t) { return model_area(model, t); };
    return integrate_graded(area, r1, r2, 0.0, volume_quadrature()).value;
}

double model_volume(const ModelParams& model, double r) {
    return model_volume_annulus(model, 0.0, r);
}

double volume_prefactor(double N, double p) {
    require_exponent(N, p);
    return std::pow((N - 1.0) / ((2.0 * p - 1.0) * (2.0 * p - N)), (p - 1.0) / (2.0 * p - 1.0));
}

double const_thm2_C(const ConstantRequest& req) {
    req.validate();
    const ModelParams& model = req.model;
    require_half_period(model, req.R, "R");
    const double N = model.N();
    const double q = 2.0 * req.p / (2.0 * req.p - 1.0);
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        return model_area(model, t) * std::pow(radius_over_volume(model, t), q);
    };
    const double singular = (N - 1.0) / (2.0 * req.p - 1.0);
    return volume_prefactor(N, req.p) *
           integrate_graded(integrand, 0.0, req.R, singular, req.quadrature).value;
}

double const_thm31_scriptC(const ConstantRequest& req) {
    req.validate();
    const ModelParams& model = req.model;
    require_half_period(model, req.R, "R");
    const double N = model.N();
    const double e = -1.0 / (2.0 * req.p - 1.0);
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::pow(model_area(model, t), e);
    };
    const double singular = (N - 1.0) / (2.0 * req.p - 1.0);
    return volume_prefactor(N, req.p) *
           integrate_graded(integrand, 0.0, req.R, singular, req.quadrature).value;
}

double const_thm3_annulus(const ConstantRequest& req) {
    req.model.validate();
    require_exponent(req.model.N(), req.p);
    if (!req.r1 || !req.r2 || !req.R1 || !req.R2)
        throw ParameterError("annulus constant needs r1, r2, R1, R2");
    const double r1 = *req.r1, r2 = *req.r2, R1 = *req.R1, R2 = *req.R2;
    if (!(0.0 <= r1 && r1 <= r2 && r2 <= R1 && R1 <= R2))
        throw DomainError("annulus constant requires 0 <= r1 <= r2 <= R1 <= R2");
    const ModelParams& model = req.model;
    require_half_period(model, R2, "R2");
    const bool outer = R2 > R1;
    const bool inner = r2 > r1;
    if (r2 == R1 && (outer || inner))
        throw DomainError("annulus constant diverges when r2 == R1");

    const double q = 2.0 * req.p / (2.0 * req.p - 1.0);
    double total = 0.0;
    if (outer) {
        auto integrand = [&](double t) {
            return model_area(model, t) * std::pow(t / model_volume_annulus(model, r2, t), q);
        };
        total += integrate_graded(integrand, R1, R2, 0.0, req.quadrature).value;
    }
    if (inner) {
        const double area_R1 = model_area(model, R1);
        auto integrand = [&](double t) {
            return std::pow(R1 / model_volume_annulus(model, t, R1), q);
        };
        total += area_R1 * integrate_graded(integrand, r1, r2, 0.0, req.quadrature).value;
    }
    return volume_prefactor(model.N(), req.p) * total;
}

double epsilon_doubling(const ConstantRequest& req) {
    if (!req.beta) throw ParameterError("epsilon_doubling needs beta");
    const double beta = *req.beta;
    if (!(beta > 1.0)) throw ParameterError("epsilon_doubling requires beta > 1");
    const double C = const_thm2_C(req);
    const double e = 1.0 / (2.0 * req.p - 1.0);
    const double numerator = 1.0 - std::pow(1.0 / beta, e);
    const double denominator = 3.0 * C * std::pow(model_volume(req.model, req.R), e);
    return std::pow(numerator / denominator, (2.0 * req.p - 1.0) / req.p);
}

double k_threshold(const ModelParams& model, double r) {
    model.validate();
    if (!(r > 0.0)) throw DomainError("k_threshold requires r > 0");
    require_half_period(model, r, "r");
    const double N = model.N();
    const double ratio = model.H == 0.0 ? std::exp2(N)
                                        : model_volume(model, r) / model_volume(model, 0.5 * r);
    return 8.0 * ratio * (7.0 * N / r + 1.0) / 3.0;
}

}  // namespace qecomp
