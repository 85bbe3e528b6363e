#include "qecomp/quadrature.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "qecomp/errors.hpp"

namespace qecomp {

namespace {

// 8-point Gauss-Legendre on [-1, 1], symmetric half.
constexpr std::array<double, 4> kAbscissa = {
    0.1834346424956498049394761, 0.5255324099163289858177390,
    0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kWeight = {
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

double composite_level(const RadialFunction& fn, double a, double b, double gamma, long panels) {
    const double width = b - a;
    const double du = 1.0 / static_cast<double>(panels);
    double sum = 0.0;
    for (long j = 0; j < panels; ++j) {
        const double mid = (static_cast<double>(j) + 0.5) * du;
        double panel = 0.0;
        for (std::size_t q = 0; q < kAbscissa.size(); ++q) {
            for (int sign : {-1, 1}) {
                const double u = mid + sign * 0.5 * du * kAbscissa[q];
                double jac = width;
                double t = a + width * u;
                if (gamma != 1.0) {
                    const double ug = std::pow(u, gamma);
                    t = a + width * ug;
                    jac = width * gamma * ug / u;
                }
                panel += kWeight[q] * fn(t) * jac;
            }
        }
        sum += 0.5 * du * panel;
    }
    return sum;
}

}  // namespace

RadialGrid::RadialGrid(double r_min_, double r_max_, int M_, double gamma_)
    : r_min(r_min_), r_max(r_max_), M(M_), gamma(gamma_) {
    validate();
}

double RadialGrid::node(int i) const {
    if (i <= 0) return r_min;
    if (i >= M) return r_max;
    const double s = static_cast<double>(i) / static_cast<double>(M);
    return r_min + (r_max - r_min) * std::pow(s, gamma);
}

std::vector<double> RadialGrid::nodes() const {
    std::vector<double> out(static_cast<std::size_t>(M) + 1);
    for (int i = 0; i <= M; ++i) out[static_cast<std::size_t>(i)] = node(i);
    return out;
}

void RadialGrid::validate() const {
    if (!(r_max > r_min) || !std::isfinite(r_min) || !std::isfinite(r_max))
        throw ParameterError("radial grid requires r_min < r_max");
    if (M < 64) throw ParameterError("radial grid requires M >= 64");
    if (!(gamma >= 1.0)) throw ParameterError("radial grid requires gamma >= 1");
}

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw ParameterError("quadrature tolerances must be positive");
    if (max_refinements < 1) throw ParameterError("quadrature needs max_refinements >= 1");
    if (initial_panels < 1) throw ParameterError("quadrature needs initial_panels >= 1");
}

double grading_exponent(double singular_exponent) {
    if (singular_exponent <= 0.0) return 1.0;
    return 2.0 / (1.0 - singular_exponent);
}

QuadratureResult integrate_graded_with(const RadialFunction& fn, double a, double b, double gamma,
                                       double singular_exponent, const QuadratureSpec& spec) {
    spec.validate();
    if (!(singular_exponent < 1.0))
        throw ParameterError("integrand singularity t^-s requires s < 1");
    if (!(gamma >= 1.0)) throw ParameterError("grading exponent must be >= 1");
    if (!(a <= b)) throw DomainError("integration interval reversed");
    if (a == b) return {0.0, 0.0, 0};

    long panels = spec.initial_panels;
    double previous = composite_level(fn, a, b, gamma, panels);
    for (int level = 1; level <= spec.max_refinements; ++level) {
        panels *= 2;
        const double current = composite_level(fn, a, b, gamma, panels);
        if (!std::isfinite(current)) break;
        const double change = std::abs(current - previous);
        if (change <= std::max(spec.abs_tol, spec.rel_tol * std::abs(current)))
            return {current, change, static_cast<int>(panels)};
        previous = current;
    }
    std::ostringstream msg;
    msg << "graded quadrature on [" << a << ", " << b << "] did not converge after "
        << spec.max_refinements << " refinements (last value " << previous << ")";
    throw QuadratureError(msg.str());
}

QuadratureResult integrate_graded(const RadialFunction& fn, double a, double b,
                                  double singular_exponent, const QuadratureSpec& spec) {
    return integrate_graded_with(fn, a, b, grading_exponent(singular_exponent), singular_exponent,
                                 spec);
}

std::vector<double> cumulative_integral(const RadialFunction& fn, const std::vector<double>& nodes,
                                        double singular_exponent, const QuadratureSpec& spec) {
    std::vector<double> out(nodes.size(), 0.0);
    QuadratureSpec local = spec;
    local.initial_panels = 1;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        // Only the first panel touches the singular endpoint.
        const double s = (i == 1) ? singular_exponent : 0.0;
        out[i] = out[i - 1] + integrate_graded(fn, nodes[i - 1], nodes[i], s, local).value;
    }
    return out;
}

}  // namespace qecomp
