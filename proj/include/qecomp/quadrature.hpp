#ifndef QECOMP_QUADRATURE_HPP
#define QECOMP_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace qecomp {

using RadialFunction = std::function<double(double)>;

/// Graded radial discretization: node i sits at r_min + (r_max - r_min) (i/M)^gamma, i = 0..M.
struct RadialGrid {
    double r_min = 0.0;
    double r_max = 1.0;
    int M = 4096;
    double gamma = 1.0;

    RadialGrid() = default;
    RadialGrid(double r_min, double r_max, int M, double gamma);

    double node(int i) const;
    std::vector<double> nodes() const;
    int size() const { return M + 1; }
    /// Throws ParameterError unless r_min < r_max, M >= 64, gamma >= 1.
    void validate() const;
};

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_refinements = 20;
    /// Panel count of the coarsest level; each refinement doubles it.
    int initial_panels = 16;

    void validate() const;
    bool operator==(const QuadratureSpec&) const = default;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

/// Grading exponent used for an integrand behaving like (t - a)^(-singular_exponent) near a.
/// With u = ((t - a)/(b - a))^(1/gamma) the transformed integrand is O(u) at the origin.
double grading_exponent(double singular_exponent);

/// Integrates fn over [a, b] with composite 8-point Gauss-Legendre on the graded mesh
/// t_i = a + (b - a)(i/M)^gamma, doubling M until successive levels agree within
/// max(abs_tol, rel_tol |value|). The integrand may have an integrable singularity at a.
/// Throws QuadratureError on non-convergence, ParameterError if singular_exponent >= 1.
QuadratureResult integrate_graded(const RadialFunction& fn, double a, double b,
                                  double singular_exponent, const QuadratureSpec& spec = {});

/// Same engine with an explicit grading exponent instead of the derived one.
QuadratureResult integrate_graded_with(const RadialFunction& fn, double a, double b,
                                       double gamma, double singular_exponent,
                                       const QuadratureSpec& spec);

/// Running integral of fn from nodes.front() to every node; result[0] == 0.
std::vector<double> cumulative_integral(const RadialFunction& fn, const std::vector<double>& nodes,
                                        double singular_exponent, const QuadratureSpec& spec = {});

}  // namespace qecomp

#endif
