#include "qecomp/integral_norms.hpp"

#include <algorithm>
#include <cmath>

#include "qecomp/errors.hpp"

namespace qecomp {

namespace {

void require_norm_args(const WarpedSpace& space, double p, double r) {
    if (!(p >= 1.0)) throw ParameterError("weighted L^p norm requires p >= 1");
    if (!(r >= 0.0)) throw DomainError("weighted L^p norm requires r >= 0");
    if (r > space.L() * (1.0 + 1e-12)) throw DomainError("weighted L^p norm: r beyond L");
}

}  // namespace

double weighted_lp_norm(const WarpedSpace& space, const RadialFunction& values, double p, double r,
                        const QuadratureSpec& spec) {
    require_norm_args(space, p, r);
    auto integrand = [&](double t) {
        const double v = std::abs(values(t));
        if (v == 0.0) return 0.0;
        return std::pow(v, p) * weighted_area(space, t);
    };
    const double integral = integrate_graded(integrand, 0.0, r, 0.0, spec).value;
    return std::pow(std::max(0.0, integral), 1.0 / p);
}

double weighted_lp_norm(const WarpedSpace& space, const RadialGrid& grid,
                        std::span<const double> values, double p, double r,
                        const QuadratureSpec& spec) {
    grid.validate();
    if (values.size() != static_cast<std::size_t>(grid.size()))
        throw ParameterError("nodal values must match the grid size");
    if (r > grid.r_max * (1.0 + 1e-12)) throw DomainError("norm radius beyond the grid");
    const auto nodes = grid.nodes();
    auto interpolate = [&](double t) {
        if (t <= nodes.front()) return values.front();
        if (t >= nodes.back()) return values.back();
        const auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
        const auto i = static_cast<std::size_t>(it - nodes.begin());
        const double w = (t - nodes[i - 1]) / (nodes[i] - nodes[i - 1]);
        return (1.0 - w) * values[i - 1] + w * values[i];
    };
    return weighted_lp_norm(space, interpolate, p, r, spec);
}

double deficit_power_integral(const WarpedSpace& space, double H, double p, double r,
                              const QuadratureSpec& spec) {
    require_norm_args(space, p, r);
    auto integrand = [&](double t) {
        const double d = ricci_deficit(space, H, t);
        if (d == 0.0) return 0.0;
        return std::pow(d, p) * weighted_area(space, t);
    };
    return std::max(0.0, integrate_graded(integrand, 0.0, r, 0.0, spec).value);
}

double deficit_norm(const WarpedSpace& space, double H, double p, double r,
                    const QuadratureSpec& spec) {
    return std::pow(deficit_power_integral(space, H, p, r, spec), 1.0 / p);
}

double kbar(const WarpedSpace& space, double p, double H, double r, const QuadratureSpec& spec) {
    if (!(2.0 * p > space.N())) throw ParameterError("kbar requires 2p > n+k");
    if (!(r > 0.0)) throw DomainError("kbar requires r > 0");
    const double integral = deficit_power_integral(space, H, p, r, spec);
    if (integral == 0.0) return 0.0;
    return std::pow(integral / weighted_volume(space, r, spec), 1.0 / p);
}

}  // namespace qecomp
