#ifndef QECOMP_INTEGRAL_NORMS_HPP
#define QECOMP_INTEGRAL_NORMS_HPP

#include <span>

#include "qecomp/quadrature.hpp"
#include "qecomp/warped_manifold.hpp"

namespace qecomp {

// All norms are centered at the pole of the rotationally symmetric space.

/// (omega int_0^r |v|^p phi^{n-1} e^{-f} dt)^{1/p}.
double weighted_lp_norm(const WarpedSpace& space, const RadialFunction& values, double p, double r,
                        const QuadratureSpec& spec = {});

/// Nodal variant: values[i] belongs to grid node i and is interpolated linearly in between.
double weighted_lp_norm(const WarpedSpace& space, const RadialGrid& grid,
                        std::span<const double> values, double p, double r,
                        const QuadratureSpec& spec = {});

/// ||Ric_{f-}^{mu,H}||_{p,f}(r).
double deficit_norm(const WarpedSpace& space, double H, double p, double r,
                    const QuadratureSpec& spec = {});

/// int_0^r (Ric_{f-}^{mu,H})^p A_f dt.
double deficit_power_integral(const WarpedSpace& space, double H, double p, double r,
                              const QuadratureSpec& spec = {});

/// Volume-normalized L^p average of the deficit over B(pole, r); requires 2p > n+k.
double kbar(const WarpedSpace& space, double p, double H, double r,
            const QuadratureSpec& spec = {});

}  // namespace qecomp

#endif
