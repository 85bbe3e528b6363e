#ifndef QECOMP_THEOREM_CHECKS_HPP
#define QECOMP_THEOREM_CHECKS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qecomp/model_space.hpp"
#include "qecomp/quadrature.hpp"
#include "qecomp/warped_manifold.hpp"

namespace qecomp {

enum class TheoremId {
    T1_eq16,
    T1_eq17,
    T1_ext_163,
    T1_ext_164,
    T31_eq31,
    T31_eq32,
    T2,
    T3,
    C32_doubling,
    Eq21_chain,
    T4_threshold,
};

std::string to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(const std::string& name);
const std::vector<TheoremId>& all_theorems();

enum class Status { Pass, Fail, HypothesisNotMet, Error };

std::string to_string(Status status);

struct GridMeta {
    double r_min = 0.0;
    double r_max = 0.0;
    int M = 0;
    double gamma = 1.0;
    /// Radius of the reported node for pointwise checks.
    std::optional<double> worst_node;
};

/// One inequality check. pass == (lhs <= rhs + tolerance (1 + |rhs|)); status adds the
/// conditional verdict of the doubling and diameter checks and per-report errors.
struct CheckReport {
    TheoremId theorem_id = TheoremId::T2;
    nlohmann::json params = nlohmann::json::object();
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;
    Status status = Status::Fail;
    double tolerance = 1e-7;
    GridMeta grid_meta;
    nlohmann::json details = nlohmann::json::object();
    std::string error;

    /// margin / max(|lhs|, |rhs|), zero when both sides vanish. Invariant under rescaling omega.
    double relative_margin() const;
};

nlohmann::json to_json(const CheckReport& report);

struct CheckOptions {
    double tol = 1e-7;
    /// Node count of the grid used by pointwise checks.
    int grid_m = 4096;
    /// Grading of that grid; 2p - 1 when unset.
    std::optional<double> grid_gamma;
    QuadratureSpec quadrature{};
};

/// ||phi||_{2p,f}(r) <= ((n+k-1)(2p-1)/(2p-n-k) ||deficit||_{p,f}(r))^{1/2}.
CheckReport check_thm1_norm(const WarpedSpace& space, const ModelParams& model, double p, double r,
                            const CheckOptions& opts = {});

/// phi^{2p-1} A_f <= (2p-1)^p ((n+k-1)/(2p-n-k))^{p-1} int_0^t deficit^p A_f at every grid node t <= r.
CheckReport check_thm1_pointwise(const WarpedSpace& space, const ModelParams& model, double p,
                                 double r, const CheckOptions& opts = {});

/// Sine-weighted versions of the two estimates above for pi/(2 sqrt H) < r < pi/sqrt H.
std::pair<CheckReport, CheckReport> check_thm1_extended(const WarpedSpace& space,
                                                        const ModelParams& model, double p,
                                                        double r, const CheckOptions& opts = {});

/// Pointwise differential inequality behind the mean curvature estimate, at every interior
/// node of grid, with the derivative taken by a five-point central difference of step equal
/// to the local grid spacing.
CheckReport check_eq21_chain(const WarpedSpace& space, const ModelParams& model, double p,
                             const RadialGrid& grid, const CheckOptions& opts = {});

/// Area-ratio estimate for 0 < r <= R <= pi/(2 sqrt H).
CheckReport check_thm31_eq31(const WarpedSpace& space, const ModelParams& model, double p,
                             double r, double R, const CheckOptions& opts = {});
/// Area-ratio estimate for pi/(2 sqrt H) < r <= R < pi/sqrt H.
CheckReport check_thm31_eq32(const WarpedSpace& space, const ModelParams& model, double p,
                             double r, double R, const CheckOptions& opts = {});
/// Whichever of the two area-ratio estimates applies to (r, R).
std::vector<CheckReport> check_thm31(const WarpedSpace& space, const ModelParams& model, double p,
                                     double r, double R, const CheckOptions& opts = {});

/// Ball volume-ratio estimate.
CheckReport check_thm2(const WarpedSpace& space, const ModelParams& model, double p, double r,
                       double R, const CheckOptions& opts = {});

/// Annulus volume-ratio estimate for 0 <= r1 <= r2 < R1 <= R2.
CheckReport check_thm3(const WarpedSpace& space, const ModelParams& model, double p, double r1,
                       double r2, double R1, double R2, const CheckOptions& opts = {});

/// Volume doubling V_f(r2)/V_f(r1) <= beta V_H(r2)/V_H(r1), gated on kbar(p,H,R) < epsilon.
CheckReport check_doubling(const WarpedSpace& space, const ModelParams& model, double p,
                           double beta, double r1, double r2, double R,
                           const CheckOptions& opts = {});

/// Reports the K-threshold at r and kbar at R, and asserts diam <= pi/sqrt(H) for compact
/// zero-deficit spaces; a positive kbar yields HypothesisNotMet.
CheckReport diameter_probe(const WarpedSpace& space, const ModelParams& model, double p, double r,
                           double R, const CheckOptions& opts = {});

}  // namespace qecomp

#endif
