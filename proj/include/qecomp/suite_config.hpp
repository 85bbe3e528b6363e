#ifndef QECOMP_SUITE_CONFIG_HPP
#define QECOMP_SUITE_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qecomp/quadrature.hpp"
#include "qecomp/theorem_checks.hpp"

namespace qecomp {

/// Flat "key = value" suite description. Lines starting with '#' are comments; the sweepable
/// keys (n, k, mu, H, p, family.a, family.delta, family.q) take comma-separated lists and
/// are stored sorted and deduplicated. Radii are per-theorem tuples, e.g.
/// "radii.T3 = 0.2, 0.4, 0.8, 1.0". See README for the full key list.
struct SuiteConfig {
    std::string family = "sphere";
    std::optional<std::string> family_path;
    std::optional<double> family_L;
    std::vector<double> family_a{1.0};
    std::vector<double> family_delta{0.0};
    std::vector<double> family_q{2.0};

    std::vector<int> n;
    std::vector<double> k;
    std::vector<double> mu;
    std::vector<double> H;
    std::vector<double> p;
    std::optional<double> omega;

    std::vector<TheoremId> theorems;
    /// Radii given in the document; missing entries fall back to defaults at run time.
    std::map<TheoremId, std::vector<double>> radii;
    double beta = 2.0;

    int grid_m = 4096;
    /// Unset means 2p - 1 at each sweep point.
    std::optional<double> grid_gamma;
    QuadratureSpec quadrature{};
    double tol = 1e-7;

    std::string output_path;
    std::string output_format = "json";

    bool operator==(const SuiteConfig&) const = default;
};

/// One point of the Cartesian sweep.
struct SweepPoint {
    double H = 0.0;
    double a = 1.0;
    double delta = 0.0;
    double q = 2.0;
    double k = 1.0;
    double mu = 1.0;
    int n = 3;
    double p = 3.0;
};

SuiteConfig parse_config(const std::string& text);
SuiteConfig load_config(const std::string& path);
std::string serialize_config(const SuiteConfig& config);

/// Throws ConfigError naming the offending key.
void validate_config(const SuiteConfig& config);

/// Points in the sorted order of keys (H, family.a, family.delta, family.q, k, mu, n, p),
/// each list in ascending order.
std::vector<SweepPoint> expand_sweep(const SuiteConfig& config);

/// Number of values each theorem's radius tuple takes.
std::size_t radius_arity(TheoremId id);

}  // namespace qecomp

#endif
