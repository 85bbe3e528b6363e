#ifndef QECOMP_SUITE_RUNNER_HPP
#define QECOMP_SUITE_RUNNER_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qecomp/suite_config.hpp"
#include "qecomp/theorem_checks.hpp"
#include "qecomp/warped_manifold.hpp"

namespace qecomp {

std::string tool_version();

enum ExitCode : int { kExitPass = 0, kExitUsage = 1, kExitFail = 2, kExitHypothesis = 3 };

struct SkippedCheck {
    TheoremId theorem_id;
    nlohmann::json params;
    std::string reason;
};

struct SuiteResult {
    std::vector<CheckReport> reports;
    std::vector<SkippedCheck> skipped;
    int exit_code = kExitPass;
    /// Header, reports, skipped entries and summary. Only header.timestamp varies between runs.
    nlohmann::json document;
};

/// 2 if any report failed or errored, else 3 if any hypothesis was not met, else 0.
int exit_code_for(const std::vector<CheckReport>& reports);

WarpedSpace build_space(const SuiteConfig& config, const SweepPoint& point);

/// Runs every (theorem, sweep point) pair, on `threads` workers (0 = hardware concurrency).
/// Check exceptions become error reports. Reports are sorted by theorem id, then by a hash of
/// their parameters, so the thread count never changes the output.
SuiteResult run_suite(const SuiteConfig& config, unsigned threads = 0);

std::string render_json(const SuiteResult& result);
std::string render_csv(const SuiteResult& result);

/// Writes to config.output_path ("-" for stdout) in config.output_format.
void write_suite(const SuiteResult& result, const SuiteConfig& config);

/// Copy of a suite document without header.timestamp, for reproducibility comparisons.
nlohmann::json without_timestamp(nlohmann::json document);

/// CSV "r,phi,f,m_f,m_model,lambda_min,deficit,A_f,V_f", one row per grid node. phi is the warp.
void emit_profiles(const WarpedSpace& space, const ModelParams& model, const RadialGrid& grid,
                   std::ostream& out);
void emit_profiles(const WarpedSpace& space, const ModelParams& model, const RadialGrid& grid,
                   const std::string& path);

}  // namespace qecomp

#endif
