#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qecomp/errors.hpp"
#include "qecomp/model_space.hpp"
#include "qecomp/suite_config.hpp"
#include "qecomp/suite_runner.hpp"

using namespace qecomp;

namespace {

struct RunFlags {
    std::string config_path;
    std::string out;
    std::string format;
    std::optional<double> tol;
    std::optional<int> grid_m;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
    cmd->add_option("--config", flags.config_path, "suite config file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", flags.out, "output path, '-' for stdout (overrides output.path)");
    cmd->add_option("--format", flags.format, "json or csv (overrides output.format)")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tol", flags.tol, "pass tolerance (overrides tol)");
    cmd->add_option("--grid-m", flags.grid_m, "grid intervals (overrides grid.M)");
}

SuiteConfig load_with_overrides(const RunFlags& flags) {
    SuiteConfig config = load_config(flags.config_path);
    if (!flags.out.empty()) config.output_path = flags.out;
    if (!flags.format.empty()) config.output_format = flags.format;
    if (flags.tol) config.tol = *flags.tol;
    if (flags.grid_m) config.grid_m = *flags.grid_m;
    validate_config(config);
    return config;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

int report_summary(const SuiteResult& result) {
    const auto& s = result.document["summary"];
    std::cerr << s["total"] << " reports: " << s["pass"] << " pass, " << s["fail"] << " fail, "
              << s["hypothesis-not-met"] << " hypothesis-not-met, " << s["error"] << " error, "
              << s["skipped"] << " skipped\n";
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks of integral Ricci curvature comparison estimates on warped products"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    int n = 3;
    double k = 1.0, H = 0.0, p = 3.0, R = 1.0, beta = 2.0;
    std::optional<double> omega, r_threshold;
    std::string annulus, constants_out;
    auto* constants = app.add_subcommand("constants", "print the comparison constants");
    constants->add_option("--n", n, "manifold dimension")->capture_default_str();
    constants->add_option("--k", k, "extra dimension")->capture_default_str();
    constants->add_option("--H", H, "model curvature")->capture_default_str();
    constants->add_option("--p", p, "integral exponent")->capture_default_str();
    constants->add_option("--R", R, "outer radius")->capture_default_str();
    constants->add_option("--omega", omega, "angular measure (default |S^{n-1}|)");
    constants->add_option("--beta", beta, "doubling factor")->capture_default_str();
    constants->add_option("--r", r_threshold, "radius of the K-threshold (default R)");
    constants->add_option("--annulus", annulus, "r1,r2,R1,R2 for the annulus constant");
    constants->add_option("--out", constants_out, "output path");

    RunFlags profile_flags;
    std::optional<double> profile_r_max;
    auto* profile = app.add_subcommand("profile", "write the radial profile CSV of the first sweep point");
    add_run_flags(profile, profile_flags);
    profile->add_option("--r-max", profile_r_max, "last grid radius");

    RunFlags check_flags;
    std::string theorem, radii;
    auto* check = app.add_subcommand("check", "run a single theorem check");
    add_run_flags(check, check_flags);
    check->add_option("--theorem", theorem, "theorem id")->required();
    check->add_option("--radii", radii, "comma-separated radius tuple");

    RunFlags suite_flags;
    auto* suite = app.add_subcommand("suite", "run every configured check");
    add_run_flags(suite, suite_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*constants) {
            ConstantRequest req{ModelParams(n, k, H, omega), p, R};
            req.beta = beta;
            nlohmann::json out = {{"n", n}, {"k", k}, {"H", H}, {"p", p}, {"R", R}, {"omega", req.model.omega}};
            out["C"] = const_thm2_C(req);
            out["scriptC"] = const_thm31_scriptC(req);
            out["epsilon"] = epsilon_doubling(req);
            out["beta"] = beta;
            out["K_threshold"] = k_threshold(req.model, r_threshold.value_or(R));
            if (!annulus.empty()) {
                auto v = parse_list(annulus);
                if (v.size() != 4) throw ParameterError("--annulus expects r1,r2,R1,R2");
                req.r1 = v[0];
                req.r2 = v[1];
                req.R1 = v[2];
                req.R2 = v[3];
                req.R = v[3];
                out["annulus"] = const_thm3_annulus(req);
            }
            write_text(constants_out, out.dump(2) + "\n");
            return kExitPass;
        }
        if (*profile) {
            SuiteConfig config = load_with_overrides(profile_flags);
            const SweepPoint point = expand_sweep(config).front();
            const WarpedSpace space = build_space(config, point);
            const ModelParams model = space.model(point.H);
            const double r_max = profile_r_max.value_or(std::min(space.L(), 0.999 * model.period()));
            const RadialGrid grid(space.pole_radius(), r_max, config.grid_m,
                                  config.grid_gamma.value_or(1.0));
            if (profile_flags.out.empty() || profile_flags.out == "-")
                emit_profiles(space, model, grid, std::cout);
            else
                emit_profiles(space, model, grid, profile_flags.out);
            return kExitPass;
        }
        if (*check) {
            SuiteConfig config = load_with_overrides(check_flags);
            auto id = theorem_from_string(theorem);
            if (!id) throw ConfigError("theorems", "unknown theorem id '" + theorem + "'");
            config.theorems = {*id};
            if (!radii.empty()) config.radii[*id] = parse_list(radii);
            if (check_flags.out.empty()) config.output_path = "-";
            const SuiteResult result = run_suite(config);
            write_suite(result, config);
            return report_summary(result);
        }
        SuiteConfig config = load_with_overrides(suite_flags);
        const SuiteResult result = run_suite(config);
        write_suite(result, config);
        return report_summary(result);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
