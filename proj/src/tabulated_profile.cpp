#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "qecomp/errors.hpp"
#include "qecomp/warped_manifold.hpp"

namespace qecomp {

namespace {

struct SplineDeleter {
    void operator()(gsl_spline* s) const { gsl_spline_free(s); }
};

/// Natural cubic spline evaluated without an accelerator, so shared use across threads is safe.
class Spline {
public:
    Spline(const std::vector<double>& x, const std::vector<double>& y)
        : spline_(gsl_spline_alloc(gsl_interp_cspline, x.size())) {
        if (!spline_ || gsl_spline_init(spline_.get(), x.data(), y.data(), x.size()) != GSL_SUCCESS)
            throw ParameterError("tabulated profile: spline construction failed");
    }
    double value(double t) const { return gsl_spline_eval(spline_.get(), t, nullptr); }
    double first(double t) const { return gsl_spline_eval_deriv(spline_.get(), t, nullptr); }
    double second(double t) const { return gsl_spline_eval_deriv2(spline_.get(), t, nullptr); }

private:
    std::unique_ptr<gsl_spline, SplineDeleter> spline_;
};

RadialTriple triple_of(std::shared_ptr<const Spline> s) {
    return {[s](double t) { return s->value(t); }, [s](double t) { return s->first(t); },
            [s](double t) { return s->second(t); }};
}

}  // namespace

WarpedSpace load_tabulated_profile(std::istream& in, int n, double mu, double k,
                                   std::optional<double> omega, const std::string& source) {
    gsl_set_error_handler_off();
    std::vector<double> r, phi, f;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double a, b, c;
        if (!(fields >> a)) continue;
        std::string extra;
        if (!(fields >> b >> c) || (fields >> extra)) {
            std::ostringstream msg;
            msg << source << ":" << lineno << ": expected \"r phi f\"";
            throw ParameterError(msg.str());
        }
        if (!r.empty() && !(a > r.back())) {
            std::ostringstream msg;
            msg << source << ":" << lineno << ": radii must be strictly increasing";
            throw ParameterError(msg.str());
        }
        if (a < 0.0) throw ParameterError(source + ": radii must be nonnegative");
        r.push_back(a);
        phi.push_back(b);
        f.push_back(c);
    }
    if (r.size() < 16) throw ParameterError(source + ": tabulated profile needs at least 16 samples");

    // Odd reflection of phi and even reflection of f make the splines regular at the pole.
    std::vector<double> x, yphi, yf;
    for (std::size_t i = r.size(); i-- > 0;) {
        if (r[i] == 0.0) continue;
        x.push_back(-r[i]);
        yphi.push_back(-phi[i]);
        yf.push_back(f[i]);
    }
    if (r.front() == 0.0) {
        x.push_back(0.0);
        yphi.push_back(0.0);
        yf.push_back(f.front());
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 0.0) continue;
        x.push_back(r[i]);
        yphi.push_back(phi[i]);
        yf.push_back(f[i]);
    }

    auto phi_spline = std::make_shared<const Spline>(x, yphi);
    auto f_spline = std::make_shared<const Spline>(x, yf);
    Warp warp{triple_of(phi_spline), {}};
    SpaceInfo info;
    info.family = family_name(FamilyTag::Tabulated);
    info.reduced_accuracy = true;
    info.source = source;
    info.params["L"] = r.back();
    info.params["samples"] = static_cast<double>(r.size());
    return WarpedSpace(n, std::move(warp), triple_of(f_spline), mu, k, r.back(), omega,
                       std::move(info));
}

WarpedSpace load_tabulated_profile(const std::filesystem::path& path, int n, double mu, double k,
                                   std::optional<double> omega) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open tabulated profile " + path.string());
    return load_tabulated_profile(in, n, mu, k, omega, path.string());
}

}  // namespace qecomp
