#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rmt/spacing.hpp"

namespace rmt {

// Parametric families fitted to spacing / density histograms.
enum class FitModel {
    PAB,                    // A s exp(-B s^2)
    Poisson,                // mu exp(-mu s)
    SubExp,                 // a^{1/b}/Gamma(1+1/b) exp(-a s^b), 0 < b < 1
    WignerLike,             // a s exp(-b s^2), empirical variant of PAB
    PowerStretched,         // a s^b exp(-c s^d)
    ShiftedGaussianLinear,  // a (s + c) exp(-(s - d)^2 / w)
    GaussianDensity,        // a exp(-b eps^2)
    SuperGaussianQuartic,   // a exp(-b eps^4)
    ExponentialDensity,     // a exp(-a eps)
    HalfGaussian,           // sqrt(2/pi)/sigma exp(-s^2/(2 sigma^2))
    BoseMitra,              // a/(1-e^-a) |eps| exp(-a eps^2)
};

struct FitResult {
    FitModel model = FitModel::PAB;
    std::vector<std::string> param_names;
    std::vector<double> params;
    double sse = 0.0;       // weighted least-squares objective at the optimum
    double sup_norm = 0.0;
    double chi2 = 0.0;
    int n_bins = 0;
    bool converged = false;

    double param(const std::string& name) const;
};

struct Goodness {
    double sse = 0.0;      // unweighted sum of squared density residuals
    double sup_norm = 0.0;
    double chi2 = 0.0;     // Pearson on counts, expected < 5 merged
};

double eval_model(FitModel model, std::span<const double> params, double s);

int model_param_count(FitModel model);
const char* model_token(FitModel model);
FitModel model_from_token(const std::string& token);
std::vector<std::string> model_param_names(FitModel model);

// Moment-based starting points (several, for multi-start).
std::vector<std::vector<double>> init_guess(const Histogram& hist, FitModel model);

// Weighted (bin-count) least squares over bin centers, Levenberg-Marquardt
// with numerical Jacobians, best of the init_guess starts.
FitResult fit(const Histogram& hist, FitModel model);

Goodness goodness(const Histogram& hist, const std::function<double(double)>& curve);

}  // namespace rmt
