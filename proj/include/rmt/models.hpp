#pragma once

#include <functional>
#include <string>

#include "rmt/eigen.hpp"
#include "rmt/pdf.hpp"

namespace rmt::models {

// A normalized curve (spacing density p(s) or eigenvalue density D(eps))
// with its support and the quadrature-checked mass/mean.
struct ModelCurve {
    std::function<double(double)> pdf;
    double lo = 0.0;
    double hi = 0.0;  // support end (mass beyond is < 1e-8 for open families)
    double mass = 0.0;
    double mean = 0.0;
    std::string label;
};

// Reference spacing laws and eigenvalue densities.
double p_wigner(double s);
double p_poisson(double mu, double s);
double p_ab(double A, double B, double s);
double p_sub_exp(double a, double b, double s);          // requires 0 < b < 1
double p_half_gaussian(double s);                        // unit-mean half-Gaussian
double semicircle(double eps);                           // requires |eps| <= 1
double bose_mitra(double eps);
double d_cyclic(double a, double eps);                   // requires |eps| <= 1

// Normalized 2x2 spacing distribution for the supported (family, pdf)
// pairs: Uniform/Exponential/SuperGaussian for both families, Maxwellian
// for R2 only.  Throws std::invalid_argument for unsupported pairs.
ModelCurve p2x2(TwoByTwo family, PdfFamily pdf);

struct SlopeResult {
    enum class Kind { Linear, SuperLinear, SubLinear };
    double alpha = 0.0;            // Richardson-extrapolated p(s)/s limit
    double loglog_exponent = 1.0;  // local slope of log p vs log s
    Kind kind = Kind::Linear;
};

// Behaviour of a unit-mean spacing curve near s = 0.
SlopeResult slope_at_zero(const ModelCurve& curve);

// 2x2 eigenvalue density D(eps) for Gaussian elements, eps = E / E_bar
// with E_bar the mean positive eigenvalue.
ModelCurve g2x2(TwoByTwo family);

// E_bar of the 2x2 Gaussian eigenvalue density.
double g2x2_mean_positive(TwoByTwo family);

// Raw (normalized) eigenvalue density g(E) before the E_bar rescaling.
double g2x2_raw(TwoByTwo family, double E);

bool p2x2_supported(TwoByTwo family, PdfFamily pdf);

// Monte Carlo cross-check of the 2x2 analytic curves: pooled |E1-E2|
// spacings of `count` matrices, scaled to unit mean.
std::vector<double> mc_spacings_2x2(TwoByTwo family, const PdfSpec& pdf,
                                    std::size_t count, std::uint64_t seed);

// Pooled 2x2 eigenvalues for density cross-checks.
std::vector<Spectrum> mc_spectra_2x2(TwoByTwo family, const PdfSpec& pdf,
                                     std::size_t count, std::uint64_t seed);

}  // namespace rmt::models
