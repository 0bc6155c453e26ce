#include "rmt/models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rmt/quadrature.hpp"
#include "rmt/spacing.hpp"
#include "rmt/special.hpp"

namespace rmt::models {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

// ---- unnormalized 2x2 spacing laws P(S), element width 1 -----------------
//
// Both matrices reduce to S = |(u, w)| with u, w independent combinations of
// the elements, so P(S) = S * integral over the quarter arc of the product
// of the two marginal densities.  The arc form stays smooth down to S = 0,
// where the paper's polar triple integrals develop an integrable spike.

// R1, uniform elements on [-1,1]: closed piecewise form.
double r1_uniform_raw(double S) {
    if (S <= 0.0) return 0.0;
    if (S <= 2.0) return S * (kPi - S) / 4.0;
    if (S < 2.0 * kSqrt2) {
        const double root = std::sqrt(S * S - 4.0);
        return 0.5 * S * (std::asin(2.0 / S) - std::asin(root / S)) +
               0.25 * S * (root - 2.0);
    }
    return 0.0;
}

// R2, uniform: three-piece form.
double r2_uniform_raw(double S) {
    if (S <= 0.0) return 0.0;
    if (S <= 1.0) return kPi * S / 2.0;
    if (S <= kSqrt2) return 2.0 * S * (kPi / 4.0 - std::acos(1.0 / S));
    return 0.0;
}

// R1, exponential elements exp(-|x|).  The difference u = a - c has density
// (1+|u|) exp(-|u|)/4 and w = 2b has density exp(-|w|/2)/4.
double r1_exponential_raw(double S) {
    if (S <= 0.0) return 0.0;
    auto arc = [S](double psi) {
        const double u = S * std::cos(psi);
        const double w = S * std::sin(psi);
        return (1.0 + u) * std::exp(-u - 0.5 * w);
    };
    return S * integrate(arc, 0.0, 0.5 * kPi, 1e-12, 1e-11);
}

// R2, exponential: single quarter-arc integral of exp(-S(cos+sin)).
double r2_exponential_raw(double S) {
    if (S <= 0.0) return 0.0;
    auto arc = [S](double psi) { return std::exp(-S * (std::cos(psi) + std::sin(psi))); };
    return S * integrate(arc, 0.0, 0.5 * kPi, 1e-12, 1e-11);
}

// Density of a - c for elements with density ~ exp(-x^4); the integrand
// peaks at a = u/2 and dies off within |a - u/2| < 3.3.
double supergauss_diff_density_exact(double u) {
    const double half = 0.5 * u;
    auto f = [u](double a) {
        const double b = a - u;
        return std::exp(-(a * a * a * a) - (b * b * b * b));
    };
    return integrate(f, half - 3.3, half + 3.3, 1e-13, 1e-11);
}

// Tabulated version; the exact one sits inside a double quadrature and
// dominates the curve-build cost otherwise.  4-point Lagrange on an
// h=0.005 grid keeps ~1e-11 accuracy.
double supergauss_diff_density(double u) {
    static const double kStep = 0.005;
    static const double kMax = 8.5;
    static const std::vector<double> table = [] {
        const int count = static_cast<int>(kMax / kStep) + 1;
        std::vector<double> t(count);
        for (int i = 0; i < count; ++i) t[i] = supergauss_diff_density_exact(i * kStep);
        return t;
    }();
    u = std::fabs(u);
    if (u >= kMax - 2.0 * kStep) return 0.0;  // ~exp(-320) out here
    const double x = u / kStep;
    int i = static_cast<int>(x);
    if (i < 1) i = 1;
    const double d = x - i;
    const double f0 = table[i - 1], f1 = table[i], f2 = table[i + 1], f3 = table[i + 2];
    // cubic through the four surrounding nodes
    return f1 + d * (0.5 * (f2 - f0) +
                     d * (f0 - 2.5 * f1 + 2.0 * f2 - 0.5 * f3 +
                          d * (0.5 * (f3 - f0) + 1.5 * (f1 - f2))));
}

// R1, super-Gaussian.
double r1_supergauss_raw(double S) {
    if (S <= 0.0) return 0.0;
    auto arc = [S](double psi) {
        const double u = S * std::cos(psi);
        const double hw = 0.5 * S * std::sin(psi);  // density of 2b ~ exp(-(w/2)^4)
        return supergauss_diff_density(u) * std::exp(-(hw * hw * hw * hw));
    };
    return S * integrate(arc, 0.0, 0.5 * kPi, 1e-12, 1e-10);
}

// R2, super-Gaussian: closed form (pi S / 2) exp(-3 S^4/4) I0(S^4/4),
// evaluated through the scaled Bessel function to dodge overflow.
double r2_supergauss_raw(double S) {
    if (S <= 0.0) return 0.0;
    const double q = 0.25 * S * S * S * S;
    return 0.5 * kPi * S * std::exp(-2.0 * q) * special::bessel_i0_scaled(q);
}

// R2, Maxwellian: S^3 exp(-S^2).
double r2_maxwell_raw(double S) {
    if (S <= 0.0) return 0.0;
    return S * S * S * std::exp(-S * S);
}

struct RawCurve {
    std::function<double(double)> f;
    double hi;  // integration end; the density is negligible beyond
};

RawCurve raw_p2x2(TwoByTwo family, PdfFamily pdf) {
    if (family == TwoByTwo::R1) {
        switch (pdf) {
            case PdfFamily::Uniform: return {r1_uniform_raw, 2.0 * kSqrt2};
            case PdfFamily::Exponential: return {r1_exponential_raw, 90.0};
            case PdfFamily::SuperGaussian: return {r1_supergauss_raw, 8.0};
            default: break;
        }
    } else {
        switch (pdf) {
            case PdfFamily::Uniform: return {r2_uniform_raw, kSqrt2};
            case PdfFamily::Exponential: return {r2_exponential_raw, 90.0};
            case PdfFamily::SuperGaussian: return {r2_supergauss_raw, 4.0};
            case PdfFamily::Maxwellian: return {r2_maxwell_raw, 10.0};
            default: break;
        }
    }
    throw std::invalid_argument("p2x2: unsupported (family, pdf) pair");
}

// Truncation point where the cumulative mass reaches (1 - 1e-8).
double truncation_point(const std::function<double(double)>& f, double hi, double mass) {
    const int steps = 512;
    double acc = 0.0;
    const double target = (1.0 - 1e-8) * mass;
    for (int i = 0; i < steps; ++i) {
        const double a = hi * i / steps;
        const double b = hi * (i + 1) / steps;
        acc += integrate(f, a, b, 1e-11 * mass, 1e-7);
        if (acc >= target) return b;
    }
    return hi;
}

ModelCurve normalize_spacing(const RawCurve& raw, const std::string& label) {
    const double mass = integrate(raw.f, 0.0, raw.hi, 1e-10, 1e-10);
    if (!(mass > 0.0)) throw std::runtime_error("p2x2: vanishing mass");
    auto first = [&raw](double S) { return S * raw.f(S); };
    const double sbar = integrate(first, 0.0, raw.hi, 1e-10, 1e-10) / mass;

    ModelCurve curve;
    curve.label = label;
    curve.lo = 0.0;
    curve.hi = truncation_point(raw.f, raw.hi, mass) / sbar;
    const auto f = raw.f;
    const double scale = sbar / mass;
    const double cut = raw.hi;
    curve.pdf = [f, sbar, scale, cut](double s) {
        const double S = sbar * s;
        if (s < 0.0 || S > cut) return 0.0;
        return scale * f(S);
    };
    curve.mass = integrate(curve.pdf, 0.0, cut / sbar, 1e-9, 1e-9);
    auto mean_f = [&curve](double s) { return s * curve.pdf(s); };
    curve.mean = integrate(mean_f, 0.0, cut / sbar, 1e-9, 1e-9);
    return curve;
}

// ---- 2x2 eigenvalue densities for Gaussian elements ----------------------
//
// The closed forms carry the paper's element convention exp(-x^2)/sqrt(pi);
// the D(eps) curve is convention-free after the E_bar rescaling.

// R1: one-dimensional radial integral with the hyperbolic/Bessel factors
// combined in log space so large E stays finite.
double g1_raw_unnormalized(double E) {
    const double aE = std::fabs(E);
    const double r_hi = 4.0 * aE / 3.0 + 12.0;
    auto f = [aE](double r) {
        const double q = r * r / 8.0;
        const double log_i0e = std::log(special::bessel_i0_scaled(q));
        const double base = -2.0 * aE * aE - 0.75 * r * r + log_i0e;
        const double plus = base + 2.0 * aE * r;
        const double minus = base - 2.0 * aE * r;
        return 0.5 * r * (std::exp(plus) + std::exp(minus));
    };
    return integrate(f, 0.0, r_hi, 1e-13, 1e-11);
}

// R2: closed form with erf.
double g2_raw(double E) {
    const double e2 = E * E;
    const double t = std::sqrt(2.0 * kPi) * E * special::erf(E / kSqrt2) * std::exp(0.5 * e2);
    return std::exp(-e2) * (2.0 + t) / (4.0 * std::sqrt(kPi));
}

struct DensityParts {
    std::function<double(double)> g;  // normalized g(E)
    double e_hi;                      // half-width of the support used
    double e_bar;                     // mean positive eigenvalue
};

DensityParts density_parts(TwoByTwo family) {
    const double e_hi = (family == TwoByTwo::R1) ? 8.0 : 10.0;
    std::function<double(double)> raw;
    if (family == TwoByTwo::R1)
        raw = [](double E) { return g1_raw_unnormalized(E); };
    else
        raw = [](double E) { return g2_raw(E); };
    const double mass = integrate(raw, -e_hi, e_hi, 1e-11, 1e-10);
    auto g = [raw, mass](double E) { return raw(E) / mass; };
    auto pos_mass_f = [&g](double E) { return g(E); };
    auto pos_first_f = [&g](double E) { return E * g(E); };
    const double pos_mass = integrate(pos_mass_f, 0.0, e_hi, 1e-11, 1e-10);
    const double pos_first = integrate(pos_first_f, 0.0, e_hi, 1e-11, 1e-10);
    return {g, e_hi, pos_first / pos_mass};
}

}  // namespace

double p_wigner(double s) {
    require(s >= 0.0, "p_wigner: s must be nonnegative");
    return 0.5 * kPi * s * std::exp(-0.25 * kPi * s * s);
}

double p_poisson(double mu, double s) {
    require(mu > 0.0, "p_poisson: mu must be positive");
    require(s >= 0.0, "p_poisson: s must be nonnegative");
    return mu * std::exp(-mu * s);
}

double p_ab(double A, double B, double s) {
    require(A > 0.0 && B > 0.0, "p_ab: parameters must be positive");
    require(s >= 0.0, "p_ab: s must be nonnegative");
    return A * s * std::exp(-B * s * s);
}

double p_sub_exp(double a, double b, double s) {
    require(a > 0.0, "p_sub_exp: a must be positive");
    require(b > 0.0 && b < 1.0, "p_sub_exp: b must be in (0,1)");
    require(s >= 0.0, "p_sub_exp: s must be nonnegative");
    const double norm = std::pow(a, 1.0 / b) / special::gamma_fn(1.0 + 1.0 / b);
    return norm * std::exp(-a * std::pow(s, b));
}

double p_half_gaussian(double s) {
    require(s >= 0.0, "p_half_gaussian: s must be nonnegative");
    return (2.0 / kPi) * std::exp(-s * s / kPi);
}

double semicircle(double eps) {
    require(std::fabs(eps) <= 1.0, "semicircle: |eps| must be <= 1");
    return (2.0 / kPi) * std::sqrt(1.0 - eps * eps);
}

double bose_mitra(double eps) {
    return 0.25 * kPi * std::fabs(eps) * std::exp(-0.25 * kPi * eps * eps);
}

double d_cyclic(double a, double eps) {
    require(a > 0.0, "d_cyclic: a must be positive");
    require(std::fabs(eps) <= 1.0, "d_cyclic: |eps| must be <= 1");
    return a / (1.0 - std::exp(-a)) * std::fabs(eps) * std::exp(-a * eps * eps);
}

bool p2x2_supported(TwoByTwo family, PdfFamily pdf) {
    if (pdf == PdfFamily::Uniform || pdf == PdfFamily::Exponential ||
        pdf == PdfFamily::SuperGaussian)
        return true;
    return family == TwoByTwo::R2 && pdf == PdfFamily::Maxwellian;
}

ModelCurve p2x2(TwoByTwo family, PdfFamily pdf) {
    const RawCurve raw = raw_p2x2(family, pdf);
    std::string label = (family == TwoByTwo::R1) ? "r1_" : "r2_";
    label += pdf_token(pdf);
    return normalize_spacing(raw, label);
}

SlopeResult slope_at_zero(const ModelCurve& curve) {
    const double s1 = 1e-2, s2 = 5e-3, s3 = 2.5e-3;
    const double p1 = curve.pdf(s1);
    const double p2 = curve.pdf(s2);
    const double p3 = curve.pdf(s3);

    SlopeResult res;
    if (!(p1 > 0.0) || !(p2 > 0.0) || !(p3 > 0.0)) {
        res.kind = SlopeResult::Kind::SuperLinear;  // vanishes faster than s
        res.loglog_exponent = std::numeric_limits<double>::infinity();
        return res;
    }
    res.loglog_exponent = std::log(p1 / p3) / std::log(s1 / s3);
    if (res.loglog_exponent > 1.15) {
        res.kind = SlopeResult::Kind::SuperLinear;
        return res;
    }
    if (res.loglog_exponent < 0.85) {
        res.kind = SlopeResult::Kind::SubLinear;
        return res;
    }
    const double r1 = p1 / s1, r2 = p2 / s2, r3 = p3 / s3;
    // two Richardson levels for a ratio with O(s) + O(s^2) corrections
    const double a12 = 2.0 * r2 - r1;
    const double a23 = 2.0 * r3 - r2;
    res.alpha = (4.0 * a23 - a12) / 3.0;
    res.kind = SlopeResult::Kind::Linear;
    return res;
}

ModelCurve g2x2(TwoByTwo family) {
    const DensityParts parts = density_parts(family);
    ModelCurve curve;
    curve.label = (family == TwoByTwo::R1) ? "d_r1_gaussian" : "d_r2_gaussian";
    const double ebar = parts.e_bar;
    const double e_hi = parts.e_hi;
    const auto g = parts.g;
    curve.lo = -e_hi / ebar;
    curve.hi = e_hi / ebar;
    curve.pdf = [g, ebar, e_hi](double eps) {
        const double E = eps * ebar;
        if (std::fabs(E) > e_hi) return 0.0;
        return ebar * g(E);
    };
    curve.mass = integrate(curve.pdf, curve.lo, curve.hi, 1e-9, 1e-9);
    auto mean_f = [&curve](double eps) { return eps * curve.pdf(eps); };
    curve.mean = integrate(mean_f, curve.lo, curve.hi, 1e-9, 1e-9);
    return curve;
}

double g2x2_mean_positive(TwoByTwo family) { return density_parts(family).e_bar; }

double g2x2_raw(TwoByTwo family, double E) {
    static const double g1_mass = integrate(
        [](double x) { return g1_raw_unnormalized(x); }, -8.0, 8.0, 1e-11, 1e-10);
    if (family == TwoByTwo::R1) return g1_raw_unnormalized(E) / g1_mass;
    return g2_raw(E);
}

std::vector<double> mc_spacings_2x2(TwoByTwo family, const PdfSpec& pdf_spec,
                                    std::size_t count, std::uint64_t seed) {
    const Pdf pdf(pdf_spec);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        RandomStream rng = replica_stream(seed, i);
        const double a = pdf.sample(rng);
        const double b = pdf.sample(rng);
        const double c = pdf.sample(rng);
        out[i] = spacing_2x2(family, a, b, c);
    }
    const double mean = kahan_mean(out);
    if (mean > 0.0)
        for (double& s : out) s /= mean;
    return out;
}

std::vector<Spectrum> mc_spectra_2x2(TwoByTwo family, const PdfSpec& pdf_spec,
                                     std::size_t count, std::uint64_t seed) {
    const Pdf pdf(pdf_spec);
    std::vector<Spectrum> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        RandomStream rng = replica_stream(seed, i);
        const double a = pdf.sample(rng);
        const double b = pdf.sample(rng);
        const double c = pdf.sample(rng);
        out.push_back(eig_2x2(family, a, b, c));
    }
    return out;
}

}  // namespace rmt::models
