#include "rmt/pdf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmt {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gamma(5/4), normalization of exp(-x^4) on the half line.
const double kGamma54 = 0.90640247705547707798;

// exp(-x^4) mass on (-inf, inf) = 2*Gamma(5/4)
const double kSuperGaussMass = 2.0 * kGamma54;

// Peak heights of the rejection envelopes for the asymmetric polynomial
// densities (1-x^2)(1+x) and (1-x^2)(1+x)^2 on [-1,1].
const double kP2Peak = 32.0 / 27.0;  // at x = 1/3
const double kP3Peak = 27.0 / 16.0;  // at x = 1/2

// Rejection cutoff for exp(-x^4): mass beyond |x|=3.5 is < 1e-65.
constexpr double kSuperGaussCut = 3.5;

}  // namespace

Pdf::Pdf(const PdfSpec& spec) : spec_(spec) {
    if (!(spec.scale > 0.0)) throw std::invalid_argument("pdf scale must be positive");
    const double L = spec.scale;
    const double inf = std::numeric_limits<double>::infinity();
    switch (spec.family) {
        case PdfFamily::Gaussian:      lo_ = -inf; hi_ = inf; symmetric_ = true; break;
        case PdfFamily::Uniform:       lo_ = -L;   hi_ = L;   symmetric_ = true; break;
        case PdfFamily::Exponential:   lo_ = -inf; hi_ = inf; symmetric_ = true; break;
        case PdfFamily::SuperGaussian: lo_ = -inf; hi_ = inf; symmetric_ = true; break;
        case PdfFamily::Maxwellian:    lo_ = 0.0;  hi_ = inf; symmetric_ = false; break;
        case PdfFamily::Triangular:    lo_ = -L;   hi_ = L;   symmetric_ = true; break;
        case PdfFamily::Parabolic:     lo_ = -L;   hi_ = L;   symmetric_ = true; break;
        case PdfFamily::SemiCircle:    lo_ = -L;   hi_ = L;   symmetric_ = true; break;
        case PdfFamily::HalfGaussian:  lo_ = 0.0;  hi_ = inf; symmetric_ = false; break;
        case PdfFamily::HalfUniform:   lo_ = 0.0;  hi_ = L;   symmetric_ = false; break;
        case PdfFamily::HalfExponential: lo_ = 0.0; hi_ = inf; symmetric_ = false; break;
        case PdfFamily::HalfSuperGaussian: lo_ = 0.0; hi_ = inf; symmetric_ = false; break;
        case PdfFamily::HalfTriangular: lo_ = 0.0; hi_ = L;  symmetric_ = false; break;
        case PdfFamily::P2:            lo_ = -L;   hi_ = L;   symmetric_ = false; break;
        case PdfFamily::P3:            lo_ = -L;   hi_ = L;   symmetric_ = false; break;
        default: throw std::invalid_argument("unknown pdf family");
    }
}

double Pdf::sample(RandomStream& rng) const { return spec_.scale * sample_unit(rng); }

double Pdf::density(double x) const {
    const double t = x / spec_.scale;
    return density_unit(t) / spec_.scale;
}

double Pdf::sample_unit(RandomStream& rng) const {
    switch (spec_.family) {
        case PdfFamily::Gaussian: {
            const double u = rng.next_open();
            const double v = rng.next_unit();
            return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
        }
        case PdfFamily::Uniform:
            return 2.0 * rng.next_unit() - 1.0;
        case PdfFamily::Exponential: {
            const double mag = -std::log(rng.next_open());
            return rng.next_unit() < 0.5 ? -mag : mag;
        }
        case PdfFamily::SuperGaussian: {
            for (;;) {
                const double x = kSuperGaussCut * (2.0 * rng.next_unit() - 1.0);
                if (rng.next_unit() <= std::exp(-x * x * x * x)) return x;
            }
        }
        case PdfFamily::Maxwellian:
            return std::sqrt(-std::log(rng.next_open()));
        case PdfFamily::Triangular: {
            const double u = rng.next_unit();
            return u < 0.5 ? std::sqrt(2.0 * u) - 1.0 : 1.0 - std::sqrt(2.0 * (1.0 - u));
        }
        case PdfFamily::Parabolic: {
            for (;;) {
                const double x = 2.0 * rng.next_unit() - 1.0;
                if (rng.next_unit() <= 1.0 - x * x) return x;
            }
        }
        case PdfFamily::SemiCircle: {
            for (;;) {
                const double x = 2.0 * rng.next_unit() - 1.0;
                const double u = rng.next_unit();
                if (u * u <= 1.0 - x * x) return x;
            }
        }
        case PdfFamily::HalfGaussian: {
            const double u = rng.next_open();
            const double v = rng.next_unit();
            return std::fabs(std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v));
        }
        case PdfFamily::HalfUniform:
            return rng.next_unit();
        case PdfFamily::HalfExponential:
            return -std::log(rng.next_open());
        case PdfFamily::HalfSuperGaussian: {
            for (;;) {
                const double x = kSuperGaussCut * rng.next_unit();
                if (rng.next_unit() <= std::exp(-x * x * x * x)) return x;
            }
        }
        case PdfFamily::HalfTriangular:
            return 1.0 - std::sqrt(1.0 - rng.next_unit());
        case PdfFamily::P2: {
            for (;;) {
                const double x = 2.0 * rng.next_unit() - 1.0;
                if (kP2Peak * rng.next_unit() <= (1.0 - x * x) * (1.0 + x)) return x;
            }
        }
        case PdfFamily::P3: {
            for (;;) {
                const double x = 2.0 * rng.next_unit() - 1.0;
                const double w = (1.0 + x) * (1.0 + x);
                if (kP3Peak * rng.next_unit() <= (1.0 - x * x) * w) return x;
            }
        }
    }
    throw std::logic_error("unreachable pdf family");
}

double Pdf::density_unit(double t) const {
    switch (spec_.family) {
        case PdfFamily::Gaussian:
            return std::exp(-0.5 * t * t) / std::sqrt(2.0 * kPi);
        case PdfFamily::Uniform:
            return std::fabs(t) <= 1.0 ? 0.5 : 0.0;
        case PdfFamily::Exponential:
            return 0.5 * std::exp(-std::fabs(t));
        case PdfFamily::SuperGaussian:
            return std::exp(-t * t * t * t) / kSuperGaussMass;
        case PdfFamily::Maxwellian:
            return t >= 0.0 ? 2.0 * t * std::exp(-t * t) : 0.0;
        case PdfFamily::Triangular:
            return std::fabs(t) <= 1.0 ? 1.0 - std::fabs(t) : 0.0;
        case PdfFamily::Parabolic:
            return std::fabs(t) <= 1.0 ? 0.75 * (1.0 - t * t) : 0.0;
        case PdfFamily::SemiCircle:
            return std::fabs(t) <= 1.0 ? (2.0 / kPi) * std::sqrt(1.0 - t * t) : 0.0;
        case PdfFamily::HalfGaussian:
            return t >= 0.0 ? std::sqrt(2.0 / kPi) * std::exp(-0.5 * t * t) : 0.0;
        case PdfFamily::HalfUniform:
            return (t >= 0.0 && t <= 1.0) ? 1.0 : 0.0;
        case PdfFamily::HalfExponential:
            return t >= 0.0 ? std::exp(-t) : 0.0;
        case PdfFamily::HalfSuperGaussian:
            return t >= 0.0 ? std::exp(-t * t * t * t) / kGamma54 : 0.0;
        case PdfFamily::HalfTriangular:
            return (t >= 0.0 && t <= 1.0) ? 2.0 * (1.0 - t) : 0.0;
        case PdfFamily::P2:
            return std::fabs(t) <= 1.0 ? 0.75 * (1.0 - t * t) * (1.0 + t) : 0.0;
        case PdfFamily::P3:
            return std::fabs(t) <= 1.0 ? 0.625 * (1.0 - t * t) * (1.0 + t) * (1.0 + t) : 0.0;
    }
    throw std::logic_error("unreachable pdf family");
}

Pdf make_pdf(const PdfSpec& spec) { return Pdf(spec); }

const char* pdf_token(PdfFamily f) {
    switch (f) {
        case PdfFamily::Gaussian: return "gaussian";
        case PdfFamily::Uniform: return "uniform";
        case PdfFamily::Exponential: return "exponential";
        case PdfFamily::SuperGaussian: return "supergaussian";
        case PdfFamily::Maxwellian: return "maxwellian";
        case PdfFamily::Triangular: return "triangular";
        case PdfFamily::Parabolic: return "parabolic";
        case PdfFamily::SemiCircle: return "semicircle";
        case PdfFamily::HalfGaussian: return "half_gaussian";
        case PdfFamily::HalfUniform: return "half_uniform";
        case PdfFamily::HalfExponential: return "half_exponential";
        case PdfFamily::HalfSuperGaussian: return "half_supergaussian";
        case PdfFamily::HalfTriangular: return "half_triangular";
        case PdfFamily::P2: return "p2";
        case PdfFamily::P3: return "p3";
    }
    return "?";
}

PdfFamily pdf_family_from_token(const std::string& token) {
    for (int i = 0; i <= static_cast<int>(PdfFamily::P3); ++i) {
        const auto f = static_cast<PdfFamily>(i);
        if (token == pdf_token(f)) return f;
    }
    throw std::invalid_argument("unknown pdf family token: " + token);
}

bool pdf_family_symmetric(PdfFamily f) {
    return Pdf(PdfSpec{f, 1.0}).symmetric();
}

}  // namespace rmt
