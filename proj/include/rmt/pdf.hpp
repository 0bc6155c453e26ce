#pragma once

#include <string>

#include "rmt/rng.hpp"

namespace rmt {

// Element distributions for matrix entries.  Every family is sampled from
// its normalized density; the width parameter rescales x -> x/scale.
enum class PdfFamily {
    Gaussian,
    Uniform,
    Exponential,
    SuperGaussian,
    Maxwellian,
    Triangular,
    Parabolic,
    SemiCircle,
    HalfGaussian,
    HalfUniform,
    HalfExponential,
    HalfSuperGaussian,
    HalfTriangular,
    P2,
    P3,
};

struct PdfSpec {
    PdfFamily family = PdfFamily::Gaussian;
    double scale = 1.0;
};

class Pdf {
public:
    explicit Pdf(const PdfSpec& spec);

    double sample(RandomStream& rng) const;

    // Normalized density; 0 outside the support.
    double density(double x) const;

    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    bool symmetric() const { return symmetric_; }
    PdfFamily family() const { return spec_.family; }
    double scale() const { return spec_.scale; }

private:
    PdfSpec spec_;
    double lo_ = 0.0;       // support in x units (scale applied)
    double hi_ = 0.0;
    bool symmetric_ = true;

    double sample_unit(RandomStream& rng) const;  // scale-1 draw
    double density_unit(double t) const;          // scale-1 density
};

Pdf make_pdf(const PdfSpec& spec);

const char* pdf_token(PdfFamily f);
PdfFamily pdf_family_from_token(const std::string& token);
bool pdf_family_symmetric(PdfFamily f);

}  // namespace rmt
