#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmt/eigen.hpp"

namespace rmt {

enum class Protocol {
    NLM,
    NLE,
    ComplexOrdered,
    RealPart,
    ImagPart,
    Modulus,
    UpperHalfPlane,
    FALS,
};

enum class Scaling {
    PerMatrixMean,        // each matrix's spacings divided by their own mean
    PerMatrixThenGlobal,  // additionally rescaled so the pooled mean is 1
};

enum class FalsKind { RealReal, RealComplex, ComplexComplex };

enum class DensityScaling { MeanPositive, MaxAbs };

struct SpacingSample {
    std::vector<double> values;
    Protocol protocol = Protocol::NLM;
    Scaling scaling = Scaling::PerMatrixThenGlobal;
    std::vector<std::size_t> block_sizes;  // spacings contributed per accepted matrix
    std::size_t skipped = 0;               // matrices dropped by preconditions
};

struct DensitySample {
    std::vector<double> values;
    DensityScaling scaling = DensityScaling::MaxAbs;
    double scale = 0.0;  // E_bar (MeanPositive) or E_max (MaxAbs)
};

struct Histogram {
    std::vector<double> bin_edges;  // bins + 1 ascending edges
    std::vector<double> density;
    std::vector<long long> counts;
    std::size_t n_samples = 0;  // in-range samples
    std::size_t n_dropped = 0;  // outside the requested range

    int bins() const { return static_cast<int>(counts.size()); }
    double bin_center(int i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
    double bin_width(int i) const { return bin_edges[i + 1] - bin_edges[i]; }
};

// Adjacent spacings of the real eigenvalues within each matrix, scaled per
// matrix (and optionally re-scaled by the pooled mean).
SpacingSample spacings_nlm(std::span<const Spectrum> spectra, Scaling scaling);

// Adjacent spacings of all real eigenvalues pooled across the ensemble,
// scaled by their global mean.
SpacingSample spacings_nle(std::span<const Spectrum> spectra);

// Spacing statistics derived from complex eigenvalues.
SpacingSample spacings_complex(std::span<const Spectrum> spectra, Protocol mode,
                               Scaling scaling);

// One spacing per matrix between the designated first adjacent pair,
// pooled and scaled by the pooled mean.
SpacingSample fals(std::span<const Spectrum> spectra, FalsKind kind);

// Scaled eigenvalue sample (real eigenvalues only).
DensitySample density_sample(std::span<const Spectrum> spectra, DensityScaling scaling);

// Equal-width histogram; samples outside the range are dropped and counted.
Histogram make_histogram(std::span<const double> values, int bins,
                         std::optional<std::pair<double, double>> range = std::nullopt);

// Compensated mean, exact enough for the unit-mean invariants.
double kahan_mean(std::span<const double> values);

const char* protocol_token(Protocol p);
const char* fals_token(FalsKind k);

}  // namespace rmt
