#include "rmt/spacing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmt {

namespace {

bool complex_less(const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Collapse values equal within a relative tolerance (conjugate-pair
// deduplication for the Re / |.| statistics).
std::vector<double> collapse_close(std::vector<double> v, double rel_tol) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v) {
        if (!out.empty()) {
            const double ref = std::max(std::fabs(out.back()), std::fabs(x));
            if (std::fabs(x - out.back()) <= rel_tol * ref) continue;
        }
        out.push_back(x);
    }
    return out;
}

std::vector<double> sorted_spacings(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> s(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) s[i] = v[i + 1] - v[i];
    return s;
}

// Shared tail of every per-matrix protocol: scale each block by its mean,
// pool, optionally rescale by the pooled mean.
SpacingSample pool_blocks(std::vector<std::vector<double>> blocks, std::size_t skipped,
                          Protocol protocol, Scaling scaling) {
    SpacingSample out;
    out.protocol = protocol;
    out.scaling = scaling;
    for (auto& block : blocks) {
        const double mean = kahan_mean(block);
        if (!(mean > 0.0)) {
            ++skipped;
            continue;
        }
        for (double s : block) out.values.push_back(s / mean);
        out.block_sizes.push_back(block.size());
    }
    if (scaling == Scaling::PerMatrixThenGlobal && !out.values.empty()) {
        const double g = kahan_mean(out.values);
        for (double& s : out.values) s /= g;
    }
    out.skipped = skipped;
    return out;
}

std::vector<std::complex<double>> complex_part(const Spectrum& sp) {
    std::vector<std::complex<double>> out;
    for (const auto& v : sp.values)
        if (v.imag() != 0.0) out.push_back(v);
    return out;
}

}  // namespace

double kahan_mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    double sum = 0.0, comp = 0.0;
    for (double x : values) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(values.size());
}

SpacingSample spacings_nlm(std::span<const Spectrum> spectra, Scaling scaling) {
    std::vector<std::vector<double>> blocks;
    std::size_t skipped = 0;
    for (const auto& sp : spectra) {
        std::vector<double> reals = sp.real_values();
        if (reals.size() < 2) {
            ++skipped;
            continue;
        }
        blocks.push_back(sorted_spacings(std::move(reals)));
    }
    return pool_blocks(std::move(blocks), skipped, Protocol::NLM, scaling);
}

SpacingSample spacings_nle(std::span<const Spectrum> spectra) {
    std::vector<double> pooled;
    for (const auto& sp : spectra)
        for (const auto& v : sp.values)
            if (v.imag() == 0.0) pooled.push_back(v.real());
    if (pooled.size() < 2)
        throw std::invalid_argument("spacings_nle: fewer than 2 pooled eigenvalues");
    SpacingSample out;
    out.protocol = Protocol::NLE;
    out.scaling = Scaling::PerMatrixThenGlobal;
    out.values = sorted_spacings(std::move(pooled));
    const double g = kahan_mean(out.values);
    if (!(g > 0.0)) throw std::invalid_argument("spacings_nle: zero mean spacing");
    for (double& s : out.values) s /= g;
    out.block_sizes.push_back(out.values.size());
    return out;
}

SpacingSample spacings_complex(std::span<const Spectrum> spectra, Protocol mode,
                               Scaling scaling) {
    constexpr double kDedupRel = 1e-9;
    std::size_t complex_seen = 0;
    std::vector<std::vector<double>> blocks;
    std::size_t skipped = 0;

    for (const auto& sp : spectra) {
        std::vector<double> block;
        switch (mode) {
            case Protocol::RealPart:
            case Protocol::Modulus: {
                std::vector<double> xs;
                for (const auto& v : sp.values) {
                    if (v.imag() == 0.0) continue;
                    ++complex_seen;
                    xs.push_back(mode == Protocol::RealPart ? v.real() : std::abs(v));
                }
                xs = collapse_close(std::move(xs), kDedupRel);
                if (xs.size() < 2) {
                    ++skipped;
                    continue;
                }
                block = sorted_spacings(std::move(xs));
                break;
            }
            case Protocol::ImagPart: {
                std::vector<double> xs;
                for (const auto& v : sp.values) {
                    if (v.imag() != 0.0) ++complex_seen;
                    if (v.imag() > 0.0) xs.push_back(v.imag());
                }
                if (xs.size() < 2) {
                    ++skipped;
                    continue;
                }
                block = sorted_spacings(std::move(xs));
                break;
            }
            case Protocol::ComplexOrdered: {
                std::vector<std::complex<double>> all(sp.values.begin(), sp.values.end());
                for (const auto& v : all)
                    if (v.imag() != 0.0) ++complex_seen;
                if (all.size() < 2) {
                    ++skipped;
                    continue;
                }
                std::sort(all.begin(), all.end(), complex_less);
                for (std::size_t i = 0; i + 1 < all.size(); ++i) {
                    const double s = std::abs(all[i + 1] - all[i]);
                    if (s != 0.0) block.push_back(s);  // exact zeros are left out
                }
                if (block.empty()) {
                    ++skipped;
                    continue;
                }
                break;
            }
            case Protocol::UpperHalfPlane: {
                std::vector<std::complex<double>> upper;
                for (const auto& v : sp.values) {
                    if (v.imag() != 0.0) ++complex_seen;
                    if (v.imag() > 0.0) upper.push_back(v);
                }
                if (upper.size() < 2) {
                    ++skipped;
                    continue;
                }
                std::sort(upper.begin(), upper.end(), complex_less);
                for (std::size_t i = 0; i + 1 < upper.size(); ++i)
                    block.push_back(std::abs(upper[i + 1] - upper[i]));
                break;
            }
            default:
                throw std::invalid_argument("spacings_complex: not a complex protocol");
        }
        blocks.push_back(std::move(block));
    }
    if (complex_seen == 0)
        throw std::invalid_argument("spacings_complex: no complex eigenvalues present");
    return pool_blocks(std::move(blocks), skipped, mode, scaling);
}

SpacingSample fals(std::span<const Spectrum> spectra, FalsKind kind) {
    SpacingSample out;
    out.protocol = Protocol::FALS;
    out.scaling = Scaling::PerMatrixThenGlobal;
    for (const auto& sp : spectra) {
        std::vector<std::complex<double>> all(sp.values.begin(), sp.values.end());
        std::sort(all.begin(), all.end(), complex_less);
        double value = -1.0;
        switch (kind) {
            case FalsKind::RealReal: {
                std::vector<double> reals;
                for (const auto& v : all)
                    if (v.imag() == 0.0) reals.push_back(v.real());
                if (reals.size() >= 2) value = reals[1] - reals[0];
                break;
            }
            case FalsKind::RealComplex: {
                std::ptrdiff_t first_real = -1;
                for (std::size_t i = 0; i < all.size(); ++i) {
                    if (all[i].imag() == 0.0) {
                        first_real = static_cast<std::ptrdiff_t>(i);
                        break;
                    }
                }
                if (first_real < 0) break;
                const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(all.size());
                for (std::ptrdiff_t d = 1; d < n; ++d) {
                    const std::ptrdiff_t fwd = first_real + d;
                    const std::ptrdiff_t bwd = first_real - d;
                    if (fwd < n && all[fwd].imag() != 0.0) {
                        value = std::abs(all[fwd] - all[first_real]);
                        break;
                    }
                    if (bwd >= 0 && all[bwd].imag() != 0.0) {
                        value = std::abs(all[bwd] - all[first_real]);
                        break;
                    }
                }
                break;
            }
            case FalsKind::ComplexComplex: {
                std::vector<std::complex<double>> upper;
                for (const auto& v : all)
                    if (v.imag() > 0.0) upper.push_back(v);
                if (upper.size() >= 2) value = std::abs(upper[1] - upper[0]);
                break;
            }
        }
        if (value < 0.0) {
            ++out.skipped;
            continue;
        }
        out.values.push_back(value);
        out.block_sizes.push_back(1);
    }
    if (!out.values.empty()) {
        const double g = kahan_mean(out.values);
        if (g > 0.0)
            for (double& s : out.values) s /= g;
    }
    return out;
}

DensitySample density_sample(std::span<const Spectrum> spectra, DensityScaling scaling) {
    std::vector<double> reals;
    for (const auto& sp : spectra)
        for (const auto& v : sp.values)
            if (v.imag() == 0.0) reals.push_back(v.real());
    if (reals.empty()) throw std::invalid_argument("density_sample: no real eigenvalues");

    DensitySample out;
    out.scaling = scaling;
    if (scaling == DensityScaling::MeanPositive) {
        std::vector<double> pos;
        for (double e : reals)
            if (e > 0.0) pos.push_back(e);
        if (pos.empty())
            throw std::invalid_argument("density_sample: no positive eigenvalues");
        out.scale = kahan_mean(pos);
    } else {
        double m = 0.0;
        for (double e : reals) m = std::max(m, std::fabs(e));
        if (!(m > 0.0)) throw std::invalid_argument("density_sample: all eigenvalues zero");
        out.scale = m;
    }
    out.values.reserve(reals.size());
    for (double e : reals) out.values.push_back(e / out.scale);
    return out;
}

Histogram make_histogram(std::span<const double> values, int bins,
                         std::optional<std::pair<double, double>> range) {
    if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
    if (values.empty()) throw std::invalid_argument("histogram: empty sample");

    double lo, hi;
    if (range) {
        lo = range->first;
        hi = range->second;
    } else {
        lo = 0.0;
        hi = values[0];
        for (double v : values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(hi > lo)) throw std::invalid_argument("histogram: degenerate range");

    Histogram h;
    h.bin_edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i)
        h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
    h.counts.assign(bins, 0);

    const double width = (hi - lo) / bins;
    for (double v : values) {
        if (v < lo || v > hi) {
            ++h.n_dropped;
            continue;
        }
        int idx = static_cast<int>((v - lo) / width);
        if (idx >= bins) idx = bins - 1;  // right edge lands in the last bin
        ++h.counts[idx];
        ++h.n_samples;
    }
    if (h.n_samples == 0) throw std::invalid_argument("histogram: no samples in range");

    h.density.resize(bins);
    for (int i = 0; i < bins; ++i)
        h.density[i] = static_cast<double>(h.counts[i]) /
                       (static_cast<double>(h.n_samples) * h.bin_width(i));
    return h;
}

const char* protocol_token(Protocol p) {
    switch (p) {
        case Protocol::NLM: return "nlm";
        case Protocol::NLE: return "nle";
        case Protocol::ComplexOrdered: return "complex";
        case Protocol::RealPart: return "re";
        case Protocol::ImagPart: return "im";
        case Protocol::Modulus: return "mod";
        case Protocol::UpperHalfPlane: return "upper";
        case Protocol::FALS: return "fals";
    }
    return "?";
}

const char* fals_token(FalsKind k) {
    switch (k) {
        case FalsKind::RealReal: return "fals_rr";
        case FalsKind::RealComplex: return "fals_rc";
        case FalsKind::ComplexComplex: return "fals_cc";
    }
    return "?";
}

}  // namespace rmt
