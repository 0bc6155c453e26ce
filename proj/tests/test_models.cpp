#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rmt/models.hpp"
#include "rmt/quadrature.hpp"
#include "rmt/spacing.hpp"
#include "rmt/special.hpp"

using namespace rmt;
using namespace rmt::models;

namespace {

constexpr double kPi = 3.14159265358979323846;

double curve_mass_oracle(const ModelCurve& c, int n = 1 << 15) {
    return oracle::simpson([&](double s) { return c.pdf(s); }, c.lo, c.hi, n);
}

double curve_mean_oracle(const ModelCurve& c, int n = 1 << 15) {
    return oracle::simpson([&](double s) { return s * c.pdf(s); }, c.lo, c.hi, n);
}

// sup-norm between a model curve and the histogram of a sample
double sup_vs_histogram(const ModelCurve& c, const std::vector<double>& sample,
                        int bins, double hi) {
    const Histogram h = make_histogram(sample, bins, std::make_pair(0.0, hi));
    double sup = 0.0;
    for (int i = 0; i < h.bins(); ++i)
        sup = std::max(sup, std::fabs(h.density[i] - c.pdf(h.bin_center(i))));
    return sup;
}

struct Pair {
    TwoByTwo fam;
    PdfFamily pdf;
    const char* name;
};

const Pair kSupportedPairs[] = {
    {TwoByTwo::R1, PdfFamily::Uniform, "r1 uniform"},
    {TwoByTwo::R2, PdfFamily::Uniform, "r2 uniform"},
    {TwoByTwo::R1, PdfFamily::Exponential, "r1 exponential"},
    {TwoByTwo::R2, PdfFamily::Exponential, "r2 exponential"},
    {TwoByTwo::R1, PdfFamily::SuperGaussian, "r1 supergaussian"},
    {TwoByTwo::R2, PdfFamily::SuperGaussian, "r2 supergaussian"},
    {TwoByTwo::R2, PdfFamily::Maxwellian, "r2 maxwellian"},
};

}  // namespace

TEST_SUITE_BEGIN("models");

TEST_CASE("quadrature sanity on known integrals") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate_to_inf([](double x) { return std::exp(-x * x); }, 0.0) ==
          doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-10));
    CHECK(integrate_to_inf([](double x) { return std::exp(-2.0 * x); }, 1.0) ==
          doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("special functions against series and identities") {
    CHECK(special::bessel_i0(0.0) == doctest::Approx(1.0));
    CHECK(special::erf(0.0) == 0.0);
    CHECK(special::gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(special::gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));

    // power-series oracle for I0
    auto i0_series = [](double x) {
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= (x * x / 4.0) / (static_cast<double>(k) * k);
            sum += term;
        }
        return sum;
    };
    CHECK(special::bessel_i0(1.0) == doctest::Approx(1.2660658777520084).epsilon(1e-13));
    for (double x : {0.1, 1.0, 5.0, 12.0, 17.9, 18.1, 25.0}) {
        CHECK(special::bessel_i0(x) == doctest::Approx(i0_series(x)).epsilon(1e-12));
        CHECK(special::bessel_i0_scaled(x) ==
              doctest::Approx(i0_series(x) * std::exp(-x)).epsilon(1e-12));
    }
    // the scaled variant stays finite where the plain one saturates
    CHECK(std::isinf(special::bessel_i0(800.0)));
    CHECK(special::bessel_i0_scaled(800.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * kPi * 800.0)).epsilon(1e-3));

    // erf against the library implementation and monotone saturation
    for (double x : {0.1, 0.5, 1.0, 1.9, 2.1, 3.0, 5.0, 8.0}) {
        CHECK(special::erf(x) == doctest::Approx(std::erf(x)).epsilon(1e-12));
        CHECK(special::erf(-x) == doctest::Approx(-std::erf(x)).epsilon(1e-12));
    }
    double prev = 0.0;
    for (double x = 0.0; x < 7.0; x += 0.25) {
        const double e = special::erf(x);
        CHECK(e >= prev);
        prev = e;
    }
    CHECK(special::erf(8.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (double x : {0.7, 1.3, 2.6, 4.2, 6.5}) {
        CHECK(special::gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
    }
}

TEST_CASE("reference spacing laws") {
    CHECK(p_wigner(0.0) == 0.0);
    const double wig_mass = oracle::simpson([](double s) { return p_wigner(s); }, 0.0, 10.0);
    const double wig_mean =
        oracle::simpson([](double s) { return s * p_wigner(s); }, 0.0, 10.0);
    CHECK(wig_mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(wig_mean == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(semicircle(0.0) == doctest::Approx(2.0 / kPi));
    CHECK_THROWS_AS(semicircle(1.5), std::domain_error);

    const double poisson_mass =
        oracle::simpson([](double s) { return p_poisson(1.3, s); }, 0.0, 40.0);
    CHECK(poisson_mass == doctest::Approx(1.0).epsilon(1e-10));

    // sub-exponential law with the product-family parameters
    const double se_mass =
        oracle::simpson([](double s) { return p_sub_exp(2.0, 0.5, s); }, 0.0, 400.0, 1 << 18);
    CHECK(se_mass == doctest::Approx(1.0).epsilon(1e-7));
    CHECK_THROWS_AS(p_sub_exp(2.0, 1.5, 1.0), std::domain_error);

    const double bm_mass =
        oracle::simpson([](double e) { return bose_mitra(e); }, -12.0, 12.0);
    CHECK(bm_mass == doctest::Approx(1.0).epsilon(1e-10));

    const double dc_mass =
        oracle::simpson([](double e) { return d_cyclic(7.08, e); }, -1.0, 1.0);
    CHECK(dc_mass == doctest::Approx(1.0).epsilon(1e-10));

    const double hg_mass =
        oracle::simpson([](double s) { return p_half_gaussian(s); }, 0.0, 12.0);
    const double hg_mean =
        oracle::simpson([](double s) { return s * p_half_gaussian(s); }, 0.0, 12.0);
    CHECK(hg_mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(hg_mean == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("2x2 curves are normalized to unit mass and unit mean") {
    for (const Pair& p : kSupportedPairs) {
        const ModelCurve c = p2x2(p.fam, p.pdf);
        INFO(p.name);
        CHECK(std::fabs(c.mass - 1.0) < 1e-6);
        CHECK(std::fabs(c.mean - 1.0) < 1e-6);
        CHECK(curve_mass_oracle(c) == doctest::Approx(1.0).epsilon(2e-6));
        CHECK(curve_mean_oracle(c) == doctest::Approx(1.0).epsilon(2e-6));
    }
    CHECK_THROWS_AS(p2x2(TwoByTwo::R1, PdfFamily::Maxwellian), std::invalid_argument);
    CHECK_THROWS_AS(p2x2(TwoByTwo::R1, PdfFamily::Gaussian), std::invalid_argument);
}

TEST_CASE("uniform-element supports terminate exactly") {
    const ModelCurve r1 = p2x2(TwoByTwo::R1, PdfFamily::Uniform);
    const ModelCurve r2 = p2x2(TwoByTwo::R2, PdfFamily::Uniform);
    // raw supports are 2 sqrt(2) and sqrt(2); in scaled units divide by S_bar
    const double r1_sbar = 2.0 * std::sqrt(2.0) / r1.hi;
    const double r2_sbar = std::sqrt(2.0) / r2.hi;
    CHECK(r1.pdf(r1.hi + 0.01) == 0.0);
    CHECK(r2.pdf(r2.hi + 0.01) == 0.0);
    CHECK(r1.pdf(r1.hi - 0.01) > 0.0);
    CHECK(r2.pdf(r2.hi - 0.01) > 0.0);
    // the raw mean spacings bracket sensible values
    CHECK(r1_sbar > 0.5);
    CHECK(r1_sbar < 2.5);
    CHECK(r2_sbar > 0.3);
    CHECK(r2_sbar < 1.5);
}

TEST_CASE("maxwellian pair has the closed cubic form") {
    const ModelCurve c = p2x2(TwoByTwo::R2, PdfFamily::Maxwellian);
    // S_bar for S^3 exp(-S^2) is 3 sqrt(pi)/4
    const double sbar = 3.0 * std::sqrt(kPi) / 4.0;
    CHECK(sbar == doctest::Approx(1.3293).epsilon(1e-4));
    for (double s : {0.2, 0.7, 1.3, 2.0}) {
        const double expected =
            2.0 * std::pow(sbar, 4) * s * s * s * std::exp(-(sbar * s) * (sbar * s));
        CHECK(c.pdf(s) == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("quartic-element closed form keeps the Bessel factor") {
    const ModelCurve c = p2x2(TwoByTwo::R2, PdfFamily::SuperGaussian);
    // p(s) / [ s exp(-3(Sbar s)^4/4) I0((Sbar s)^4/4) ] must be constant
    const double sbar_mass = 1.0;  // unknown; test via ratio constancy
    (void)sbar_mass;
    auto shape = [&](double s, double sbar) {
        const double q = std::pow(sbar * s, 4) / 4.0;
        return s * std::exp(-2.0 * q) * special::bessel_i0_scaled(q);
    };
    // recover sbar from the curve: mean of the raw form over the mean of pdf
    // is already 1, so scan for the sbar that makes the ratio flat
    double best_sbar = 0.0, best_spread = 1e300;
    for (double sbar = 0.5; sbar < 1.5; sbar += 0.001) {
        const double r1 = c.pdf(0.5) / shape(0.5, sbar);
        const double r2 = c.pdf(1.0) / shape(1.0, sbar);
        const double r3 = c.pdf(1.5) / shape(1.5, sbar);
        const double spread = std::fabs(r1 - r2) + std::fabs(r2 - r3);
        if (spread < best_spread) {
            best_spread = spread;
            best_sbar = sbar;
        }
    }
    const double r_ref = c.pdf(1.0) / shape(1.0, best_sbar);
    CHECK(best_spread / r_ref < 1e-3);
    CHECK(best_sbar > 0.6);
    CHECK(best_sbar < 1.4);
}

// The library evaluates the exponential/quartic P(S) through the smooth
// arc reduction; the paper-style polar triple integrals must agree up to a
// constant factor.
TEST_CASE("arc reduction matches the polar-form integrals up to a constant") {
    auto polar_r1 = [](double S, double (*weight)(double, double)) {
        // integrate exp(-S k(th,phi)/g) S^2/g^3 sin(th) over th in (0,pi/2),
        // phi in (0,pi), g^2 = 1 - sin^2(th) sin(2 phi)
        auto inner = [&](double th) {
            const double sth = std::sin(th);
            return integrate(
                [&](double phi) {
                    const double g2 = 1.0 - sth * sth * std::sin(2.0 * phi);
                    if (g2 <= 0.0) return 0.0;
                    const double g = std::sqrt(g2);
                    return std::exp(-S * weight(th, phi) / g) * S * S / (g2 * g) * sth;
                },
                0.0, kPi, 1e-11, 1e-9);
        };
        return integrate(inner, 0.0, 0.5 * kPi, 1e-9, 1e-8);
    };
    SUBCASE("exponential elements") {
        auto w_exp = +[](double th, double phi) {
            return 0.5 * std::cos(th) +
                   std::sin(th) * (std::fabs(std::cos(phi)) + std::fabs(std::sin(phi)));
        };
        const ModelCurve c = p2x2(TwoByTwo::R1, PdfFamily::Exponential);
        // compare unnormalized shapes through the normalized curve: the ratio
        // polar(S) / pdf(S / sbar_like) is constant iff both represent P(S)
        std::vector<double> ratio;
        for (double s : {0.6, 1.0, 1.6}) {
            // map scaled s back to raw S through the curve's mean structure:
            // pdf(s) = const * P(sbar * s), so compare at matching raw points
            ratio.push_back(polar_r1(s, w_exp));
        }
        // evaluate the curve at raw spacings: pdf_raw(S) ~ pdf(S/sbar)/sbar;
        // constancy of polar/pdf_raw over S is the actual assertion
        const ModelCurve raw = c;  // pdf already normalized in s units
        // recover sbar: raw spacing S = sbar * s; sbar = (2 sqrt 2 / hi) trick
        // is unavailable here, so fit the constant on two points and check the
        // third
        auto pdf_raw = [&](double S, double sbar) { return raw.pdf(S / sbar) / sbar; };
        double best_sbar = 0.0, best_spread = 1e300;
        for (double sbar = 1.0; sbar < 6.0; sbar += 0.002) {
            const double r1 = ratio[0] / pdf_raw(0.6, sbar);
            const double r2 = ratio[1] / pdf_raw(1.0, sbar);
            const double r3 = ratio[2] / pdf_raw(1.6, sbar);
            const double spread = std::fabs(r1 - r2) + std::fabs(r2 - r3);
            if (spread < best_spread) {
                best_spread = spread;
                best_sbar = sbar;
            }
        }
        const double scale = ratio[1] / pdf_raw(1.0, best_sbar);
        CHECK(best_spread / scale < 2e-3);
    }
}

TEST_CASE("2x2 curves match Monte Carlo histograms") {
    for (const Pair& p : kSupportedPairs) {
        const ModelCurve c = p2x2(p.fam, p.pdf);
        const auto sample = mc_spacings_2x2(p.fam, {p.pdf, 1.0}, 100000, 91);
        const double hi = std::min(c.hi, 4.0);
        const double sup = sup_vs_histogram(c, sample, 50, hi);
        INFO(p.name, " sup=", sup);
        CHECK(sup < 0.05);
    }
}

TEST_CASE("mc spacing generator is deterministic and unit mean") {
    const auto a = mc_spacings_2x2(TwoByTwo::R1, {PdfFamily::Uniform, 1.0}, 5000, 7);
    const auto b = mc_spacings_2x2(TwoByTwo::R1, {PdfFamily::Uniform, 1.0}, 5000, 7);
    CHECK(a == b);
    CHECK(std::fabs(kahan_mean(a) - 1.0) < 1e-12);
}

TEST_CASE("level repulsion slopes of the closed uniform forms") {
    const auto r1 = slope_at_zero(p2x2(TwoByTwo::R1, PdfFamily::Uniform));
    CHECK(r1.kind == SlopeResult::Kind::Linear);
    CHECK(std::fabs(r1.alpha - 1.23) < 0.1);

    const auto r2 = slope_at_zero(p2x2(TwoByTwo::R2, PdfFamily::Uniform));
    CHECK(r2.kind == SlopeResult::Kind::Linear);
    // reported as 1.01 in one place and 1.09 in another; accept both
    const bool ok = std::fabs(r2.alpha - 1.01) < 0.1 || std::fabs(r2.alpha - 1.09) < 0.1;
    CHECK(ok);
}

TEST_CASE("wigner reference slope via the curve machinery") {
    ModelCurve wig;
    wig.lo = 0.0;
    wig.hi = 8.0;
    wig.pdf = [](double s) { return p_wigner(s); };
    wig.mass = wig.mean = 1.0;
    const auto slope = slope_at_zero(wig);
    CHECK(slope.kind == SlopeResult::Kind::Linear);
    CHECK(slope.alpha == doctest::Approx(kPi / 2.0).epsilon(1e-4));
}

TEST_CASE("cubic repulsion is flagged super-linear") {
    const auto m = slope_at_zero(p2x2(TwoByTwo::R2, PdfFamily::Maxwellian));
    CHECK(m.kind == SlopeResult::Kind::SuperLinear);
    CHECK(m.loglog_exponent == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("2x2 eigenvalue densities") {
    // closed form at the origin: 1/(2 sqrt(pi))
    CHECK(g2x2_raw(TwoByTwo::R2, 0.0) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(kPi))).epsilon(1e-10));

    // the closed form is already normalized
    const double mass2 = oracle::simpson(
        [](double e) { return g2x2_raw(TwoByTwo::R2, e); }, -10.0, 10.0);
    CHECK(mass2 == doctest::Approx(1.0).epsilon(1e-9));

    // mean positive eigenvalue
    CHECK(g2x2_mean_positive(TwoByTwo::R2) ==
          doctest::Approx((4.0 + kPi) / (4.0 * std::sqrt(kPi))).epsilon(1e-7));

    for (TwoByTwo fam : {TwoByTwo::R1, TwoByTwo::R2}) {
        const ModelCurve d = g2x2(fam);
        INFO(std::string(fam == TwoByTwo::R1 ? "r1" : "r2"));
        CHECK(std::fabs(d.mass - 1.0) < 1e-6);
        // even in eps
        for (double e : {0.3, 0.9, 1.7}) CHECK(d.pdf(e) == doctest::Approx(d.pdf(-e)).epsilon(1e-9));
    }
}

TEST_CASE("2x2 densities match Monte Carlo histograms") {
    // element convention of the closed forms: Gaussian with density exp(-x^2)
    const PdfSpec pdf{PdfFamily::Gaussian, 1.0 / std::sqrt(2.0)};
    for (TwoByTwo fam : {TwoByTwo::R1, TwoByTwo::R2}) {
        const ModelCurve d = g2x2(fam);
        const auto spectra = mc_spectra_2x2(fam, pdf, 80000, 5);
        const DensitySample ds = density_sample(spectra, DensityScaling::MeanPositive);
        const Histogram h = make_histogram(ds.values, 60, std::make_pair(-3.0, 3.0));
        double sup = 0.0;
        for (int i = 0; i < h.bins(); ++i)
            sup = std::max(sup, std::fabs(h.density[i] - d.pdf(h.bin_center(i))));
        INFO(std::string(fam == TwoByTwo::R1 ? "r1" : "r2"), " sup=", sup);
        CHECK(sup < 0.05);
        if (fam == TwoByTwo::R2)
            CHECK(ds.scale == doctest::Approx((4.0 + kPi) / (4.0 * std::sqrt(kPi)))
                                  .epsilon(0.01));
    }
}

TEST_CASE("histogram of exact draws reproduces the reference law") {
    // inverse CDF of the unit-mean first-order repulsion law
    RandomStream rng(271828);
    std::vector<double> draws(1000000);
    for (double& s : draws)
        s = std::sqrt(-4.0 * std::log(1.0 - rng.next_unit()) / kPi);
    const Histogram h = make_histogram(draws, 50, std::make_pair(0.0, 4.0));
    double sup = 0.0;
    for (int i = 0; i < h.bins(); ++i)
        sup = std::max(sup, std::fabs(h.density[i] - p_wigner(h.bin_center(i))));
    CHECK(sup < 0.02);
}

TEST_SUITE_END();
