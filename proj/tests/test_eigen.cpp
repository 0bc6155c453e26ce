#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "rmt/eigen.hpp"
#include "rmt/ensembles.hpp"

using namespace rmt;

namespace {

std::vector<std::complex<double>> sorted_values(const Spectrum& s) {
    auto v = s.values;
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

// Greedy nearest matching; conjugate pairs with equal real parts make a
// strict lexicographic sort order-unstable between two solvers.
double max_pair_distance(const Spectrum& a, const Spectrum& b) {
    const auto va = sorted_values(a);
    auto vb = sorted_values(b);
    REQUIRE(va.size() == vb.size());
    double worst = 0.0;
    std::vector<bool> used(vb.size(), false);
    for (const auto& u : va) {
        double best = 1e300;
        std::size_t arg = 0;
        for (std::size_t j = 0; j < vb.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(u - vb[j]);
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        used[arg] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

double spectrum_trace(const Spectrum& s) {
    double t = 0.0;
    for (const auto& v : s.values) t += v.real();
    return t;
}

EnsembleSpec spec_of(Family f, int n, std::uint64_t seed = 17) {
    EnsembleSpec s;
    s.family = f;
    s.n = n;
    s.replicas = 1;
    s.pdf = {PdfFamily::Gaussian, 1.0};
    s.seed = seed;
    return s;
}

// Inverse iteration residual check: with an accurate eigenvalue, a few
// shifted solves give a vector v with small ||Mv - lambda v||.
double residual_via_inverse_iteration(const RealMatrix& m, double lambda) {
    const int n = m.order();
    RealMatrix a = m;
    // the residual floor of shifted inverse iteration is a few times the
    // shift offset, so keep the offset well under the tolerance
    const double shift = lambda + 1e-13 * m.frobenius_norm() + 1e-30;
    for (int i = 0; i < n; ++i) a(i, i) -= shift;

    // LU with partial pivoting
    std::vector<int> piv(n);
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a(r, c)) > std::fabs(a(p, c))) p = r;
        piv[c] = p;
        if (p != c)
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
        const double d = (a(c, c) == 0.0) ? 1e-300 : a(c, c);
        for (int r = c + 1; r < n; ++r) {
            a(r, c) /= d;
            for (int j = c + 1; j < n; ++j) a(r, j) -= a(r, c) * a(c, j);
        }
    }
    std::vector<double> v(n, 1.0);
    auto residual_of = [&](const std::vector<double>& w) {
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += m(i, j) * w[j];
            acc -= lambda * w[i];
            res += acc * acc;
        }
        return std::sqrt(res);
    };
    double best = 1e300;
    for (int iter = 0; iter < 5; ++iter) {
        for (int c = 0; c < n; ++c) {
            if (piv[c] != c) std::swap(v[piv[c]], v[c]);
            for (int r = c + 1; r < n; ++r) v[r] -= a(r, c) * v[c];
        }
        for (int c = n - 1; c >= 0; --c) {
            for (int j = c + 1; j < n; ++j) v[c] -= a(c, j) * v[j];
            v[c] /= (a(c, c) == 0.0) ? 1e-300 : a(c, c);
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        best = std::min(best, residual_of(v));
    }
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("eigen");

TEST_CASE("diagonal and parity matrices") {
    RealMatrix d(3);
    d(0, 0) = 1;
    d(1, 1) = 2;
    d(2, 2) = 3;
    const Spectrum s = eig_symmetric(d);
    CHECK(s.values[0].real() == doctest::Approx(1.0));
    CHECK(s.values[1].real() == doctest::Approx(2.0));
    CHECK(s.values[2].real() == doctest::Approx(3.0));

    RealMatrix p(2);
    p(0, 1) = p(1, 0) = 1.0;
    const Spectrum sp = eig_symmetric(p);
    CHECK(sp.values[0].real() == doctest::Approx(-1.0));
    CHECK(sp.values[1].real() == doctest::Approx(1.0));
}

TEST_CASE("symmetric solver rejects non-symmetric input") {
    RealMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 2.0;
    CHECK_THROWS_AS(eig_symmetric(m), std::invalid_argument);
}

TEST_CASE("3x3 symmetric cyclic closed form") {
    // entries (1,2,3): eigenvalues x1+x2+x3 and +-sqrt(sum of squared diffs / 2)
    RealMatrix m(3);
    const double x[3] = {1, 2, 3};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = x[(i + j) % 3];
    const Spectrum s = eig_symmetric(m, Family::Csym);
    const double root = std::sqrt(3.0);
    CHECK(s.values[0].real() == doctest::Approx(-root).epsilon(1e-12));
    CHECK(s.values[1].real() == doctest::Approx(root).epsilon(1e-12));
    CHECK(s.values[2].real() == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("circulant 3x3 via the general solver matches the DFT oracle") {
    const std::vector<double> x{1, 2, 3};
    RealMatrix m(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = x[((j - i) % 3 + 3) % 3];
    const Spectrum s = eig_general(m, Family::C);
    const Spectrum dft = circulant_eigs_dft(x);
    CHECK(max_pair_distance(s, dft) < 1e-12 * m.frobenius_norm());
    // one real eigenvalue 6, complex pair -1.5 +- 0.8660i
    const auto v = sorted_values(s);
    CHECK(v[0].real() == doctest::Approx(-1.5));
    CHECK(v[0].imag() == doctest::Approx(-std::sqrt(3.0) / 2.0));
    CHECK(v[2].real() == doctest::Approx(6.0));
    CHECK(v[2].imag() == 0.0);
}

TEST_CASE("identity and constant circulants") {
    // x = (1, 0, ..., 0) is the identity
    std::vector<double> e1(5, 0.0);
    e1[0] = 1.0;
    for (const auto& v : circulant_eigs_dft(e1).values) {
        CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::fabs(v.imag()) < 1e-12);
    }
    RealMatrix ident(5);
    for (int i = 0; i < 5; ++i) ident(i, i) = 1.0;
    for (const auto& v : eig_general(ident).values) CHECK(v == std::complex<double>(1.0, 0.0));

    // constant vector: one eigenvalue n*c, the rest 0
    const std::vector<double> c(6, 2.5);
    auto vals = sorted_values(circulant_eigs_dft(c));
    CHECK(vals.back().real() == doctest::Approx(15.0).epsilon(1e-12));
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) CHECK(std::abs(vals[i]) < 1e-10);
}

TEST_CASE("circulant n=4: pooled and alternating sums are the real eigenvalues") {
    const std::vector<double> x{1, 2, 3, 4};
    const Spectrum dft = circulant_eigs_dft(x);
    std::vector<double> reals;
    for (const auto& v : dft.values)
        if (std::fabs(v.imag()) < 1e-12) reals.push_back(v.real());
    std::sort(reals.begin(), reals.end());
    REQUIRE(reals.size() == 2);
    CHECK(reals[1] == doctest::Approx(10.0));       // x1+x2+x3+x4
    CHECK(reals[0] == doctest::Approx(-2.0));       // alternating sum
}

TEST_CASE("general vs DFT oracle across orders") {
    for (int n : {3, 4, 8, 64}) {
        EnsembleSpec s = spec_of(Family::C, n, 40 + n);
        const RealMatrix m = build(s, 0);
        std::vector<double> x(n);
        for (int j = 0; j < n; ++j) x[j] = m(0, j);
        const Spectrum a = eig_general(m, Family::C);
        const Spectrum b = circulant_eigs_dft(x);
        INFO("n = ", n);
        CHECK(max_pair_distance(a, b) <= 1e-8 * m.frobenius_norm());
    }
}

TEST_CASE("general solver agrees with the symmetric solver on symmetric input") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const RealMatrix m = build(spec_of(Family::Rsym, 8, 70 + i), 0);
        const Spectrum gs = eig_general(m, Family::Rsym);
        const Spectrum ss = eig_symmetric(m, Family::Rsym);
        CHECK(max_pair_distance(gs, ss) <= 1e-8 * m.frobenius_norm());
    }
}

TEST_CASE("trace identity on every computed spectrum") {
    for (Family f : {Family::R, Family::Rsym, Family::C, Family::T, Family::Toeplitz,
                     Family::Q, Family::D}) {
        const RealMatrix m = build(spec_of(f, 12, 90), 0);
        const Spectrum s = family_symmetric(f) ? eig_symmetric(m, f) : eig_general(m, f);
        INFO(family_token(f));
        CHECK(spectrum_trace(s) ==
              doctest::Approx(m.trace()).epsilon(1e-8));
        CHECK(static_cast<int>(s.values.size()) == m.order());
    }
}

TEST_CASE("complex eigenvalues appear in conjugate pairs") {
    const RealMatrix m = build(spec_of(Family::R, 15, 3), 0);
    const Spectrum s = eig_general(m);
    std::vector<std::complex<double>> ups, downs;
    for (const auto& v : s.values) {
        if (v.imag() > 0.0) ups.push_back(v);
        if (v.imag() < 0.0) downs.push_back(std::conj(v));
    }
    REQUIRE(ups.size() == downs.size());
    std::sort(ups.begin(), ups.end(), [](auto a, auto b) { return a.real() < b.real(); });
    std::sort(downs.begin(), downs.end(), [](auto a, auto b) { return a.real() < b.real(); });
    for (std::size_t i = 0; i < ups.size(); ++i)
        CHECK(std::abs(ups[i] - downs[i]) <= 1e-8 * m.frobenius_norm());
}

TEST_CASE("tridiagonal families have real spectra") {
    for (Family f : {Family::Tsym, Family::Tprime}) {
        for (std::uint64_t i = 0; i < 100; ++i) {
            const RealMatrix m = build(spec_of(f, 20, 600 + i), 0);
            const Spectrum s = eig_general(m, f);
            const double tol = 1e-8 * m.frobenius_norm();
            INFO(family_token(f), " replica ", i);
            for (const auto& v : s.values) CHECK(std::fabs(v.imag()) <= tol);
        }
    }
}

TEST_CASE("banded paths match the dense symmetric solver") {
    EnsembleSpec ts = spec_of(Family::Tsym, 60, 8);
    const TridiagonalReal bands = build_tridiagonal(ts, 0);
    const auto banded = eig_symmetric_tridiagonal(bands.diag, bands.upper);
    const Spectrum dense = eig_symmetric(bands.dense(), Family::Tsym);
    for (std::size_t i = 0; i < banded.size(); ++i)
        CHECK(banded[i] ==
              doctest::Approx(dense.values[i].real()).epsilon(1e-10));

    EnsembleSpec tp = spec_of(Family::Tprime, 60, 9);
    const TridiagonalReal pbands = build_tridiagonal(tp, 0);
    const auto matched = eig_tridiagonal_matched(pbands);
    const Spectrum general = eig_general(pbands.dense(), Family::Tprime);
    std::vector<double> greals;
    for (const auto& v : general.values) greals.push_back(v.real());
    std::sort(greals.begin(), greals.end());
    const double tol = 1e-8 * pbands.dense().frobenius_norm();
    for (std::size_t i = 0; i < matched.size(); ++i)
        CHECK(std::fabs(matched[i] - greals[i]) <= tol);
}

TEST_CASE("symmetric solver is backward stable (inverse-iteration residuals)") {
    for (std::uint64_t k = 0; k < 5; ++k) {
        const RealMatrix m = build(spec_of(Family::Rsym, 8, 500 + k), 0);
        const Spectrum s = eig_symmetric(m);
        for (const auto& v : s.values) {
            CHECK(residual_via_inverse_iteration(m, v.real()) <=
                  1e-10 * m.frobenius_norm());
        }
    }
}

TEST_CASE("2x2 closed forms") {
    // degenerate pair: a == c, b == 0
    const Spectrum d = eig_2x2(TwoByTwo::R1, 1.5, 0.0, 1.5);
    CHECK(d.values[0].real() == doctest::Approx(1.5));
    CHECK(d.values[1].real() == doctest::Approx(1.5));
    CHECK(spacing_2x2(TwoByTwo::R1, 1.5, 0.0, 1.5) == 0.0);

    // R2 with a=0, b=3, c=4 -> -5, 5
    const Spectrum s2 = eig_2x2(TwoByTwo::R2, 0.0, 3.0, 4.0);
    CHECK(s2.values[0].real() == doctest::Approx(-5.0));
    CHECK(s2.values[1].real() == doctest::Approx(5.0));

    // R1 with a=1, b=1, c=-1 -> +-sqrt(2)
    const Spectrum s1 = eig_2x2(TwoByTwo::R1, 1.0, 1.0, -1.0);
    CHECK(s1.values[0].real() == doctest::Approx(-std::sqrt(2.0)));
    CHECK(s1.values[1].real() == doctest::Approx(std::sqrt(2.0)));

    // spacing identities
    CHECK(spacing_2x2(TwoByTwo::R1, 0.3, 0.4, -0.5) ==
          doctest::Approx(std::sqrt(4 * 0.16 + 0.64)));
    CHECK(spacing_2x2(TwoByTwo::R2, 9.0, 0.3, 0.4) == doctest::Approx(1.0));
}

TEST_CASE("real-eigenvalue count of the circulant family") {
    for (int n : {5, 6, 9, 12}) {
        const RealMatrix m = build(spec_of(Family::C, n, 1000 + n), 0);
        const Spectrum s = eig_general(m, Family::C);
        int n_real = 0;
        for (const auto& v : s.values)
            if (v.imag() == 0.0) ++n_real;
        INFO("n = ", n);
        CHECK(n_real == (n % 2 == 0 ? 2 : 1));
    }
}

TEST_SUITE_END();
