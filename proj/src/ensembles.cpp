#include "rmt/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace rmt {

namespace {

struct ElementSource {
    const Pdf& pdf;
    RandomStream& rng;
    std::uint64_t count = 0;

    double next() {
        ++count;
        return pdf.sample(rng);
    }

    double next_nonzero() {
        for (;;) {
            const double x = next();
            if (x != 0.0) return x;
        }
    }
};

RealMatrix assemble_r(int n, ElementSource& src) {
    RealMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = src.next();
    return m;
}

RealMatrix assemble_rsym(int n, ElementSource& src) {
    RealMatrix m = assemble_r(n, src);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double s = m(i, j) + m(j, i);
            m(i, j) = s;
            m(j, i) = s;
        }
    return m;
}

RealMatrix assemble_rsym_direct(int n, ElementSource& src) {
    RealMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double x = src.next();
            m(i, j) = x;
            m(j, i) = x;
        }
    return m;
}

RealMatrix assemble_r1_2x2(ElementSource& src) {
    RealMatrix m(2);
    const double a = src.next();
    const double b = src.next();
    const double c = src.next();
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = b;
    m(1, 1) = c;
    return m;
}

RealMatrix assemble_r2_2x2(ElementSource& src) {
    RealMatrix m(2);
    const double a = src.next();
    const double b = src.next();
    const double c = src.next();
    m(0, 0) = a + b;
    m(0, 1) = c;
    m(1, 0) = c;
    m(1, 1) = a - b;
    return m;
}

RealMatrix assemble_circulant(int n, ElementSource& src) {
    std::vector<double> x(n);
    for (double& v : x) v = src.next();
    RealMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = x[((j - i) % n + n) % n];
    return m;
}

RealMatrix assemble_csym(int n, ElementSource& src) {
    std::vector<double> x(n);
    for (double& v : x) v = src.next();
    RealMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = x[(i + j) % n];
    return m;
}

RealMatrix assemble_toeplitz(int n, ElementSource& src) {
    std::vector<double> x(n);
    for (double& v : x) v = src.next();
    RealMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = x[std::abs(i - j)];
    return m;
}

TridiagonalReal bands_t(int n, ElementSource& src) {
    TridiagonalReal t;
    t.diag.resize(n);
    t.upper.resize(n - 1);
    t.lower.resize(n - 1);
    for (double& v : t.diag) v = src.next();
    for (double& v : t.upper) v = src.next();
    for (double& v : t.lower) v = src.next();
    return t;
}

TridiagonalReal bands_tsym(int n, ElementSource& src) {
    TridiagonalReal t;
    t.diag.resize(n);
    t.upper.resize(n - 1);
    for (double& v : t.diag) v = src.next();
    for (double& v : t.upper) v = src.next();
    t.lower = t.upper;
    return t;
}

TridiagonalReal bands_tprime(int n, ElementSource& src) {
    TridiagonalReal t;
    t.diag.resize(n);
    t.upper.resize(n - 1);
    t.lower.resize(n - 1);
    for (double& v : t.diag) v = src.next();
    for (int k = 0; k + 1 < n; ++k) {
        const double y = src.next_nonzero();
        const double z = src.next_nonzero();
        t.upper[k] = y;
        t.lower[k] = std::copysign(z, y);  // forces y_k z_k > 0
    }
    return t;
}

TridiagonalReal bands_for(Family f, int n, ElementSource& src) {
    switch (f) {
        case Family::T: return bands_t(n, src);
        case Family::Tsym: return bands_tsym(n, src);
        case Family::Tprime: return bands_tprime(n, src);
        default: throw std::invalid_argument("family is not tridiagonal");
    }
}

void validate(Family f, int n) {
    if (n < 1) throw std::invalid_argument("matrix order must be >= 1");
    if ((f == Family::R1_2x2 || f == Family::R2_2x2) && n != 2)
        throw std::invalid_argument("2x2 families require n == 2");
    if ((f == Family::T || f == Family::Tsym || f == Family::Tprime) && n < 2)
        throw std::invalid_argument("tridiagonal families require n >= 2");
}

}  // namespace

std::uint64_t element_draw_count(Family f, int n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    switch (f) {
        case Family::R:
        case Family::Rsym:
        case Family::Q: return un * un;
        case Family::RsymDirect: return un * (un + 1) / 2;
        case Family::R1_2x2:
        case Family::R2_2x2: return 3;
        case Family::C:
        case Family::Csym:
        case Family::Toeplitz:
        case Family::D: return un;
        case Family::T:
        case Family::Tprime:
        case Family::S: return 3 * un - 2;
        case Family::Tsym: return 2 * un - 1;
    }
    throw std::invalid_argument("unknown family");
}

RealMatrix assemble(Family f, int n, const Pdf& pdf, RandomStream& rng,
                    std::uint64_t* draw_count) {
    validate(f, n);
    ElementSource src{pdf, rng};
    RealMatrix m;
    switch (f) {
        case Family::R: m = assemble_r(n, src); break;
        case Family::Rsym: m = assemble_rsym(n, src); break;
        case Family::RsymDirect: m = assemble_rsym_direct(n, src); break;
        case Family::R1_2x2: m = assemble_r1_2x2(src); break;
        case Family::R2_2x2: m = assemble_r2_2x2(src); break;
        case Family::C: m = assemble_circulant(n, src); break;
        case Family::Csym: m = assemble_csym(n, src); break;
        case Family::Toeplitz: m = assemble_toeplitz(n, src); break;
        case Family::T:
        case Family::Tsym:
        case Family::Tprime: m = bands_for(f, n, src).dense(); break;
        case Family::Q: m = assemble_r(n, src).times_transpose(); break;
        case Family::D: m = assemble_circulant(n, src).times_transpose(); break;
        case Family::S: m = bands_t(n, src).dense().times_transpose(); break;
    }
    if (draw_count) *draw_count = src.count;
    return m;
}

RealMatrix build(const EnsembleSpec& spec, std::uint64_t index) {
    RandomStream rng = replica_stream(spec.seed, index);
    const Pdf pdf(spec.pdf);
    return assemble(spec.family, spec.n, pdf, rng, nullptr);
}

TridiagonalReal build_tridiagonal(const EnsembleSpec& spec, std::uint64_t index) {
    validate(spec.family, spec.n);
    RandomStream rng = replica_stream(spec.seed, index);
    const Pdf pdf(spec.pdf);
    ElementSource src{pdf, rng};
    return bands_for(spec.family, spec.n, src);
}

bool symmetrize_check(const RealMatrix& m) { return m.is_symmetric(); }

bool pseudo_symmetry_check(const RealMatrix& c) {
    // eta is the flip permutation (i -> n-1-i); eta C eta has entries
    // C(n-1-i, n-1-j), which must equal C(j, i) exactly.
    const int n = c.order();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (c(n - 1 - i, n - 1 - j) != c(j, i)) return false;
    return true;
}

bool tprime_reality_precheck(const RealMatrix& t) {
    const int n = t.order();
    for (int k = 0; k + 1 < n; ++k)
        if (!(t(k, k + 1) * t(k + 1, k) > 0.0)) return false;
    return true;
}

bool family_symmetric(Family f) {
    switch (f) {
        case Family::Rsym:
        case Family::RsymDirect:
        case Family::R1_2x2:
        case Family::R2_2x2:
        case Family::Csym:
        case Family::Tsym:
        case Family::Toeplitz:
        case Family::Q:
        case Family::D:
        case Family::S: return true;
        default: return false;
    }
}

bool family_tridiagonal(Family f) {
    return f == Family::T || f == Family::Tsym || f == Family::Tprime;
}

const char* family_token(Family f) {
    switch (f) {
        case Family::R: return "r";
        case Family::Rsym: return "rsym";
        case Family::RsymDirect: return "rsym_direct";
        case Family::R1_2x2: return "r1";
        case Family::R2_2x2: return "r2";
        case Family::C: return "c";
        case Family::Csym: return "csym";
        case Family::T: return "t";
        case Family::Tsym: return "tsym";
        case Family::Tprime: return "tprime";
        case Family::Toeplitz: return "toeplitz";
        case Family::Q: return "q";
        case Family::D: return "d";
        case Family::S: return "s";
    }
    return "?";
}

Family family_from_token(const std::string& token) {
    for (int i = 0; i <= static_cast<int>(Family::S); ++i) {
        const auto f = static_cast<Family>(i);
        if (token == family_token(f)) return f;
    }
    throw std::invalid_argument("unknown family token: " + token);
}

}  // namespace rmt
