#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/matrix.hpp"

namespace rmt {

// Eigenvalues of one matrix.  Symmetric solvers produce exactly-zero
// imaginary parts; the general solver snaps |Im| below kImagSnapRel * ||M||_F
// to zero so real eigenvalues classify exactly.
struct Spectrum {
    Family family = Family::R;
    int order = 0;
    std::vector<std::complex<double>> values;

    std::vector<double> real_values() const {
        std::vector<double> out;
        out.reserve(values.size());
        for (const auto& v : values)
            if (v.imag() == 0.0) out.push_back(v.real());
        return out;
    }

    bool all_real() const {
        for (const auto& v : values)
            if (v.imag() != 0.0) return false;
        return true;
    }
};

constexpr double kImagSnapRel = 1e-10;

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symmetric path: Householder tridiagonalization + implicit-shift QL.
// Values sorted ascending.  Throws on non-symmetric input.
Spectrum eig_symmetric(const RealMatrix& m, Family family = Family::Rsym);

// QL on a symmetric tridiagonal (diag, off); sorted ascending.
std::vector<double> eig_symmetric_tridiagonal(std::vector<double> diag,
                                              std::vector<double> off);

// Tridiagonal with matched band signs (u_k * l_k > 0): similarity with a
// diagonal scaling makes it symmetric, so the spectrum is real.
std::vector<double> eig_tridiagonal_matched(const TridiagonalReal& t);

// General path: balancing, Hessenberg reduction, Francis double-shift QR;
// eigenvalues only, order unspecified.  Throws ConvergenceError after the
// sweep budget (30 n) is exhausted.
Spectrum eig_general(const RealMatrix& m, Family family = Family::R);

// Independent circulant oracle: lambda_m = sum_k x_k w^{m(k-1)}, w = e^{2 pi i/n}.
Spectrum circulant_eigs_dft(const std::vector<double>& x);

enum class TwoByTwo { R1, R2 };

// Closed-form 2x2 eigenvalues for ((a,b),(b,c)) and ((a+b,c),(c,a-b)).
Spectrum eig_2x2(TwoByTwo family, double a, double b, double c);

// Spacing |E1 - E2| of the closed-form pair.
double spacing_2x2(TwoByTwo family, double a, double b, double c);

}  // namespace rmt
