#pragma once

#include <cstdint>
#include <string>

#include "rmt/matrix.hpp"
#include "rmt/pdf.hpp"
#include "rmt/rng.hpp"

namespace rmt {

enum class Family {
    R,           // full iid square matrix
    Rsym,        // R + R^t
    RsymDirect,  // iid upper triangle mirrored (diagonal iid)
    R1_2x2,      // ((a,b),(b,c))
    R2_2x2,      // ((a+b,c),(c,a-b))
    C,           // circulant, row i is row 1 shifted right by i-1
    Csym,        // symmetric cyclic, entry (i,j) = x[(i+j-2) mod n]
    T,           // tridiagonal, independent upper/lower bands
    Tsym,        // symmetric tridiagonal
    Tprime,      // tridiagonal with matched band signs (y_k z_k > 0)
    Toeplitz,    // symmetric Toeplitz, entry depends on |i-j|
    Q,           // R R^t
    D,           // C C^t
    S,           // T T^t
};

struct EnsembleSpec {
    Family family = Family::Rsym;
    int n = 100;          // matrix order
    int replicas = 1000;  // ensemble size N
    PdfSpec pdf{};
    std::uint64_t seed = 0;
};

// Number of iid element draws a single replica consumes.
std::uint64_t element_draw_count(Family f, int n);

// Draws elements from rng and assembles one matrix.  draw_count, when
// non-null, receives the number of pdf samples consumed.
RealMatrix assemble(Family f, int n, const Pdf& pdf, RandomStream& rng,
                    std::uint64_t* draw_count = nullptr);

// Replica `index` of the ensemble; pure in (spec, index).
RealMatrix build(const EnsembleSpec& spec, std::uint64_t index);

// Banded equivalent for the tridiagonal families (T, Tsym, Tprime); the
// same draws as build(), so dense() reproduces it bit for bit.
TridiagonalReal build_tridiagonal(const EnsembleSpec& spec, std::uint64_t index);

bool symmetrize_check(const RealMatrix& m);

// eta C eta^{-1} == C^t with eta the cyclic-order-reversing permutation.
bool pseudo_symmetry_check(const RealMatrix& c);

// Every off-diagonal pair satisfies y_k z_k > 0.
bool tprime_reality_precheck(const RealMatrix& t);

bool family_symmetric(Family f);
bool family_tridiagonal(Family f);
const char* family_token(Family f);
Family family_from_token(const std::string& token);

}  // namespace rmt
