#pragma once

#include "hosc/rational.hpp"

#include <complex>

namespace hosc {

/// Discrete product group C1 x C2 of phase-space rotations by 2pi/k_i,
/// order k1*k2, generated by the single element c_g = c_{g,1} x c_{g,2}.
struct CyclicProductGroup {
    int k1 = 1;
    int k2 = 1;

    CyclicProductGroup(int k1, int k2);
    int order() const { return k1 * k2; }
};

/// One-dimensional irreducible representation label (lambda1, lambda2).
struct Irrep {
    int lambda1 = 0;
    int lambda2 = 0;

    static constexpr int dimension = 1;
};

/// Character phase zeta = lambda1/k1 + lambda2/k2 (in turns), exact.
Fraction zeta(const Irrep& irrep, const CyclicProductGroup& group);

/// Character of the generator power c_g^s: exp(2 pi i s zeta), with the
/// phase reduced mod 1 in exact rationals before evaluation.
std::complex<double> character(const Irrep& irrep, const CyclicProductGroup& group,
                               long long power);

/// Scalar coefficient (1/|C|) * conj(character) multiplying U(c_g^s) in the
/// projection operator (d = 1 for all irreps of this group).
std::complex<double> projection_weight(const Irrep& irrep, const CyclicProductGroup& group,
                                       long long power);

/// Sum over all irreps of exp(-2 pi i r zeta): k1*k2 when k1*k2 divides r,
/// else exactly zero. This is the selection rule that collapses the
/// irrep-summed family series onto full-period repetitions.
long long character_sum_selection(long long r, const CyclicProductGroup& group);

} // namespace hosc
