#include "hosc/symmetry.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hosc {

namespace {

void require_valid(const Irrep& irrep, const CyclicProductGroup& group) {
    if (irrep.lambda1 < 0 || irrep.lambda1 >= group.k1 || irrep.lambda2 < 0
        || irrep.lambda2 >= group.k2) {
        throw std::domain_error("irrep label out of range for group");
    }
}

} // namespace

CyclicProductGroup::CyclicProductGroup(int k1_, int k2_) : k1(k1_), k2(k2_) {
    if (k1 < 1 || k2 < 1) throw std::domain_error("k1, k2 must be positive");
    if (std::gcd(k1, k2) != 1) {
        throw std::domain_error("k1, k2 must be coprime; reduce the ratio first");
    }
}

Fraction zeta(const Irrep& irrep, const CyclicProductGroup& group) {
    require_valid(irrep, group);
    return Fraction(irrep.lambda1, group.k1) + Fraction(irrep.lambda2, group.k2);
}

std::complex<double> character(const Irrep& irrep, const CyclicProductGroup& group,
                               long long power) {
    const Fraction turns = mod1(Fraction(power) * zeta(irrep, group));
    if (turns == Fraction(0)) return {1.0, 0.0};
    const double angle = turns_to_radians(turns);
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> projection_weight(const Irrep& irrep, const CyclicProductGroup& group,
                                       long long power) {
    return std::conj(character(irrep, group, power)) / static_cast<double>(group.order());
}

long long character_sum_selection(long long r, const CyclicProductGroup& group) {
    if (r < 1) throw std::domain_error("repetition index must be >= 1");
    // Each factor sum_{lambda} exp(-2 pi i r lambda / k) is a full geometric
    // sum of k-th roots of unity: k when k | r, else 0.
    const bool survives = (r % group.k1 == 0) && (r % group.k2 == 0);
    return survives ? group.order() : 0;
}

} // namespace hosc
