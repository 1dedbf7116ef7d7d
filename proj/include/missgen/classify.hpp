#pragma once

#include <cstdint>
#include <vector>

#include "missgen/modmath.hpp"

namespace missgen {

enum class ElementClass : std::uint8_t {
    Residue,           // quadratic residue
    Generator,         // primitive element
    NonGenNonResidue,  // non-residue that is not a generator
};

/// Per-element tags over Z_p*. Residue status by Euler's criterion,
/// generator status by multiplicative order p-1. Immutable once built.
class ElementClassification {
public:
    ElementClassification(PrimeContext ctx, std::vector<ElementClass> tags,
                          std::vector<u64> residues, std::vector<u64> generators,
                          std::vector<u64> others);

    u64 p() const { return p_; }
    const PrimeContext& ctx() const { return ctx_; }
    ElementClass tag(u64 x) const { return tags_[x]; }
    bool is_generator(u64 x) const { return tags_[x] == ElementClass::Generator; }
    bool is_residue(u64 x) const { return tags_[x] == ElementClass::Residue; }
    const std::vector<u64>& residues() const { return residues_; }
    const std::vector<u64>& generators() const { return generators_; }
    const std::vector<u64>& non_gen_non_residues() const { return others_; }

private:
    PrimeContext ctx_;
    u64 p_;
    std::vector<ElementClass> tags_; // index by element, slot 0 unused
    std::vector<u64> residues_, generators_, others_;
};

/// Largest p this module will enumerate element-by-element.
inline constexpr u128 kMaxEnumerableP = u128{1} << 26;

ElementClassification classify_elements(const PrimeContext& ctx);

/// Residues r with g*r and g^-1*r both generators. g must be a generator.
std::vector<u64> set_i(u64 g, const ElementClassification& cls);

/// Residues r with g*r and g^-1*r both non-generator non-residues.
std::vector<u64> set_ni(u64 g, const ElementClassification& cls);

/// The missing generators of g: G \ {g*r, g^-1*r : r in set_i(g)}.
/// Purely definitional; this is the anti-drift oracle path.
std::vector<u64> missing_set(u64 g, const ElementClassification& cls);

/// Fast path for the same set: {g^x mod p : x in A(p-1)}.
std::vector<u64> missing_set_via_exponents(u64 g, const ElementClassification& cls);
std::vector<u64> missing_set_via_exponents(u64 g, const ElementClassification& cls,
                                           const std::vector<u64>& a_exponents);

/// Exponent image {g^x : x in B(p-1)}; equals set_ni(g).
std::vector<u64> ni_set_via_exponents(u64 g, const ElementClassification& cls,
                                      const std::vector<u64>& b_exponents);

/// A(n) = { 0 < x < n : gcd(x,n)=1, gcd(x-2,n)>1, gcd(x+2,n)>1 },
/// with gcd taken on |x-2| so gcd(0,n)=n.
std::vector<u64> exponent_set_a(u64 n);

/// B(n) = { 0 < x < n : x even, gcd(x-1,n)>1, gcd(x+1,n)>1 }.
std::vector<u64> exponent_set_b(u64 n);

/// |M(g)| closed form over the odd primes q of pm1:
/// (pm1 / 2*prod q) * [prod(q-1) - 2*prod(q-2) + prod(q-3)].
u128 missing_count(const Factorization& pm1);

/// |NI(g)| closed form: (pm1 / 2*prod q) * [prod q - 2*prod(q-1) + prod(q-2)].
u128 ni_count(const Factorization& pm1);

/// Which divisors contribute to the divisor sums below. The sums feed an
/// inclusion-exclusion identity whose other two sides (closed form, direct
/// enumeration) are unambiguous; OddOnly is the variant that matches them
/// and is the frozen default. WithEvenDoubles also counts 2y per odd y.
enum class DivisorVariant { OddOnly, WithEvenDoubles };

/// Sum of divisors y of squarefree even z with exactly j distinct odd prime
/// factors; j = 0 contributes 1.
u128 divisor_sum(const Factorization& z, unsigned j,
                 DivisorVariant variant = DivisorVariant::OddOnly);

/// |A(z)| for squarefree even z via the alternating divisor-sum formula
/// sum_{j=0}^{k-2} (-1)^{k-2-j} * (3^{k-j} - 2^{k-j+1} + 1) * N(z, j).
u128 a_size_inclusion_exclusion(const Factorization& z,
                                DivisorVariant variant = DivisorVariant::OddOnly);

/// |A(n)| for even n, lifted from the radical: (n/z)*|A(z)| with z = 2*prod q.
u128 a_size_lifted(const Factorization& pm1);

enum class CountClass { BothZero, EqualPositive, NGreater };

/// Classification of (M_p, N_p) by the number of distinct prime factors of
/// p-1; cross-checked against the closed forms.
CountClass count_class(const Factorization& pm1);

} // namespace missgen
