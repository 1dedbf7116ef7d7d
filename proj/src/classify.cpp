#include "missgen/classify.hpp"

#include <algorithm>
#include <numeric>

namespace missgen {

ElementClassification::ElementClassification(PrimeContext ctx, std::vector<ElementClass> tags,
                                             std::vector<u64> residues, std::vector<u64> generators,
                                             std::vector<u64> others)
    : ctx_(std::move(ctx)),
      p_(static_cast<u64>(ctx_.p)),
      tags_(std::move(tags)),
      residues_(std::move(residues)),
      generators_(std::move(generators)),
      others_(std::move(others)) {}

ElementClassification classify_elements(const PrimeContext& ctx) {
    if (ctx.p > kMaxEnumerableP) {
        throw std::invalid_argument("classify_elements: p too large to enumerate (" + to_string(ctx.p) + ")");
    }
    const u64 p = static_cast<u64>(ctx.p);
    std::vector<ElementClass> tags(p, ElementClass::NonGenNonResidue);
    std::vector<u64> residues, generators, others;
    residues.reserve((p - 1) / 2);
    const u64 half = (p - 1) / 2;
    for (u64 x = 1; x < p; ++x) {
        if (pow_mod(x, half, p) == 1) {
            tags[x] = ElementClass::Residue;
            residues.push_back(x);
            continue;
        }
        bool gen = true;
        for (const auto& pp : ctx.pm1.factors) {
            if (pow_mod(x, (p - 1) / static_cast<u64>(pp.prime), p) == 1) {
                gen = false;
                break;
            }
        }
        if (gen) {
            tags[x] = ElementClass::Generator;
            generators.push_back(x);
        } else {
            others.push_back(x);
        }
    }
    return ElementClassification(ctx, std::move(tags), std::move(residues),
                                 std::move(generators), std::move(others));
}

namespace {

u64 require_generator(u64 g, const ElementClassification& cls) {
    if (g == 0 || g >= cls.p() || !cls.is_generator(g)) {
        throw std::invalid_argument("expected a generator mod " + std::to_string(cls.p()) +
                                    ", got " + std::to_string(g));
    }
    return static_cast<u64>(inverse_mod(g, cls.p()));
}

u64 mul_p(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<u128>(a) * b) % p);
}

} // namespace

std::vector<u64> set_i(u64 g, const ElementClassification& cls) {
    const u64 p = cls.p();
    const u64 gi = require_generator(g, cls);
    std::vector<u64> out;
    for (u64 r : cls.residues()) {
        if (cls.is_generator(mul_p(g, r, p)) && cls.is_generator(mul_p(gi, r, p))) {
            out.push_back(r);
        }
    }
    return out;
}

std::vector<u64> set_ni(u64 g, const ElementClassification& cls) {
    const u64 p = cls.p();
    const u64 gi = require_generator(g, cls);
    std::vector<u64> out;
    for (u64 r : cls.residues()) {
        if (cls.tag(mul_p(g, r, p)) == ElementClass::NonGenNonResidue &&
            cls.tag(mul_p(gi, r, p)) == ElementClass::NonGenNonResidue) {
            out.push_back(r);
        }
    }
    return out;
}

std::vector<u64> missing_set(u64 g, const ElementClassification& cls) {
    const u64 p = cls.p();
    const u64 gi = require_generator(g, cls);
    std::vector<char> covered(p, 0);
    for (u64 r : cls.residues()) {
        const u64 a = mul_p(g, r, p);
        const u64 b = mul_p(gi, r, p);
        if (cls.is_generator(a) && cls.is_generator(b)) {
            covered[a] = 1;
            covered[b] = 1;
        }
    }
    std::vector<u64> out;
    for (u64 h : cls.generators()) {
        if (!covered[h]) out.push_back(h);
    }
    return out;
}

std::vector<u64> missing_set_via_exponents(u64 g, const ElementClassification& cls,
                                           const std::vector<u64>& a_exponents) {
    require_generator(g, cls);
    std::vector<u64> out;
    out.reserve(a_exponents.size());
    for (u64 x : a_exponents) {
        out.push_back(static_cast<u64>(pow_mod(g, x, cls.p())));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<u64> missing_set_via_exponents(u64 g, const ElementClassification& cls) {
    return missing_set_via_exponents(g, cls, exponent_set_a(cls.p() - 1));
}

std::vector<u64> ni_set_via_exponents(u64 g, const ElementClassification& cls,
                                      const std::vector<u64>& b_exponents) {
    require_generator(g, cls);
    std::vector<u64> out;
    out.reserve(b_exponents.size());
    for (u64 x : b_exponents) {
        out.push_back(static_cast<u64>(pow_mod(g, x, cls.p())));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<u64> exponent_set_a(u64 n) {
    if (n < 2) throw std::invalid_argument("exponent_set_a: n must be >= 2");
    std::vector<u64> out;
    for (u64 x = 1; x < n; ++x) {
        if (std::gcd(x, n) != 1) continue;
        const u64 down = x >= 2 ? x - 2 : 2 - x; // gcd(0, n) = n covers x = 2
        if (std::gcd(down, n) > 1 && std::gcd(x + 2, n) > 1) out.push_back(x);
    }
    return out;
}

std::vector<u64> exponent_set_b(u64 n) {
    if (n < 2) throw std::invalid_argument("exponent_set_b: n must be >= 2");
    std::vector<u64> out;
    for (u64 x = 2; x < n; x += 2) {
        if (std::gcd(x - 1, n) > 1 && std::gcd(x + 1, n) > 1) out.push_back(x);
    }
    return out;
}

namespace {

struct OddPrimes {
    std::vector<u128> qs;
    u128 radical = 1; // product of the odd primes
};

OddPrimes odd_primes_of(const Factorization& f, const char* who) {
    if (!f.even()) throw std::invalid_argument(std::string(who) + ": value must be even");
    OddPrimes out;
    for (const auto& pp : f.factors) {
        if (pp.prime == 2) continue;
        out.qs.push_back(pp.prime);
        out.radical *= pp.prime;
    }
    return out;
}

u128 bracket_product(const std::vector<u128>& qs, u128 offset) {
    // prod (q - offset); any q <= offset zeroes the product
    u128 prod = 1;
    for (u128 q : qs) {
        if (q <= offset) return 0;
        prod *= q - offset;
    }
    return prod;
}

} // namespace

u128 missing_count(const Factorization& pm1) {
    const OddPrimes op = odd_primes_of(pm1, "missing_count");
    const i128 bracket = static_cast<i128>(bracket_product(op.qs, 1)) -
                         2 * static_cast<i128>(bracket_product(op.qs, 2)) +
                         static_cast<i128>(bracket_product(op.qs, 3));
    if (bracket < 0) throw StructuralViolation("missing_count: negative bracket");
    return (pm1.value / (2 * op.radical)) * static_cast<u128>(bracket);
}

u128 ni_count(const Factorization& pm1) {
    const OddPrimes op = odd_primes_of(pm1, "ni_count");
    const i128 bracket = static_cast<i128>(bracket_product(op.qs, 0)) -
                         2 * static_cast<i128>(bracket_product(op.qs, 1)) +
                         static_cast<i128>(bracket_product(op.qs, 2));
    if (bracket < 0) throw StructuralViolation("ni_count: negative bracket");
    return (pm1.value / (2 * op.radical)) * static_cast<u128>(bracket);
}

u128 divisor_sum(const Factorization& z, unsigned j, DivisorVariant variant) {
    if (!z.even() || !z.squarefree()) {
        throw std::invalid_argument("divisor_sum: z must be squarefree and even");
    }
    const OddPrimes op = odd_primes_of(z, "divisor_sum");
    const unsigned k = static_cast<unsigned>(op.qs.size());
    if (j > k) throw std::invalid_argument("divisor_sum: j exceeds the odd prime count");
    if (j == 0) return 1;
    // Elementary symmetric sum over j-subsets of the odd primes.
    u128 total = 0;
    std::vector<unsigned> idx(j);
    std::iota(idx.begin(), idx.end(), 0u);
    while (true) {
        u128 y = 1;
        for (unsigned t : idx) y *= op.qs[t];
        total += y;
        unsigned pos = j;
        while (pos > 0) {
            --pos;
            if (idx[pos] != k - j + pos) break;
        }
        if (idx[pos] == k - j + pos) break;
        ++idx[pos];
        for (unsigned t = pos + 1; t < j; ++t) idx[t] = idx[t - 1] + 1;
    }
    if (variant == DivisorVariant::WithEvenDoubles) total *= 3; // y and 2y both counted
    return total;
}

u128 a_size_inclusion_exclusion(const Factorization& z, DivisorVariant variant) {
    if (!z.even() || !z.squarefree()) {
        throw std::invalid_argument("a_size_inclusion_exclusion: z must be squarefree and even");
    }
    const unsigned k = static_cast<unsigned>(z.factors.size()) - 1; // odd primes only
    if (k < 2) return 0; // empty alternating sum
    i128 total = 0;
    for (unsigned j = 0; j + 2 <= k; ++j) {
        const unsigned d = k - j;
        i128 a_j = 1;
        for (unsigned t = 0; t < d; ++t) a_j *= 3;
        i128 two = 1;
        for (unsigned t = 0; t < d + 1; ++t) two *= 2;
        a_j = a_j - two + 1;
        const i128 term = a_j * static_cast<i128>(divisor_sum(z, j, variant));
        total += ((k - 2 - j) % 2 == 0) ? term : -term;
    }
    if (total < 0) throw StructuralViolation("a_size_inclusion_exclusion: negative total");
    return static_cast<u128>(total);
}

u128 a_size_lifted(const Factorization& pm1) {
    const OddPrimes op = odd_primes_of(pm1, "a_size_lifted");
    Factorization z;
    z.value = 2 * op.radical;
    z.factors.push_back({2, 1});
    for (u128 q : op.qs) z.factors.push_back({q, 1});
    return (pm1.value / z.value) * a_size_inclusion_exclusion(z);
}

CountClass count_class(const Factorization& pm1) {
    const u128 m = missing_count(pm1);
    const u128 n = ni_count(pm1);
    CountClass cls;
    if (pm1.distinct_primes() <= 2) {
        cls = CountClass::BothZero;
        if (m != 0 || n != 0) throw StructuralViolation("count_class: expected M = N = 0");
    } else if (pm1.distinct_primes() == 3) {
        cls = CountClass::EqualPositive;
        if (m == 0 || m != n) throw StructuralViolation("count_class: expected M = N > 0");
    } else {
        cls = CountClass::NGreater;
        if (m == 0 || n <= m) throw StructuralViolation("count_class: expected N > M > 0");
    }
    return cls;
}

} // namespace missgen
