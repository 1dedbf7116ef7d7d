#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "missgen/errors.hpp"

namespace missgen {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

std::string to_string(u128 v);
u128 parse_u128(std::string_view s);

/// a + b mod m, assuming a, b already reduced mod m.
u128 add_mod(u128 a, u128 b, u128 m);

/// a * b mod m. Widening multiply when m fits 64 bits, shift-add otherwise.
u128 mul_mod(u128 a, u128 b, u128 m);

/// a * b, or nullopt on 128-bit overflow.
std::optional<u128> checked_mul(u128 a, u128 b);

/// base^exp mod m by square-and-multiply; throws std::invalid_argument for m < 2.
u128 pow_mod(u128 base, u128 exp, u128 m);

u128 gcd_u128(u128 a, u128 b);

/// Floor square root.
u128 isqrt_u128(u128 n);

/// Miller-Rabin. Deterministic (13 fixed bases) below 3.3e24; above that the
/// fixed bases plus 65 witnesses from a per-n seeded generator, so results
/// are still reproducible.
bool is_prime(u128 n);

/// Primes <= n by sieve.
std::vector<u64> primes_up_to(u64 n);

struct PrimePower {
    u128 prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Complete factorization, primes strictly ascending, exponents >= 1.
/// value == product of prime^exponent; 1 has an empty factor list.
struct Factorization {
    u128 value = 1;
    std::vector<PrimePower> factors;

    bool even() const;
    bool squarefree() const;
    unsigned distinct_primes() const { return static_cast<unsigned>(factors.size()); }
    /// Product of the odd primes (exponents ignored).
    u128 odd_radical() const;
};

/// Trial division over a small-prime table, then Brent's rho with a
/// deterministic parameter sequence for the cofactors.
Factorization factorize(u128 n);

u128 euler_phi(const Factorization& f);

/// Extended-gcd inverse in [1, m); throws NotInvertibleError when gcd != 1.
u128 inverse_mod(u128 a, u128 m);

/// Least d >= 1 with a^d = 1 (mod m), given a factorized multiple of d
/// (e.g. the group order). Asserts a^multiple = 1 first.
u128 multiplicative_order(u128 a, u128 m, const Factorization& order_multiple);

/// A validated odd prime together with the factorization of p-1, plus the
/// decomposition p-1 = 2^i * q1^j1 * q2^j2 when p-1 has exactly three
/// distinct prime factors (q1 < q2 odd).
struct PrimeContext {
    u128 p = 0;
    Factorization pm1;
    bool is_p3 = false;
    unsigned i = 0, j1 = 0, j2 = 0;
    u128 q1 = 0, q2 = 0;

    u128 q1q2() const { return q1 * q2; }
};

PrimeContext make_prime_context(u128 p);

/// Least d >= 1 with g^d = 1 (mod p). Throws std::invalid_argument for g = 0 mod p.
u128 element_order(u128 g, const PrimeContext& ctx);

/// The two non-trivial roots of x^2 = 4 (mod q1*q2), CRT-combined from
/// (+2, -2) and (-2, +2). Returns (odd root, even root); they sum to q1*q2.
std::pair<u128, u128> sqrt4_roots(u128 q1, u128 q2);

} // namespace missgen
