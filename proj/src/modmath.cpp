#include "missgen/modmath.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace missgen {

namespace {

constexpr u128 kU128Max = ~static_cast<u128>(0);

} // namespace

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

u128 parse_u128(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("parse_u128: empty string");
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("parse_u128: non-digit in \"" + std::string(s) + "\"");
        unsigned d = static_cast<unsigned>(c - '0');
        if (v > (kU128Max - d) / 10) throw std::out_of_range("parse_u128: value exceeds 128 bits");
        v = v * 10 + d;
    }
    return v;
}

u128 add_mod(u128 a, u128 b, u128 m) {
    // a, b < m; avoids the overflowing a + b.
    if (a >= m - b && b != 0) return a - (m - b);
    return a + b;
}

u128 mul_mod(u128 a, u128 b, u128 m) {
    if (m == 0) throw std::invalid_argument("mul_mod: modulus 0");
    a %= m;
    b %= m;
    if (m <= std::numeric_limits<u64>::max()) return (a * b) % m;
    if (a != 0 && b <= kU128Max / a) return (a * b) % m;
    // Shift-add fallback for wide moduli.
    u128 r = 0;
    if (a < b) std::swap(a, b);
    while (b > 0) {
        if (b & 1) r = add_mod(r, a, m);
        a = add_mod(a, a, m);
        b >>= 1;
    }
    return r;
}

std::optional<u128> checked_mul(u128 a, u128 b) {
    if (a == 0 || b == 0) return static_cast<u128>(0);
    if (a > kU128Max / b) return std::nullopt;
    return a * b;
}

u128 pow_mod(u128 base, u128 exp, u128 m) {
    if (m < 2) throw std::invalid_argument("pow_mod: modulus must be >= 2");
    u128 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

u128 isqrt_u128(u128 n) {
    if (n < 2) return n;
    // Newton from a floating start, then settle exactly.
    u128 x = static_cast<u128>(std::min<long double>(
        static_cast<long double>(kU128Max),
        sqrtl(static_cast<long double>(n)) + 2.0L));
    while (x > 0 && (x > n / x)) {
        x = (x + n / x) / 2;
    }
    while ((x + 1) <= n / (x + 1)) ++x;
    return x;
}

namespace {

bool miller_rabin_witness(u128 n, u128 a, u128 d, int s) {
    a %= n;
    if (a == 0) return false; // multiple of n proves nothing
    u128 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true; // witness of compositeness
}

constexpr std::array<u64, 13> kFixedBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// Deterministic-for-n-below: 3,317,044,064,679,887,385,961,981.
const u128 kDeterministicBound = parse_u128("3317044064679887385961981");

} // namespace

bool is_prime(u128 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u128 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kFixedBases) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    if (n < kDeterministicBound) return true;
    // Reproducible extra rounds: seed depends only on n.
    std::mt19937_64 rng(0x6d697373676e5721ULL ^ static_cast<u64>(n) ^ (static_cast<u64>(n >> 64) * 0x9e3779b97f4a7c15ULL));
    std::uniform_int_distribution<u64> dist(2, std::numeric_limits<u64>::max());
    for (int round = 0; round < 65; ++round) {
        u128 a = (static_cast<u128>(dist(rng)) << 64) | dist(rng);
        a = 2 + a % (n - 3);
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

bool Factorization::even() const {
    return !factors.empty() && factors.front().prime == 2;
}

bool Factorization::squarefree() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const PrimePower& f) { return f.exponent == 1; });
}

u128 Factorization::odd_radical() const {
    u128 r = 1;
    for (const auto& f : factors) {
        if (f.prime != 2) r *= f.prime;
    }
    return r;
}

namespace {

const std::vector<u64>& small_prime_table() {
    static const std::vector<u64> table = primes_up_to(100000);
    return table;
}

// Brent's cycle-finding variant of Pollard rho; returns 0 when the
// parameter c fails, so the caller advances c deterministically.
u128 pollard_brent(u128 n, u128 c) {
    auto step = [&](u128 x) { return add_mod(mul_mod(x, x, n), c, n); };
    u128 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const u128 batch = 128;
    while (g == 1) {
        x = y;
        for (u128 i = 0; i < r; ++i) y = step(y);
        u128 k = 0;
        while (k < r && g == 1) {
            ys = y;
            u128 lim = std::min(batch, r - k);
            for (u128 i = 0; i < lim; ++i) {
                y = step(y);
                q = mul_mod(q, x > y ? x - y : y - x, n);
            }
            g = gcd_u128(q, n);
            k += batch;
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            ys = step(ys);
            g = gcd_u128(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

void factor_recursive(u128 n, std::vector<u128>& primes_out) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes_out.push_back(n);
        return;
    }
    u128 d = 0;
    for (u128 c = 1; d == 0; ++c) {
        d = pollard_brent(n, c);
    }
    factor_recursive(d, primes_out);
    factor_recursive(n / d, primes_out);
}

} // namespace

Factorization factorize(u128 n) {
    if (n == 0) throw std::invalid_argument("factorize: 0 has no factorization");
    Factorization out;
    out.value = n;
    if (n == 1) return out;
    for (u64 p : small_prime_table()) {
        if (static_cast<u128>(p) * p > n) break;
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.factors.push_back({p, e});
    }
    if (n > 1) {
        std::vector<u128> rest;
        factor_recursive(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out.factors.push_back({rest[i], static_cast<unsigned>(j - i)});
            i = j;
        }
        std::sort(out.factors.begin(), out.factors.end(),
                  [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    }
    return out;
}

u128 euler_phi(const Factorization& f) {
    u128 phi = 1;
    for (const auto& pp : f.factors) {
        phi *= pp.prime - 1;
        for (unsigned e = 1; e < pp.exponent; ++e) phi *= pp.prime;
    }
    return phi;
}

u128 inverse_mod(u128 a, u128 m) {
    if (m < 2) throw std::invalid_argument("inverse_mod: modulus must be >= 2");
    a %= m;
    // Iterative extended Euclid; coefficients tracked signed.
    i128 t = 0, new_t = 1;
    u128 r = m, new_r = a;
    while (new_r != 0) {
        u128 quot = r / new_r;
        i128 tmp_t = t - static_cast<i128>(quot) * new_t;
        t = new_t;
        new_t = tmp_t;
        u128 tmp_r = r - quot * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r != 1) {
        throw NotInvertibleError("inverse_mod: " + to_string(a) + " not invertible mod " + to_string(m));
    }
    if (t < 0) t += static_cast<i128>(m);
    return static_cast<u128>(t);
}

u128 multiplicative_order(u128 a, u128 m, const Factorization& order_multiple) {
    a %= m;
    if (pow_mod(a, order_multiple.value, m) != 1) {
        throw std::invalid_argument("multiplicative_order: given exponent is not a multiple of the order");
    }
    u128 d = order_multiple.value;
    for (const auto& pp : order_multiple.factors) {
        for (unsigned e = 0; e < pp.exponent; ++e) {
            if (d % pp.prime != 0) break;
            u128 cand = d / pp.prime;
            if (pow_mod(a, cand, m) == 1) {
                d = cand;
            } else {
                break;
            }
        }
    }
    return d;
}

PrimeContext make_prime_context(u128 p) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("make_prime_context: " + to_string(p) + " is not an odd prime");
    }
    PrimeContext ctx;
    ctx.p = p;
    ctx.pm1 = factorize(p - 1);
    if (ctx.pm1.factors.size() == 3 && ctx.pm1.factors.front().prime == 2) {
        ctx.is_p3 = true;
        ctx.i = ctx.pm1.factors[0].exponent;
        ctx.q1 = ctx.pm1.factors[1].prime;
        ctx.j1 = ctx.pm1.factors[1].exponent;
        ctx.q2 = ctx.pm1.factors[2].prime;
        ctx.j2 = ctx.pm1.factors[2].exponent;
    }
    return ctx;
}

u128 element_order(u128 g, const PrimeContext& ctx) {
    g %= ctx.p;
    if (g == 0) throw std::invalid_argument("element_order: 0 is not a unit");
    return multiplicative_order(g, ctx.p, ctx.pm1);
}

std::pair<u128, u128> sqrt4_roots(u128 q1, u128 q2) {
    if (q1 == q2) throw std::invalid_argument("sqrt4_roots: moduli must be distinct");
    auto check = [](u128 q) {
        if (q < 3 || (q & 1) == 0 || !is_prime(q)) {
            throw std::invalid_argument("sqrt4_roots: " + to_string(q) + " is not an odd prime");
        }
    };
    check(q1);
    check(q2);
    const u128 m = q1 * q2;
    // Root congruent to +2 mod q1 and -2 mod q2: r = 2 + q1*t with q1*t = -4 (mod q2).
    u128 t = mul_mod((q2 - 4 % q2) % q2, inverse_mod(q1 % q2, q2), q2);
    u128 r = 2 + q1 * t;
    u128 other = m - r;
    u128 x1 = (r & 1) ? r : other;
    u128 x2 = (r & 1) ? other : r;
    if (mul_mod(x1, x1, m) != 4 % m || x1 + x2 != m || x1 == 2 || x2 == 2) {
        throw StructuralViolation("sqrt4_roots: construction failed for " + to_string(q1) + "," + to_string(q2));
    }
    return {x1, x2};
}

} // namespace missgen
