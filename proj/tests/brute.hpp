#pragma once

// Independent brute-force oracles for the tests. Everything here sticks to
// first-principles enumeration so it cannot drift with the library code.

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace brute {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulp(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) * b) % p); }

inline u64 naive_order(u64 g, u64 p) {
    u64 x = g % p, d = 1;
    while (x != 1) {
        x = mulp(x, g, p);
        ++d;
    }
    return d;
}

inline u64 naive_phi(u64 n) {
    u64 count = 0;
    for (u64 x = 1; x <= n; ++x) {
        if (std::gcd(x, n) == 1) ++count;
    }
    return count;
}

inline bool trial_is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::map<u64, unsigned> trial_factor(u64 n) {
    std::map<u64, unsigned> out;
    for (u64 d = 2; d * d <= n; ++d) {
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

// Squares of all units; the residue set without Euler's criterion.
inline std::set<u64> residues_by_squaring(u64 p) {
    std::set<u64> out;
    for (u64 x = 1; x < p; ++x) out.insert(mulp(x, x, p));
    return out;
}

inline std::vector<u64> odd_primes_up_to(u64 n) {
    std::vector<u64> out;
    for (u64 p = 3; p <= n; p += 2) {
        if (trial_is_prime(p)) out.push_back(p);
    }
    return out;
}

} // namespace brute
