#pragma once

#include <chrono>
#include <optional>
#include <utility>
#include <vector>

#include "missgen/digraph.hpp"

namespace missgen {

/// T(p) = (c, n, e); (0,0,0) when p-1 does not have exactly three distinct
/// prime factors. Builds the digraph explicitly for small p; for large p it
/// uses the equivalent arithmetic construction (e = (p-1)/q1q2, n = least
/// m with x1^m = +-1 mod q1q2, c = phi(q1q2)/2n). Throws for composite p.
Triplet compute_triplet(u128 p);

/// Largest p for which compute_triplet builds the digraph explicitly.
inline constexpr u128 kExplicitTripletLimit = 3000;

/// Odd prime factors (q1 < q2) of p-1 from the triplet alone:
/// q1*q2 = (p-1)/e and (q1-1)(q2-1) = 2*c*n, solved as a quadratic.
std::pair<u128, u128> recover_factors(u128 p, const Triplet& t);

/// Canonical search order over exponent pairs: ascending i+j, ties by
/// ascending j. Shared by the factoring pipeline and the grid scanner.
struct GridPoint {
    unsigned i = 0, j = 0;
};
std::vector<GridPoint> grid_order(unsigned bound);

/// Largest accepted exponent bound (the grid has bound^2 points; anything
/// past this is far beyond the 128-bit candidate ceiling anyway).
inline constexpr unsigned kMaxGridBound = 2000;

/// 2^i * n^j + 1, or nullopt when it exceeds 128 bits.
std::optional<u128> grid_candidate(u128 n, unsigned i, unsigned j);

struct CandidateTrace {
    unsigned i = 0, j = 0;
    u128 value = 0; // 0 when the candidate overflowed
    enum class Verdict { Composite, Prime, Overflow } verdict = Verdict::Composite;
};

struct FactoringReport {
    u128 n = 0;
    unsigned bound = 0;
    std::vector<CandidateTrace> search_trace;
    unsigned chosen_i = 0, chosen_j = 0;
    u128 p = 0;
    Triplet triplet;
    u128 q1 = 0, q2 = 0;
    std::chrono::milliseconds elapsed{0};
};

/// Searches 2^i * n^j + 1 for a prime p, reads T(p) and recovers the odd
/// prime factors of n. n must be the product of two distinct odd primes;
/// primes and prime squares are rejected up front, other bad inputs are
/// detected from the structure of the first prime candidate.
FactoringReport factor_semiprime(u128 n, unsigned bound);

struct PrimeGridScan {
    u128 n = 0;
    unsigned bound = 0;
    bool full_grid = false;
    std::vector<GridPoint> hits;
    std::optional<GridPoint> first_hit;
    u64 tested = 0;
    u64 skipped_overflow = 0;
};

/// Primality scan of the (i, j) grid, 1 <= i, j <= bound. full_grid tests
/// everything; otherwise the scan stops at the first prime. Candidates
/// beyond 128 bits are skipped and counted.
PrimeGridScan scan_prime_grid(u128 n, unsigned bound, bool full_grid);

/// ceil(5 * log2(n)), the default scan bound.
unsigned default_scan_bound(u128 n);

} // namespace missgen
