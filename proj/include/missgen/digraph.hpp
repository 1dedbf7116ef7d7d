#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "missgen/classify.hpp"

namespace missgen {

/// Generators grouped by identical missing-set. Blocks are sorted and
/// ordered by ascending minimum generator; all blocks have equal size.
struct MissingPartition {
    PrimeContext ctx;
    std::vector<std::vector<u64>> blocks;
    std::vector<std::vector<u64>> block_missing; // the shared missing-set per block
    std::unordered_map<u64, std::size_t> block_of;
};

/// Requires ctx.is_p3; groups by definitional missing_set.
MissingPartition build_partition(const ElementClassification& cls);

/// Functional digraph on partition blocks: u -> v iff the missing-set of
/// u's generators is block v. In/out degree 1 everywhere, so the graph is
/// a disjoint union of cycles of equal length.
struct MissingDigraph {
    MissingPartition partition;
    std::vector<std::size_t> successor;
    std::vector<std::vector<std::size_t>> cycles; // each starts at its min-generator block
};

MissingDigraph build_digraph(MissingPartition partition);

struct Triplet {
    u128 c = 0; // cycle count
    u128 n = 0; // vertices per cycle
    u128 e = 0; // generators per vertex

    bool is_zero() const { return c == 0 && n == 0 && e == 0; }
    friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Reads (c, n, e) off the digraph, checking c*n*e = phi(p-1),
/// e = 2^i * q1^(j1-1) * q2^(j2-1) and 4^n = 1 (mod q1*q2).
Triplet triplet_from_digraph(const MissingDigraph& d);

/// Full construction from scratch; (0,0,0) when p-1 is not 2^i q1^j1 q2^j2.
Triplet triplet_of(const PrimeContext& ctx);

/// Exponent classes below p-1 refining A(p-1) by residue mod q1*q2:
/// b1 from the odd root x1 with even offsets, b2 from the even root x2
/// with odd offsets. b1 and b2 are disjoint and their union is A(p-1).
struct BSets {
    u64 x1 = 0, x2 = 0;
    std::vector<u64> b1, b2;
};

BSets b_sets(const PrimeContext& ctx);

/// The translated class through any starting exponent a: offsets stay even
/// for odd a and odd for even a, values reduced mod p-1. b_class(x1) == b1.
std::vector<u64> b_class(u64 a, const PrimeContext& ctx);

/// Outcome of the cycle-length identity checks for n vertices per cycle.
struct CycleLengthWitness {
    bool n_even = false;
    int root_sign = 0; // x1^n = +1 or -1 (mod q1*q2)
    int two_sign = 0;  // sign in 2^n = +-1 (n even) or 2^(n-1) = -+x1^-1 (n odd)
};

/// Verifies n is the least m >= 1 with x1^m = +-1 (mod q1*q2) and the
/// matching power-of-two identity; throws StructuralViolation otherwise.
CycleLengthWitness check_cycle_length(const PrimeContext& ctx, u128 n);

} // namespace missgen
