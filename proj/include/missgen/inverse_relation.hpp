#pragma once

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "missgen/digraph.hpp"

namespace missgen {

/// Disjoint NI residue sets, one per partition block, with the block ->
/// NI-block bijection. NI blocks ordered by ascending minimum residue.
struct NiPartition {
    std::vector<std::vector<u64>> ni_blocks;
    std::vector<std::size_t> f_map;                  // partition block -> NI block
    std::unordered_map<u64, std::size_t> ni_block_of; // residue -> NI block
};

/// Computes set_ni for every member of every block, asserts intra-block
/// equality and bijectivity.
NiPartition build_ni_partition(const ElementClassification& cls, const MissingPartition& pt);

/// Counts of elements of order (p-1)/2^k in an NI block, k = 1..i,
/// checked against |NI|/2^k (k < i) and |NI|/2^(i-1) (k = i).
std::vector<std::pair<unsigned, u64>> generator_order_counts(const std::vector<u64>& ni_block,
                                                             const PrimeContext& ctx);

struct InverseLocation {
    enum class Kind { PartitionBlock, NiBlock };
    Kind kind;
    std::size_t index;
};

/// Where the additive inverse of generator g lives. For p = 1 (mod 4) it is
/// g's own partition block; for p = 3 (mod 4) the inverses of g's whole
/// block form exactly one NI block, which is returned.
InverseLocation locate_inverse(u64 g, const ElementClassification& cls,
                               const MissingPartition& pt, const NiPartition& ni);

enum class SCharacter { Reflexive, Symmetric };

/// Pairing of cycle labels (1-based): (i, j) when the additive inverses of
/// the generators in cycle i land in NI blocks of cycle j's vertices.
struct RelationS {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    SCharacter character;
};

/// Extensional computation; every generator is checked for p <= 500,
/// one representative per vertex above. Requires p = 3 (mod 4).
RelationS build_relation_s(const ElementClassification& cls, const MissingDigraph& d,
                           const NiPartition& ni);

/// Predicted character: Reflexive iff 2^n = 1 (mod q1*q2), else Symmetric
/// when n is odd or 2^n = -1. Anything else is a structural violation.
SCharacter predict_s_character(const PrimeContext& ctx, u128 n);

} // namespace missgen
