#include "missgen/inverse_relation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace missgen {

NiPartition build_ni_partition(const ElementClassification& cls, const MissingPartition& pt) {
    if (!cls.ctx().is_p3) {
        throw UnsupportedPrimeClass("build_ni_partition: p = " + to_string(cls.ctx().p));
    }
    const u128 expected_size = ni_count(cls.ctx().pm1);
    std::vector<std::vector<u64>> per_block;
    per_block.reserve(pt.blocks.size());
    for (std::size_t u = 0; u < pt.blocks.size(); ++u) {
        const auto& members = pt.blocks[u];
        std::vector<u64> ni = set_ni(members.front(), cls);
        for (std::size_t t = 1; t < members.size(); ++t) {
            if (set_ni(members[t], cls) != ni) {
                throw StructuralViolation("build_ni_partition: NI differs inside block " + std::to_string(u) +
                                          " for p = " + to_string(cls.ctx().p));
            }
        }
        if (static_cast<u128>(ni.size()) != expected_size) {
            throw StructuralViolation("build_ni_partition: |NI| != N_p for p = " + to_string(cls.ctx().p));
        }
        per_block.push_back(std::move(ni));
    }

    // Distinct NI sets, ordered by minimum residue. f must be a bijection.
    std::map<std::vector<u64>, std::size_t> seen;
    for (const auto& ni : per_block) {
        if (!seen.emplace(ni, 0).second) {
            throw StructuralViolation("build_ni_partition: duplicate NI set (f not injective) for p = " +
                                      to_string(cls.ctx().p));
        }
    }
    NiPartition out;
    std::vector<const std::vector<u64>*> ordered;
    for (const auto& [ni, _] : seen) ordered.push_back(&ni);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->front() < b->front(); });
    for (std::size_t z = 0; z < ordered.size(); ++z) {
        seen[*ordered[z]] = z;
        out.ni_blocks.push_back(*ordered[z]);
        for (u64 r : *ordered[z]) out.ni_block_of.emplace(r, z);
    }
    out.f_map.reserve(per_block.size());
    for (const auto& ni : per_block) out.f_map.push_back(seen[ni]);
    return out;
}

std::vector<std::pair<unsigned, u64>> generator_order_counts(const std::vector<u64>& ni_block,
                                                             const PrimeContext& ctx) {
    if (!ctx.is_p3) throw UnsupportedPrimeClass("generator_order_counts: p = " + to_string(ctx.p));
    const u128 pm1 = ctx.p - 1;
    std::vector<u64> counts(ctx.i + 1, 0);
    for (u64 r : ni_block) {
        const u128 d = element_order(r, ctx);
        bool placed = false;
        for (unsigned k = 1; k <= ctx.i; ++k) {
            if (d == pm1 >> k) {
                ++counts[k];
                placed = true;
                break;
            }
        }
        if (!placed) {
            throw StructuralViolation("generator_order_counts: order of " + std::to_string(r) +
                                      " is not (p-1)/2^k for p = " + to_string(ctx.p));
        }
    }
    const u64 total = static_cast<u64>(ni_block.size());
    std::vector<std::pair<unsigned, u64>> out;
    for (unsigned k = 1; k <= ctx.i; ++k) {
        const u64 expected = (k < ctx.i) ? total >> k : total >> (ctx.i - 1);
        if (counts[k] != expected) {
            throw StructuralViolation("generator_order_counts: a_" + std::to_string(k) + " = " +
                                      std::to_string(counts[k]) + ", expected " + std::to_string(expected) +
                                      " for p = " + to_string(ctx.p));
        }
        out.emplace_back(k, counts[k]);
    }
    return out;
}

InverseLocation locate_inverse(u64 g, const ElementClassification& cls,
                               const MissingPartition& pt, const NiPartition& ni) {
    const u64 p = cls.p();
    if (g == 0 || g >= p || !cls.is_generator(g)) {
        throw std::invalid_argument("locate_inverse: not a generator: " + std::to_string(g));
    }
    const u64 neg = p - g;
    const std::size_t own = pt.block_of.at(g);
    if (p % 4 == 1) {
        const auto it = pt.block_of.find(neg);
        if (it == pt.block_of.end() || it->second != own) {
            throw StructuralViolation("locate_inverse: -g escapes g's block for p = " + std::to_string(p));
        }
        return {InverseLocation::Kind::PartitionBlock, it->second};
    }
    // p = 3 (mod 4): the inverses of g's whole block must be one NI block.
    const auto it = ni.ni_block_of.find(neg);
    if (it == ni.ni_block_of.end()) {
        throw StructuralViolation("locate_inverse: -g is in no NI block for p = " + std::to_string(p));
    }
    std::vector<u64> inverses;
    for (u64 x : pt.blocks[own]) inverses.push_back(p - x);
    std::sort(inverses.begin(), inverses.end());
    if (inverses != ni.ni_blocks[it->second]) {
        throw StructuralViolation("locate_inverse: block inverses are not exactly one NI block for p = " +
                                  std::to_string(p));
    }
    return {InverseLocation::Kind::NiBlock, it->second};
}

RelationS build_relation_s(const ElementClassification& cls, const MissingDigraph& d,
                           const NiPartition& ni) {
    const PrimeContext& ctx = cls.ctx();
    if (!ctx.is_p3 || ctx.p % 4 != 3) {
        throw UnsupportedPrimeClass("build_relation_s: requires p in P_3 with p = 3 (mod 4), got " +
                                    to_string(ctx.p));
    }
    const u64 p = cls.p();
    const auto& pt = d.partition;

    std::vector<std::size_t> cycle_of_block(pt.blocks.size());
    for (std::size_t ci = 0; ci < d.cycles.size(); ++ci) {
        for (std::size_t u : d.cycles[ci]) cycle_of_block[u] = ci;
    }
    std::vector<std::size_t> f_inverse(ni.ni_blocks.size());
    for (std::size_t u = 0; u < ni.f_map.size(); ++u) f_inverse[ni.f_map[u]] = u;

    const bool exhaustive = p <= 500;
    RelationS out;
    for (std::size_t ci = 0; ci < d.cycles.size(); ++ci) {
        std::set<std::size_t> targets;
        for (std::size_t u : d.cycles[ci]) {
            const auto& members = pt.blocks[u];
            const std::size_t take = exhaustive ? members.size() : 1;
            for (std::size_t t = 0; t < take; ++t) {
                const auto it = ni.ni_block_of.find(p - members[t]);
                if (it == ni.ni_block_of.end()) {
                    throw StructuralViolation("relation S: inverse of " + std::to_string(members[t]) +
                                              " is in no NI block for p = " + std::to_string(p));
                }
                targets.insert(cycle_of_block[f_inverse[it->second]]);
            }
            if (!exhaustive) break; // one representative per cycle
        }
        if (targets.size() != 1) {
            throw StructuralViolation("relation S: cycle " + std::to_string(ci + 1) +
                                      " maps into several cycles for p = " + std::to_string(p));
        }
        out.pairs.emplace_back(ci + 1, *targets.begin() + 1);
    }

    const bool reflexive = std::all_of(out.pairs.begin(), out.pairs.end(),
                                       [](const auto& pr) { return pr.first == pr.second; });
    if (reflexive) {
        out.character = SCharacter::Reflexive;
        return out;
    }
    const std::set<std::pair<std::size_t, std::size_t>> pair_set(out.pairs.begin(), out.pairs.end());
    for (const auto& [a, b] : out.pairs) {
        if (!pair_set.count({b, a})) {
            throw StructuralViolation("relation S: neither reflexive nor symmetric for p = " + std::to_string(p));
        }
    }
    out.character = SCharacter::Symmetric;
    return out;
}

SCharacter predict_s_character(const PrimeContext& ctx, u128 n) {
    if (!ctx.is_p3 || ctx.p % 4 != 3) {
        throw UnsupportedPrimeClass("predict_s_character: requires p in P_3 with p = 3 (mod 4), got " +
                                    to_string(ctx.p));
    }
    const u128 m = ctx.q1q2();
    const u128 pw = pow_mod(2, n, m);
    if (pw == 1) return SCharacter::Reflexive;
    if (n % 2 == 1 || pw == m - 1) return SCharacter::Symmetric;
    throw StructuralViolation("predict_s_character: no case applies for p = " + to_string(ctx.p));
}

} // namespace missgen
