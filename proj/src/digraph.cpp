#include "missgen/digraph.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace missgen {

namespace {

void require_p3(const PrimeContext& ctx, const char* who) {
    if (!ctx.is_p3) {
        throw UnsupportedPrimeClass(std::string(who) + ": p-1 must have exactly three distinct prime factors (p = " +
                                    to_string(ctx.p) + ")");
    }
}

} // namespace

MissingPartition build_partition(const ElementClassification& cls) {
    require_p3(cls.ctx(), "build_partition");
    // Group by the full sorted missing-set; generators() is ascending so
    // members arrive sorted and the first member is the block minimum.
    std::map<std::vector<u64>, std::vector<u64>> groups;
    for (u64 g : cls.generators()) {
        groups[missing_set(g, cls)].push_back(g);
    }
    std::vector<std::pair<std::vector<u64>, std::vector<u64>>> items(
        std::make_move_iterator(groups.begin()), std::make_move_iterator(groups.end()));
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.second.front() < b.second.front(); });

    MissingPartition pt;
    pt.ctx = cls.ctx();
    const u128 expected_size = missing_count(cls.ctx().pm1);
    for (auto& [mset, members] : items) {
        if (static_cast<u128>(members.size()) != expected_size) {
            throw StructuralViolation("build_partition: block size " + std::to_string(members.size()) +
                                      " != M_p for p = " + to_string(cls.ctx().p));
        }
        const std::size_t idx = pt.blocks.size();
        for (u64 g : members) pt.block_of.emplace(g, idx);
        pt.blocks.push_back(std::move(members));
        pt.block_missing.push_back(std::move(mset));
    }
    if (pt.block_of.size() != cls.generators().size()) {
        throw StructuralViolation("build_partition: blocks do not cover the generators");
    }
    return pt;
}

MissingDigraph build_digraph(MissingPartition partition) {
    MissingDigraph d;
    d.partition = std::move(partition);
    const auto& pt = d.partition;
    const std::size_t v = pt.blocks.size();
    d.successor.resize(v);
    std::vector<unsigned> indegree(v, 0);
    for (std::size_t u = 0; u < v; ++u) {
        const auto& target = pt.block_missing[u];
        const auto it = pt.block_of.find(target.front());
        if (it == pt.block_of.end() || pt.blocks[it->second] != target) {
            throw StructuralViolation("build_digraph: missing-set of block " + std::to_string(u) +
                                      " is not itself a block (p = " + to_string(pt.ctx.p) + ")");
        }
        d.successor[u] = it->second;
        ++indegree[it->second];
    }
    for (std::size_t u = 0; u < v; ++u) {
        if (indegree[u] != 1) {
            throw StructuralViolation("build_digraph: in-degree of block " + std::to_string(u) +
                                      " is " + std::to_string(indegree[u]));
        }
    }
    // successor is a permutation; walk its cycles. Blocks are ordered by
    // minimum generator, so the first unvisited index is the cycle's
    // canonical starting vertex.
    std::vector<char> visited(v, 0);
    for (std::size_t s = 0; s < v; ++s) {
        if (visited[s]) continue;
        std::vector<std::size_t> cycle;
        std::size_t u = s;
        do {
            visited[u] = 1;
            cycle.push_back(u);
            u = d.successor[u];
        } while (u != s);
        d.cycles.push_back(std::move(cycle));
    }
    for (const auto& c : d.cycles) {
        if (c.size() != d.cycles.front().size()) {
            throw StructuralViolation("build_digraph: unequal cycle lengths for p = " + to_string(pt.ctx.p));
        }
    }
    return d;
}

Triplet triplet_from_digraph(const MissingDigraph& d) {
    const PrimeContext& ctx = d.partition.ctx;
    Triplet t;
    t.c = d.cycles.size();
    t.n = d.cycles.front().size();
    t.e = d.partition.blocks.front().size();
    if (t.n < 2) {
        throw StructuralViolation("triplet_from_digraph: self-loop for p = " + to_string(ctx.p));
    }
    if (t.c * t.n * t.e != euler_phi(ctx.pm1)) {
        throw StructuralViolation("triplet_from_digraph: c*n*e != phi(p-1) for p = " + to_string(ctx.p));
    }
    u128 expected_e = ctx.pm1.value / ctx.q1q2();
    if (t.e != expected_e) {
        throw StructuralViolation("triplet_from_digraph: e != 2^i q1^(j1-1) q2^(j2-1) for p = " + to_string(ctx.p));
    }
    if (pow_mod(4, t.n, ctx.q1q2()) != 1) {
        throw StructuralViolation("triplet_from_digraph: 4^n != 1 mod q1q2 for p = " + to_string(ctx.p));
    }
    return t;
}

Triplet triplet_of(const PrimeContext& ctx) {
    if (!ctx.is_p3) return Triplet{};
    return triplet_from_digraph(build_digraph(build_partition(classify_elements(ctx))));
}

namespace {

constexpr u64 kMaxBSetSize = u64{1} << 22;

struct BContext {
    u64 pm1, m, e;
};

BContext b_context(const PrimeContext& ctx, const char* who) {
    require_p3(ctx, who);
    if (ctx.p - 1 > static_cast<u128>(std::numeric_limits<u64>::max())) {
        throw std::invalid_argument(std::string(who) + ": p too large for exponent enumeration");
    }
    BContext b;
    b.pm1 = static_cast<u64>(ctx.p - 1);
    b.m = static_cast<u64>(ctx.q1q2());
    b.e = b.pm1 / b.m;
    if (b.e > kMaxBSetSize) {
        throw std::invalid_argument(std::string(who) + ": class size too large to enumerate");
    }
    return b;
}

} // namespace

BSets b_sets(const PrimeContext& ctx) {
    const BContext b = b_context(ctx, "b_sets");
    const auto [x1, x2] = sqrt4_roots(ctx.q1, ctx.q2);
    BSets out;
    out.x1 = static_cast<u64>(x1);
    out.x2 = static_cast<u64>(x2);
    for (u64 s = 0; s + 2 <= b.e; s += 2) out.b1.push_back(out.x1 + b.m * s);
    for (u64 r = 1; r + 1 <= b.e; r += 2) out.b2.push_back(out.x2 + b.m * r);
    return out;
}

std::vector<u64> b_class(u64 a, const PrimeContext& ctx) {
    const BContext b = b_context(ctx, "b_class");
    a %= b.pm1;
    std::vector<u64> out;
    for (u64 t = (a % 2 == 1) ? 0 : 1; t < b.e; t += 2) {
        out.push_back((a + static_cast<u128>(b.m) * t) % b.pm1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

CycleLengthWitness check_cycle_length(const PrimeContext& ctx, u128 n) {
    require_p3(ctx, "check_cycle_length");
    if (n == 0 || n > kMaxBSetSize) {
        throw std::invalid_argument("check_cycle_length: n out of range");
    }
    const u128 m = ctx.q1q2();
    const auto [x1, x2] = sqrt4_roots(ctx.q1, ctx.q2);
    CycleLengthWitness w;
    w.n_even = (n % 2 == 0);
    // n must be the first power at which x1 reaches +-1.
    u128 x = 1;
    for (u128 t = 1; t <= n; ++t) {
        x = mul_mod(x, x1, m);
        const bool pm1_hit = (x == 1 || x == m - 1);
        if (t < n && pm1_hit) {
            throw StructuralViolation("check_cycle_length: x1 reaches +-1 before n for p = " + to_string(ctx.p));
        }
        if (t == n) {
            if (!pm1_hit) {
                throw StructuralViolation("check_cycle_length: x1^n != +-1 mod q1q2 for p = " + to_string(ctx.p));
            }
            w.root_sign = (x == 1) ? 1 : -1;
        }
    }
    if (w.n_even) {
        const u128 pw = pow_mod(2, n, m);
        if (pw == 1) {
            w.two_sign = 1;
        } else if (pw == m - 1) {
            w.two_sign = -1;
        } else {
            throw StructuralViolation("check_cycle_length: 2^n != +-1 mod q1q2 for p = " + to_string(ctx.p));
        }
    } else {
        const u128 pw = pow_mod(2, n - 1, m);
        const u128 xinv = inverse_mod(x1, m);
        if (pw == xinv) {
            w.two_sign = 1;
        } else if (pw == m - xinv) {
            w.two_sign = -1;
        } else {
            throw StructuralViolation("check_cycle_length: 2^(n-1) != +-x1^-1 mod q1q2 for p = " + to_string(ctx.p));
        }
    }
    return w;
}

} // namespace missgen
