#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "missgen/digraph.hpp"

#include <set>

#include "brute.hpp"

using namespace missgen;

namespace {

MissingDigraph digraph_p(u64 p) {
    const PrimeContext ctx = make_prime_context(p);
    return build_digraph(build_partition(classify_elements(ctx)));
}

using Blocks = std::vector<std::vector<u64>>;

} // namespace

TEST_CASE("partition for p = 31 and p = 43") {
    const auto d31 = digraph_p(31);
    CHECK(d31.partition.blocks == Blocks{{3, 21}, {11, 17}, {12, 13}, {22, 24}});
    CHECK(d31.partition.block_of.at(21) == 0);
    CHECK(d31.partition.block_of.at(24) == 3);

    const auto d43 = digraph_p(43);
    CHECK(d43.partition.blocks ==
          Blocks{{3, 29}, {5, 26}, {12, 18}, {19, 34}, {20, 28}, {30, 33}});
    for (const auto& b : d43.partition.blocks) CHECK(b.size() == 2);
}

TEST_CASE("partition rejects primes outside P_3") {
    CHECK_THROWS_AS(build_partition(classify_elements(make_prime_context(13))), UnsupportedPrimeClass);
    CHECK_THROWS_AS(build_partition(classify_elements(make_prime_context(211))), UnsupportedPrimeClass);
}

TEST_CASE("digraph cycles for the worked primes") {
    const auto d31 = digraph_p(31);
    // {3,21} -> {17,11} -> {13,12} -> {24,22} -> {3,21}
    CHECK(d31.successor == std::vector<std::size_t>{1, 2, 3, 0});
    CHECK(d31.cycles == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3}});

    const auto d43 = digraph_p(43);
    CHECK(d43.cycles.size() == 2);
    CHECK(d43.cycles[0].size() == 3);
    CHECK(d43.cycles == std::vector<std::vector<std::size_t>>{{0, 4, 1}, {2, 3, 5}});

    const auto d67 = digraph_p(67);
    CHECK(d67.cycles.size() == 1);
    CHECK(d67.cycles[0].size() == 10);
}

TEST_CASE("triplets against the worked values") {
    CHECK(triplet_of(make_prime_context(31)) == Triplet{1, 4, 2});
    CHECK(triplet_of(make_prime_context(43)) == Triplet{2, 3, 2});
    CHECK(triplet_of(make_prime_context(521)) == Triplet{4, 6, 8});
    CHECK(triplet_of(make_prime_context(401)).is_zero());
    CHECK(triplet_of(make_prime_context(89)).is_zero());
}

TEST_CASE("partition and digraph structure, all P_3 primes <= 800") {
    for (u64 p : brute::odd_primes_up_to(800)) {
        const PrimeContext ctx = make_prime_context(p);
        if (!ctx.is_p3) continue;
        const auto cls = classify_elements(ctx);
        const auto d = build_digraph(build_partition(cls));
        const auto& pt = d.partition;

        // pairwise disjoint equal-size blocks covering G
        std::set<u64> seen;
        for (const auto& b : pt.blocks) {
            REQUIRE(b.size() == pt.blocks.front().size());
            for (u64 g : b) REQUIRE(seen.insert(g).second);
        }
        REQUIRE(seen.size() == cls.generators().size());

        // same missing-set inside a block, different across blocks
        for (std::size_t u = 0; u < pt.blocks.size(); ++u) {
            for (u64 g : pt.blocks[u]) {
                REQUIRE(missing_set(g, cls) == pt.block_missing[u]);
            }
        }

        // functional digraph: out-degree 1 by construction, in-degree 1 here
        std::vector<unsigned> indeg(pt.blocks.size(), 0);
        for (std::size_t v : d.successor) ++indeg[v];
        for (unsigned deg : indeg) REQUIRE(deg == 1);
        for (const auto& c : d.cycles) REQUIRE(c.size() == d.cycles.front().size());

        const Triplet t = triplet_from_digraph(d);
        REQUIRE(t.c * t.n * t.e == euler_phi(ctx.pm1));
        REQUIRE(t.e == (ctx.p - 1) / ctx.q1q2());
        REQUIRE(pow_mod(4, t.n, ctx.q1q2()) == 1);
    }
}

TEST_CASE("b_sets on the worked primes") {
    const auto b31 = b_sets(make_prime_context(31));
    CHECK(b31.x1 == 7);
    CHECK(b31.x2 == 8);
    CHECK(b31.b1 == std::vector<u64>{7});
    CHECK(b31.b2 == std::vector<u64>{23});

    const auto b43 = b_sets(make_prime_context(43));
    CHECK(b43.x1 == 5);
    CHECK(b43.x2 == 16);
    CHECK(b43.b1 == std::vector<u64>{5});
    CHECK(b43.b2 == std::vector<u64>{37});

    CHECK_THROWS_AS(b_sets(make_prime_context(13)), UnsupportedPrimeClass);
}

TEST_CASE("b_sets partition A(p-1) with |B1| = |B2| = e/2, P_3 p <= 800") {
    for (u64 p : brute::odd_primes_up_to(800)) {
        const PrimeContext ctx = make_prime_context(p);
        if (!ctx.is_p3) continue;
        const auto bs = b_sets(ctx);
        const u64 e = static_cast<u64>((ctx.p - 1) / ctx.q1q2());
        REQUIRE(bs.b1.size() == e / 2);
        REQUIRE(bs.b2.size() == e / 2);
        std::vector<u64> all = bs.b1;
        all.insert(all.end(), bs.b2.begin(), bs.b2.end());
        std::sort(all.begin(), all.end());
        REQUIRE(std::adjacent_find(all.begin(), all.end()) == all.end());
        REQUIRE(all == exponent_set_a(p - 1));
        // mirror pairing through p-1-x
        for (u64 x : bs.b1) {
            REQUIRE(std::binary_search(bs.b2.begin(), bs.b2.end(), p - 1 - x));
        }
    }
}

TEST_CASE("b_class translation: B_x(j) = B_(xj)") {
    for (u64 p : brute::odd_primes_up_to(400)) {
        const PrimeContext ctx = make_prime_context(p);
        if (!ctx.is_p3) continue;
        const auto bs = b_sets(ctx);
        const u64 pm1 = p - 1;
        for (u64 j = 1; j < pm1; ++j) {
            if (std::gcd(j, pm1) != 1) continue;
            for (const auto* src : {&bs.b1, &bs.b2}) {
                const u64 x = (src == &bs.b1) ? bs.x1 : bs.x2;
                std::vector<u64> translated;
                for (u64 v : *src) translated.push_back(brute::mulp(v, j, pm1));
                std::sort(translated.begin(), translated.end());
                REQUIRE(translated == b_class(brute::mulp(x, j, pm1), ctx));
            }
            if (j > 20) break; // a sample of units is plenty per prime
        }
    }
}

TEST_CASE("b_class membership invariance: B_a(1) = B_x for a in B_x") {
    const PrimeContext ctx = make_prime_context(151); // 150 = 2 * 3 * 5^2, e = 10
    const auto bs = b_sets(ctx);
    CHECK(bs.b1.size() == 5);
    for (u64 a : bs.b1) CHECK(b_class(a, ctx) == bs.b1);
    for (u64 a : bs.b2) CHECK(b_class(a, ctx) == bs.b2);
}

TEST_CASE("cycle length checks on the worked primes") {
    const auto w31 = check_cycle_length(make_prime_context(31), 4);
    CHECK(w31.n_even);
    CHECK(w31.two_sign == 1);  // 2^4 = 16 = 1 (mod 15)
    CHECK(w31.root_sign == 1); // 7^4 = 1 (mod 15)

    const auto w43 = check_cycle_length(make_prime_context(43), 3);
    CHECK_FALSE(w43.n_even);
    CHECK(w43.two_sign == -1); // 2^2 = -5^-1 (mod 21)
    CHECK(w43.root_sign == -1);

    const auto w131 = check_cycle_length(make_prime_context(131), 6);
    CHECK(w131.n_even);
    CHECK(w131.two_sign == -1); // 2^6 = 64 = -1 (mod 65)

    // wrong n must be rejected in both directions
    CHECK_THROWS_AS(check_cycle_length(make_prime_context(31), 2), StructuralViolation);
    CHECK_THROWS_AS(check_cycle_length(make_prime_context(31), 8), StructuralViolation);
}

TEST_CASE("cycle length identity for every P_3 prime <= 2000") {
    for (u64 p : brute::odd_primes_up_to(2000)) {
        const PrimeContext ctx = make_prime_context(p);
        if (!ctx.is_p3) continue;
        u64 e = static_cast<u64>((p - 1) / ctx.q1q2());
        u64 cn = static_cast<u64>(euler_phi(ctx.pm1)) / e; // c * n
        // recover n as the least m with x1^m = +-1; check_cycle_length
        // re-derives it independently, so find it by scanning divisors of cn
        bool found = false;
        for (u64 n = 1; n <= cn && !found; ++n) {
            if (cn % n != 0) continue;
            try {
                check_cycle_length(ctx, n);
                found = true;
            } catch (const StructuralViolation&) {
            }
        }
        REQUIRE(found);
    }
}
