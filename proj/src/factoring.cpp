#include "missgen/factoring.hpp"

#include <cmath>

namespace missgen {

namespace {

Triplet triplet_arithmetic(const PrimeContext& ctx) {
    const u128 m = ctx.q1q2();
    Triplet t;
    t.e = ctx.pm1.value / m;
    const auto [x1, x2] = sqrt4_roots(ctx.q1, ctx.q2);
    const u128 phi_m = (ctx.q1 - 1) * (ctx.q2 - 1);
    const u128 d = multiplicative_order(x1, m, factorize(phi_m));
    t.n = (d % 2 == 0 && pow_mod(x1, d / 2, m) == m - 1) ? d / 2 : d;
    if (phi_m % (2 * t.n) != 0) {
        throw StructuralViolation("triplet: phi(q1q2) not divisible by 2n for p = " + to_string(ctx.p));
    }
    t.c = phi_m / (2 * t.n);
    if (t.c * t.n * t.e != euler_phi(ctx.pm1) || pow_mod(4, t.n, m) != 1) {
        throw StructuralViolation("triplet: identities failed for p = " + to_string(ctx.p));
    }
    return t;
}

} // namespace

Triplet compute_triplet(u128 p) {
    const PrimeContext ctx = make_prime_context(p); // rejects composites
    if (!ctx.is_p3) return Triplet{};
    if (p <= kExplicitTripletLimit) return triplet_of(ctx);
    return triplet_arithmetic(ctx);
}

std::pair<u128, u128> recover_factors(u128 p, const Triplet& t) {
    if (t.is_zero()) throw std::invalid_argument("recover_factors: triplet is (0,0,0)");
    if (p < 3 || t.e == 0 || (p - 1) % t.e != 0) {
        throw InconsistentTriplet("recover_factors: e does not divide p-1");
    }
    const u128 prod = (p - 1) / t.e; // q1*q2
    const auto phi2 = checked_mul(2 * t.c, t.n);
    if (!phi2) throw InconsistentTriplet("recover_factors: 2*c*n overflows");
    if (prod + 1 <= *phi2) throw InconsistentTriplet("recover_factors: negative root sum");
    const u128 sum = prod - *phi2 + 1; // q1 + q2
    const auto sum_sq = checked_mul(sum, sum);
    if (!sum_sq || *sum_sq < 4 * prod) throw InconsistentTriplet("recover_factors: negative discriminant");
    const u128 disc = *sum_sq - 4 * prod;
    const u128 root = isqrt_u128(disc);
    if (root * root != disc) throw InconsistentTriplet("recover_factors: discriminant is not a square");
    if ((sum - root) % 2 != 0) throw InconsistentTriplet("recover_factors: non-integer roots");
    const u128 q1 = (sum - root) / 2;
    const u128 q2 = (sum + root) / 2;
    if (q1 < 3 || (q1 & 1) == 0 || q1 * q2 != prod || !is_prime(q1) || !is_prime(q2)) {
        throw InconsistentTriplet("recover_factors: roots are not an odd prime pair");
    }
    return {q1, q2};
}

std::vector<GridPoint> grid_order(unsigned bound) {
    std::vector<GridPoint> out;
    out.reserve(static_cast<std::size_t>(bound) * bound);
    for (unsigned s = 2; s <= 2 * bound; ++s) {
        const unsigned j_lo = s > bound ? s - bound : 1;
        const unsigned j_hi = std::min(bound, s - 1);
        for (unsigned j = j_lo; j <= j_hi; ++j) {
            out.push_back({s - j, j});
        }
    }
    return out;
}

std::optional<u128> grid_candidate(u128 n, unsigned i, unsigned j) {
    u128 v = 1;
    for (unsigned t = 0; t < j; ++t) {
        const auto next = checked_mul(v, n);
        if (!next) return std::nullopt;
        v = *next;
    }
    if (i >= 128 || v > ((~static_cast<u128>(0)) - 1) >> i) return std::nullopt;
    return (v << i) + 1;
}

FactoringReport factor_semiprime(u128 n, unsigned bound) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("factor_semiprime: n must be odd and >= 3");
    if (bound == 0) throw std::invalid_argument("factor_semiprime: bound must be >= 1");
    if (is_prime(n)) throw std::invalid_argument("factor_semiprime: " + to_string(n) + " is prime");
    const u128 root = isqrt_u128(n);
    if (root * root == n && is_prime(root)) {
        throw std::invalid_argument("factor_semiprime: " + to_string(n) +
                                    " is a prime square (p-1 would have only two prime factors)");
    }

    const auto start = std::chrono::steady_clock::now();
    FactoringReport rep;
    rep.n = n;
    rep.bound = bound;
    for (const GridPoint& pt : grid_order(bound)) {
        const auto cand = grid_candidate(n, pt.i, pt.j);
        if (!cand) {
            rep.search_trace.push_back({pt.i, pt.j, 0, CandidateTrace::Verdict::Overflow});
            continue;
        }
        if (!is_prime(*cand)) {
            rep.search_trace.push_back({pt.i, pt.j, *cand, CandidateTrace::Verdict::Composite});
            continue;
        }
        rep.search_trace.push_back({pt.i, pt.j, *cand, CandidateTrace::Verdict::Prime});
        rep.chosen_i = pt.i;
        rep.chosen_j = pt.j;
        rep.p = *cand;
        rep.triplet = compute_triplet(rep.p);
        if (rep.triplet.is_zero()) {
            // p-1 = 2^i * n^j, so the radical of n has != 2 odd primes.
            throw std::invalid_argument("factor_semiprime: " + to_string(n) +
                                        " is not a product of two distinct odd primes");
        }
        const auto [q1, q2] = recover_factors(rep.p, rep.triplet);
        rep.q1 = q1;
        rep.q2 = q2;
        if (checked_mul(q1, q2) != std::optional<u128>(n)) {
            throw PipelineInconsistency("factor_semiprime: recovered " + to_string(q1) + "*" + to_string(q2) +
                                        " != " + to_string(n));
        }
        rep.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        return rep;
    }
    throw SearchExhausted("factor_semiprime: no prime 2^i*n^j+1 with i+j exponents <= " +
                          std::to_string(bound) + " for n = " + to_string(n));
}

PrimeGridScan scan_prime_grid(u128 n, unsigned bound, bool full_grid) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("scan_prime_grid: n must be odd and >= 3");
    if (bound == 0) throw std::invalid_argument("scan_prime_grid: bound must be >= 1");
    PrimeGridScan scan;
    scan.n = n;
    scan.bound = bound;
    scan.full_grid = full_grid;
    for (const GridPoint& pt : grid_order(bound)) {
        const auto cand = grid_candidate(n, pt.i, pt.j);
        if (!cand) {
            ++scan.skipped_overflow;
            continue;
        }
        ++scan.tested;
        if (!is_prime(*cand)) continue;
        if (!scan.first_hit) scan.first_hit = pt;
        scan.hits.push_back(pt);
        if (!full_grid) break;
    }
    return scan;
}

unsigned default_scan_bound(u128 n) {
    if (n < 2) throw std::invalid_argument("default_scan_bound: n must be >= 2");
    const long double bits = log2l(static_cast<long double>(n));
    return static_cast<unsigned>(ceill(5.0L * bits));
}

} // namespace missgen
