#pragma once

#include <stdexcept>
#include <string>

namespace missgen {

// Error taxonomy shared by all modules. std::invalid_argument is used
// directly for malformed inputs; everything below carries extra meaning.

// gcd(a, m) != 1 where a modular inverse was required.
struct NotInvertibleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Operation only defined for primes p with p-1 = 2^i * q1^j1 * q2^j2
// (or an extra p = 3 mod 4 restriction), and the input is outside it.
struct UnsupportedPrimeClass : std::domain_error {
    using std::domain_error::domain_error;
};

// A structural theorem failed to hold on concrete data. Either an
// implementation bug or a genuine counterexample; never swallowed.
struct StructuralViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// A (c, n, e) triplet that cannot belong to any supported prime.
struct InconsistentTriplet : std::domain_error {
    using std::domain_error::domain_error;
};

// The 2^i * N^j + 1 prime search ran out of exponent budget.
struct SearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Recovered factors do not multiply back to the input.
struct PipelineInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace missgen
