#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rhofactor/natural.hpp"

namespace rhofactor {

inline constexpr std::uint64_t kDefaultPrepassLimit = 1'000'000;
// Odd-only bitmap: limit / 16 bytes. 2^33 keeps the table under 512 MiB.
inline constexpr std::uint64_t kDefaultSieveCap = std::uint64_t{1} << 33;

class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// All primes <= limit, ascending. Immutable once built; share freely across threads.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
};

/// Sieve of Eratosthenes over odd numbers only, marking from p^2 in steps of 2p.
/// Throws CapacityError if limit > cap.
PrimeTable sieve(std::uint64_t limit, std::uint64_t cap = kDefaultSieveCap);

struct PrimePower {
    Natural prime;
    unsigned multiplicity = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct TrialDivision {
    std::vector<PrimePower> factors;  // ascending
    Natural cofactor;                 // no prime factor <= table.limit
};

/// Strips every prime in `table` from n. Precondition n >= 1 (throws std::invalid_argument).
TrialDivision trial_divide(const Natural& n, const PrimeTable& table);

}  // namespace rhofactor
