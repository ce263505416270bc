#pragma once

#include <cstdint>
#include <random>

#include "rhofactor/natural.hpp"

namespace rhofactor {

/// gcd(0, b) = b. Pure; safe to call concurrently.
Natural gcd(const Natural& a, const Natural& b);

/// (a * b) mod n. Throws ModulusZeroError for n = 0.
Natural mod_mul(const Natural& a, const Natural& b, const Natural& n);

/// |a - b|
Natural abs_diff(const Natural& a, const Natural& b);

/// (base ^ exponent) mod n. Throws ModulusZeroError for n = 0.
Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& n);

/// Largest r with r^k <= n.
Natural integer_root(const Natural& n, unsigned k);

// Miller-Rabin with bases 2..41 is exact below this bound.
inline constexpr std::string_view kDeterministicPrimalityBound = "3317044064679887385961981";
inline constexpr unsigned kDefaultPrimalityRounds = 25;

/**
 * Miller-Rabin primality test.
 *
 * Below kDeterministicPrimalityBound the first thirteen primes are used as
 * witnesses and the answer is exact; `rounds` is ignored there. Above it,
 * `rounds` pseudo-random witnesses are drawn from a generator seeded by n,
 * so the result is reproducible and a composite slips through with
 * probability at most 4^-rounds.
 *
 * Throws std::invalid_argument if rounds == 0.
 */
bool is_probable_prime(const Natural& n, unsigned rounds = kDefaultPrimalityRounds);

/// Smallest probable prime >= n.
Natural next_probable_prime(const Natural& n);

/// Uniform-ish value in [0, bound) drawn from `rng`; bias is below 2^-64.
/// Throws ModulusZeroError for bound = 0.
Natural random_below(const Natural& bound, std::mt19937_64& rng);

/// Mixes several 64-bit words into one seed (splitmix64 finalizer chain).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0);

}  // namespace rhofactor
