#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rhofactor/natural.hpp"
#include "rhofactor/race.hpp"
#include "rhofactor/sieve.hpp"

namespace rhofactor {

struct FactorizationStats {
    std::uint64_t races = 0;
    std::uint64_t race_rounds = 0;
    std::uint64_t rho_iterations = 0;  // summed over all workers of every winning round
    std::uint64_t primality_tests = 0;
    double trial_division_s = 0.0;
    double race_s = 0.0;
    double total_s = 0.0;
};

struct Factorization {
    Natural input;
    std::vector<PrimePower> factors;  // ascending by prime
    FactorizationStats stats;
};

/// n = 0 has no factorization.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A cofactor resisted every race round. Carries what was found so far.
class FactorizationExhausted : public std::runtime_error {
public:
    FactorizationExhausted(Factorization partial, std::vector<Natural> unresolved, const std::string& why);

    /// Primes found so far, plus input; the product of factors and unresolved equals input.
    const Factorization& partial() const { return partial_; }
    const std::vector<Natural>& unresolved() const { return unresolved_; }

private:
    Factorization partial_;
    std::vector<Natural> unresolved_;
};

/**
 * Complete prime factorization of n.
 *
 * Trial division by `table` first; every remaining piece goes on a work
 * stack. A piece that passes is_probable_prime is recorded, otherwise it is
 * raced and both the factor and the cofactor go back on the stack, so
 * composite race winners are split further. All races reuse the constant
 * list chosen for the first composite piece.
 *
 * Throws InputError for n = 0 and FactorizationExhausted if a race gives up.
 */
Factorization factorize(const Natural& n, const RaceConfig& config, const PrimeTable& table);

/// Product of prime^multiplicity equals input and every prime passes is_probable_prime.
bool verify(const Factorization& f);

}  // namespace rhofactor
