#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rhofactor/natural.hpp"
#include "rhofactor/rho.hpp"

namespace rhofactor {

inline constexpr unsigned kDefaultRaceRounds = 16;

/// Not enough admissible polynomial constants modulo n for the requested workers.
class ResidueError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every round of a race ended without any worker finding a factor.
class RaceExhaustedError : public std::runtime_error {
public:
    RaceExhaustedError(const Natural& n, unsigned rounds);
    const Natural& modulus() const { return n_; }
    unsigned rounds() const { return rounds_; }

private:
    Natural n_;
    unsigned rounds_;
};

enum class ConstantMode {
    sequential,  // c_j = 1 + j, skipping excluded residues
    seeded,      // distinct pseudo-random residues drawn from the seed
};

/// Live counters a test harness can watch while races run.
struct RaceMonitor {
    std::atomic<int> active_workers{0};
    std::atomic<std::uint64_t> workers_started{0};
    std::atomic<std::uint64_t> workers_finished{0};
};

struct RaceConfig {
    unsigned workers = 1;
    std::uint64_t seed = 0;
    /// One constant per worker. Empty: derive with assign_c at race time.
    std::vector<Natural> c_assignment;
    ConstantMode c_mode = ConstantMode::sequential;
    std::uint64_t max_iters = 0;  // 0: default_iteration_budget
    std::uint64_t gcd_batch = kDefaultGcdBatch;
    Detector detector = Detector::floyd;
    unsigned max_rounds = kDefaultRaceRounds;
    RaceMonitor* monitor = nullptr;
};

/// Worker count matching the machine, at least 1.
unsigned detected_workers();

struct RaceOutcome {
    Natural factor;  // 1 < factor < n, factor | n
    unsigned winner = 0;
    unsigned rounds = 1;  // rounds run, including the winning one
    /// Iterations each worker ran in the winning round.
    std::vector<std::uint64_t> per_worker_iterations;
    /// Each worker's published iteration count when the winner claimed the result.
    std::vector<std::uint64_t> iterations_at_claim;
    std::vector<Natural> c_used;  // constants of the winning round
    double wall_time_s = 0.0;
};

/**
 * Distinct admissible constants (never 0 or -2 mod n), deterministic in
 * (workers, seed, n, mode). Throws ResidueError when workers > n - 2, or
 * PreconditionError when n < 3 or workers == 0.
 */
std::vector<Natural> assign_c(unsigned workers, std::uint64_t seed, const Natural& n,
                              ConstantMode mode = ConstantMode::sequential);

/**
 * Carries a constant list over to a new modulus (used after a split, where
 * the old constants are reused). Each constant is reduced mod n; any that
 * becomes inadmissible or collides is replaced by the next free residue.
 */
std::vector<Natural> adapt_c(const std::vector<Natural>& constants, const Natural& n);

/// Parameters worker `index` uses in `round`. Exposed so a one-worker race can be replayed directly.
RhoParams worker_params(const Natural& n, const RaceConfig& config, const Natural& c, unsigned index,
                        unsigned round);

/**
 * Races config.workers rho attempts on n, one per constant. The first
 * worker to find a proper divisor claims the result and cancels the rest;
 * all workers are joined before returning. When a round produces no factor
 * a fresh seeded set of unused constants is tried, up to config.max_rounds.
 *
 * Throws PreconditionError for n < 3 or even n, RaceExhaustedError when
 * every round fails.
 */
RaceOutcome race_factor(const Natural& n, const RaceConfig& config);

}  // namespace rhofactor
