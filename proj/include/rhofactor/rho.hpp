#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <stop_token>
#include <string_view>

#include "rhofactor/natural.hpp"

namespace rhofactor {

inline constexpr std::uint64_t kDefaultGcdBatch = 128;
inline constexpr std::uint64_t kMinIterationBudget = 100'000;

/// Raised when an attempt is asked to run on an input the pipeline never produces.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Detector { floyd, brent };

std::string_view to_string(Detector d);
std::optional<Detector> parse_detector(std::string_view text);

/**
 * Configuration of one rho attempt on a fixed modulus.
 *
 * Constructed through make() so the polynomial constant is never 0 or -2
 * modulo n (both give degenerate x^2 + c orbits) and the start point lies in
 * [0, n).
 */
class RhoParams {
public:
    /// Throws PreconditionError on an invalid combination.
    /// max_iters == 0 selects default_iteration_budget(n, gcd_batch).
    static RhoParams make(const Natural& n, Natural c, Natural x0, std::uint64_t max_iters = 0,
                          std::uint64_t gcd_batch = kDefaultGcdBatch);

    const Natural& c() const { return c_; }
    const Natural& x0() const { return x0_; }
    std::uint64_t max_iters() const { return max_iters_; }
    std::uint64_t gcd_batch() const { return gcd_batch_; }

    friend bool operator==(const RhoParams&, const RhoParams&) = default;

private:
    RhoParams() = default;

    Natural c_;
    Natural x0_;
    std::uint64_t max_iters_ = 0;
    std::uint64_t gcd_batch_ = 1;
};

/// 8 * ceil(n^(1/4)) * gcd_batch, never below kMinIterationBudget; saturates at 2^64 - 1.
std::uint64_t default_iteration_budget(const Natural& n, std::uint64_t gcd_batch);

/// True iff c mod n is neither 0 nor n - 2.
bool is_valid_constant(const Natural& c, const Natural& n);

enum class RhoStatus { factor, no_factor_cycle, budget_exhausted, cancelled };

std::string_view to_string(RhoStatus s);

struct RhoOutcome {
    RhoStatus status = RhoStatus::no_factor_cycle;
    Natural factor;  // meaningful only for RhoStatus::factor; then 1 < factor < n and factor | n
    std::uint64_t iterations = 0;

    friend bool operator==(const RhoOutcome&, const RhoOutcome&) = default;
};

/// Cooperative controls shared with a race coordinator. Both members are optional.
struct AttemptControl {
    std::stop_token cancel;
    /// Receives the iteration count after every step (relaxed store).
    std::atomic<std::uint64_t>* progress = nullptr;
};

/// (x^2 + c) mod n
Natural step(const Natural& x, const Natural& c, const Natural& n);

/**
 * Floyd cycle detection on an arbitrary iteration function.
 *
 * Returns the smallest i >= 1 with x_i == x_{2i}, where x_j = f(x_{j-1}).
 * Terminates whenever f maps a finite set into itself.
 */
template <class T, class F>
std::uint64_t floyd_cycle_index(F&& f, T x0) {
    T tortoise = x0;
    T hare = x0;
    std::uint64_t i = 0;
    do {
        tortoise = f(tortoise);
        hare = f(f(hare));
        ++i;
    } while (!(tortoise == hare));
    return i;
}

/**
 * One Pollard rho attempt with Floyd (tortoise/hare) pairing.
 *
 * Each iteration advances the tortoise once and the hare twice and folds
 * |tortoise - hare| into a running product mod n. Every gcd_batch iterations
 * the product is reduced against n: 1 continues, a proper divisor is
 * returned, and n triggers a one-step replay of the batch to recover the
 * first nontrivial gcd. A single-step gcd of n means the orbit closed modulo
 * every prime of n at once (NoFactorCycle).
 *
 * The cancellation token is polled once per batch. `iterations` counts
 * tortoise steps; replayed steps are not counted twice.
 *
 * Throws PreconditionError if n < 3 or n is even.
 */
RhoOutcome rho_attempt(const Natural& n, const RhoParams& params, const AttemptControl& control = {});

/**
 * Brent's variant: the hare runs ahead in power-of-two stretches while the
 * saved point stays put, so each iteration costs one function evaluation.
 * Same contract as rho_attempt; `iterations` counts function evaluations.
 */
RhoOutcome brent_attempt(const Natural& n, const RhoParams& params, const AttemptControl& control = {});

/// Dispatches to rho_attempt or brent_attempt.
RhoOutcome run_attempt(Detector detector, const Natural& n, const RhoParams& params,
                       const AttemptControl& control = {});

}  // namespace rhofactor
