#include "rhofactor/race.hpp"

#include <chrono>
#include <exception>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <thread>

#include "rhofactor/number_theory.hpp"

namespace rhofactor {

namespace {

constexpr std::uint64_t kFreshConstantSalt = 0x5eed'c0de'f00d'0001ULL;
constexpr std::uint64_t kStartPointSalt = 0x5eed'c0de'f00d'0002ULL;

bool is_proper_divisor(const Natural& d, const Natural& n) {
    return Natural(1) < d && d < n && n.divisible_by(d);
}

// Number of admissible residues left: n - 2 admissible values minus those already used.
Natural admissible_left(const Natural& n, std::size_t used) {
    const Natural total = n - Natural(2);
    const Natural u(used);
    return u < total ? total - u : Natural(0);
}

std::vector<Natural> draw_constants(unsigned count, const Natural& n, std::mt19937_64& rng,
                                    std::set<Natural>& used) {
    std::vector<Natural> out;
    out.reserve(count);
    const Natural span = n - Natural(1);  // residues 1..n-1
    while (out.size() < count) {
        Natural c = random_below(span, rng) + Natural(1);
        if (!is_valid_constant(c, n) || used.contains(c)) {
            continue;
        }
        used.insert(c);
        out.push_back(std::move(c));
    }
    return out;
}

struct RoundResult {
    std::optional<RaceOutcome> outcome;
};

RoundResult run_round(const Natural& n, const RaceConfig& config, const std::vector<Natural>& constants,
                      unsigned round) {
    const std::size_t k = constants.size();
    std::vector<RhoParams> params;
    params.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        params.push_back(worker_params(n, config, constants[j], static_cast<unsigned>(j), round));
    }

    std::atomic<int> winner{-1};
    std::stop_source stop;
    const auto progress = std::make_unique<std::atomic<std::uint64_t>[]>(k);
    std::vector<std::uint64_t> at_claim(k, 0);
    std::vector<RhoOutcome> outcomes(k);
    std::vector<std::exception_ptr> errors(k);

    auto work = [&](std::size_t j) {
        if (config.monitor != nullptr) {
            config.monitor->workers_started.fetch_add(1);
            config.monitor->active_workers.fetch_add(1);
        }
        try {
            outcomes[j] = run_attempt(config.detector, n, params[j], AttemptControl{stop.get_token(), &progress[j]});
            if (outcomes[j].status == RhoStatus::factor && is_proper_divisor(outcomes[j].factor, n)) {
                int expected = -1;
                if (winner.compare_exchange_strong(expected, static_cast<int>(j))) {
                    stop.request_stop();
                    for (std::size_t w = 0; w < k; ++w) {
                        at_claim[w] = progress[w].load();
                    }
                }
            }
        } catch (...) {
            errors[j] = std::current_exception();
            stop.request_stop();
        }
        if (config.monitor != nullptr) {
            config.monitor->active_workers.fetch_sub(1);
            config.monitor->workers_finished.fetch_add(1);
        }
    };

    if (k == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(k);
        for (std::size_t j = 0; j < k; ++j) {
            threads.emplace_back(work, j);
        }
        for (auto& t : threads) {
            t.join();
        }
    }

    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    RoundResult result;
    const int w = winner.load();
    if (w < 0) {
        return result;
    }
    RaceOutcome out;
    out.factor = outcomes[static_cast<std::size_t>(w)].factor;
    out.winner = static_cast<unsigned>(w);
    out.iterations_at_claim = std::move(at_claim);
    out.per_worker_iterations.reserve(k);
    for (const auto& o : outcomes) {
        out.per_worker_iterations.push_back(o.iterations);
    }
    out.c_used = constants;
    result.outcome = std::move(out);
    return result;
}

}  // namespace

RaceExhaustedError::RaceExhaustedError(const Natural& n, unsigned rounds)
    : std::runtime_error("no factor of " + n.to_string() + " after " + std::to_string(rounds) + " race rounds"),
      n_(n),
      rounds_(rounds) {}

unsigned detected_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<Natural> assign_c(unsigned workers, std::uint64_t seed, const Natural& n, ConstantMode mode) {
    if (n < Natural(3)) {
        throw PreconditionError("assign_c: modulus must be >= 3");
    }
    if (workers == 0) {
        throw PreconditionError("assign_c: need at least one worker");
    }
    if (n - Natural(2) < Natural(workers)) {
        throw ResidueError("assign_c: only " + (n - Natural(2)).to_string() + " admissible constants modulo " +
                           n.to_string() + " for " + std::to_string(workers) + " workers");
    }
    if (mode == ConstantMode::seeded) {
        std::mt19937_64 rng(seed);
        std::set<Natural> used;
        return draw_constants(workers, n, rng, used);
    }
    std::vector<Natural> out;
    out.reserve(workers);
    for (Natural c(1); out.size() < workers; c += Natural(1)) {
        if (is_valid_constant(c, n)) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<Natural> adapt_c(const std::vector<Natural>& constants, const Natural& n) {
    if (n < Natural(3)) {
        throw PreconditionError("adapt_c: modulus must be >= 3");
    }
    if (n - Natural(2) < Natural(constants.size())) {
        throw ResidueError("adapt_c: not enough admissible constants modulo " + n.to_string());
    }
    std::set<Natural> used;
    std::vector<Natural> out(constants.size());
    std::vector<std::size_t> clashes;
    for (std::size_t j = 0; j < constants.size(); ++j) {
        Natural c = constants[j] % n;
        if (is_valid_constant(c, n) && !used.contains(c)) {
            used.insert(c);
            out[j] = std::move(c);
        } else {
            clashes.push_back(j);
        }
    }
    Natural next(1);
    for (const std::size_t j : clashes) {
        while (!is_valid_constant(next, n) || used.contains(next)) {
            next += Natural(1);
        }
        used.insert(next);
        out[j] = next;
    }
    return out;
}

RhoParams worker_params(const Natural& n, const RaceConfig& config, const Natural& c, unsigned index,
                        unsigned round) {
    std::mt19937_64 rng(mix_seed(config.seed ^ kStartPointSalt, index, round));
    Natural x0 = random_below(n, rng);
    return RhoParams::make(n, c, std::move(x0), config.max_iters, config.gcd_batch);
}

RaceOutcome race_factor(const Natural& n, const RaceConfig& config) {
    if (n < Natural(3) || n.is_even()) {
        throw PreconditionError("race_factor: modulus must be odd and >= 3, got " + n.to_string());
    }
    if (config.workers == 0) {
        throw PreconditionError("race_factor: need at least one worker");
    }
    if (!config.c_assignment.empty() && config.c_assignment.size() != config.workers) {
        throw PreconditionError("race_factor: c_assignment size does not match worker count");
    }

    const auto start = std::chrono::steady_clock::now();
    std::vector<Natural> constants = config.c_assignment.empty()
                                         ? assign_c(config.workers, config.seed, n, config.c_mode)
                                         : adapt_c(config.c_assignment, n);
    std::set<Natural> used(constants.begin(), constants.end());

    unsigned rounds_run = 0;
    for (unsigned round = 0; round < config.max_rounds; ++round) {
        ++rounds_run;
        RoundResult r = run_round(n, config, constants, round);
        if (r.outcome) {
            RaceOutcome out = std::move(*r.outcome);
            out.rounds = rounds_run;
            out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return out;
        }
        const Natural left = admissible_left(n, used.size());
        if (left.is_zero()) {
            break;
        }
        const unsigned next_count =
            Natural(config.workers) < left ? config.workers : static_cast<unsigned>(left.to_u64());
        std::mt19937_64 rng(mix_seed(config.seed ^ kFreshConstantSalt, round));
        constants = draw_constants(next_count, n, rng, used);
    }
    throw RaceExhaustedError(n, rounds_run);
}

}  // namespace rhofactor
