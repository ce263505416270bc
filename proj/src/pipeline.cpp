#include "rhofactor/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "rhofactor/number_theory.hpp"

namespace rhofactor {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<PrimePower> collect(const std::map<Natural, unsigned>& tally) {
    std::vector<PrimePower> out;
    out.reserve(tally.size());
    for (const auto& [p, k] : tally) {
        out.push_back({p, k});
    }
    return out;
}

}  // namespace

FactorizationExhausted::FactorizationExhausted(Factorization partial, std::vector<Natural> unresolved,
                                               const std::string& why)
    : std::runtime_error(why), partial_(std::move(partial)), unresolved_(std::move(unresolved)) {}

Factorization factorize(const Natural& n, const RaceConfig& config, const PrimeTable& table) {
    if (n.is_zero()) {
        throw InputError("0 has no prime factorization");
    }
    const auto t_start = Clock::now();
    Factorization result;
    result.input = n;

    const auto t_trial = Clock::now();
    TrialDivision pre = trial_divide(n, table);
    result.stats.trial_division_s = seconds_since(t_trial);

    std::map<Natural, unsigned> tally;
    for (auto& pp : pre.factors) {
        tally[pp.prime] += pp.multiplicity;
    }

    RaceConfig race_config = config;
    std::vector<Natural> work;
    if (!pre.cofactor.is_one()) {
        work.push_back(std::move(pre.cofactor));
    }

    while (!work.empty()) {
        Natural piece = std::move(work.back());
        work.pop_back();

        // Only reachable with a table that lacks 2.
        if (piece.is_even()) {
            tally[Natural(2)] += 1;
            if (piece != Natural(2)) {
                work.push_back(piece / Natural(2));
            }
            continue;
        }
        ++result.stats.primality_tests;
        if (is_probable_prime(piece)) {
            tally[piece] += 1;
            continue;
        }
        if (race_config.c_assignment.empty()) {
            race_config.c_assignment = assign_c(race_config.workers, race_config.seed, piece, race_config.c_mode);
        }
        RaceConfig piece_config = race_config;
        const Natural admissible = piece - Natural(2);
        if (admissible < Natural(piece_config.workers)) {
            // Tiny moduli cannot host one distinct constant per worker.
            piece_config.workers = static_cast<unsigned>(admissible.to_u64());
            piece_config.c_assignment.resize(piece_config.workers);
        }

        const auto t_race = Clock::now();
        RaceOutcome won;
        try {
            won = race_factor(piece, piece_config);
        } catch (const RaceExhaustedError& e) {
            result.factors = collect(tally);
            result.stats.total_s = seconds_since(t_start);
            work.push_back(piece);
            std::sort(work.begin(), work.end());
            throw FactorizationExhausted(std::move(result), std::move(work), e.what());
        }
        result.stats.race_s += seconds_since(t_race);
        ++result.stats.races;
        result.stats.race_rounds += won.rounds;
        for (const auto it : won.per_worker_iterations) {
            result.stats.rho_iterations += it;
        }

        // Both parts are strictly smaller than piece, so the stack drains.
        Natural cofactor = piece / won.factor;
        work.push_back(std::move(cofactor));
        work.push_back(std::move(won.factor));
    }

    result.factors = collect(tally);
    result.stats.total_s = seconds_since(t_start);
    return result;
}

bool verify(const Factorization& f) {
    Natural product(1);
    for (const auto& [p, k] : f.factors) {
        if (k == 0 || !is_probable_prime(p)) {
            return false;
        }
        for (unsigned i = 0; i < k; ++i) {
            product *= p;
        }
    }
    return product == f.input;
}

}  // namespace rhofactor
