#include "rhofactor/rho.hpp"

#include <algorithm>
#include <limits>

#include "rhofactor/number_theory.hpp"

namespace rhofactor {

namespace {

void check_modulus(const Natural& n) {
    if (n < Natural(3) || n.is_even()) {
        throw PreconditionError("rho attempt needs an odd modulus >= 3, got " + n.to_string());
    }
}

// In-place x <- (x^2 + c) mod n on raw GMP values.
inline void advance(mpz_class& x, const mpz_class& c, const mpz_class& n) {
    mpz_mul(x.get_mpz_t(), x.get_mpz_t(), x.get_mpz_t());
    mpz_add(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    mpz_tdiv_r(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
}

// acc <- acc * |a - b| mod n, using scratch for the difference.
inline void fold_difference(mpz_class& acc, mpz_class& scratch, const mpz_class& a, const mpz_class& b,
                            const mpz_class& n) {
    mpz_sub(scratch.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_abs(scratch.get_mpz_t(), scratch.get_mpz_t());
    mpz_mul(acc.get_mpz_t(), acc.get_mpz_t(), scratch.get_mpz_t());
    mpz_tdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
}

inline void publish(const AttemptControl& control, std::uint64_t iterations) {
    if (control.progress != nullptr) {
        control.progress->store(iterations, std::memory_order_relaxed);
    }
}

RhoOutcome outcome(RhoStatus status, std::uint64_t iterations, Natural factor = {}) {
    return RhoOutcome{status, std::move(factor), iterations};
}

// Classifies a single-step gcd found while replaying a batch.
RhoOutcome classify_single(const Natural& d, const Natural& n, std::uint64_t iterations) {
    if (d == n) {
        return outcome(RhoStatus::no_factor_cycle, iterations);
    }
    return outcome(RhoStatus::factor, iterations, d);
}

Natural difference(const mpz_class& a, const mpz_class& b) {
    Natural out;
    mpz_sub(out.mpz().get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_abs(out.mpz().get_mpz_t(), out.mpz().get_mpz_t());
    return out;
}

}  // namespace

std::string_view to_string(Detector d) { return d == Detector::floyd ? "floyd" : "brent"; }

std::optional<Detector> parse_detector(std::string_view text) {
    if (text == "floyd") {
        return Detector::floyd;
    }
    if (text == "brent") {
        return Detector::brent;
    }
    return std::nullopt;
}

std::string_view to_string(RhoStatus s) {
    switch (s) {
        case RhoStatus::factor:
            return "factor";
        case RhoStatus::no_factor_cycle:
            return "no_factor_cycle";
        case RhoStatus::budget_exhausted:
            return "budget_exhausted";
        case RhoStatus::cancelled:
            return "cancelled";
    }
    return "unknown";
}

bool is_valid_constant(const Natural& c, const Natural& n) {
    if (n.is_zero()) {
        return false;
    }
    const Natural r = c % n;
    if (r.is_zero()) {
        return false;
    }
    return n < Natural(2) || r != n - Natural(2);
}

std::uint64_t default_iteration_budget(const Natural& n, std::uint64_t gcd_batch) {
    Natural root = integer_root(n, 4);
    if (root * root * root * root != n) {
        root += Natural(1);
    }
    const Natural budget = Natural(8) * root * Natural(std::max<std::uint64_t>(gcd_batch, 1));
    if (!budget.fits_u64()) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return std::max(budget.to_u64(), kMinIterationBudget);
}

RhoParams RhoParams::make(const Natural& n, Natural c, Natural x0, std::uint64_t max_iters,
                          std::uint64_t gcd_batch) {
    if (n < Natural(3)) {
        throw PreconditionError("RhoParams: modulus must be >= 3");
    }
    if (!is_valid_constant(c, n)) {
        throw PreconditionError("RhoParams: constant " + c.to_string() + " is 0 or -2 modulo " + n.to_string());
    }
    if (!(x0 < n)) {
        throw PreconditionError("RhoParams: start value must be below the modulus");
    }
    if (gcd_batch == 0) {
        throw PreconditionError("RhoParams: gcd_batch must be >= 1");
    }
    RhoParams p;
    p.c_ = c % n;
    p.x0_ = std::move(x0);
    p.gcd_batch_ = gcd_batch;
    p.max_iters_ = max_iters == 0 ? default_iteration_budget(n, gcd_batch) : max_iters;
    return p;
}

Natural step(const Natural& x, const Natural& c, const Natural& n) {
    Natural out = x;
    advance(out.mpz(), c.mpz(), n.mpz());
    return out;
}

RhoOutcome rho_attempt(const Natural& n, const RhoParams& params, const AttemptControl& control) {
    check_modulus(n);
    const mpz_class& N = n.mpz();
    const mpz_class& c = params.c().mpz();
    const std::uint64_t batch = params.gcd_batch();
    const std::uint64_t budget = params.max_iters();

    mpz_class tortoise = params.x0().mpz();
    mpz_class hare = tortoise;
    mpz_class batch_tortoise;
    mpz_class batch_hare;
    mpz_class scratch;
    Natural acc;
    std::uint64_t iterations = 0;

    while (true) {
        if (control.cancel.stop_requested()) {
            return outcome(RhoStatus::cancelled, iterations);
        }
        if (iterations >= budget) {
            return outcome(RhoStatus::budget_exhausted, iterations);
        }
        const std::uint64_t batch_start = iterations;
        const std::uint64_t len = std::min(batch, budget - iterations);
        batch_tortoise = tortoise;
        batch_hare = hare;
        acc.mpz() = 1;
        for (std::uint64_t j = 0; j < len; ++j) {
            advance(tortoise, c, N);
            advance(hare, c, N);
            advance(hare, c, N);
            fold_difference(acc.mpz(), scratch, tortoise, hare, N);
            publish(control, ++iterations);
        }

        const Natural d = gcd(acc, n);
        if (d.is_one()) {
            continue;
        }
        if (d != n) {
            return outcome(RhoStatus::factor, iterations, d);
        }
        // Batch product collapsed to 0 mod n: replay step by step.
        tortoise = batch_tortoise;
        hare = batch_hare;
        for (std::uint64_t j = 0; j < len; ++j) {
            advance(tortoise, c, N);
            advance(hare, c, N);
            advance(hare, c, N);
            const Natural single = gcd(difference(tortoise, hare), n);
            if (!single.is_one()) {
                return classify_single(single, n, batch_start + j + 1);
            }
        }
        return outcome(RhoStatus::no_factor_cycle, iterations);
    }
}

RhoOutcome brent_attempt(const Natural& n, const RhoParams& params, const AttemptControl& control) {
    check_modulus(n);
    const mpz_class& N = n.mpz();
    const mpz_class& c = params.c().mpz();
    const std::uint64_t batch = params.gcd_batch();
    const std::uint64_t budget = params.max_iters();

    mpz_class hare = params.x0().mpz();
    mpz_class saved;
    mpz_class batch_hare;
    mpz_class scratch;
    Natural acc;
    std::uint64_t iterations = 0;
    std::uint64_t since_poll = 0;

    for (std::uint64_t stretch = 1;; stretch *= 2) {
        saved = hare;
        // Teleport: advance the hare `stretch` steps without gcds.
        for (std::uint64_t i = 0; i < stretch; ++i) {
            if (iterations >= budget) {
                return outcome(RhoStatus::budget_exhausted, iterations);
            }
            if (since_poll >= batch) {
                since_poll = 0;
                if (control.cancel.stop_requested()) {
                    return outcome(RhoStatus::cancelled, iterations);
                }
            }
            advance(hare, c, N);
            publish(control, ++iterations);
            ++since_poll;
        }
        for (std::uint64_t done = 0; done < stretch;) {
            if (control.cancel.stop_requested()) {
                return outcome(RhoStatus::cancelled, iterations);
            }
            if (iterations >= budget) {
                return outcome(RhoStatus::budget_exhausted, iterations);
            }
            const std::uint64_t batch_start = iterations;
            const std::uint64_t len = std::min({batch, stretch - done, budget - iterations});
            batch_hare = hare;
            acc.mpz() = 1;
            for (std::uint64_t j = 0; j < len; ++j) {
                advance(hare, c, N);
                fold_difference(acc.mpz(), scratch, saved, hare, N);
                publish(control, ++iterations);
            }
            since_poll = len;
            done += len;

            const Natural d = gcd(acc, n);
            if (d.is_one()) {
                continue;
            }
            if (d != n) {
                return outcome(RhoStatus::factor, iterations, d);
            }
            hare = batch_hare;
            for (std::uint64_t j = 0; j < len; ++j) {
                advance(hare, c, N);
                const Natural single = gcd(difference(saved, hare), n);
                if (!single.is_one()) {
                    return classify_single(single, n, batch_start + j + 1);
                }
            }
            return outcome(RhoStatus::no_factor_cycle, iterations);
        }
        if (stretch > std::numeric_limits<std::uint64_t>::max() / 2) {
            return outcome(RhoStatus::budget_exhausted, iterations);
        }
    }
}

RhoOutcome run_attempt(Detector detector, const Natural& n, const RhoParams& params, const AttemptControl& control) {
    return detector == Detector::floyd ? rho_attempt(n, params, control) : brent_attempt(n, params, control);
}

}  // namespace rhofactor
