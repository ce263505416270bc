#include "rhofactor/sieve.hpp"

#include <string>

namespace rhofactor {

PrimeTable sieve(std::uint64_t limit, std::uint64_t cap) {
    if (limit > cap) {
        throw CapacityError("sieve limit " + std::to_string(limit) + " exceeds cap " + std::to_string(cap));
    }
    PrimeTable table;
    table.limit = limit;
    if (limit < 2) {
        return table;
    }
    table.primes.push_back(2);

    // composite[i] describes the odd number 2i + 1.
    const std::uint64_t odd_count = (limit - 1) / 2 + 1;
    std::vector<bool> composite(odd_count, false);
    composite[0] = true;  // 1

    for (std::uint64_t p = 3; p * p <= limit; p += 2) {
        if (composite[p / 2]) {
            continue;
        }
        for (std::uint64_t j = p * p; j <= limit; j += 2 * p) {
            composite[j / 2] = true;
        }
    }
    for (std::uint64_t i = 1; i < odd_count; ++i) {
        if (!composite[i]) {
            table.primes.push_back(2 * i + 1);
        }
    }
    return table;
}

TrialDivision trial_divide(const Natural& n, const PrimeTable& table) {
    if (n.is_zero()) {
        throw std::invalid_argument("trial_divide: n must be >= 1");
    }
    TrialDivision out;
    out.cofactor = n;
    mpz_class& rest = out.cofactor.mpz();

    for (const std::uint64_t p : table.primes) {
        if (mpz_cmp_ui(rest.get_mpz_t(), p) < 0 || (p <= 0xffffffffULL && mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0)) {
            break;
        }
        unsigned k = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++k;
        }
        if (k > 0) {
            out.factors.push_back({Natural(p), k});
        }
    }
    // Loop stopped at p^2 > rest: rest is 1 or prime. Keep the contract that no
    // table prime survives in the cofactor.
    if (!out.cofactor.is_one() && out.cofactor.fits_u64() && out.cofactor.to_u64() <= table.limit) {
        out.factors.push_back({out.cofactor, 1});
        out.cofactor = Natural(1);
    }
    return out;
}

}  // namespace rhofactor
