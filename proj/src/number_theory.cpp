#include "rhofactor/number_theory.hpp"

#include <array>
#include <stdexcept>

namespace rhofactor {

namespace {

constexpr std::array<unsigned, 13> kWitnessPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

const Natural& deterministic_bound() {
    static const Natural bound = Natural::parse(kDeterministicPrimalityBound);
    return bound;
}

// One Miller-Rabin round; n odd > 3, n - 1 = d * 2^s.
bool passes_round(const mpz_class& n, const mpz_class& n_minus_1, const mpz_class& d, unsigned long s,
                  const mpz_class& witness) {
    mpz_class x;
    mpz_powm(x.get_mpz_t(), witness.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) {
        return true;
    }
    for (unsigned long r = 1; r < s; ++r) {
        mpz_mul(x.get_mpz_t(), x.get_mpz_t(), x.get_mpz_t());
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
        if (x == n_minus_1) {
            return true;
        }
        if (x == 1) {
            return false;
        }
    }
    return false;
}

}  // namespace

Natural mod_mul(const Natural& a, const Natural& b, const Natural& n) {
    if (n.is_zero()) {
        throw ModulusZeroError("mod_mul: modulus is zero");
    }
    Natural out;
    mpz_mul(out.mpz().get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    mpz_mod(out.mpz().get_mpz_t(), out.mpz().get_mpz_t(), n.mpz().get_mpz_t());
    return out;
}

Natural abs_diff(const Natural& a, const Natural& b) { return a < b ? b - a : a - b; }

Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& n) {
    if (n.is_zero()) {
        throw ModulusZeroError("mod_pow: modulus is zero");
    }
    Natural out;
    mpz_powm(out.mpz().get_mpz_t(), base.mpz().get_mpz_t(), exponent.mpz().get_mpz_t(), n.mpz().get_mpz_t());
    return out;
}

Natural integer_root(const Natural& n, unsigned k) {
    if (k == 0) {
        throw std::invalid_argument("integer_root: k must be positive");
    }
    Natural out;
    mpz_root(out.mpz().get_mpz_t(), n.mpz().get_mpz_t(), k);
    return out;
}

bool is_probable_prime(const Natural& n, unsigned rounds) {
    if (rounds == 0) {
        throw std::invalid_argument("is_probable_prime: rounds must be >= 1");
    }
    if (n < Natural(2)) {
        return false;
    }
    for (const unsigned p : kWitnessPrimes) {
        if (n == Natural(p)) {
            return true;
        }
        if (mpz_divisible_ui_p(n.mpz().get_mpz_t(), p) != 0) {
            return false;
        }
    }
    // All remaining n are odd and > 41.
    const mpz_class& nz = n.mpz();
    const mpz_class n_minus_1 = nz - 1;
    mpz_class d = n_minus_1;
    const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    if (n < deterministic_bound()) {
        for (const unsigned p : kWitnessPrimes) {
            if (!passes_round(nz, n_minus_1, d, s, mpz_class(p))) {
                return false;
            }
        }
        return true;
    }

    const std::uint64_t low = mpz_getlimbn(nz.get_mpz_t(), 0);
    std::mt19937_64 rng(mix_seed(low, n.bit_length(), rounds));
    const Natural span = n - Natural(3);  // witnesses in [2, n - 2]
    for (unsigned i = 0; i < rounds; ++i) {
        const Natural witness = random_below(span, rng) + Natural(2);
        if (!passes_round(nz, n_minus_1, d, s, witness.mpz())) {
            return false;
        }
    }
    return true;
}

Natural next_probable_prime(const Natural& n) {
    if (n <= Natural(2)) {
        return Natural(2);
    }
    Natural candidate = n;
    if (candidate.is_even()) {
        candidate += Natural(1);
    }
    while (!is_probable_prime(candidate)) {
        candidate += Natural(2);
    }
    return candidate;
}

Natural random_below(const Natural& bound, std::mt19937_64& rng) {
    if (bound.is_zero()) {
        throw ModulusZeroError("random_below: bound is zero");
    }
    const std::size_t words = bound.bit_length() / 64 + 2;
    Natural out;
    mpz_class& z = out.mpz();
    for (std::size_t i = 0; i < words; ++i) {
        const std::uint64_t w = rng();
        mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), 64);
        mpz_class part;
        mpz_import(part.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
        z += part;
    }
    mpz_mod(z.get_mpz_t(), z.get_mpz_t(), bound.mpz().get_mpz_t());
    return out;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    auto splitmix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    return splitmix(splitmix(splitmix(a) ^ b) ^ c);
}

}  // namespace rhofactor
