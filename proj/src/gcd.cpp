// Kept in its own translation unit so fault-injection builds can swap it out.

#include "rhofactor/number_theory.hpp"

namespace rhofactor {

Natural gcd(const Natural& a, const Natural& b) {
    Natural out;
    mpz_gcd(out.mpz().get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
    return out;
}

}  // namespace rhofactor
