#pragma once

// Reference implementations used only by tests. None of them touch GMP or the
// library under test.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// ---- schoolbook decimal arithmetic on digit strings -------------------------

inline std::string strip_zeros(std::string s) {
    const auto nz = s.find_first_not_of('0');
    return nz == std::string::npos ? "0" : s.substr(nz);
}

inline int compare(const std::string& a, const std::string& b) {
    const std::string x = strip_zeros(a);
    const std::string y = strip_zeros(b);
    if (x.size() != y.size()) {
        return x.size() < y.size() ? -1 : 1;
    }
    return x.compare(y) < 0 ? -1 : (x == y ? 0 : 1);
}

inline std::string multiply(const std::string& a, const std::string& b) {
    std::vector<int> acc(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j + 1] += (a[i] - '0') * (b[j] - '0');
        }
    }
    for (std::size_t k = acc.size(); k-- > 1;) {
        acc[k - 1] += acc[k] / 10;
        acc[k] %= 10;
    }
    std::string out;
    for (const int d : acc) {
        out.push_back(static_cast<char>('0' + d));
    }
    return strip_zeros(out);
}

// a - b with a >= b
inline std::string subtract(const std::string& a, const std::string& b) {
    std::string x = strip_zeros(a);
    const std::string y = std::string(x.size() - std::min(x.size(), strip_zeros(b).size()), '0') + strip_zeros(b);
    int borrow = 0;
    for (std::size_t k = x.size(); k-- > 0;) {
        int d = (x[k] - '0') - (y[k] - '0') - borrow;
        borrow = d < 0 ? 1 : 0;
        x[k] = static_cast<char>('0' + (d + 10) % 10);
    }
    if (borrow) {
        throw std::logic_error("oracle::subtract underflow");
    }
    return strip_zeros(x);
}

// Long division one decimal digit at a time; each quotient digit by repeated subtraction.
inline std::string mod(const std::string& a, const std::string& m) {
    std::string rem = "0";
    for (const char ch : strip_zeros(a)) {
        rem = strip_zeros(rem + ch);
        while (compare(rem, m) >= 0) {
            rem = subtract(rem, m);
        }
    }
    return rem;
}

inline std::string pow10(unsigned e) { return "1" + std::string(e, '0'); }

// ---- machine-word number theory ---------------------------------------------

inline std::uint64_t euclid(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

inline bool is_prime_trial(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        unsigned k = 0;
        while (n % d == 0) {
            n /= d;
            ++k;
        }
        if (k) {
            out.emplace_back(d, k);
        }
    }
    if (n > 1) {
        out.emplace_back(n, 1);
    }
    return out;
}

// Smallest i >= 1 with x_i == x_{2i}, by materializing the sequence.
template <class F>
std::uint64_t first_meeting_by_enumeration(F f, std::uint64_t x0, std::uint64_t max_len) {
    std::vector<std::uint64_t> seq{x0};
    for (std::uint64_t i = 1; i <= max_len; ++i) {
        while (seq.size() <= 2 * i) {
            seq.push_back(f(seq.back()));
        }
        if (seq[i] == seq[2 * i]) {
            return i;
        }
    }
    throw std::logic_error("oracle: no meeting within max_len");
}

}  // namespace oracle
