// Test-side oracles, independent of the library implementation paths they
// check: trial-division primality, linear prime search, integer-Newton root
// digits, and a tiny deterministic RNG.
#ifndef MILLWRIGHT_TEST_ORACLE_HELPERS_HPP
#define MILLWRIGHT_TEST_ORACLE_HELPERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline bool trial_division_is_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;
    mpz_class d = 3;
    while (d * d <= n) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
        d += 2;
    }
    return true;
}

inline mpz_class next_prime_by_trial(const mpz_class& bound) {
    mpz_class c = bound < 2 ? mpz_class(2) : bound;
    while (!trial_division_is_prime(c)) ++c;
    return c;
}

inline std::vector<unsigned long> primes_below(unsigned long limit) {
    std::vector<bool> composite(limit, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i < limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j < limit; j += i) composite[j] = true;
    }
    return out;
}

// Decimal digits of v^(1/e) via integer Newton (mpz_root is a floor root):
// returns "d0.d1d2..." with `frac` digits after the point, truncated.
inline std::string root_digits(const mpz_class& v, unsigned long e, unsigned long frac) {
    mpz_class scaled = v;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, frac * e);
    scaled *= p10;
    mpz_class r;
    mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), e);
    std::string s = r.get_str();
    if (s.size() <= frac) s.insert(0, std::string(frac + 1 - s.size(), '0'));
    s.insert(s.size() - frac, ".");
    return s;
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi]
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    mpq_class rational(long num_span, long den_span) {
        const long num = range(-num_span, num_span);
        const long den = range(1, den_span);
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
};

} // namespace oracle

#endif
