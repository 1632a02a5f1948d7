#include "millwright/exact_math.hpp"

#include <cctype>
#include <cstdlib>

namespace millwright {

mpq_class parse_mpq(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty number");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            throw ParseError("bad rational: " + text);
        if (q.get_den() == 0) throw ParseError("zero denominator: " + text);
        q.canonicalize();
        return q;
    }

    // Decimal with optional exponent: [-]ddd[.ddd][e[-]dd]
    std::string mant = s;
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        mant = s.substr(0, epos);
        const std::string es = s.substr(epos + 1);
        if (es.empty()) throw ParseError("bad exponent: " + text);
        char* end = nullptr;
        exp10 = std::strtol(es.c_str(), &end, 10);
        if (end == nullptr || *end != '\0') throw ParseError("bad exponent: " + text);
    }
    std::string digits;
    bool neg = false;
    long frac_digits = 0;
    bool seen_dot = false;
    for (size_t i = 0; i < mant.size(); ++i) {
        char c = mant[i];
        if (c == '-' && i == 0) {
            neg = true;
        } else if (c == '+' && i == 0) {
        } else if (c == '.') {
            if (seen_dot) throw ParseError("bad number: " + text);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_dot) ++frac_digits;
        } else {
            throw ParseError("bad number: " + text);
        }
    }
    if (digits.empty()) throw ParseError("bad number: " + text);
    mpz_class num(digits, 10);
    if (neg) num = -num;
    mpq_class q(num);
    long e = exp10 - frac_digits;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0)
        q *= mpq_class(p10);
    else
        q /= mpq_class(p10);
    q.canonicalize();
    return q;
}

std::string mpq_to_string(const mpq_class& q) {
    return q.get_str();
}

bool mpq_is_integer(const mpq_class& q) {
    return q.get_den() == 1;
}

std::optional<mpq_class> exact_root(const mpq_class& q, unsigned long e) {
    if (e == 0) return std::nullopt;
    if (e == 1) return q;
    if (q < 0) return std::nullopt;
    mpz_class num_root, den_root;
    if (mpz_root(num_root.get_mpz_t(), q.get_num().get_mpz_t(), e) == 0) return std::nullopt;
    if (mpz_root(den_root.get_mpz_t(), q.get_den().get_mpz_t(), e) == 0) return std::nullopt;
    mpq_class r(num_root, den_root);
    r.canonicalize();
    return r;
}

mpq_class mpq_pow_si(const mpq_class& q, long n) {
    if (n == 0) return mpq_class(1);
    const bool invert = n < 0;
    const unsigned long e = static_cast<unsigned long>(invert ? -n : n);
    if (invert && q == 0) throw DomainError("0 cannot be raised to a negative power");
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), e);
    mpq_class r = invert ? mpq_class(den, num) : mpq_class(num, den);
    r.canonicalize();
    return r;
}

std::optional<mpq_class> exact_pow(const mpq_class& base, const mpq_class& expo) {
    if (mpq_is_integer(expo)) {
        if (!expo.get_num().fits_slong_p()) return std::nullopt;
        return mpq_pow_si(base, expo.get_num().get_si());
    }
    if (base <= 0) return std::nullopt;
    const mpz_class& den = expo.get_den();
    if (!den.fits_ulong_p()) return std::nullopt;
    auto root = exact_root(base, den.get_ui());
    if (!root) return std::nullopt;
    if (!expo.get_num().fits_slong_p()) return std::nullopt;
    return mpq_pow_si(*root, expo.get_num().get_si());
}

mpz_class mpq_ceil(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

mpz_class mpq_floor(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

} // namespace millwright
