#ifndef MILLWRIGHT_INTERVAL_HPP
#define MILLWRIGHT_INTERVAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "millwright/errors.hpp"

namespace millwright {

// Result of a certified comparison between two intervals.  CertainlyEqual is
// only produced when both operands are exact point values.
enum class CertifiedOrder { CertainlyLess, CertainlyGreater, CertainlyEqual, Indeterminate };

const char* to_string(CertifiedOrder o);

// Default working precision and escalation cap, in bits.
inline constexpr mpfr_prec_t kDefaultPrecision = 128;
inline constexpr mpfr_prec_t kDefaultPrecisionCap = 1u << 20;

// A closed interval [lo, hi] of arbitrary-precision floats with outward
// (directed) rounding: lo is always rounded toward -inf, hi toward +inf, so
// every operation encloses the exact mathematical result whenever the inputs
// enclose theirs.  Values are immutable after construction and safe to share
// across threads.
class BigInterval {
  public:
    BigInterval();                           // [0, 0] at default precision
    explicit BigInterval(mpfr_prec_t prec);  // [0, 0] at given precision
    BigInterval(const BigInterval& other);
    BigInterval(BigInterval&& other) noexcept;
    BigInterval& operator=(const BigInterval& other);
    BigInterval& operator=(BigInterval&& other) noexcept;
    ~BigInterval();

    static BigInterval from_integer(const mpz_class& n, mpfr_prec_t prec);
    static BigInterval from_integer(long n, mpfr_prec_t prec);
    static BigInterval from_rational(const mpq_class& q, mpfr_prec_t prec);
    // Outward enclosure of the interval [lo, hi] given as exact rationals.
    static BigInterval from_rationals(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec);
    // Both endpoints from decimal strings, rounded outward.
    static BigInterval from_decimal(const std::string& lo, const std::string& hi,
                                    mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

    bool is_point() const;
    bool is_positive() const;  // lo > 0
    bool contains_zero() const;
    bool contains(const mpz_class& n) const;
    bool contains(const mpq_class& q) const;
    bool contains(const BigInterval& other) const;  // other subset of *this

    // hi - lo rounded up, as a double (+inf if it overflows a double).
    double width_double() const;
    // Relative width (hi - lo) / max(|lo|, |hi|); 0 for points.
    double relative_width() const;
    // (hi - lo) * 2^bits <= |lo|, exactly; requires lo > 0 unless the
    // interval is a point.
    bool relative_width_within(mpfr_prec_t bits) const;

    // Exact integer ceilings/floors of the endpoints.
    mpz_class ceil_lo() const;
    mpz_class ceil_hi() const;
    mpz_class floor_lo() const;
    mpz_class floor_hi() const;

    // Decimal renderings of the endpoints.  *_outward round away from the
    // interval (lo down, hi up); *_inward round into it.
    std::string lo_decimal_outward(size_t sig_digits) const;
    std::string hi_decimal_outward(size_t sig_digits) const;
    std::string lo_decimal_inward(size_t sig_digits) const;
    std::string hi_decimal_inward(size_t sig_digits) const;

    std::string debug_string() const;

    // Same value re-rounded outward at a new precision.
    BigInterval rounded_to(mpfr_prec_t prec) const;

    friend BigInterval add(const BigInterval& a, const BigInterval& b);
    friend BigInterval sub(const BigInterval& a, const BigInterval& b);
    friend BigInterval mul(const BigInterval& a, const BigInterval& b);
    friend BigInterval div(const BigInterval& a, const BigInterval& b);
    friend BigInterval neg(const BigInterval& a);

    friend BigInterval exp(const BigInterval& a);
    friend BigInterval ln(const BigInterval& a);
    friend BigInterval exp2(const BigInterval& a);
    friend BigInterval log2(const BigInterval& a);

    // a^r computed as exp(r * ln a); requires a.lo > 0.
    friend BigInterval pow_real(const BigInterval& a, const BigInterval& r);
    // a^e for integer e >= 0; requires a.lo > 0 unless e is 0 or 1.
    friend BigInterval pow_integer(const BigInterval& a, const mpz_class& e);
    // k-th root, k >= 1; requires a.lo >= 0.
    friend BigInterval rootn(const BigInterval& a, unsigned long k);

    friend CertifiedOrder compare(const BigInterval& a, const BigInterval& b);
    friend BigInterval log2_constant(mpfr_prec_t prec);

  private:
    BigInterval(mpfr_prec_t prec, bool);  // uninitialized endpoints
    void assert_invariant() const;

    mpfr_t lo_;
    mpfr_t hi_;
    mpfr_prec_t prec_;
};

BigInterval add(const BigInterval& a, const BigInterval& b);
BigInterval sub(const BigInterval& a, const BigInterval& b);
BigInterval mul(const BigInterval& a, const BigInterval& b);
BigInterval div(const BigInterval& a, const BigInterval& b);
BigInterval neg(const BigInterval& a);
BigInterval exp(const BigInterval& a);
BigInterval ln(const BigInterval& a);
BigInterval exp2(const BigInterval& a);
BigInterval log2(const BigInterval& a);
BigInterval pow_real(const BigInterval& a, const BigInterval& r);
BigInterval pow_integer(const BigInterval& a, const mpz_class& e);
BigInterval rootn(const BigInterval& a, unsigned long k);
CertifiedOrder compare(const BigInterval& a, const BigInterval& b);

// Certified inequality for all reals in the enclosures; nullopt when the
// enclosures are too wide to decide.
std::optional<bool> certified_le(const BigInterval& a, const BigInterval& b);
std::optional<bool> certified_lt(const BigInterval& a, const BigInterval& b);

// Enclosure of log(2) at the given precision.
BigInterval log2_constant(mpfr_prec_t prec);

// Decimal string of a single mpfr value with the given rounding.
std::string mpfr_decimal(mpfr_srcptr x, size_t sig_digits, mpfr_rnd_t rnd);

} // namespace millwright

#endif
