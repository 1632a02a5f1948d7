#include "millwright/interval.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>

namespace millwright {

namespace {

mpfr_prec_t clamp_prec(mpfr_prec_t p) {
    return std::max<mpfr_prec_t>(p, 2);
}

// The default MPFR exponent range (+-2^30) is too narrow for tower-shaped
// families; widen it to the platform maximum once per thread.
void ensure_exponent_range() {
    thread_local const bool done = [] {
        mpfr_set_emin(mpfr_get_emin_min());
        mpfr_set_emax(mpfr_get_emax_max());
        return true;
    }();
    (void)done;
}

// Largest exponent we are willing to expand into an exact integer or a
// positional decimal string.
constexpr long kMaxExpandableExp = 1L << 26;

} // namespace

const char* to_string(CertifiedOrder o) {
    switch (o) {
        case CertifiedOrder::CertainlyLess: return "CertainlyLess";
        case CertifiedOrder::CertainlyGreater: return "CertainlyGreater";
        case CertifiedOrder::CertainlyEqual: return "CertainlyEqual";
        case CertifiedOrder::Indeterminate: return "Indeterminate";
    }
    return "?";
}

BigInterval::BigInterval() : BigInterval(kDefaultPrecision) {}

BigInterval::BigInterval(mpfr_prec_t prec) : prec_(clamp_prec(prec)) {
    ensure_exponent_range();
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

BigInterval::BigInterval(mpfr_prec_t prec, bool) : prec_(clamp_prec(prec)) {
    ensure_exponent_range();
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
}

BigInterval::BigInterval(const BigInterval& other) : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

BigInterval::BigInterval(BigInterval&& other) noexcept : prec_(other.prec_) {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

BigInterval& BigInterval::operator=(const BigInterval& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec_);
        mpfr_set_prec(hi_, other.prec_);
        prec_ = other.prec_;
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

BigInterval& BigInterval::operator=(BigInterval&& other) noexcept {
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        std::swap(prec_, other.prec_);
    }
    return *this;
}

BigInterval::~BigInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

void BigInterval::assert_invariant() const {
    assert(mpfr_cmp(lo_, hi_) <= 0);
}

BigInterval BigInterval::from_integer(const mpz_class& n, mpfr_prec_t prec) {
    BigInterval r(prec, true);
    mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
    r.assert_invariant();
    return r;
}

BigInterval BigInterval::from_integer(long n, mpfr_prec_t prec) {
    return from_integer(mpz_class(n), prec);
}

BigInterval BigInterval::from_rational(const mpq_class& q, mpfr_prec_t prec) {
    BigInterval r(prec, true);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    r.assert_invariant();
    return r;
}

BigInterval BigInterval::from_rationals(const mpq_class& lo, const mpq_class& hi,
                                        mpfr_prec_t prec) {
    if (lo > hi) throw DomainError("from_rationals requires lo <= hi");
    BigInterval r(prec, true);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    r.assert_invariant();
    return r;
}

BigInterval BigInterval::from_decimal(const std::string& lo, const std::string& hi,
                                      mpfr_prec_t prec) {
    BigInterval r(prec, true);
    if (mpfr_set_str(r.lo_, lo.c_str(), 10, MPFR_RNDD) != 0)
        throw ParseError("bad decimal: " + lo);
    if (mpfr_set_str(r.hi_, hi.c_str(), 10, MPFR_RNDU) != 0)
        throw ParseError("bad decimal: " + hi);
    if (mpfr_cmp(r.lo_, r.hi_) > 0)
        throw ParseError("decimal interval has lo > hi");
    return r;
}

bool BigInterval::is_point() const {
    return mpfr_equal_p(lo_, hi_);
}

bool BigInterval::is_positive() const {
    return mpfr_sgn(lo_) > 0;
}

bool BigInterval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool BigInterval::contains(const mpz_class& n) const {
    return mpfr_cmp_z(lo_, n.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_, n.get_mpz_t()) >= 0;
}

bool BigInterval::contains(const mpq_class& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool BigInterval::contains(const BigInterval& other) const {
    return mpfr_cmp(lo_, other.lo_) <= 0 && mpfr_cmp(hi_, other.hi_) >= 0;
}

double BigInterval::width_double() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

double BigInterval::relative_width() const {
    if (is_point()) return 0.0;
    mpfr_t w, m;
    mpfr_init2(w, 64);
    mpfr_init2(m, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_abs(m, lo_, MPFR_RNDD);
    mpfr_t ah;
    mpfr_init2(ah, 64);
    mpfr_abs(ah, hi_, MPFR_RNDD);
    if (mpfr_cmp(ah, m) > 0) mpfr_set(m, ah, MPFR_RNDD);
    double r;
    if (mpfr_zero_p(m)) {
        r = mpfr_get_d(w, MPFR_RNDU);
    } else {
        mpfr_div(w, w, m, MPFR_RNDU);
        r = mpfr_get_d(w, MPFR_RNDU);
    }
    mpfr_clear(w);
    mpfr_clear(m);
    mpfr_clear(ah);
    return r;
}

bool BigInterval::relative_width_within(mpfr_prec_t bits) const {
    if (is_point()) return true;
    if (mpfr_sgn(lo_) <= 0) return false;
    mpfr_t w;
    mpfr_init2(w, prec_ + 8);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_mul_2ui(w, w, static_cast<unsigned long>(bits), MPFR_RNDU);
    const bool ok = mpfr_cmp(w, lo_) <= 0;
    mpfr_clear(w);
    return ok;
}

namespace {

mpz_class get_integer(mpfr_srcptr x, mpfr_rnd_t rnd) {
    if (!mpfr_number_p(x))
        throw DomainError("endpoint is not a finite number");
    if (mpfr_get_exp(x) > kMaxExpandableExp)
        throw PrecisionExhausted("integer conversion exceeds bit budget");
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x, rnd);
    return z;
}

} // namespace

mpz_class BigInterval::ceil_lo() const { return get_integer(lo_, MPFR_RNDU); }
mpz_class BigInterval::ceil_hi() const { return get_integer(hi_, MPFR_RNDU); }
mpz_class BigInterval::floor_lo() const { return get_integer(lo_, MPFR_RNDD); }
mpz_class BigInterval::floor_hi() const { return get_integer(hi_, MPFR_RNDD); }

std::string mpfr_decimal(mpfr_srcptr x, size_t sig_digits, mpfr_rnd_t rnd) {
    if (mpfr_zero_p(x)) return "0";
    if (!mpfr_number_p(x)) throw DomainError("cannot render non-finite value");
    mpfr_exp_t e;
    char* raw = mpfr_get_str(nullptr, &e, 10, sig_digits, x, rnd);
    if (raw == nullptr) throw Error("mpfr_get_str failed");
    std::string digits(raw);
    mpfr_free_str(raw);

    bool negative = false;
    if (!digits.empty() && digits[0] == '-') {
        negative = true;
        digits.erase(0, 1);
    }
    // digits represent 0.ddd... * 10^e; render positionally.
    if (e > kMaxExpandableExp || e < -kMaxExpandableExp)
        throw PrecisionExhausted("decimal rendering exceeds size budget");

    std::string out;
    if (e <= 0) {
        out = "0." + std::string(static_cast<size_t>(-e), '0') + digits;
    } else if (static_cast<size_t>(e) >= digits.size()) {
        out = digits + std::string(static_cast<size_t>(e) - digits.size(), '0');
    } else {
        out = digits.substr(0, static_cast<size_t>(e)) + "." +
              digits.substr(static_cast<size_t>(e));
    }
    return negative ? "-" + out : out;
}

std::string BigInterval::lo_decimal_outward(size_t sig) const { return mpfr_decimal(lo_, sig, MPFR_RNDD); }
std::string BigInterval::hi_decimal_outward(size_t sig) const { return mpfr_decimal(hi_, sig, MPFR_RNDU); }
std::string BigInterval::lo_decimal_inward(size_t sig) const { return mpfr_decimal(lo_, sig, MPFR_RNDU); }
std::string BigInterval::hi_decimal_inward(size_t sig) const { return mpfr_decimal(hi_, sig, MPFR_RNDD); }

std::string BigInterval::debug_string() const {
    std::ostringstream os;
    os << "[" << lo_decimal_outward(24) << ", " << hi_decimal_outward(24) << "]@" << prec_;
    return os.str();
}

BigInterval BigInterval::rounded_to(mpfr_prec_t prec) const {
    BigInterval r(prec, true);
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

BigInterval add(const BigInterval& a, const BigInterval& b) {
    BigInterval r(std::max(a.prec_, b.prec_), true);
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    r.assert_invariant();
    return r;
}

BigInterval sub(const BigInterval& a, const BigInterval& b) {
    BigInterval r(std::max(a.prec_, b.prec_), true);
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    r.assert_invariant();
    return r;
}

BigInterval mul(const BigInterval& a, const BigInterval& b) {
    const mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    BigInterval r(prec, true);
    mpfr_t t;
    mpfr_init2(t, prec);

    // lo: min of the four products rounded down.
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);

    // hi: max of the four products rounded up.
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);

    mpfr_clear(t);
    r.assert_invariant();
    return r;
}

BigInterval div(const BigInterval& a, const BigInterval& b) {
    if (b.contains_zero()) throw DivisionByZeroInterval();
    const mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    BigInterval r(prec, true);
    mpfr_t t;
    mpfr_init2(t, prec);

    mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);

    mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);

    mpfr_clear(t);
    r.assert_invariant();
    return r;
}

BigInterval neg(const BigInterval& a) {
    BigInterval r(a.prec_, true);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    r.assert_invariant();
    return r;
}

// Increasing elementary functions apply directly to the endpoints.
#define MILLWRIGHT_MONOTONE_OP(NAME, MPFR_FN)                \
    BigInterval NAME(const BigInterval& a) {                 \
        BigInterval r(a.prec_, true);                        \
        MPFR_FN(r.lo_, a.lo_, MPFR_RNDD);                    \
        MPFR_FN(r.hi_, a.hi_, MPFR_RNDU);                    \
        r.assert_invariant();                                \
        return r;                                            \
    }

MILLWRIGHT_MONOTONE_OP(exp, mpfr_exp)
MILLWRIGHT_MONOTONE_OP(exp2, mpfr_exp2)

BigInterval ln(const BigInterval& a) {
    if (!a.is_positive()) throw DomainError("ln requires a positive interval");
    BigInterval r(a.prec_, true);
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    r.assert_invariant();
    return r;
}

BigInterval log2(const BigInterval& a) {
    if (!a.is_positive()) throw DomainError("log2 requires a positive interval");
    BigInterval r(a.prec_, true);
    mpfr_log2(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log2(r.hi_, a.hi_, MPFR_RNDU);
    r.assert_invariant();
    return r;
}

#undef MILLWRIGHT_MONOTONE_OP

BigInterval pow_real(const BigInterval& a, const BigInterval& r) {
    if (!a.is_positive()) throw DomainError("pow_real requires a positive base");
    return exp(mul(r, ln(a)));
}

BigInterval pow_integer(const BigInterval& a, const mpz_class& e) {
    if (e < 0) throw DomainError("pow_integer requires a nonnegative exponent");
    if (e == 0) return BigInterval::from_integer(1, a.prec_);
    if (e == 1) return a;
    if (!a.is_positive()) throw DomainError("pow_integer requires a positive base");
    BigInterval out(a.prec_, true);
    mpfr_pow_z(out.lo_, a.lo_, e.get_mpz_t(), MPFR_RNDD);
    mpfr_pow_z(out.hi_, a.hi_, e.get_mpz_t(), MPFR_RNDU);
    out.assert_invariant();
    return out;
}

BigInterval rootn(const BigInterval& a, unsigned long k) {
    if (k == 0) throw DomainError("rootn requires k >= 1");
    if (mpfr_sgn(a.lo_) < 0) throw DomainError("rootn requires a nonnegative interval");
    if (k == 1) return a;
    BigInterval out(a.prec_, true);
    mpfr_rootn_ui(out.lo_, a.lo_, k, MPFR_RNDD);
    mpfr_rootn_ui(out.hi_, a.hi_, k, MPFR_RNDU);
    out.assert_invariant();
    return out;
}

CertifiedOrder compare(const BigInterval& a, const BigInterval& b) {
    if (a.is_point() && b.is_point() && mpfr_equal_p(a.lo_, b.lo_))
        return CertifiedOrder::CertainlyEqual;
    if (mpfr_cmp(a.hi_, b.lo_) < 0) return CertifiedOrder::CertainlyLess;
    if (mpfr_cmp(a.lo_, b.hi_) > 0) return CertifiedOrder::CertainlyGreater;
    return CertifiedOrder::Indeterminate;
}

std::optional<bool> certified_le(const BigInterval& a, const BigInterval& b) {
    if (mpfr_cmp(a.hi(), b.lo()) <= 0) return true;
    if (mpfr_cmp(a.lo(), b.hi()) > 0) return false;
    return std::nullopt;
}

std::optional<bool> certified_lt(const BigInterval& a, const BigInterval& b) {
    if (mpfr_cmp(a.hi(), b.lo()) < 0) return true;
    if (mpfr_cmp(a.lo(), b.hi()) >= 0) return false;
    return std::nullopt;
}

BigInterval log2_constant(mpfr_prec_t prec) {
    BigInterval r(prec, true);
    mpfr_const_log2(r.lo_, MPFR_RNDD);
    mpfr_const_log2(r.hi_, MPFR_RNDU);
    return r;
}

} // namespace millwright
