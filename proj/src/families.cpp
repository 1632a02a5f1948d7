#include "millwright/families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace millwright {

namespace {

// Bit budget for exact integer/rational fast paths.
constexpr unsigned long kMaxExactBits = 1ul << 26;

constexpr mpfr_prec_t kCertifyPrecisions[] = {128, 256, 512, 1024, 2048, 4096};

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// q^e for a big integer exponent, guarded by the exact bit budget.
mpq_class pow_q_z(const mpq_class& q, const mpz_class& e) {
    if (e < 0) throw DomainError("negative exponent in exact power");
    if (e == 0) return mpq_class(1);
    const unsigned long base_bits =
        std::max(mpz_sizeinbase(q.get_num().get_mpz_t(), 2),
                 mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    if (!e.fits_ulong_p() || base_bits * e.get_ui() > kMaxExactBits)
        throw PrecisionExhausted("exact power " + q.get_str() + "^" + e.get_str() +
                                 " exceeds the bit budget");
    const unsigned long eu = e.get_ui();
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), eu);
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), eu);
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

Value v_mul(const Value& a, const Value& b, mpfr_prec_t prec) {
    if (a.is_exact() && b.is_exact())
        return Value::exact(mpq_class(a.exact_value() * b.exact_value()));
    return Value::enclosure(mul(a.to_interval(prec), b.to_interval(prec)));
}

Value v_div(const Value& a, const Value& b, mpfr_prec_t prec) {
    if (a.is_exact() && b.is_exact()) {
        if (b.exact_value() == 0) throw DivisionByZeroInterval();
        return Value::exact(mpq_class(a.exact_value() / b.exact_value()));
    }
    return Value::enclosure(div(a.to_interval(prec), b.to_interval(prec)));
}

Value v_sub(const Value& a, const Value& b, mpfr_prec_t prec) {
    if (a.is_exact() && b.is_exact())
        return Value::exact(mpq_class(a.exact_value() - b.exact_value()));
    return Value::enclosure(sub(a.to_interval(prec), b.to_interval(prec)));
}

// base^expo for positive base: exact when possible, else exp(expo * ln base).
Value v_pow(const Value& base, const Value& expo, mpfr_prec_t prec) {
    if (base.is_exact() && expo.is_exact()) {
        if (mpq_is_integer(expo.exact_value())) {
            const mpz_class& e = expo.exact_value().get_num();
            if (e >= 0) return Value::exact(pow_q_z(base.exact_value(), e));
        }
        if (auto r = exact_pow(base.exact_value(), expo.exact_value())) return Value::exact(*r);
    }
    const BigInterval b = base.to_interval(prec);
    if (expo.is_exact() && mpq_is_integer(expo.exact_value()) && expo.exact_value() >= 0)
        return Value::enclosure(pow_integer(b, expo.exact_value().get_num()));
    return Value::enclosure(pow_real(b, expo.to_interval(prec)));
}

} // namespace

std::string Value::debug_string() const {
    if (is_exact()) return exact_value().get_str();
    return interval().debug_string();
}

std::optional<bool> value_le(const Value& a, const Value& b, mpfr_prec_t prec) {
    if (a.is_exact() && b.is_exact()) return a.exact_value() <= b.exact_value();
    return certified_le(a.to_interval(prec), b.to_interval(prec));
}

std::optional<bool> value_lt(const Value& a, const Value& b, mpfr_prec_t prec) {
    if (a.is_exact() && b.is_exact()) return a.exact_value() < b.exact_value();
    return certified_lt(a.to_interval(prec), b.to_interval(prec));
}

const char* to_string(FamilyDescriptor::Kind k) {
    using Kind = FamilyDescriptor::Kind;
    switch (k) {
        case Kind::Mills: return "mills";
        case Kind::Wright: return "wright";
        case Kind::FarhiPower: return "farhi-power";
        case Kind::FarhiFactorial: return "farhi-factorial";
        case Kind::GeometricA: return "geometric";
        case Kind::LambdaPower: return "lambda-power";
    }
    return "?";
}

FamilyDescriptor::FamilyDescriptor(Kind kind, unsigned long n0, mpq_class domain_lo,
                                   std::optional<mpq_class> domain_hi, GapFunction gap)
    : kind_(kind), n0_(n0), domain_lo_(std::move(domain_lo)), domain_hi_(std::move(domain_hi)),
      gap_(std::move(gap)) {}

FamilyDescriptor FamilyDescriptor::mills() {
    // Start index 1 (f_1 = x^3) gives the classical normalization of the
    // constant; starting at f_0 = x would construct its cube instead, with an
    // identical chain.
    return FamilyDescriptor(Kind::Mills, 1, mpq_class(1), std::nullopt,
                            GapFunction::power(mpq_class(2, 3)));
}

FamilyDescriptor FamilyDescriptor::wright() {
    return FamilyDescriptor(Kind::Wright, 0, mpq_class(0), std::nullopt,
                            GapFunction::linear_log2());
}

FamilyDescriptor FamilyDescriptor::farhi_power(const mpq_class& xi, const mpq_class& k,
                                               std::optional<mpq_class> a_override) {
    if (xi <= 1) throw DomainError("farhi-power requires xi > 1");
    if (k <= 1) throw DomainError("farhi-power requires k > 1");
    const mpq_class a_min = admissible_a(xi, k);
    mpq_class a = a_min;
    if (a_override) {
        if (*a_override < a_min)
            throw DomainError("domain threshold a may only be raised above " + a_min.get_str());
        a = *a_override;
    }
    FamilyDescriptor f(Kind::FarhiPower, 1, a, std::nullopt,
                       GapFunction::log_power(mpq_class(1), mpq_class(k + 1), mpq_class(0)));
    f.p1_ = xi;
    f.p2_ = k;
    f.assumptions_.push_back("prime gaps are assumed to satisfy p' - p <= (ln p)^(k+1) - 1 with k=" +
                             k.get_str() + " beyond any empirically checked range");
    f.assumptions_.push_back("domain threshold a=" + a.get_str() +
                             " certified against both admissibility inequalities");
    return f;
}

FamilyDescriptor FamilyDescriptor::farhi_factorial(const mpq_class& k, const mpq_class& eps,
                                                   const mpq_class& ck, unsigned long n0,
                                                   std::vector<std::string> assumptions) {
    if (k <= 1) throw DomainError("farhi-factorial requires k > 1");
    if (eps <= 0) throw DomainError("farhi-factorial requires eps > 0");
    if (ck <= 0) throw DomainError("farhi-factorial requires ck > 0");
    if (n0 < 2) throw DomainError("farhi-factorial requires n0 >= 2");
    FamilyDescriptor f(Kind::FarhiFactorial, n0, mpq_class(1), mpq_class(2),
                       GapFunction::log_power(ck, k, mpq_class(1)));
    f.p1_ = k + eps;
    f.p2_ = k;
    f.p3_ = ck;
    f.assumptions_ = std::move(assumptions);
    f.assumptions_.push_back("prime gap bound p' - p <= " + ck.get_str() + " * (ln p)^" +
                             k.get_str() + " is conjectural beyond the fitted range");
    return f;
}

FamilyDescriptor FamilyDescriptor::geometric(const mpq_class& A) {
    if (A <= 1) throw DomainError("geometric requires A > 1");
    FamilyDescriptor f(Kind::GeometricA, 1, mpq_class(0), std::nullopt,
                       GapFunction::constant(A));
    f.p1_ = A;
    return f;
}

FamilyDescriptor FamilyDescriptor::lambda_power(const mpq_class& lambda, const mpz_class& M) {
    if (lambda <= 0) throw DomainError("lambda-power requires lambda > 0");
    if (M < 1) throw DomainError("lambda-power requires M >= 1");
    mpq_class c = std::max(mpq_class(1), mpq_class(M + 1));
    FamilyDescriptor f(Kind::LambdaPower, 1, c, std::nullopt,
                       GapFunction::constant(mpq_class(M + 1)));
    f.p1_ = lambda;
    f.m_ = M;
    return f;
}

FamilyDescriptor FamilyDescriptor::with_gap(GapFunction g) const {
    FamilyDescriptor f = *this;
    f.gap_ = std::move(g);
    f.assumptions_.push_back("gap function overridden to " + f.gap_.spec_string());
    return f;
}

unsigned long FamilyDescriptor::default_terms() const {
    switch (kind_) {
        case Kind::Mills: return 6;
        case Kind::Wright: return 4;  // the 5th term needs 2^v with v beyond any bit budget
        case Kind::FarhiPower: return 4;
        case Kind::FarhiFactorial: return 12;
        case Kind::GeometricA: return 12;
        case Kind::LambdaPower: return 12;
    }
    return 4;
}

bool FamilyDescriptor::ratio_depends_on_x() const {
    return kind_ != Kind::FarhiFactorial && kind_ != Kind::GeometricA;
}

std::string FamilyDescriptor::spec_string() const {
    switch (kind_) {
        case Kind::Mills: return "mills";
        case Kind::Wright: return "wright";
        case Kind::FarhiPower:
            return "farhi-power:xi=" + p1_.get_str() + ",k=" + p2_.get_str() +
                   ",a=" + domain_lo_.get_str();
        case Kind::FarhiFactorial:
            return "farhi-factorial:k=" + p2_.get_str() + ",eps=" + mpq_class(p1_ - p2_).get_str() +
                   ",ck=" + p3_.get_str() + ",n0=" + std::to_string(n0_);
        case Kind::GeometricA: return "geometric:A=" + p1_.get_str();
        case Kind::LambdaPower:
            return "lambda-power:lambda=" + p1_.get_str() + ",M=" + m_.get_str();
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Per-family evaluation.
// ---------------------------------------------------------------------------

Value FamilyDescriptor::exponent(unsigned long n, mpfr_prec_t prec) const {
    switch (kind_) {
        case Kind::Mills: {
            if (n > 40) throw PrecisionExhausted("family index too large: 3^n overflows");
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), 3, n);
            return Value::exact(e);
        }
        case Kind::FarhiPower: {
            const mpq_class nq(static_cast<unsigned long>(n));
            if (auto e = exact_pow(nq, p1_)) return Value::exact(*e);
            return Value::enclosure(
                pow_real(BigInterval::from_rational(nq, prec), BigInterval::from_rational(p1_, prec)));
        }
        default: throw Error("exponent() is only defined for power-shaped families");
    }
}

Value FamilyDescriptor::factorial_scale(unsigned long n, mpfr_prec_t prec) const {
    mpz_class fac;
    if (n > 200'000) throw PrecisionExhausted("factorial index too large");
    mpz_fac_ui(fac.get_mpz_t(), n);
    return v_pow(Value::exact(fac), Value::exact(p1_), prec);
}

Value FamilyDescriptor::eval(unsigned long n, const Value& x, mpfr_prec_t prec) const {
    switch (kind_) {
        case Kind::Mills:
        case Kind::FarhiPower:
            return v_pow(x, exponent(n, prec), prec);
        case Kind::Wright: {
            if (n == 0) return x;
            if (x.is_exact()) {
                // Exact tower while every level stays a representable integer.
                mpq_class t = x.exact_value();
                bool exact_ok = true;
                for (unsigned long i = 1; i <= n; ++i) {
                    if (!mpq_is_integer(t) || t < 0 ||
                        !t.get_num().fits_ulong_p() || t.get_num().get_ui() > kMaxExactBits) {
                        exact_ok = false;
                        break;
                    }
                    mpz_class p;
                    mpz_ui_pow_ui(p.get_mpz_t(), 2, t.get_num().get_ui());
                    t = mpq_class(p);
                }
                if (exact_ok) return Value::exact(t);
            }
            BigInterval iv = x.to_interval(prec);
            for (unsigned long i = 1; i <= n; ++i) iv = exp2(iv);
            return Value::enclosure(iv);
        }
        case Kind::FarhiFactorial:
            return v_mul(factorial_scale(n, prec), x, prec);
        case Kind::GeometricA:
            return v_mul(Value::exact(mpq_pow_si(p1_, static_cast<long>(n))), x, prec);
        case Kind::LambdaPower:
            return v_mul(Value::exact(p1_), v_pow(x, Value::exact(mpz_class(n)), prec), prec);
    }
    throw Error("unreachable family kind");
}

Value FamilyDescriptor::eval_inverse(unsigned long n, const Value& y, mpfr_prec_t prec) const {
    // Exact closed forms first.
    switch (kind_) {
        case Kind::Mills:
        case Kind::FarhiPower: {
            const Value e = exponent(n, prec);
            if (y.is_exact() && e.is_exact()) {
                const mpq_class inv_e = mpq_class(1) / e.exact_value();
                if (auto r = exact_pow(y.exact_value(), inv_e)) return Value::exact(*r);
            }
            break;
        }
        case Kind::Wright: {
            if (y.is_exact()) {
                mpq_class t = y.exact_value();
                unsigned long done = 0;
                while (done < n && mpq_is_integer(t) && t > 0 &&
                       mpz_popcount(t.get_num().get_mpz_t()) == 1) {
                    t = mpq_class(mpz_class(mpz_scan1(t.get_num().get_mpz_t(), 0)));
                    ++done;
                    if (t == 0) break;  // log2(1) = 0: further levels need ln of 0
                }
                if (done == n) return Value::exact(t);
            }
            break;
        }
        case Kind::FarhiFactorial: {
            const Value scale = factorial_scale(n, prec);
            if (y.is_exact() && scale.is_exact())
                return Value::exact(mpq_class(y.exact_value() / scale.exact_value()));
            break;
        }
        case Kind::GeometricA:
            if (y.is_exact())
                return Value::exact(
                    mpq_class(y.exact_value() / mpq_pow_si(p1_, static_cast<long>(n))));
            break;
        case Kind::LambdaPower: {
            if (y.is_exact()) {
                const mpq_class scaled = y.exact_value() / p1_;
                if (auto r = exact_root(scaled, n)) return Value::exact(*r);
            }
            break;
        }
    }

    // Certified enclosure with the relative-width contract 2^-(prec/2).
    for (mpfr_prec_t work = std::max<mpfr_prec_t>(prec, 64); work <= kDefaultPrecisionCap;
         work *= 2) {
        BigInterval iv = [&]() -> BigInterval {
            switch (kind_) {
                case Kind::Mills: {
                    mpz_class e;
                    mpz_ui_pow_ui(e.get_mpz_t(), 3, n);
                    if (!e.fits_ulong_p())
                        throw PrecisionExhausted("family index too large: 3^n overflows");
                    return rootn(y.to_interval(work), e.get_ui());
                }
                case Kind::FarhiPower: {
                    const Value e = exponent(n, work);
                    if (e.is_exact()) {
                        const mpq_class inv_e = mpq_class(1) / e.exact_value();
                        return pow_real(y.to_interval(work),
                                        BigInterval::from_rational(inv_e, work));
                    }
                    return pow_real(y.to_interval(work),
                                    div(BigInterval::from_integer(1, work), e.interval()));
                }
                case Kind::Wright: {
                    BigInterval iv2 = y.to_interval(work);
                    for (unsigned long i = 0; i < n; ++i) iv2 = log2(iv2);
                    return iv2;
                }
                case Kind::FarhiFactorial:
                    return div(y.to_interval(work), factorial_scale(n, work).to_interval(work));
                case Kind::GeometricA:
                    return div(y.to_interval(work),
                               BigInterval::from_rational(mpq_pow_si(p1_, static_cast<long>(n)), work));
                case Kind::LambdaPower:
                    return rootn(div(y.to_interval(work), BigInterval::from_rational(p1_, work)), n);
            }
            throw Error("unreachable family kind");
        }();
        if (iv.relative_width_within(prec / 2)) return Value::enclosure(iv);
    }
    throw PrecisionExhausted("eval_inverse cannot reach the requested relative width");
}

Value FamilyDescriptor::derivative_ratio(unsigned long n, const Value& x, mpfr_prec_t prec) const {
    switch (kind_) {
        case Kind::Mills: {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), 3, n);  // ratio = 3 x^(2*3^n)
            return v_mul(Value::exact(mpz_class(3)), v_pow(x, Value::exact(mpz_class(2 * e)), prec),
                         prec);
        }
        case Kind::Wright:
            return Value::enclosure(
                mul(log2_constant(prec), eval(n + 1, x, prec).to_interval(prec)));
        case Kind::FarhiPower: {
            const mpq_class step(static_cast<unsigned long>(n) + 1, static_cast<unsigned long>(n));
            const Value lead = v_pow(Value::exact(step), Value::exact(p1_), prec);
            const Value diff = v_sub(exponent(n + 1, prec), exponent(n, prec), prec);
            return v_mul(lead, v_pow(x, diff, prec), prec);
        }
        case Kind::FarhiFactorial:
            return v_pow(Value::exact(mpz_class(n + 1)), Value::exact(p1_), prec);
        case Kind::GeometricA:
            return Value::exact(p1_);
        case Kind::LambdaPower: {
            const mpq_class step(static_cast<unsigned long>(n) + 1, static_cast<unsigned long>(n));
            return v_mul(Value::exact(step), x, prec);
        }
    }
    throw Error("unreachable family kind");
}

Value FamilyDescriptor::h_apply(unsigned long n, const mpz_class& v, int offset,
                                mpfr_prec_t prec) const {
    if (offset != 0 && offset != 1) throw DomainError("h_apply offset must be 0 or 1");
    const mpz_class w = v + offset;
    switch (kind_) {
        case Kind::Mills:
            return Value::exact(mpz_class(w * w * w));
        case Kind::Wright: {
            if (w < 0) throw DomainError("h_apply argument below the image range");
            if (w.fits_ulong_p() && w.get_ui() <= kMaxExactBits) {
                mpz_class p;
                mpz_ui_pow_ui(p.get_mpz_t(), 2, w.get_ui());
                return Value::exact(p);
            }
            // 2^w is exactly a power of two; representable as a point enclosure.
            return Value::enclosure(exp2(BigInterval::from_integer(w, prec)));
        }
        case Kind::FarhiPower: {
            const Value en = exponent(n, prec);
            const Value en1 = exponent(n + 1, prec);
            const Value q = v_div(en1, en, prec);
            return v_pow(Value::exact(w), q, prec);
        }
        case Kind::FarhiFactorial:
            return v_mul(v_pow(Value::exact(mpz_class(n + 1)), Value::exact(p1_), prec),
                         Value::exact(w), prec);
        case Kind::GeometricA:
            return Value::exact(mpq_class(p1_ * w));
        case Kind::LambdaPower: {
            const mpq_class step(static_cast<unsigned long>(n) + 1, static_cast<unsigned long>(n));
            const Value scaled = Value::exact(mpq_class(mpq_class(w) / p1_));
            return v_mul(Value::exact(p1_), v_pow(scaled, Value::exact(step), prec), prec);
        }
    }
    throw Error("unreachable family kind");
}

Value FamilyDescriptor::image_lo(unsigned long n, mpfr_prec_t prec) const {
    switch (kind_) {
        case Kind::Mills: return Value::exact(mpq_class(1));
        case Kind::Wright: {
            // lambda_0 = 0, lambda_{i+1} = 2^lambda_i
            mpq_class t(0);
            for (unsigned long i = 0; i < n; ++i) {
                if (!mpq_is_integer(t) || !t.get_num().fits_ulong_p() ||
                    t.get_num().get_ui() > kMaxExactBits)
                    throw PrecisionExhausted("Wright image endpoint exceeds the bit budget");
                mpz_class p;
                mpz_ui_pow_ui(p.get_mpz_t(), 2, t.get_num().get_ui());
                t = mpq_class(p);
            }
            return Value::exact(t);
        }
        case Kind::FarhiPower:
            return v_pow(Value::exact(domain_lo_), exponent(n, prec), prec);
        case Kind::FarhiFactorial: return factorial_scale(n, prec);
        case Kind::GeometricA: return Value::exact(mpq_class(0));
        case Kind::LambdaPower:
            return Value::exact(mpq_class(p1_ * mpq_pow_si(domain_lo_, static_cast<long>(n))));
    }
    throw Error("unreachable family kind");
}

std::optional<Value> FamilyDescriptor::image_hi(unsigned long n, mpfr_prec_t prec) const {
    if (kind_ != Kind::FarhiFactorial) return std::nullopt;
    return v_mul(Value::exact(mpz_class(2)), factorial_scale(n, prec), prec);
}

// ---------------------------------------------------------------------------
// Hypothesis checking.
// ---------------------------------------------------------------------------

namespace {

// Evaluate a two-sided comparison at escalating precision until certified.
std::optional<bool> certify_le(const std::function<Value(mpfr_prec_t)>& lhs,
                               const std::function<Value(mpfr_prec_t)>& rhs) {
    for (mpfr_prec_t p : kCertifyPrecisions) {
        if (auto r = value_le(lhs(p), rhs(p), p)) return r;
    }
    return std::nullopt;
}

std::optional<bool> certify_lt(const std::function<Value(mpfr_prec_t)>& lhs,
                               const std::function<Value(mpfr_prec_t)>& rhs) {
    for (mpfr_prec_t p : kCertifyPrecisions) {
        if (auto r = value_lt(lhs(p), rhs(p), p)) return r;
    }
    return std::nullopt;
}

Value gap_of(const GapFunction& g, const Value& v, mpfr_prec_t prec) {
    if (v.is_exact()) {
        if (auto e = g.eval_exact(v.exact_value())) return Value::exact(*e);
    }
    return Value::enclosure(g.eval(v.to_interval(prec), prec));
}

} // namespace

HypothesisReport FamilyDescriptor::check_hypothesis(
    unsigned long n_lo, unsigned long n_hi, unsigned long samples, std::uint64_t seed,
    std::optional<std::pair<mpq_class, mpq_class>> window) const {
    if (samples < 1) throw DomainError("check_hypothesis requires at least one sample");
    if (n_lo < n0_) throw DomainError("n range starts below the family's first index");
    if (n_hi < n_lo) throw DomainError("empty n range");

    mpq_class wlo, whi;
    if (window) {
        wlo = window->first;
        whi = window->second;
        if (wlo <= domain_lo_ || (domain_hi_ && whi >= *domain_hi_) || whi <= wlo)
            throw DomainError("sampling window must lie strictly inside the domain");
    } else if (domain_hi_) {
        const mpq_class margin = (*domain_hi_ - domain_lo_) / 1000;
        wlo = domain_lo_ + margin;
        whi = *domain_hi_ - margin;
    } else {
        wlo = domain_lo_ + mpq_class(1, 1000);
        whi = domain_lo_ + 1000;
    }

    HypothesisReport report;
    report.n_lo = n_lo;
    report.n_hi = n_hi;
    report.sample_count = samples;
    report.seed = seed;
    report.window_lo = wlo.get_str();
    report.window_hi = whi.get_str();

    // Deterministic samples, sorted and deduplicated.
    std::uint64_t state = seed;
    std::vector<mpq_class> xs;
    xs.reserve(samples);
    const mpq_class span = whi - wlo;
    for (unsigned long i = 0; i < samples; ++i) {
        const std::uint64_t r = splitmix64(state) >> 11;  // 53 bits
        mpq_class u(mpz_class(static_cast<unsigned long>(r)), mpz_class(1) << 53);
        u.canonicalize();
        xs.push_back(mpq_class(wlo + span * u));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    for (unsigned long n = n_lo; n <= n_hi; ++n) {
        for (const mpq_class& x : xs) {
            const Value xv = Value::exact(x);

            // f_{n+1}(x) > f_n(x)
            ++report.checks_performed;
            auto inc = certify_lt([&](mpfr_prec_t p) { return eval(n, xv, p); },
                                  [&](mpfr_prec_t p) { return eval(n + 1, xv, p); });
            // An undecided comparison only happens when a tower-shaped value
            // saturates the float exponent range; on their domains all six
            // families increase in n (x^e is increasing in e for x > 1,
            // 2^t > t everywhere, and the linear families scale by a factor
            // > 1), so only a certified reversal counts.
            if (inc && !*inc)
                report.violations.push_back({n, x, "increase", "violation"});

            // g(f_{n+1}(x)) <= f'_{n+1}/f'_n (x); for Wright both sides are the
            // same expression, so the inequality holds with equality.
            ++report.checks_performed;
            if (!hypothesis_is_identity()) {
                auto hyp = certify_le(
                    [&](mpfr_prec_t p) { return gap_of(gap_, eval(n + 1, xv, p), p); },
                    [&](mpfr_prec_t p) { return derivative_ratio(n, xv, p); });
                if (!hyp)
                    report.indeterminate.push_back({n, x, "gap-vs-ratio", "indeterminate"});
                else if (!*hyp)
                    report.violations.push_back({n, x, "gap-vs-ratio", "violation"});
            }
        }

        // Sorted sample pairs: f_n increasing in x, and the derivative ratio
        // nondecreasing in x.  Every shape here is strictly increasing on its
        // domain (x^e with e > 0, exp2 towers, scaled x), so an undecided
        // float comparison between sorted points is still monotone; only a
        // certified reversal counts against the family.
        for (size_t i = 0; i + 1 < xs.size(); ++i) {
            ++report.checks_performed;
            const Value a = Value::exact(xs[i]);
            const Value b = Value::exact(xs[i + 1]);
            auto finc = certify_lt([&](mpfr_prec_t p) { return eval(n, a, p); },
                                   [&](mpfr_prec_t p) { return eval(n, b, p); });
            if (finc && !*finc)
                report.violations.push_back({n, xs[i], "f-increasing", "violation"});

            if (ratio_depends_on_x()) {
                ++report.checks_performed;
                auto mono = certify_le([&](mpfr_prec_t p) { return derivative_ratio(n, a, p); },
                                       [&](mpfr_prec_t p) { return derivative_ratio(n, b, p); });
                if (mono && !*mono)
                    report.violations.push_back({n, xs[i], "ratio-monotone", "violation"});
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Admissibility solvers.
// ---------------------------------------------------------------------------

namespace {

mpq_class round_up_6sig(double x) {
    if (!(x > 0)) throw ConvergenceFailure("admissibility produced a nonpositive threshold");
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_d(t, x, MPFR_RNDU);
    std::string s = mpfr_decimal(t, 6, MPFR_RNDU);
    mpfr_clear(t);
    return parse_mpq(s);
}

// certified "(ln a)^(k+1) <= a^(1/2) and ln a >= 2(k+1)"; monotonicity of
// t - 2(k+1) ln t beyond its minimum extends this to every x > a.
bool certify_condition5(const mpq_class& a, const mpq_class& k) {
    const mpq_class c5 = 2 * (k + 1);
    for (mpfr_prec_t p : {192, 512, 2048}) {
        const BigInterval A = BigInterval::from_rational(a, p);
        const BigInterval la = ln(A);
        auto past_min = certified_le(BigInterval::from_rational(c5, p), la);
        auto ineq = certified_le(pow_real(la, BigInterval::from_rational(k + 1, p)),
                                 pow_real(A, BigInterval::from_rational(mpq_class(1, 2), p)));
        if (past_min && ineq) return *past_min && *ineq;
    }
    return false;
}

// certified "(n+1)^(k+1) <= a^(n^(xi-1)/2) for all n >= 1", via a direct scan
// to N and a tail certificate: psi(n) = n^(xi-1)/ln(n+1) is increasing once
// (xi-1) ln(n+1) >= 1, so psi(N) >= 2(k+1)/ln(a) closes the range.
bool certify_condition6(const mpq_class& a, const mpq_class& xi, const mpq_class& k,
                        unsigned long N) {
    const mpq_class c = 2 * (k + 1);
    for (mpfr_prec_t p : {192, 512, 2048}) {
        const BigInterval A = BigInterval::from_rational(a, p);
        const BigInterval la = ln(A);
        const BigInterval xim1 = BigInterval::from_rational(mpq_class(xi - 1), p);
        bool ok = true;
        bool undecided = false;
        for (unsigned long n = 1; n <= N; ++n) {
            const BigInterval lhs = pow_real(BigInterval::from_integer(mpz_class(n + 1), p),
                                             BigInterval::from_rational(c, p));
            const BigInterval e = pow_real(BigInterval::from_integer(mpz_class(n), p), xim1);
            const BigInterval rhs = pow_real(A, e);
            auto le = certified_le(lhs, rhs);
            if (!le) { undecided = true; break; }
            if (!*le) { ok = false; break; }
        }
        if (undecided) continue;
        if (!ok) return false;
        // tail
        const BigInterval lN1 = ln(BigInterval::from_integer(mpz_class(N + 1), p));
        auto grow = certified_le(BigInterval::from_integer(1, p), mul(xim1, lN1));
        const BigInterval psi =
            div(pow_real(BigInterval::from_integer(mpz_class(N), p), xim1), lN1);
        auto tail = certified_le(div(BigInterval::from_rational(c, p), la), psi);
        if (grow && tail) return *grow && *tail;
    }
    return false;
}

} // namespace

mpq_class admissible_a(const mpq_class& xi, const mpq_class& k) {
    if (xi <= 1) throw DomainError("admissible_a requires xi > 1");
    if (k <= 1) throw DomainError("admissible_a requires k > 1");
    const double kd = k.get_d();
    const double xid = xi.get_d();

    // Largest root of t = 2(k+1) ln t  (t = ln x crossing of condition 5).
    const double c5 = 2 * (kd + 1);
    double t_lo = c5;
    double t_hi = std::max(16.0, 4 * c5 * std::log(c5) + 8);
    while (t_hi - c5 * std::log(t_hi) <= 0) t_hi *= 2;
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (mid - c5 * std::log(mid) >= 0)
            t_hi = mid;
        else
            t_lo = mid;
    }
    const double a5 = std::exp(t_hi);

    // Max over n of (n+1)^(2(k+1)/n^(xi-1)); the exponent is unimodal in n.
    double best_log = 0;
    unsigned long argmax = 1;
    for (unsigned long n = 1;; ++n) {
        const double e = 2 * (kd + 1) * std::log(static_cast<double>(n) + 1) /
                         std::pow(static_cast<double>(n), xid - 1);
        if (e > best_log) {
            best_log = e;
            argmax = n;
        }
        if (n > 4 * argmax + 64) break;
        if (n > 10'000'000) throw ConvergenceFailure("condition (6) scan did not stabilize");
    }
    const double a6 = std::exp(best_log);

    mpq_class a = round_up_6sig(std::max(a5, a6));
    const unsigned long N = std::max<unsigned long>(64, 4 * argmax + 64);
    for (int attempt = 0; attempt < 64; ++attempt) {
        if (certify_condition5(a, k) && certify_condition6(a, xi, k, N)) return a;
        a = round_up_6sig(a.get_d() * (1 + 1e-5));
    }
    throw ConvergenceFailure("cannot certify the admissibility threshold");
}

unsigned long factorial_n0(const mpq_class& k, const mpq_class& eps, const mpq_class& ck) {
    if (k <= 1) throw DomainError("factorial_n0 requires k > 1");
    if (eps <= 0) throw DomainError("factorial_n0 requires eps > 0");
    if (ck <= 0) throw DomainError("factorial_n0 requires ck > 0");
    const mpq_class s = k + eps;
    constexpr unsigned long kScanCap = 1'000'000;

    const double kd = k.get_d(), sd = s.get_d(), ckd = ck.get_d();
    const double ln2 = std::log(2.0);

    const auto holds_double = [&](unsigned long n) {
        const double m = static_cast<double>(n) + 1;
        const double lhs = ckd * std::pow(sd * m * std::log(m) + ln2, kd) + 1;
        return lhs <= std::pow(m, sd);
    };

    unsigned long last_fail = 0;
    bool any_fail = false;
    for (unsigned long n = 2; n <= kScanCap; ++n) {
        if (!holds_double(n)) {
            last_fail = n;
            any_fail = true;
        }
    }
    if (any_fail && last_fail >= kScanCap)
        throw NotFound("no admissible n0 below 10^6");

    const auto holds_certified = [&](unsigned long n) -> bool {
        const mpq_class m(static_cast<unsigned long>(n) + 1);
        for (mpfr_prec_t p : kCertifyPrecisions) {
            const BigInterval mi = BigInterval::from_rational(m, p);
            const BigInterval inner = add(mul(BigInterval::from_rational(mpq_class(s * m), p),
                                              ln(mi)),
                                          log2_constant(p));
            const BigInterval lhs =
                add(mul(BigInterval::from_rational(ck, p),
                        pow_real(inner, BigInterval::from_rational(k, p))),
                    BigInterval::from_integer(1, p));
            const Value rhs = v_pow(Value::exact(m), Value::exact(s), p);
            if (auto r = value_le(Value::enclosure(lhs), rhs, p)) return *r;
        }
        throw PrecisionExhausted("factorial_n0 comparison undecidable");
    };

    // Locate the true last failure near the double estimate, then verify the
    // window and the tail growth.
    unsigned long n0 = 2;
    if (any_fail) {
        unsigned long from = std::min(kScanCap, last_fail + 128);
        unsigned long found = 0;
        for (unsigned long n = from; n >= 2; --n) {
            if (!holds_certified(n)) {
                found = n;
                break;
            }
            if (n == 2) break;
        }
        n0 = found + 1;
        if (n0 < 2) n0 = 2;
    }
    if (n0 > kScanCap) throw NotFound("no admissible n0 below 10^6");

    for (unsigned long n = n0; n <= n0 + 1000; ++n) {
        if (!holds_certified(n))
            throw NotFound("inequality window check failed at n = " + std::to_string(n));
    }

    // Ratio of the two sides must be certified increasing at the window end.
    const auto side_ratio = [&](unsigned long n, mpfr_prec_t p) -> Value {
        const mpq_class m(static_cast<unsigned long>(n) + 1);
        const BigInterval mi = BigInterval::from_rational(m, p);
        const BigInterval inner =
            add(mul(BigInterval::from_rational(mpq_class(s * m), p), ln(mi)), log2_constant(p));
        const BigInterval lhs = add(mul(BigInterval::from_rational(ck, p),
                                        pow_real(inner, BigInterval::from_rational(k, p))),
                                    BigInterval::from_integer(1, p));
        const Value rhs = v_pow(Value::exact(m), Value::exact(s), p);
        return Value::enclosure(div(rhs.to_interval(p), lhs));
    };
    auto grow = certify_lt([&](mpfr_prec_t p) { return side_ratio(n0 + 1000, p); },
                           [&](mpfr_prec_t p) { return side_ratio(n0 + 1001, p); });
    if (!grow || !*grow)
        throw NotFound("tail growth check failed at the window end");

    return n0;
}

// ---------------------------------------------------------------------------
// Mini-language parsing.
// ---------------------------------------------------------------------------

namespace {

std::map<std::string, std::string> parse_family_kv(const std::string& body) {
    std::map<std::string, std::string> out;
    if (body.empty()) return out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError("expected key=value in family spec, got '" + item + "'");
        std::string key = item.substr(0, eq);
        if (out.count(key)) throw ParseError("duplicate family key '" + key + "'");
        out[key] = item.substr(eq + 1);
    }
    return out;
}

void reject_unknown(const std::map<std::string, std::string>& kv) {
    if (!kv.empty()) throw ParseError("unknown family key '" + kv.begin()->first + "'");
}

} // namespace

FamilyDescriptor FamilyDescriptor::parse(const std::string& spec) {
    return parse(spec, ResolveOptions{});
}

FamilyDescriptor FamilyDescriptor::parse(const std::string& spec, const ResolveOptions& opts) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    auto kv = parse_family_kv(colon == std::string::npos ? "" : spec.substr(colon + 1));

    if (head == "mills") {
        reject_unknown(kv);
        return mills();
    }
    if (head == "wright") {
        reject_unknown(kv);
        return wright();
    }
    if (head == "farhi-power") {
        if (!kv.count("xi") || !kv.count("k"))
            throw ParseError("farhi-power needs xi= and k=");
        const mpq_class xi = parse_mpq(kv["xi"]);
        const mpq_class k = parse_mpq(kv["k"]);
        kv.erase("xi");
        kv.erase("k");
        std::optional<mpq_class> a;
        if (kv.count("a")) {
            a = parse_mpq(kv["a"]);
            kv.erase("a");
        }
        reject_unknown(kv);
        return farhi_power(xi, k, a);
    }
    if (head == "farhi-factorial") {
        if (!kv.count("k") || !kv.count("eps"))
            throw ParseError("farhi-factorial needs k= and eps=");
        const mpq_class k = parse_mpq(kv["k"]);
        const mpq_class eps = parse_mpq(kv["eps"]);
        kv.erase("k");
        kv.erase("eps");
        std::vector<std::string> assumptions;
        mpq_class ck;
        if (kv.count("ck")) {
            ck = parse_mpq(kv["ck"]);
            kv.erase("ck");
            assumptions.push_back("ck=" + ck.get_str() + " supplied by the caller");
        } else {
            const GapFit fit = fit_gap_constant(opts.gap_fit_limit, k);
            ck = fit.c;
            assumptions.push_back("ck=" + fit.c_decimal + " fitted empirically over primes below " +
                                  opts.gap_fit_limit.get_str());
        }
        unsigned long n0;
        if (kv.count("n0")) {
            const mpq_class q = parse_mpq(kv["n0"]);
            kv.erase("n0");
            if (!mpq_is_integer(q) || q < 2 || !q.get_num().fits_ulong_p())
                throw ParseError("n0 must be an integer >= 2");
            n0 = q.get_num().get_ui();
            assumptions.push_back("n0=" + std::to_string(n0) +
                                  " supplied by the caller (not derived from the inequality scan)");
        } else {
            n0 = factorial_n0(k, eps, ck);
            assumptions.push_back("n0=" + std::to_string(n0) + " derived from the inequality scan");
        }
        reject_unknown(kv);
        return farhi_factorial(k, eps, ck, n0, std::move(assumptions));
    }
    if (head == "geometric") {
        if (!kv.count("A")) throw ParseError("geometric needs A=");
        const mpq_class A = parse_mpq(kv["A"]);
        kv.erase("A");
        reject_unknown(kv);
        FamilyDescriptor f = geometric(A);
        if (opts.file != nullptr) {
            const mpz_class mg = opts.file->max_gap();
            if (mpq_class(mg) <= A - 1) {
                f.assumptions_.push_back("max source gap " + mg.get_str() +
                                         " <= A-1 over the provided file");
            } else {
                // Locate the last offending pair: the bound only needs to hold
                // eventually, but every step past it is still certified.
                const auto& ts = opts.file->terms();
                size_t last = 0;
                for (size_t i = 1; i < ts.size(); ++i)
                    if (mpq_class(ts[i] - ts[i - 1]) > A - 1) last = i;
                f.assumptions_.push_back(
                    "source gaps exceed A-1 up to index " + std::to_string(last) +
                    "; the bound is assumed to hold beyond the file prefix");
            }
        } else {
            f.assumptions_.push_back(
                "gap bound u'-u <= A-1 is unverified for this source; steps are certified "
                "individually");
        }
        return f;
    }
    if (head == "lambda-power") {
        if (!kv.count("lambda")) throw ParseError("lambda-power needs lambda=");
        const mpq_class lambda = parse_mpq(kv["lambda"]);
        kv.erase("lambda");
        mpz_class M;
        bool m_supplied = false;
        if (kv.count("M")) {
            const mpq_class q = parse_mpq(kv["M"]);
            kv.erase("M");
            if (!mpq_is_integer(q) || q < 1) throw ParseError("M must be an integer >= 1");
            M = q.get_num();
            m_supplied = true;
        } else {
            if (opts.file == nullptr)
                throw ParseError(
                    "lambda-power needs an explicit M= gap bound unless the source is a file");
            M = opts.file->max_gap();
            if (M < 1) throw ParseError("file source has fewer than two terms; supply M=");
        }
        reject_unknown(kv);
        FamilyDescriptor f = lambda_power(lambda, M);
        f.assumptions_.push_back("gap bound M=" + M.get_str() +
                                 (m_supplied ? " supplied by the caller"
                                             : " observed over the provided source"));
        return f;
    }
    throw ParseError("unknown family '" + head + "'");
}

} // namespace millwright
