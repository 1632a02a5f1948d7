#ifndef MILLWRIGHT_FAMILIES_HPP
#define MILLWRIGHT_FAMILIES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "millwright/gap_function.hpp"
#include "millwright/interval.hpp"
#include "millwright/sequences.hpp"

namespace millwright {

// A quantity that is either exactly rational or a certified enclosure.
// Family evaluation stays exact whenever the arithmetic allows, which keeps
// integer comparisons decidable without precision escalation.
class Value {
  public:
    static Value exact(mpq_class q) { return Value(std::move(q)); }
    static Value exact(mpz_class z) { return Value(mpq_class(std::move(z))); }
    static Value enclosure(BigInterval iv) { return Value(std::move(iv)); }

    bool is_exact() const { return std::holds_alternative<mpq_class>(v_); }
    const mpq_class& exact_value() const { return std::get<mpq_class>(v_); }
    const BigInterval& interval() const { return std::get<BigInterval>(v_); }

    bool is_exact_integer() const {
        return is_exact() && mpq_is_integer(exact_value());
    }
    mpz_class exact_integer() const { return exact_value().get_num(); }

    BigInterval to_interval(mpfr_prec_t prec) const {
        if (is_exact()) return BigInterval::from_rational(exact_value(), prec);
        return interval().rounded_to(std::max(prec, interval().precision()));
    }

    Bound to_bound() const {
        if (is_exact()) return Bound(exact_value());
        return Bound(interval());
    }

    std::string debug_string() const;

  private:
    explicit Value(mpq_class q) : v_(std::move(q)) {}
    explicit Value(BigInterval iv) : v_(std::move(iv)) {}
    std::variant<mpq_class, BigInterval> v_;
};

// Certified comparisons between values; definite for exact operands,
// nullopt when enclosures are too wide at the precision used.
std::optional<bool> value_le(const Value& a, const Value& b, mpfr_prec_t prec);
std::optional<bool> value_lt(const Value& a, const Value& b, mpfr_prec_t prec);

// Smallest admissible domain threshold for the power family: the least a
// (rounded up to 6 significant digits) with
//   (ln x)^(k+1) <= sqrt(x) for all x > a, and
//   (n+1)^(k+1) <= a^(n^(xi-1)/2) for all n >= 1,
// both certified after rounding.  Requires xi > 1, k > 1.
mpq_class admissible_a(const mpq_class& xi, const mpq_class& k);

// Smallest n0 >= 2 from which
//   ck * ((k+eps)(n+1) ln(n+1) + ln 2)^k + 1 <= (n+1)^(k+eps)
// holds: certified for n0..n0+1000 directly, and the ratio of the two sides
// is certified increasing at the window end.  Requires k > 1, eps > 0, ck > 0.
unsigned long factorial_n0(const mpq_class& k, const mpq_class& eps, const mpq_class& ck);

struct HypothesisPoint {
    unsigned long n;
    mpq_class x;
    std::string check;   // "gap-vs-ratio" | "increase" | "ratio-monotone"
    std::string status;  // "violation" | "indeterminate"
};

struct HypothesisReport {
    unsigned long n_lo = 0, n_hi = 0;
    unsigned long sample_count = 0;
    std::uint64_t seed = 0;
    std::string window_lo, window_hi;
    unsigned long checks_performed = 0;
    std::vector<HypothesisPoint> violations;
    std::vector<HypothesisPoint> indeterminate;
    bool all_pass() const { return violations.empty() && indeterminate.empty(); }
};

// One of the six built-in function families.  Immutable; all operations are
// pure and safe for concurrent use.
class FamilyDescriptor {
  public:
    enum class Kind { Mills, Wright, FarhiPower, FarhiFactorial, GeometricA, LambdaPower };

    static FamilyDescriptor mills();
    static FamilyDescriptor wright();
    // a_override may only raise the threshold above admissible_a(xi, k).
    static FamilyDescriptor farhi_power(const mpq_class& xi, const mpq_class& k,
                                        std::optional<mpq_class> a_override = std::nullopt);
    static FamilyDescriptor farhi_factorial(const mpq_class& k, const mpq_class& eps,
                                            const mpq_class& ck, unsigned long n0,
                                            std::vector<std::string> assumptions = {});
    static FamilyDescriptor geometric(const mpq_class& A);
    static FamilyDescriptor lambda_power(const mpq_class& lambda, const mpz_class& M);

    struct ResolveOptions {
        // Limit for the empirical gap-constant fit backing farhi-factorial.
        mpz_class gap_fit_limit = mpz_class(1'000'000);
        // Source file, when the CLI source is file-backed; used for the
        // lambda-power gap bound and the geometric gap check.
        const FileSource* file = nullptr;
    };

    // Family mini-language:
    //   mills | wright | farhi-power:xi=2,k=2[,a=..] |
    //   farhi-factorial:k=1.5,eps=0.5[,ck=..][,n0=..] |
    //   geometric:A=5 | lambda-power:lambda=1[,M=..]
    // Unknown keys are errors.
    static FamilyDescriptor parse(const std::string& spec);
    static FamilyDescriptor parse(const std::string& spec, const ResolveOptions& opts);

    Kind kind() const { return kind_; }
    std::string spec_string() const;  // canonical, fully resolved
    unsigned long start_index() const { return n0_; }
    unsigned long default_terms() const;
    const GapFunction& gap() const { return gap_; }
    FamilyDescriptor with_gap(GapFunction g) const;  // testing hook
    const std::vector<std::string>& assumptions() const { return assumptions_; }

    const mpq_class& domain_lo() const { return domain_lo_; }
    const std::optional<mpq_class>& domain_hi() const { return domain_hi_; }

    // Image endpoints of f_n over the domain; nullopt means +infinity.
    Value image_lo(unsigned long n, mpfr_prec_t prec) const;
    std::optional<Value> image_hi(unsigned long n, mpfr_prec_t prec) const;

    Value eval(unsigned long n, const Value& x, mpfr_prec_t prec) const;
    Value eval_inverse(unsigned long n, const Value& y, mpfr_prec_t prec) const;
    Value derivative_ratio(unsigned long n, const Value& x, mpfr_prec_t prec) const;
    // h_n(v + offset) with h_n = f_{n+1} o f_n^{-1}; offset is 0 or 1.
    Value h_apply(unsigned long n, const mpz_class& v, int offset, mpfr_prec_t prec) const;

    bool ratio_depends_on_x() const;
    // True when g(f_{n+1}(x)) and the derivative ratio are the same
    // expression, so the hypothesis holds with equality.
    bool hypothesis_is_identity() const { return kind_ == Kind::Wright; }

    HypothesisReport check_hypothesis(
        unsigned long n_lo, unsigned long n_hi, unsigned long samples, std::uint64_t seed,
        std::optional<std::pair<mpq_class, mpq_class>> window = std::nullopt) const;

    // Parameter accessors (family-specific; see spec_string for the set).
    const mpq_class& xi() const { return p1_; }
    const mpq_class& conjecture_k() const { return p2_; }
    const mpq_class& strength() const { return p1_; }  // k + eps for farhi-factorial
    const mpq_class& ck() const { return p3_; }
    const mpq_class& ratio_base() const { return p1_; }  // A for geometric
    const mpq_class& lambda() const { return p1_; }      // lambda-power
    const mpz_class& gap_bound() const { return m_; }    // M for lambda-power

  private:
    FamilyDescriptor(Kind kind, unsigned long n0, mpq_class domain_lo,
                     std::optional<mpq_class> domain_hi, GapFunction gap);

    // f_n exponent for power-shaped families (Mills: 3^n; FarhiPower: n^xi).
    Value exponent(unsigned long n, mpfr_prec_t prec) const;
    Value factorial_scale(unsigned long n, mpfr_prec_t prec) const;  // n!^(k+eps)

    Kind kind_;
    unsigned long n0_;
    mpq_class domain_lo_;
    std::optional<mpq_class> domain_hi_;
    GapFunction gap_;
    // p1..p3, m_: kind-specific parameters.
    mpq_class p1_, p2_, p3_;
    mpz_class m_;
    std::vector<std::string> assumptions_;
};

const char* to_string(FamilyDescriptor::Kind k);

} // namespace millwright

#endif
