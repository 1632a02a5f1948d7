#ifndef MILLWRIGHT_GAP_FUNCTION_HPP
#define MILLWRIGHT_GAP_FUNCTION_HPP

#include <optional>
#include <string>

#include "millwright/exact_math.hpp"
#include "millwright/interval.hpp"

namespace millwright {

// A nondecreasing gap bound g.  Four shapes:
//   Power:     g(x) = x^e for x > 0, 0 otherwise       (e > 0)
//   Linear:    g(x) = s*x, with s rational or log(2)   (s > 0)
//   LogPower:  g(x) = c*(ln x)^k + offset for x > 1, offset otherwise  (c, k > 0)
//   Constant:  g(x) = v
class GapFunction {
  public:
    enum class Kind { Power, Linear, LogPower, Constant };

    static GapFunction power(const mpq_class& exponent);
    static GapFunction linear_log2();
    static GapFunction linear(const mpq_class& slope);
    static GapFunction log_power(const mpq_class& c, const mpq_class& k,
                                 const mpq_class& offset);
    static GapFunction constant(const mpq_class& value);

    // "pow:2/3" | "linear" | "linear:1" | "logpow:c=2.7,k=1.5[,offset=1]" | "const:5"
    static GapFunction parse(const std::string& spec);
    std::string spec_string() const;

    Kind kind() const { return kind_; }
    bool slope_is_log2() const { return slope_log2_; }
    const mpq_class& constant_value() const { return a_; }

    // Exact value when the arithmetic admits one (integral/rational paths).
    std::optional<mpq_class> eval_exact(const mpq_class& x) const;
    std::optional<mpq_class> eval_exact(const mpz_class& x) const;

    BigInterval eval(const BigInterval& x, mpfr_prec_t prec) const;
    BigInterval eval(const mpz_class& x, mpfr_prec_t prec) const;

  private:
    GapFunction(Kind kind, mpq_class a, mpq_class b, mpq_class c, bool slope_log2);

    Kind kind_;
    // Power: a_ = exponent.  Linear: a_ = slope (unless slope_log2_).
    // LogPower: a_ = c, b_ = k, c_ = offset.  Constant: a_ = value.
    mpq_class a_, b_, c_;
    bool slope_log2_ = false;
};

} // namespace millwright

#endif
