#include "millwright/gap_function.hpp"

#include <map>
#include <sstream>

namespace millwright {

namespace {

// Parse "k1=v1,k2=v2" into a map, rejecting duplicates.
std::map<std::string, std::string> parse_kv(const std::string& body) {
    std::map<std::string, std::string> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError("expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        if (out.count(key)) throw ParseError("duplicate key '" + key + "'");
        out[key] = item.substr(eq + 1);
    }
    return out;
}

} // namespace

GapFunction::GapFunction(Kind kind, mpq_class a, mpq_class b, mpq_class c, bool slope_log2)
    : kind_(kind), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), slope_log2_(slope_log2) {}

GapFunction GapFunction::power(const mpq_class& exponent) {
    if (exponent <= 0) throw DomainError("power gap function needs a positive exponent");
    return GapFunction(Kind::Power, exponent, 0, 0, false);
}

GapFunction GapFunction::linear_log2() {
    return GapFunction(Kind::Linear, 0, 0, 0, true);
}

GapFunction GapFunction::linear(const mpq_class& slope) {
    if (slope <= 0) throw DomainError("linear gap function needs a positive slope");
    return GapFunction(Kind::Linear, slope, 0, 0, false);
}

GapFunction GapFunction::log_power(const mpq_class& c, const mpq_class& k,
                                   const mpq_class& offset) {
    if (c <= 0 || k <= 0) throw DomainError("log-power gap function needs c > 0 and k > 0");
    return GapFunction(Kind::LogPower, c, k, offset, false);
}

GapFunction GapFunction::constant(const mpq_class& value) {
    return GapFunction(Kind::Constant, value, 0, 0, false);
}

GapFunction GapFunction::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "pow") {
        if (body.empty()) throw ParseError("pow gap spec needs an exponent, e.g. pow:2/3");
        return power(parse_mpq(body));
    }
    if (head == "linear") {
        if (body.empty()) return linear_log2();
        return linear(parse_mpq(body));
    }
    if (head == "logpow") {
        auto kv = parse_kv(body);
        if (!kv.count("c") || !kv.count("k"))
            throw ParseError("logpow gap spec needs c= and k=");
        mpq_class offset(1);
        if (kv.count("offset")) {
            offset = parse_mpq(kv["offset"]);
            kv.erase("offset");
        }
        mpq_class c = parse_mpq(kv["c"]);
        mpq_class k = parse_mpq(kv["k"]);
        kv.erase("c");
        kv.erase("k");
        if (!kv.empty()) throw ParseError("unknown gap key '" + kv.begin()->first + "'");
        return log_power(c, k, offset);
    }
    if (head == "const") {
        if (body.empty()) throw ParseError("const gap spec needs a value, e.g. const:5");
        return constant(parse_mpq(body));
    }
    throw ParseError("unknown gap function '" + spec + "'");
}

std::string GapFunction::spec_string() const {
    switch (kind_) {
        case Kind::Power: return "pow:" + mpq_to_string(a_);
        case Kind::Linear: return slope_log2_ ? "linear" : "linear:" + mpq_to_string(a_);
        case Kind::LogPower:
            return "logpow:c=" + mpq_to_string(a_) + ",k=" + mpq_to_string(b_) +
                   ",offset=" + mpq_to_string(c_);
        case Kind::Constant: return "const:" + mpq_to_string(a_);
    }
    return "?";
}

std::optional<mpq_class> GapFunction::eval_exact(const mpq_class& x) const {
    switch (kind_) {
        case Kind::Constant:
            return a_;
        case Kind::Linear:
            if (slope_log2_) return std::nullopt;
            return mpq_class(a_ * x);
        case Kind::Power:
            if (x <= 0) return mpq_class(0);
            return exact_pow(x, a_);
        case Kind::LogPower:
            if (x <= 1) return c_;
            return std::nullopt;  // ln of a rational > 1 is irrational
    }
    return std::nullopt;
}

std::optional<mpq_class> GapFunction::eval_exact(const mpz_class& x) const {
    return eval_exact(mpq_class(x));
}

BigInterval GapFunction::eval(const BigInterval& x, mpfr_prec_t prec) const {
    const BigInterval xp = x.rounded_to(prec);
    switch (kind_) {
        case Kind::Constant:
            return BigInterval::from_rational(a_, prec);
        case Kind::Linear: {
            const BigInterval slope =
                slope_log2_ ? log2_constant(prec) : BigInterval::from_rational(a_, prec);
            return mul(slope, xp);
        }
        case Kind::Power: {
            if (!xp.is_positive())
                throw DomainError("power gap function evaluated across its threshold");
            return pow_real(xp, BigInterval::from_rational(a_, prec));
        }
        case Kind::LogPower: {
            if (compare(xp, BigInterval::from_integer(1, prec)) != CertifiedOrder::CertainlyGreater)
                throw DomainError("log-power gap function evaluated across its threshold");
            const BigInterval lx = ln(xp);
            const BigInterval p = pow_real(lx, BigInterval::from_rational(b_, prec));
            return add(mul(BigInterval::from_rational(a_, prec), p),
                       BigInterval::from_rational(c_, prec));
        }
    }
    throw Error("unreachable gap kind");
}

BigInterval GapFunction::eval(const mpz_class& x, mpfr_prec_t prec) const {
    return eval(BigInterval::from_integer(x, prec), prec);
}

} // namespace millwright
