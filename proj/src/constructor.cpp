#include "millwright/constructor.hpp"

#include <algorithm>

namespace millwright {

namespace {

// Directional decimal rendering of a Value endpoint.  round_in renders toward
// the interior of the bracket, which keeps the serialized bracket certified.
std::string value_decimal(const Value& v, bool upper_endpoint, bool round_in, size_t sig) {
    if (v.is_exact()) {
        const mpfr_prec_t p = static_cast<mpfr_prec_t>(sig * 4 + 64);
        const BigInterval iv = BigInterval::from_rational(v.exact_value(), p);
        const bool round_up = upper_endpoint ? !round_in : round_in;
        return mpfr_decimal(round_up ? iv.hi() : iv.lo(), sig, round_up ? MPFR_RNDU : MPFR_RNDD);
    }
    const BigInterval& iv = v.interval();
    if (upper_endpoint)
        return round_in ? mpfr_decimal(iv.lo(), sig, MPFR_RNDD)
                        : mpfr_decimal(iv.hi(), sig, MPFR_RNDU);
    return round_in ? mpfr_decimal(iv.hi(), sig, MPFR_RNDU)
                    : mpfr_decimal(iv.lo(), sig, MPFR_RNDD);
}

unsigned long count_digit_chars(const std::string& s) {
    unsigned long c = 0;
    for (char ch : s)
        if (ch >= '0' && ch <= '9') ++c;
    return c;
}

// width(iv) * 2^bits <= certified lower bound of the bracket gap?
bool enclosure_negligible(const Value& v, const BigInterval& gap, unsigned long bits) {
    if (v.is_exact()) return true;
    if (mpfr_sgn(gap.lo()) <= 0) return false;
    const BigInterval& iv = v.interval();
    mpfr_t w;
    mpfr_init2(w, iv.precision() + 8);
    mpfr_sub(w, iv.hi(), iv.lo(), MPFR_RNDU);
    mpfr_mul_2ui(w, w, bits, MPFR_RNDU);
    const bool ok = mpfr_cmp(w, gap.lo()) <= 0;
    mpfr_clear(w);
    return ok;
}

} // namespace

DigitsResult extract_digits(const std::string& lo_decimal, const std::string& hi_decimal) {
    if (lo_decimal.empty() || hi_decimal.empty()) throw ParseError("empty decimal endpoint");
    if (lo_decimal[0] == '-' || hi_decimal[0] == '-')
        return {"", true, 0};  // negative brackets are outside every family domain

    const auto split = [](const std::string& s) {
        const auto dot = s.find('.');
        return std::pair<std::string, std::string>(
            s.substr(0, dot), dot == std::string::npos ? "" : s.substr(dot + 1));
    };
    auto [ilo, flo] = split(lo_decimal);
    auto [ihi, fhi] = split(hi_decimal);
    if (ilo.size() != ihi.size()) return {"", true, 0};

    const bool int_undecided = ilo != ihi;
    const size_t flen = std::max(flo.size(), fhi.size());
    flo.resize(flen, '0');
    fhi.resize(flen, '0');
    const std::string a = ilo + "." + flo;
    const std::string b = ihi + "." + fhi;

    std::string prefix;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) break;
        prefix.push_back(a[i]);
    }
    return {prefix, int_undecided, count_digit_chars(prefix)};
}

ConstructionSession::ConstructionSession(const FamilyDescriptor& family, SequenceSource& source,
                                         ConstructorOptions opts)
    : family_(family), source_(source), opts_(std::move(opts)),
      precision_(opts_.precision_start) {
    if (precision_ < 8) throw DomainError("starting precision must be at least 8 bits");
    if (opts_.precision_cap < precision_)
        throw DomainError("precision cap below the starting precision");
}

void ConstructionSession::escalate(unsigned long n, const char* why) {
    if (precision_ * 2 > opts_.precision_cap)
        throw PrecisionExhausted(std::string("precision cap reached while ") + why);
    escalations_.push_back({n, precision_, precision_ * 2});
    precision_ *= 2;
}

void ConstructionSession::certify_image_membership(const ConstructionState& st) {
    // v in ]lambda_n, mu_n - 1[ certified; escalates internally before failing.
    while (true) {
        const Value lo = family_.image_lo(st.n, precision_);
        if (auto above = value_lt(lo, Value::exact(st.v), precision_)) {
            if (!*above)
                throw SeedNotFound("term " + st.v.get_str() +
                                   " is not above the image endpoint at n = " +
                                   std::to_string(st.n));
            break;
        }
        escalate(st.n, "certifying image membership");
    }
    if (family_.image_hi(st.n, 64).has_value()) {
        while (true) {
            const Value hi = family_.image_hi(st.n, precision_).value();
            if (auto below = value_lt(Value::exact(mpz_class(st.v + 1)), hi, precision_)) {
                if (!*below)
                    throw SeedNotFound("term " + st.v.get_str() +
                                       " is not below mu - 1 at n = " + std::to_string(st.n));
                break;
            }
            escalate(st.n, "certifying image membership");
        }
    }
}

ConstructionState ConstructionSession::init() {
    const unsigned long n0 = family_.start_index();
    ConstructionState st;
    st.n = n0;

    Term term{};
    if (opts_.seed_index) {
        term = source_.term_at(*opts_.seed_index);
    } else {
        // Smallest term strictly above the image endpoint.
        while (true) {
            const Value lo = family_.image_lo(n0, precision_);
            try {
                if (lo.is_exact()) {
                    term = source_.next_term_geq(Bound(mpz_class(mpq_floor(lo.exact_value()) + 1)));
                } else {
                    term = source_.next_term_geq(lo.to_bound());
                }
                break;
            } catch (const IndeterminateBound&) {
                escalate(n0, "resolving the seed bound");
            } catch (const SequenceExhausted& e) {
                throw SeedNotFound(std::string("seed search exhausted the source: ") + e.what());
            }
        }
    }
    st.v = term.value;
    st.k = term.index;
    st.certainty = term.certainty;
    certify_image_membership(st);

    st.x = family_.eval_inverse(n0, Value::exact(st.v), precision_);
    st.y = family_.eval_inverse(n0, Value::exact(mpz_class(st.v + 1)), precision_);
    st.precision = precision_;
    if (on_state) on_state(st);
    return st;
}

ConstructionState ConstructionSession::advance(const ConstructionState& state,
                                               const std::optional<mpz_class>& known_term) {
    const unsigned long n = state.n;

    // (i)+(ii): smallest source term >= h_n(v_n), certified.
    Term term{};
    while (true) {
        const Value h0 = family_.h_apply(n, state.v, 0, precision_);
        try {
            if (known_term) {
                // Replay: locate the cached term and certify the window bound.
                auto ge = value_le(h0, Value::exact(*known_term), precision_);
                if (!ge) {
                    escalate(n, "re-certifying a replayed term");
                    continue;
                }
                if (!*ge)
                    throw ParseError("replayed term " + known_term->get_str() +
                                     " is below the step window at n = " + std::to_string(n));
                term = source_.next_term_geq(Bound(*known_term));
                if (term.value != *known_term)
                    throw ParseError("replayed term " + known_term->get_str() +
                                     " is not a member of the source");
            } else {
                term = source_.next_term_geq(h0.to_bound());
            }
            break;
        } catch (const IndeterminateBound&) {
            escalate(n, "resolving the step bound");
        }
    }

    // (iii) certified strict window: v_{n+1} + 1 < h_n(v_n + 1), i.e.
    // v_{n+1} < h_n(v_n + 1) - 1.
    const Value vp1 = Value::exact(mpz_class(term.value + 1));
    while (true) {
        const Value h1 = family_.h_apply(n, state.v, 1, precision_);
        if (auto lt = value_lt(vp1, h1, precision_)) {
            if (!*lt)
                throw GapViolation("gap hypothesis failed, certified: source term " +
                                       term.value.get_str() +
                                       " does not fit below h_n(v_n+1)-1 at n = " +
                                       std::to_string(n),
                                   n, state.v.get_str(), term.value.get_str());
            break;
        }
        escalate(n, "certifying the step window");
    }

    // (iv) fresh enclosures at the (possibly escalated) precision.
    ConstructionState next;
    next.n = n + 1;
    next.v = term.value;
    next.k = term.index;
    next.certainty = term.certainty;
    if (next.k && state.k && *next.k <= *state.k)
        throw Error("internal: source index did not advance");
    if (next.v <= state.v) throw Error("internal: chain term did not increase");
    certify_image_membership(next);

    next.x = family_.eval_inverse(next.n, Value::exact(next.v), precision_);
    next.y = family_.eval_inverse(next.n, Value::exact(mpz_class(next.v + 1)), precision_);
    next.precision = precision_;

    // (v) nestedness tripwire: the new bracket may not escape the old one
    // beyond enclosure slack.
    {
        const mpfr_prec_t p = precision_;
        const BigInterval xo = state.x.to_interval(p), xn = next.x.to_interval(p);
        const BigInterval yo = state.y.to_interval(p), yn = next.y.to_interval(p);
        if (mpfr_cmp(xn.hi(), xo.lo()) < 0 || mpfr_cmp(yn.lo(), yo.hi()) > 0)
            throw Error("internal: nested-interval invariant violated at n = " +
                        std::to_string(next.n));
    }

    if (on_state) on_state(next);
    return next;
}

ConstructionState ConstructionSession::step(const ConstructionState& state) {
    return advance(state, std::nullopt);
}

ConstructionState ConstructionSession::advance_with_term(const ConstructionState& state,
                                                         const mpz_class& v_next) {
    return advance(state, v_next);
}

ConstructionResult ConstructionSession::run(unsigned long term_count, unsigned long digit_goal) {
    if (term_count < 1) throw DomainError("term_count must be >= 1");

    std::vector<ChainEntry> chain;
    ConstructionState st = init();
    chain.push_back({st.n, st.k, st.v, st.certainty});
    for (unsigned long i = 1; i < term_count; ++i) {
        st = step(st);
        chain.push_back({st.n, st.k, st.v, st.certainty});
    }
    return finalize(st, std::move(chain), digit_goal);
}

ConstructionResult ConstructionSession::finalize(const ConstructionState& st,
                                                 std::vector<ChainEntry> chain,
                                                 unsigned long digit_goal) {
    ConstructionResult result;
    result.family_spec = family_.spec_string();
    result.source_description = source_.describe();
    result.assumptions = family_.assumptions();
    result.chain = std::move(chain);

    // Final bracket.  The upper endpoint is pulled inside by 2^-20 of the unit
    // window so that floor(f_N(.)) = v_N is certified on the whole reported
    // interval, not only on its interior.
    const unsigned long N = st.n;
    const mpz_class vN = st.v;
    const mpq_class y_cut = mpq_class(vN + 1) - mpq_class(1, 1 << 20);

    std::string lo_dec, hi_dec;
    unsigned long best_digits = 0;
    while (true) {
        const Value xN = family_.eval_inverse(N, Value::exact(vN), precision_);
        const Value yN = family_.eval_inverse(N, Value::exact(y_cut), precision_);
        const size_t sig = std::max<size_t>(24, static_cast<size_t>(precision_) * 301 / 1000);
        const std::string lo_try = value_decimal(xN, false, /*round_in=*/true, sig);
        const std::string hi_try = value_decimal(yN, true, /*round_in=*/true, sig);
        bool done = false;
        if (parse_mpq(lo_try) <= parse_mpq(hi_try)) {
            lo_dec = lo_try;
            hi_dec = hi_try;
            const DigitsResult d = extract_digits(lo_dec, hi_dec);
            if (d.digit_count >= digit_goal) {
                done = true;
            } else if (d.digit_count <= best_digits && best_digits > 0) {
                // Doubling stopped helping; if the enclosures are already
                // negligible against the bracket gap, the chain itself is the
                // limit and more precision cannot add digits.
                const BigInterval gap =
                    sub(yN.to_interval(precision_), xN.to_interval(precision_));
                done = enclosure_negligible(xN, gap, 16) && enclosure_negligible(yN, gap, 16);
            }
            best_digits = std::max(best_digits, d.digit_count);
        }
        if (done || precision_ * 2 > opts_.precision_cap) break;
        escalations_.push_back({N, precision_, precision_ * 2});
        precision_ *= 2;
    }
    if (lo_dec.empty())
        throw PrecisionExhausted("final bracket could not be separated at the precision cap");

    const DigitsResult d = extract_digits(lo_dec, hi_dec);
    result.bracket = {lo_dec, hi_dec, precision_};
    result.digits = d.digits;
    result.integer_part_undecided = d.integer_part_undecided;
    result.escalations = escalations_;
    result.final_precision = precision_;
    return result;
}

ConstructionResult run_construction(const FamilyDescriptor& family, SequenceSource& source,
                                    unsigned long term_count, unsigned long digit_goal,
                                    ConstructorOptions opts) {
    ConstructionSession session(family, source, std::move(opts));
    return session.run(term_count, digit_goal);
}

} // namespace millwright
