#include "millwright/verifier.hpp"

#include <algorithm>

namespace millwright {

namespace {

// Families are reconstructed from the fully resolved spec string, so no
// fitting or admissibility search reruns here beyond validation.
FamilyDescriptor family_of(const ResultDocument& doc) {
    return FamilyDescriptor::parse(doc.family_spec);
}

mpfr_prec_t verification_precision(const ResultDocument& doc) {
    const mpfr_prec_t base = std::max<mpfr_prec_t>(doc.bracket.precision_bits, kDefaultPrecision);
    return std::min<mpfr_prec_t>(base * 2, kDefaultPrecisionCap);
}

} // namespace

VerifyReport verify_integrity(const ResultDocument& doc) {
    VerifyReport report;
    if (doc.integrity.empty())
        report.add("integrity", "document", "fail", "document carries no integrity hash");
    else if (doc.integrity_ok())
        report.add("integrity", "document", "pass");
    else
        report.add("integrity", "document", "fail", "integrity hash mismatch");
    return report;
}

VerifyReport verify_floors(const ResultDocument& doc) {
    VerifyReport report;
    const FamilyDescriptor family = family_of(doc);
    const mpq_class lo = parse_mpq(doc.bracket.lo);
    const mpq_class hi = parse_mpq(doc.bracket.hi);
    if (lo > hi) {
        report.add("floor", "bracket", "fail", "bracket is empty (lo > hi)");
        return report;
    }

    // Digits must be exactly what the bracket endpoints certify.
    const DigitsResult d = extract_digits(doc.bracket.lo, doc.bracket.hi);
    if (d.digits != doc.digits)
        report.add("floor", "digits", "fail",
                   "digit string does not match the bracket (expected '" + d.digits + "')");
    else
        report.add("floor", "digits", "pass");

    mpfr_prec_t prec = verification_precision(doc);
    for (const auto& entry : doc.chain) {
        const std::string subject = "n=" + std::to_string(entry.n);
        std::optional<bool> lo_ok, hi_ok;
        for (mpfr_prec_t p = prec; p <= kDefaultPrecisionCap; p *= 2) {
            // f_n is increasing, so the image of the bracket is
            // [f_n(lo), f_n(hi)].
            const Value flo = family.eval(entry.n, Value::exact(lo), p);
            const Value fhi = family.eval(entry.n, Value::exact(hi), p);
            lo_ok = value_le(Value::exact(entry.v), flo, p);
            hi_ok = value_lt(fhi, Value::exact(mpz_class(entry.v + 1)), p);
            if (lo_ok.has_value() && hi_ok.has_value()) break;
        }
        if (!lo_ok.has_value() || !hi_ok.has_value())
            report.add("floor", subject, "indeterminate",
                       "enclosure too wide at the precision cap");
        else if (!*lo_ok)
            report.add("floor", subject, "fail",
                       "f_n over the bracket dips below v_n = " + entry.v.get_str());
        else if (!*hi_ok)
            report.add("floor", subject, "fail",
                       "f_n over the bracket reaches v_n + 1 = " + mpz_class(entry.v + 1).get_str());
        else
            report.add("floor", subject, "pass");
    }
    return report;
}

VerifyReport verify_membership(const ResultDocument& doc, SequenceSource& source) {
    VerifyReport report;
    for (const auto& entry : doc.chain) {
        const std::string subject = "n=" + std::to_string(entry.n) + " v=" + entry.v.get_str();
        const PrimalityResult r = source.check_member(entry.v);
        if (!r.is_prime) {
            report.add("membership", subject, "fail", "term is not a member of the source");
            continue;
        }
        if (certainty_rank(r.certainty) < certainty_rank(entry.certainty))
            report.add("membership", subject, "warning",
                       std::string("certainty downgrade: recorded ") + to_string(entry.certainty) +
                           ", re-checked " + to_string(r.certainty));
        else
            report.add("membership", subject, "pass", to_string(r.certainty));
    }

    for (size_t i = 1; i < doc.chain.size(); ++i) {
        const std::string subject = "n=" + std::to_string(doc.chain[i].n);
        if (doc.chain[i].v <= doc.chain[i - 1].v)
            report.add("monotone", subject, "fail", "terms are not strictly increasing");
        else
            report.add("monotone", subject, "pass");
        if (doc.chain[i].source_index && doc.chain[i - 1].source_index &&
            *doc.chain[i].source_index <= *doc.chain[i - 1].source_index)
            report.add("monotone-index", subject, "fail",
                       "source indices are not strictly increasing");
    }
    return report;
}

VerifyReport verify_hypotheses(const ResultDocument& doc) {
    VerifyReport report;
    const FamilyDescriptor family = family_of(doc);
    if (doc.chain.empty()) {
        report.add("hypothesis", "chain", "fail", "empty chain");
        return report;
    }
    const unsigned long n_lo = doc.chain.front().n;
    const unsigned long n_hi = doc.chain.back().n;

    const HypothesisReport hyp = family.check_hypothesis(n_lo, n_hi, 64, 1);
    if (hyp.all_pass()) {
        report.add("hypothesis-sampled", "n=" + std::to_string(n_lo) + ".." + std::to_string(n_hi),
                   "pass",
                   "certified at " + std::to_string(hyp.checks_performed) + " sample checks");
    } else {
        for (const auto& v : hyp.violations)
            report.add("hypothesis-sampled", "n=" + std::to_string(v.n) + " x=" + v.x.get_str(),
                       "fail", v.check);
        for (const auto& v : hyp.indeterminate)
            report.add("hypothesis-sampled", "n=" + std::to_string(v.n) + " x=" + v.x.get_str(),
                       "indeterminate", v.check);
    }

    // Convexity consequence at the realized chain points:
    // g(h_n(v_n)) <= h_n(v_n + 1) - h_n(v_n).
    for (size_t i = 0; i + 1 < doc.chain.size(); ++i) {
        const unsigned long n = doc.chain[i].n;
        const mpz_class& v = doc.chain[i].v;
        const std::string subject = "n=" + std::to_string(n) + " y=" + v.get_str();
        std::optional<bool> ok;
        for (mpfr_prec_t p = kDefaultPrecision; p <= kDefaultPrecisionCap; p *= 2) {
            const Value h0 = family.h_apply(n, v, 0, p);
            const Value h1 = family.h_apply(n, v, 1, p);
            Value lhs = [&]() {
                if (h0.is_exact()) {
                    if (auto e = family.gap().eval_exact(h0.exact_value())) return Value::exact(*e);
                }
                return Value::enclosure(family.gap().eval(h0.to_interval(p), p));
            }();
            Value window = h1.is_exact() && h0.is_exact()
                               ? Value::exact(mpq_class(h1.exact_value() - h0.exact_value()))
                               : Value::enclosure(sub(h1.to_interval(p), h0.to_interval(p)));
            ok = value_le(lhs, window, p);
            if (ok.has_value()) break;
        }
        if (!ok.has_value())
            report.add("gap-window", subject, "indeterminate", "undecidable at the precision cap");
        else if (!*ok)
            report.add("gap-window", subject, "fail",
                       "g(h_n(v_n)) exceeds h_n(v_n+1) - h_n(v_n)");
        else
            report.add("gap-window", subject, "pass");
    }

    for (const auto& a : doc.assumptions) report.add("assumption", "", "warning", a);
    return report;
}

VerifyReport verify_all(const ResultDocument& doc, SequenceSource& source) {
    VerifyReport report = verify_integrity(doc);
    if (!report.all_passed()) return report;  // do not trust a tampered document further
    const VerifyReport floors = verify_floors(doc);
    const VerifyReport membership = verify_membership(doc, source);
    const VerifyReport hypotheses = verify_hypotheses(doc);
    for (const auto* r : {&floors, &membership, &hypotheses})
        report.items.insert(report.items.end(), r->items.begin(), r->items.end());
    return report;
}

} // namespace millwright
