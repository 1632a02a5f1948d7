#ifndef MILLWRIGHT_VERIFIER_HPP
#define MILLWRIGHT_VERIFIER_HPP

#include <string>
#include <vector>

#include "millwright/result_io.hpp"

namespace millwright {

struct CheckItem {
    std::string check;   // e.g. "floor", "membership", "monotone", "gap-window"
    std::string subject; // which n / term the item refers to
    std::string status;  // "pass" | "fail" | "warning" | "indeterminate"
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckItem> items;
    bool all_passed() const {
        for (const auto& i : items)
            if (i.status == "fail" || i.status == "indeterminate") return false;
        return true;
    }
    bool has_warnings() const {
        for (const auto& i : items)
            if (i.status == "warning") return true;
        return false;
    }
    void add(std::string check, std::string subject, std::string status, std::string detail = "") {
        items.push_back({std::move(check), std::move(subject), std::move(status), std::move(detail)});
    }
};

// Re-evaluates f_n over the reported bracket at doubled precision and
// certifies that the enclosure lies inside [v_n, v_n + 1) for every chain
// term.  Failures are report entries, never exceptions.
VerifyReport verify_floors(const ResultDocument& doc);

// Re-certifies every chain term as a member of the source (primality re-test
// at equal-or-higher certainty for primes) and checks strict monotonicity of
// the terms and of the recorded source indices.  A certainty downgrade is a
// warning, not a failure.
VerifyReport verify_membership(const ResultDocument& doc, SequenceSource& source);

// Re-runs the sampled hypothesis check over the n-range the chain used and
// re-certifies g(h_n(y)) <= h_n(y+1) - h_n(y) at every realized y = v_n.
VerifyReport verify_hypotheses(const ResultDocument& doc);

// Integrity hash re-computation.
VerifyReport verify_integrity(const ResultDocument& doc);

// All four, in order: integrity, floors, membership, hypotheses.
VerifyReport verify_all(const ResultDocument& doc, SequenceSource& source);

} // namespace millwright

#endif
