#ifndef MILLWRIGHT_CONSTRUCTOR_HPP
#define MILLWRIGHT_CONSTRUCTOR_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "millwright/families.hpp"
#include "millwright/sequences.hpp"

namespace millwright {

struct ChainEntry {
    unsigned long n;
    std::optional<unsigned long> source_index;  // k_n when it is computable
    mpz_class v;
    PrimalityCertainty certainty;
};

struct EscalationEvent {
    unsigned long n;
    mpfr_prec_t from;
    mpfr_prec_t to;
};

// The evolving tuple of the construction: current index n, selected term
// v_n = u_{k_n}, and enclosures of x_n = f_n^{-1}(v_n), y_n = f_n^{-1}(v_n+1).
struct ConstructionState {
    unsigned long n = 0;
    std::optional<unsigned long> k;
    mpz_class v;
    PrimalityCertainty certainty = PrimalityCertainty::SieveProven;
    Value x = Value::exact(mpz_class(0));
    Value y = Value::exact(mpz_class(0));
    mpfr_prec_t precision = kDefaultPrecision;
};

// Certified decimal sub-bracket: every real in [lo, hi] has floor(f_n(.)) =
// v_n for every produced term.
struct Bracket {
    std::string lo;
    std::string hi;
    mpfr_prec_t precision_bits = 0;
};

struct ConstructionResult {
    std::string family_spec;
    std::string source_description;
    std::vector<ChainEntry> chain;
    Bracket bracket;
    std::string digits;
    bool integer_part_undecided = false;
    std::vector<std::string> assumptions;
    std::vector<EscalationEvent> escalations;
    mpfr_prec_t final_precision = 0;
};

struct DigitsResult {
    std::string digits;
    bool integer_part_undecided;
    unsigned long digit_count;
};

// Longest decimal prefix shared by every real in [lo, hi] (decimal strings,
// nonnegative).  May end with '.' when the fraction is undecided.
DigitsResult extract_digits(const std::string& lo_decimal, const std::string& hi_decimal);

struct ConstructorOptions {
    mpfr_prec_t precision_start = kDefaultPrecision;
    mpfr_prec_t precision_cap = kDefaultPrecisionCap;
    std::optional<unsigned long> seed_index;  // explicit k for the first term
};

class ConstructionSession {
  public:
    ConstructionSession(const FamilyDescriptor& family, SequenceSource& source,
                        ConstructorOptions opts = {});

    ConstructionState init();
    ConstructionState step(const ConstructionState& state);
    // Replay variant: uses a known next term instead of searching the source,
    // re-certifying the step inequalities.
    ConstructionState advance_with_term(const ConstructionState& state, const mpz_class& v_next);

    ConstructionResult run(unsigned long term_count, unsigned long digit_goal);

    // Bracket refinement and digit extraction for a finished chain.
    ConstructionResult finalize(const ConstructionState& st, std::vector<ChainEntry> chain,
                                unsigned long digit_goal);

    const std::vector<EscalationEvent>& escalations() const { return escalations_; }
    mpfr_prec_t current_precision() const { return precision_; }

    // Called after every committed state (including the seed).
    std::function<void(const ConstructionState&)> on_state;

  private:
    void escalate(unsigned long n, const char* why);
    void certify_image_membership(const ConstructionState& st);
    ConstructionState advance(const ConstructionState& state,
                              const std::optional<mpz_class>& known_term);

    const FamilyDescriptor& family_;
    SequenceSource& source_;
    ConstructorOptions opts_;
    mpfr_prec_t precision_;
    std::vector<EscalationEvent> escalations_;
};

// Convenience wrapper: init + (term_count - 1) steps + digit extraction.
ConstructionResult run_construction(const FamilyDescriptor& family, SequenceSource& source,
                                    unsigned long term_count, unsigned long digit_goal,
                                    ConstructorOptions opts = {});

} // namespace millwright

#endif
