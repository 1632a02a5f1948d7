#ifndef MILLWRIGHT_SEQUENCES_HPP
#define MILLWRIGHT_SEQUENCES_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "millwright/exact_math.hpp"
#include "millwright/gap_function.hpp"
#include "millwright/interval.hpp"

namespace millwright {

enum class PrimalityCertainty { SieveProven, DeterministicMR, ProbabilisticBPSW };

const char* to_string(PrimalityCertainty c);
PrimalityCertainty certainty_from_string(const std::string& s);
// Higher rank = stronger claim.
int certainty_rank(PrimalityCertainty c);

struct PrimalityResult {
    bool is_prime;
    PrimalityCertainty certainty;
};

// Deterministic for n < 2^64 (fixed Miller-Rabin witness base); BPSW plus
// extra_mr_rounds randomized Miller-Rabin rounds above, reported as
// ProbabilisticBPSW.  Requires n >= 0.
PrimalityResult is_prime(const mpz_class& n, unsigned extra_mr_rounds = 16);

// Lower bound for a sequence query: an exact integer/rational, or a certified
// enclosure.  certified_ceil() is the smallest integer >= the bound; for an
// enclosure it throws IndeterminateBound when the endpoints do not agree on
// that integer (the caller refines precision and retries).
class Bound {
  public:
    Bound(mpz_class v) : value_(std::move(v)) {}
    Bound(mpq_class v) : value_(std::move(v)) {}
    Bound(BigInterval v) : value_(std::move(v)) {}

    mpz_class certified_ceil() const;
    bool is_exact() const { return !std::holds_alternative<BigInterval>(value_); }

  private:
    std::variant<mpz_class, mpq_class, BigInterval> value_;
};

struct Term {
    mpz_class value;
    std::optional<unsigned long> index;  // 0-based position in the source, when known
    PrimalityCertainty certainty;
};

class SequenceSource {
  public:
    virtual ~SequenceSource() = default;

    // Smallest term >= bound.  Throws SequenceExhausted / IndeterminateBound.
    virtual Term next_term_geq(const Bound& bound) = 0;

    // Term at a given 0-based index (for explicit seeding).
    virtual Term term_at(unsigned long index) = 0;

    // Consecutive pairs (index, u, u') with u' <= limit, in order.
    virtual void for_each_pair(
        const mpz_class& limit,
        const std::function<void(unsigned long, const mpz_class&, const mpz_class&)>& fn) = 0;

    // True membership re-check for verification.
    virtual PrimalityResult check_member(const mpz_class& value) = 0;

    virtual std::string describe() const = 0;
    virtual bool is_primes() const = 0;
};

// The prime numbers, via a shared synchronized segmented sieve for small
// windows and primality testing for large ones.
class PrimeSource final : public SequenceSource {
  public:
    struct Options {
        unsigned extra_mr_rounds = 16;
        // Largest value for which the absolute prime index is computed.
        mpz_class index_limit = mpz_class(10'000'000);
    };

    PrimeSource() = default;
    explicit PrimeSource(Options opts) : opts_(std::move(opts)) {}

    Term next_term_geq(const Bound& bound) override;
    Term term_at(unsigned long index) override;
    void for_each_pair(
        const mpz_class& limit,
        const std::function<void(unsigned long, const mpz_class&, const mpz_class&)>& fn) override;
    PrimalityResult check_member(const mpz_class& value) override;
    std::string describe() const override { return "primes"; }
    bool is_primes() const override { return true; }

    const Options& options() const { return opts_; }

  private:
    Options opts_;
};

// A strictly increasing integer sequence loaded from a text file
// (one base-10 integer per line, '#' comments allowed).
class FileSource final : public SequenceSource {
  public:
    static FileSource load(const std::string& path);
    explicit FileSource(std::vector<mpz_class> terms, std::string label = "file");

    Term next_term_geq(const Bound& bound) override;
    Term term_at(unsigned long index) override;
    void for_each_pair(
        const mpz_class& limit,
        const std::function<void(unsigned long, const mpz_class&, const mpz_class&)>& fn) override;
    PrimalityResult check_member(const mpz_class& value) override;
    std::string describe() const override { return label_; }
    bool is_primes() const override { return false; }

    const std::vector<mpz_class>& terms() const { return terms_; }
    // Largest gap between consecutive terms (0 for < 2 terms).
    mpz_class max_gap() const;

  private:
    std::vector<mpz_class> terms_;
    std::string label_;
};

struct GapViolationEntry {
    unsigned long index;
    mpz_class u;
    mpz_class u_next;
};

struct GapReport {
    mpz_class limit;
    mpz_class max_gap;
    mpz_class argmax_term;
    unsigned long pairs_checked = 0;
    std::vector<GapViolationEntry> violations;
    std::optional<std::string> fitted_constant;
};

// Checks u' - u <= g(u) - 1 for every consecutive pair with u' <= limit,
// with certified evaluation of g.
GapReport scan_gaps(SequenceSource& source, const mpz_class& limit, const GapFunction& g);

struct GapFit {
    mpq_class c;                // certified upper bound, rounded up
    std::string c_decimal;
    mpz_class argmax_prime;     // left element of the dominating pair
    mpz_class argmax_gap;
    unsigned long pairs_checked = 0;
};

// Smallest c (rounded up, within 1e-6 relative) with
// p' - p <= c * (ln p)^k for all consecutive prime pairs with p' <= limit.
GapFit fit_gap_constant(const mpz_class& limit, const mpq_class& k);

// Primes below `limit` streamed in order (desk-scale helper; limit <= 2^40).
void for_each_prime(const mpz_class& limit, const std::function<void(const mpz_class&)>& fn);

} // namespace millwright

#endif
