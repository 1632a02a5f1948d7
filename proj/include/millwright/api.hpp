#ifndef MILLWRIGHT_API_HPP
#define MILLWRIGHT_API_HPP

#include <memory>
#include <optional>
#include <string>

#include "millwright/result_io.hpp"
#include "millwright/verifier.hpp"

namespace millwright {

// One construction request, as the CLI and the Python module see it.
struct ComputeRequest {
    std::string family_spec;
    std::string source_spec = "primes";  // "primes" or "file:PATH"
    std::optional<unsigned long> terms;  // default: family-dependent
    unsigned long digits = 12;
    mpfr_prec_t precision_start = kDefaultPrecision;
    mpfr_prec_t precision_cap = kDefaultPrecisionCap;
    unsigned mr_rounds = 16;
    std::optional<unsigned long> seed_index;
    std::optional<std::string> resume_path;  // JSON-lines step cache
    mpz_class gap_fit_limit = mpz_class(1'000'000);
};

// Builds the source named by a source spec ("primes" | "file:PATH").
std::unique_ptr<SequenceSource> open_source(const std::string& source_spec, unsigned mr_rounds);

// Runs the construction (resuming from the cache when requested) and returns
// the sealed result document.
ResultDocument compute(const ComputeRequest& request);

// Rebuilds the source recorded in the document and runs all verification
// passes.  file_override substitutes the sequence file path.
VerifyReport verify_document(const ResultDocument& doc,
                             std::optional<std::string> file_override = std::nullopt);

} // namespace millwright

#endif
