// Python bindings for the millwright core.  Heavy values (big integers,
// certified decimals) cross the boundary as strings; structured results cross
// as JSON strings and are decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "millwright/api.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

using namespace millwright;

std::string compute_json(const std::string& family, const std::string& source,
                         std::optional<unsigned long> terms, unsigned long digits,
                         long precision_start, long precision_cap, unsigned mr_rounds,
                         std::optional<unsigned long> seed_index,
                         std::optional<std::string> resume, const std::string& gap_fit_limit) {
    ComputeRequest req;
    req.family_spec = family;
    req.source_spec = source;
    req.terms = terms;
    req.digits = digits;
    req.precision_start = precision_start;
    req.precision_cap = precision_cap;
    req.mr_rounds = mr_rounds;
    req.seed_index = seed_index;
    req.resume_path = std::move(resume);
    req.gap_fit_limit = mpz_class(gap_fit_limit);
    return compute(req).to_json().dump();
}

json report_json(const VerifyReport& report) {
    json items = json::array();
    for (const auto& i : report.items)
        items.push_back({{"check", i.check},
                         {"subject", i.subject},
                         {"status", i.status},
                         {"detail", i.detail}});
    return {{"items", items},
            {"all_passed", report.all_passed()},
            {"warnings", report.has_warnings()}};
}

std::string verify_json(const std::string& document_json,
                        std::optional<std::string> sequence_file) {
    const ResultDocument doc = ResultDocument::from_json(json::parse(document_json));
    return report_json(verify_document(doc, std::move(sequence_file))).dump();
}

std::string scan_gaps_json(const std::string& limit, const std::string& gap_spec,
                           const std::string& source_spec) {
    auto source = open_source(source_spec, 16);
    const GapReport r = scan_gaps(*source, mpz_class(limit), GapFunction::parse(gap_spec));
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"index", v.index}, {"u", v.u.get_str()},
                              {"u_next", v.u_next.get_str()}});
    return json{{"limit", r.limit.get_str()},
                {"max_gap", r.max_gap.get_str()},
                {"argmax_term", r.argmax_term.get_str()},
                {"pairs_checked", r.pairs_checked},
                {"violations", violations}}
        .dump();
}

std::string fit_gap_json(const std::string& limit, const std::string& k) {
    const GapFit fit = fit_gap_constant(mpz_class(limit), parse_mpq(k));
    return json{{"c", fit.c_decimal},
                {"argmax_prime", fit.argmax_prime.get_str()},
                {"argmax_gap", fit.argmax_gap.get_str()},
                {"pairs_checked", fit.pairs_checked}}
        .dump();
}

std::string hypothesis_json(const std::string& family, unsigned long n_lo, unsigned long n_hi,
                            unsigned long samples, unsigned long seed) {
    const FamilyDescriptor f = FamilyDescriptor::parse(family);
    const HypothesisReport r = f.check_hypothesis(n_lo, n_hi, samples, seed);
    json flagged = json::array();
    for (const auto& v : r.violations)
        flagged.push_back({{"n", v.n}, {"x", v.x.get_str()}, {"check", v.check},
                           {"status", v.status}});
    for (const auto& v : r.indeterminate)
        flagged.push_back({{"n", v.n}, {"x", v.x.get_str()}, {"check", v.check},
                           {"status", v.status}});
    return json{{"family", f.spec_string()},
                {"n_lo", r.n_lo},
                {"n_hi", r.n_hi},
                {"samples", r.sample_count},
                {"rng_seed", r.seed},
                {"checks_performed", r.checks_performed},
                {"all_pass", r.all_pass()},
                {"flagged", flagged}}
        .dump();
}

py::tuple is_prime_py(const std::string& n, unsigned rounds) {
    const PrimalityResult r = is_prime(mpz_class(n), rounds);
    return py::make_tuple(r.is_prime, std::string(to_string(r.certainty)));
}

std::string admissible_a_py(const std::string& xi, const std::string& k) {
    return admissible_a(parse_mpq(xi), parse_mpq(k)).get_str();
}

unsigned long factorial_n0_py(const std::string& k, const std::string& eps,
                              const std::string& ck) {
    return factorial_n0(parse_mpq(k), parse_mpq(eps), parse_mpq(ck));
}

py::tuple digits_of_bracket(const std::string& lo, const std::string& hi) {
    const DigitsResult d = extract_digits(lo, hi);
    return py::make_tuple(d.digits, d.integer_part_undecided);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "certified digits of prime-representing constants";

    py::register_exception<millwright::GapViolation>(m, "GapViolationError");
    py::register_exception<millwright::PrecisionExhausted>(m, "PrecisionExhaustedError");
    py::register_exception<millwright::SequenceExhausted>(m, "SequenceExhaustedError");
    py::register_exception<millwright::ParseError>(m, "SpecParseError");

    m.def("compute_json", &compute_json, py::arg("family"), py::arg("source") = "primes",
          py::arg("terms") = std::nullopt, py::arg("digits") = 12,
          py::arg("precision_start") = 128, py::arg("precision_cap") = 1 << 20,
          py::arg("mr_rounds") = 16, py::arg("seed_index") = std::nullopt,
          py::arg("resume") = std::nullopt, py::arg("gap_fit_limit") = "1000000",
          "Run a construction; returns the result document as JSON.");
    m.def("verify_json", &verify_json, py::arg("document_json"),
          py::arg("sequence_file") = std::nullopt,
          "Re-verify a result document; returns the report as JSON.");
    m.def("scan_gaps_json", &scan_gaps_json, py::arg("limit"), py::arg("gap_spec"),
          py::arg("source") = "primes");
    m.def("fit_gap_constant_json", &fit_gap_json, py::arg("limit"), py::arg("k"));
    m.def("check_hypothesis_json", &hypothesis_json, py::arg("family"), py::arg("n_lo"),
          py::arg("n_hi"), py::arg("samples") = 100, py::arg("rng_seed") = 1);
    m.def("is_prime", &is_prime_py, py::arg("n"), py::arg("mr_rounds") = 16,
          "(is_prime, certainty) for a decimal integer string.");
    m.def("admissible_a", &admissible_a_py, py::arg("xi"), py::arg("k"));
    m.def("factorial_n0", &factorial_n0_py, py::arg("k"), py::arg("eps"), py::arg("ck"));
    m.def("digits_of_bracket", &digits_of_bracket, py::arg("lo"), py::arg("hi"));
}
