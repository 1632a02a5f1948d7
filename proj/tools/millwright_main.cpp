// millwright: certified digits of prime-representing constants.
//
// Subcommands:
//   compute     run a construction and emit a result document
//   verify      re-verify a result document from scratch
//   gaps        scan gap bounds / fit the gap constant over the primes
//   hypothesis  sampled certification of the family inequalities

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "millwright/api.hpp"

namespace {

using nlohmann::json;

constexpr int kExitArgs = 2;
constexpr int kExitGapViolation = 3;
constexpr int kExitPrecision = 4;
constexpr int kExitSequence = 5;
constexpr int kExitVerifyFailure = 6;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw millwright::Error("cannot open output file '" + out_path + "'");
    out << text << "\n";
}

json report_to_json(const millwright::VerifyReport& report) {
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

void print_report_table(const millwright::VerifyReport& report) {
    for (const auto& i : report.items) {
        std::cout << (i.status == "pass"      ? "  ok   "
                      : i.status == "warning" ? "  warn "
                                              : "  FAIL ")
                  << i.check << " " << i.subject;
        if (!i.detail.empty()) std::cout << "  (" << i.detail << ")";
        std::cout << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified digits of prime-representing constants"};
    app.require_subcommand(1);

    // ---- compute ----
    auto* compute = app.add_subcommand("compute", "run a construction");
    millwright::ComputeRequest request;
    std::string family_spec, source_spec = "primes", out_path, resume_path;
    unsigned long terms = 0, digits = 12, seed_index = 0;
    long precision_start = millwright::kDefaultPrecision;
    long precision_cap = millwright::kDefaultPrecisionCap;
    unsigned mr_rounds = 16;
    unsigned long gap_fit_limit = 1'000'000;
    bool plain = false, json_out = true;
    // MILLWRIGHT_PRECISION_CAP overrides the default cap; --precision-max
    // wins over both.
    if (const char* env_cap = std::getenv("MILLWRIGHT_PRECISION_CAP")) {
        char* end = nullptr;
        const long v = std::strtol(env_cap, &end, 10);
        if (end != nullptr && *end == '\0' && v >= 8) precision_cap = v;
    }
    compute->add_option("--family", family_spec, "family spec (e.g. mills, farhi-power:xi=2,k=2)")
        ->required();
    compute->add_option("--terms", terms, "number of chain terms (default: per family)");
    compute->add_option("--digits", digits, "certified digit goal (default 12)");
    compute->add_option("--source", source_spec, "primes | file:PATH (default primes)");
    compute->add_option("--precision-start", precision_start, "starting precision in bits");
    compute->add_option("--precision-max", precision_cap, "precision cap in bits");
    compute->add_option("--mr-rounds", mr_rounds, "extra Miller-Rabin rounds beyond 2^64");
    compute->add_option("--seed-index", seed_index, "explicit source index for the first term");
    compute->add_option("--resume", resume_path, "JSON-lines step cache to resume from");
    compute->add_option("--out", out_path, "write the result document to a file");
    compute->add_option("--gap-fit-limit", gap_fit_limit,
                        "prime limit for the empirical gap-constant fit");
    compute->add_flag("--plain", plain, "emit certified digits only");
    compute->add_flag("--json,!--no-json", json_out, "emit the JSON document (default)");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "re-verify a result document");
    std::string verify_input, verify_file_override;
    bool verify_json = false;
    verify->add_option("--input", verify_input, "result document path")->required();
    verify->add_option("--sequence-file", verify_file_override,
                       "override the sequence file location");
    verify->add_flag("--json", verify_json, "emit the report as JSON");

    // ---- gaps ----
    auto* gaps = app.add_subcommand("gaps", "gap scan / gap-constant fit over the primes");
    unsigned long gaps_limit = 0;
    std::string gaps_g, gaps_fit, gaps_source = "primes";
    bool gaps_json = false;
    gaps->add_option("--limit", gaps_limit, "scan bound (pairs with u' <= limit)")->required();
    gaps->add_option("--g", gaps_g, "gap function spec (pow:2/3, linear, linear:1, logpow:..., const:...)");
    gaps->add_option("--fit", gaps_fit, "fit the smallest admissible constant, e.g. k=1.5");
    gaps->add_option("--source", gaps_source, "primes | file:PATH (scan only)");
    gaps->add_flag("--json", gaps_json, "emit the report as JSON");

    // ---- hypothesis ----
    auto* hypothesis = app.add_subcommand("hypothesis", "sampled hypothesis certification");
    std::string hyp_family, hyp_range = "0..3", hyp_window;
    unsigned long hyp_samples = 100;
    unsigned long hyp_seed = 1;
    bool hyp_json = false;
    hypothesis->add_option("--family", hyp_family, "family spec")->required();
    hypothesis->add_option("--n-range", hyp_range, "index range A..B (default 0..3)");
    hypothesis->add_option("--samples", hyp_samples, "sample count per index (default 100)");
    hypothesis->add_option("--rng-seed", hyp_seed, "deterministic sampling seed (default 1)");
    hypothesis->add_option("--window", hyp_window, "sampling window LO..HI (default per family)");
    hypothesis->add_flag("--json", hyp_json, "emit the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitArgs;
    }

    try {
        if (compute->parsed()) {
            if (compute->count("--terms") && terms == 0) {
                std::cerr << "error: --terms must be >= 1\n";
                return kExitArgs;
            }
            request.family_spec = family_spec;
            request.source_spec = source_spec;
            if (compute->count("--terms")) request.terms = terms;
            request.digits = digits;
            request.precision_start = precision_start;
            request.precision_cap = precision_cap;
            request.mr_rounds = mr_rounds;
            if (compute->count("--seed-index")) request.seed_index = seed_index;
            if (!resume_path.empty()) request.resume_path = resume_path;
            request.gap_fit_limit = mpz_class(gap_fit_limit);

            const millwright::ResultDocument doc = millwright::compute(request);
            if (plain || !json_out)
                emit(doc.digits, out_path);
            else
                emit(doc.to_json().dump(2), out_path);
            return 0;
        }

        if (verify->parsed()) {
            const millwright::ResultDocument doc = millwright::ResultDocument::load(verify_input);
            const millwright::VerifyReport report = millwright::verify_document(
                doc, verify_file_override.empty()
                         ? std::nullopt
                         : std::optional<std::string>(verify_file_override));
            if (verify_json)
                std::cout << report_to_json(report).dump(2) << "\n";
            else
                print_report_table(report);
            return report.all_passed() ? 0 : kExitVerifyFailure;
        }

        if (gaps->parsed()) {
            if (gaps_limit < 3) {
                std::cerr << "error: --limit must be >= 3\n";
                return kExitArgs;
            }
            if (gaps_g.empty() == gaps_fit.empty()) {
                std::cerr << "error: exactly one of --g or --fit is required\n";
                return kExitArgs;
            }
            auto source = millwright::open_source(gaps_source, 16);
            json out;
            if (!gaps_fit.empty()) {
                if (gaps_fit.rfind("k=", 0) != 0)
                    throw millwright::ParseError("--fit expects k=VALUE");
                const mpq_class k = millwright::parse_mpq(gaps_fit.substr(2));
                const millwright::GapFit fit =
                    millwright::fit_gap_constant(mpz_class(gaps_limit), k);
                out = {{"limit", gaps_limit},
                       {"k", k.get_str()},
                       {"c", fit.c_decimal},
                       {"argmax_prime", fit.argmax_prime.get_str()},
                       {"argmax_gap", fit.argmax_gap.get_str()},
                       {"pairs_checked", fit.pairs_checked}};
                if (!gaps_json) {
                    std::cout << "fitted c = " << fit.c_decimal << "  (largest ratio at p = "
                              << fit.argmax_prime.get_str() << ", gap "
                              << fit.argmax_gap.get_str() << ", " << fit.pairs_checked
                              << " pairs)\n";
                    return 0;
                }
            } else {
                const millwright::GapFunction g = millwright::GapFunction::parse(gaps_g);
                const millwright::GapReport report =
                    millwright::scan_gaps(*source, mpz_class(gaps_limit), g);
                json violations = json::array();
                for (const auto& v : report.violations)
                    violations.push_back(
                        {{"index", v.index}, {"u", v.u.get_str()}, {"u_next", v.u_next.get_str()}});
                out = {{"limit", gaps_limit},
                       {"g", g.spec_string()},
                       {"max_gap", report.max_gap.get_str()},
                       {"argmax_term", report.argmax_term.get_str()},
                       {"pairs_checked", report.pairs_checked},
                       {"violations", violations}};
                if (!gaps_json) {
                    std::cout << "pairs checked: " << report.pairs_checked
                              << "  max gap: " << report.max_gap.get_str() << " (after "
                              << report.argmax_term.get_str() << ")\n";
                    if (report.violations.empty()) {
                        std::cout << "no violations of u' - u <= g(u) - 1\n";
                    } else {
                        std::cout << report.violations.size() << " violation(s):\n";
                        size_t shown = 0;
                        for (const auto& v : report.violations) {
                            std::cout << "  #" << v.index << "  " << v.u.get_str() << " -> "
                                      << v.u_next.get_str() << "\n";
                            if (++shown == 20 && report.violations.size() > 20) {
                                std::cout << "  ... (" << report.violations.size() - 20
                                          << " more)\n";
                                break;
                            }
                        }
                    }
                    return 0;
                }
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (hypothesis->parsed()) {
            const auto dots = hyp_range.find("..");
            if (dots == std::string::npos)
                throw millwright::ParseError("--n-range expects A..B");
            const unsigned long n_lo = std::stoul(hyp_range.substr(0, dots));
            const unsigned long n_hi = std::stoul(hyp_range.substr(dots + 2));
            const millwright::FamilyDescriptor family =
                millwright::FamilyDescriptor::parse(hyp_family);
            std::optional<std::pair<mpq_class, mpq_class>> window;
            if (!hyp_window.empty()) {
                const auto wdots = hyp_window.find("..");
                if (wdots == std::string::npos)
                    throw millwright::ParseError("--window expects LO..HI");
                window = {millwright::parse_mpq(hyp_window.substr(0, wdots)),
                          millwright::parse_mpq(hyp_window.substr(wdots + 2))};
            }
            const millwright::HypothesisReport report =
                family.check_hypothesis(n_lo, n_hi, hyp_samples, hyp_seed, window);

            json points = json::array();
            for (const auto& v : report.violations)
                points.push_back({{"n", v.n}, {"x", v.x.get_str()}, {"check", v.check},
                                  {"status", v.status}});
            for (const auto& v : report.indeterminate)
                points.push_back({{"n", v.n}, {"x", v.x.get_str()}, {"check", v.check},
                                  {"status", v.status}});
            const json out = {{"family", family.spec_string()},
                              {"n_lo", report.n_lo},
                              {"n_hi", report.n_hi},
                              {"samples", report.sample_count},
                              {"rng_seed", report.seed},
                              {"window", {report.window_lo, report.window_hi}},
                              {"checks_performed", report.checks_performed},
                              {"flagged", points},
                              {"all_pass", report.all_pass()}};
            if (hyp_json) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "family " << family.spec_string() << ", n in [" << report.n_lo
                          << ", " << report.n_hi << "], " << report.sample_count
                          << " samples, seed " << report.seed << "\n";
                std::cout << "certified at " << report.checks_performed << " sample checks; "
                          << report.violations.size() << " violation(s), "
                          << report.indeterminate.size() << " indeterminate\n";
                for (const auto& v : report.violations)
                    std::cout << "  violation: n=" << v.n << " x=" << v.x.get_str() << " ("
                              << v.check << ")\n";
            }
            return report.all_pass() ? 0 : kExitVerifyFailure;
        }
    } catch (const millwright::GapViolation& e) {
        std::cerr << "gap violation: " << e.what() << "\n";
        return kExitGapViolation;
    } catch (const millwright::PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const millwright::SequenceExhausted& e) {
        std::cerr << "sequence exhausted: " << e.what() << "\n";
        return kExitSequence;
    } catch (const millwright::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    } catch (const millwright::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    } catch (const millwright::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
