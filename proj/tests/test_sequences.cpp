#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <fstream>

#include "millwright/sequences.hpp"
#include "oracle_helpers.hpp"

using namespace millwright;

namespace {

bool trial_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_SUITE("sequences") {

TEST_CASE("is_prime certainty levels") {
    const auto p1361 = is_prime(1361);
    CHECK(p1361.is_prime);
    CHECK(p1361.certainty == PrimalityCertainty::DeterministicMR);

    const auto p1 = is_prime(1);
    CHECK(!p1.is_prime);
    CHECK(p1.certainty == PrimalityCertainty::SieveProven);

    // oracle: trial division up to sqrt(n)
    CHECK(oracle::trial_division_is_prime(2521008887));
    const auto big = is_prime(2521008887);
    CHECK(big.is_prime);
    CHECK(big.certainty == PrimalityCertainty::DeterministicMR);

    CHECK(is_prime(2).certainty == PrimalityCertainty::SieveProven);
    CHECK(!is_prime(0).is_prime);
    CHECK_THROWS_AS(is_prime(-3), DomainError);

    // beyond 64 bits the claim is probabilistic
    const mpz_class m127 = (mpz_class(1) << 127) - 1;  // a Mersenne prime
    const auto r = is_prime(m127);
    CHECK(r.is_prime);
    CHECK(r.certainty == PrimalityCertainty::ProbabilisticBPSW);
    const auto comp = is_prime(m127 - 2);
    CHECK(!comp.is_prime);

    // more shapes through the wide path: a Fermat semiprime, a perfect
    // square, and another Mersenne prime
    const mpz_class f7 = (mpz_class(1) << 128) + 1;
    CHECK(!is_prime(f7).is_prime);
    const mpz_class sq = m127 * m127;
    CHECK(!is_prime(sq).is_prime);
    CHECK(is_prime((mpz_class(1) << 89) - 1).is_prime);
    CHECK(!is_prime(m127 * ((mpz_class(1) << 89) - 1)).is_prime);
}

TEST_CASE("is_prime agrees with trial division up to 10^6") {
    unsigned long primes_found = 0;
    for (std::uint64_t n = 0; n <= 1'000'000; ++n) {
        const bool expected = trial_u64(n);
        const bool got = is_prime(mpz_class(static_cast<unsigned long>(n))).is_prime;
        if (expected != got) {
            CAPTURE(n);
            REQUIRE(expected == got);
        }
        if (got) ++primes_found;
    }
    CHECK(primes_found == 78498);
}

TEST_CASE("next_term_geq on primes") {
    PrimeSource primes;
    const Term a = primes.next_term_geq(Bound(mpz_class(8)));
    CHECK(a.value == 11);
    CHECK(a.index == 4);

    const Term b = primes.next_term_geq(Bound(mpz_class(1331)));
    CHECK(b.value == 1361);  // oracle: sieve over [1331, 1361]
    CHECK(b.value == oracle::next_prime_by_trial(1331));

    const Term c = primes.next_term_geq(Bound(mpz_class(2)));
    CHECK(c.value == 2);
    CHECK(c.index == 0);

    // interval bounds must certify their ceiling
    CHECK_THROWS_AS(primes.next_term_geq(Bound(BigInterval::from_decimal("10.4", "11.6", 64))),
                    IndeterminateBound);
    const Term d = primes.next_term_geq(Bound(BigInterval::from_decimal("10.2", "10.7", 64)));
    CHECK(d.value == 11);
}

TEST_CASE("next_term_geq matches linear search over trial division (property)") {
    PrimeSource primes;
    oracle::Rng rng(123);
    for (int i = 0; i < 1'500; ++i) {
        const unsigned long b = static_cast<unsigned long>(rng.range(0, 1'000'000));
        const Term t = primes.next_term_geq(Bound(mpz_class(b)));
        CHECK(t.value == oracle::next_prime_by_trial(b));
    }
    // dense small range, plus the term_at accessor
    for (unsigned long b = 0; b <= 300; ++b) {
        CHECK(PrimeSource().next_term_geq(Bound(mpz_class(b))).value ==
              oracle::next_prime_by_trial(b));
    }
    CHECK(primes.term_at(0).value == 2);
    CHECK(primes.term_at(4).value == 11);
    CHECK(primes.term_at(24).value == 97);
}

TEST_CASE("prime indices are absolute and only for small terms") {
    PrimeSource::Options opts;
    opts.index_limit = 1000;
    PrimeSource primes(opts);
    const Term t = primes.next_term_geq(Bound(mpz_class(997)));
    CHECK(t.value == 997);
    CHECK(t.index == 167);  // 997 is the 168th prime
    const Term big = primes.next_term_geq(Bound(mpz_class(1009)));
    CHECK(big.value == 1009);
    CHECK(!big.index.has_value());
}

TEST_CASE("file source parsing and validation") {
    const char* path = "/tmp/millwright_test_seq.txt";
    {
        std::ofstream out(path);
        out << "# header comment\n  10\n11   # trailing comment\n\n15\n";
    }
    FileSource src = FileSource::load(path);
    CHECK(src.terms().size() == 3);
    CHECK(src.max_gap() == 4);
    CHECK(src.next_term_geq(Bound(mpz_class(11))).value == 11);
    CHECK(src.next_term_geq(Bound(mpz_class(11))).index == 1);
    CHECK_THROWS_AS(src.next_term_geq(Bound(mpz_class(16))), SequenceExhausted);
    CHECK(src.check_member(11).is_prime);
    CHECK(!src.check_member(12).is_prime);
    CHECK_THROWS_AS(src.term_at(3), SequenceExhausted);

    {
        std::ofstream out(path);
        out << "5\n5\n";
    }
    CHECK_THROWS_WITH_AS(FileSource::load(path), doctest::Contains(":2:"), ParseError);
    {
        std::ofstream out(path);
        out << "5\nseven\n";
    }
    CHECK_THROWS_AS(FileSource::load(path), ParseError);
}

TEST_CASE("scan_gaps flags exactly the failing pairs below 100 for pow:2/3") {
    PrimeSource primes;
    const GapReport report = scan_gaps(primes, 100, GapFunction::power(mpq_class(2, 3)));
    // oracle: enumerate primes < 100 and evaluate g directly (margins are
    // far from the boundary, so double arithmetic decides safely)
    const auto ps = oracle::primes_below(100);
    std::vector<unsigned long> expected;
    for (size_t i = 0; i + 1 < ps.size(); ++i) {
        const double g = std::pow(static_cast<double>(ps[i]), 2.0 / 3.0);
        const double gap = static_cast<double>(ps[i + 1] - ps[i]);
        REQUIRE(std::abs(gap - (g - 1)) > 1e-6);
        if (gap > g - 1) expected.push_back(i);
    }
    REQUIRE(report.violations.size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i) CHECK(report.violations[i].index == expected[i]);
    CHECK(report.violations.size() == 4);  // (2,3), (3,5), (5,7), (7,11)
    CHECK(report.violations[0].u == 2);
    CHECK(report.violations[0].u_next == 3);
    CHECK(report.max_gap == 8);
    CHECK(report.argmax_term == 89);
}

TEST_CASE("scan_gaps with g(x) = x is violation-free below 10^5") {
    PrimeSource primes;
    const GapReport report = scan_gaps(primes, 100'000, GapFunction::linear(mpq_class(1)));
    CHECK(report.violations.empty());
    CHECK(report.pairs_checked == 9591);  // primes below 10^5
}

TEST_CASE("scan_gaps exact constant bound") {
    FileSource src({mpz_class(10), mpz_class(11)}, "pair");
    const GapReport report = scan_gaps(src, 100, GapFunction::constant(mpq_class(2)));
    CHECK(report.violations.empty());
    CHECK(report.pairs_checked == 1);
    // and the boundary case: gap 1 > g - 1 = 0.5
    const GapReport tight = scan_gaps(src, 100, GapFunction::constant(mpq_class(3, 2)));
    CHECK(tight.violations.size() == 1);
}

TEST_CASE("fit_gap_constant matches the hand-enumerated maxima") {
    // pairs with u' <= 10: (2,3), (3,5), (5,7); max ratio is 2/ln 3
    const GapFit fit10 = fit_gap_constant(10, mpq_class(1));
    const double expected10 = 2.0 / std::log(3.0);
    CHECK(fit10.c.get_d() >= expected10);
    CHECK(fit10.c.get_d() <= expected10 * (1 + 1e-9));
    CHECK(fit10.argmax_prime == 3);

    // single pair (2,3) at limit 3: 1/(ln 2)^2
    const GapFit fit3 = fit_gap_constant(3, mpq_class(2));
    const double expected3 = 1.0 / std::pow(std::log(2.0), 2);
    CHECK(fit3.c.get_d() >= expected3);
    CHECK(fit3.c.get_d() <= expected3 * (1 + 1e-9));
    CHECK(fit3.pairs_checked == 1);

    CHECK_THROWS_AS(fit_gap_constant(2, mpq_class(1)), DomainError);
}

TEST_CASE("fitted constant yields a violation-free scan (property)") {
    for (const char* kstr : {"1", "3/2", "2"}) {
        const mpq_class k = parse_mpq(kstr);
        const GapFit fit = fit_gap_constant(100'000, k);
        PrimeSource primes;
        const GapReport report =
            scan_gaps(primes, 100'000, GapFunction::log_power(fit.c, k, mpq_class(1)));
        CHECK(report.violations.empty());
    }
}

TEST_CASE("bound ceilings") {
    CHECK(Bound(mpz_class(7)).certified_ceil() == 7);
    CHECK(Bound(mpq_class(22, 7)).certified_ceil() == 4);
    CHECK(Bound(mpq_class(21, 7)).certified_ceil() == 3);
    CHECK(Bound(BigInterval::from_decimal("3.2", "3.9", 64)).certified_ceil() == 4);
}

} // TEST_SUITE
