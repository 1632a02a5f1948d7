#include <doctest.h>

#include "millwright/api.hpp"

using namespace millwright;

namespace {

ResultDocument mills_doc(unsigned long terms) {
    ComputeRequest req;
    req.family_spec = "mills";
    req.terms = terms;
    req.digits = 10;
    return compute(req);
}

} // namespace

TEST_SUITE("verifier") {

TEST_CASE("verify passes on a fresh result across all checks") {
    const ResultDocument doc = mills_doc(4);
    PrimeSource primes;
    const VerifyReport report = verify_all(doc, primes);
    CHECK(report.all_passed());

    // idempotence: a second run yields the identical report
    const VerifyReport again = verify_all(doc, primes);
    REQUIRE(report.items.size() == again.items.size());
    for (size_t i = 0; i < report.items.size(); ++i) {
        CHECK(report.items[i].status == again.items[i].status);
        CHECK(report.items[i].subject == again.items[i].subject);
    }
}

TEST_CASE("a tampered chain term fails floors and membership") {
    ResultDocument doc = mills_doc(4);
    doc.chain[2].v = 1362;  // not prime, wrong floor
    doc.seal();             // re-seal so the integrity check stays green

    const VerifyReport floors = verify_floors(doc);
    bool floor_failed = false;
    for (const auto& item : floors.items)
        if (item.check == "floor" && item.subject == "n=3" && item.status == "fail")
            floor_failed = true;
    CHECK(floor_failed);

    PrimeSource primes;
    const VerifyReport members = verify_membership(doc, primes);
    bool member_failed = false;
    for (const auto& item : members.items)
        if (item.check == "membership" && item.status == "fail") member_failed = true;
    CHECK(member_failed);
}

TEST_CASE("single-term results verify trivially") {
    const ResultDocument doc = mills_doc(1);
    CHECK(verify_floors(doc).all_passed());
    PrimeSource primes;
    CHECK(verify_membership(doc, primes).all_passed());
}

TEST_CASE("duplicate chain terms fail monotonicity") {
    ResultDocument doc = mills_doc(3);
    doc.chain[2].v = doc.chain[1].v;
    doc.seal();
    PrimeSource primes;
    const VerifyReport report = verify_membership(doc, primes);
    bool mono_failed = false;
    for (const auto& item : report.items)
        if (item.check == "monotone" && item.status == "fail") mono_failed = true;
    CHECK(mono_failed);
}

TEST_CASE("certainty downgrade is a warning, not a failure") {
    ResultDocument doc = mills_doc(5);  // the fifth term is beyond 2^64
    REQUIRE(doc.chain.back().certainty == PrimalityCertainty::ProbabilisticBPSW);
    doc.chain.back().certainty = PrimalityCertainty::DeterministicMR;  // overclaim
    doc.seal();
    PrimeSource primes;
    const VerifyReport report = verify_membership(doc, primes);
    CHECK(report.all_passed());
    CHECK(report.has_warnings());
}

TEST_CASE("integrity detects a bit-flipped digits field") {
    ResultDocument doc = mills_doc(3);
    CHECK(verify_integrity(doc).all_passed());
    doc.digits[2] = doc.digits[2] == '0' ? '1' : '0';
    CHECK(!verify_integrity(doc).all_passed());
    // verify_all refuses to continue past a failed hash
    PrimeSource primes;
    const VerifyReport report = verify_all(doc, primes);
    CHECK(report.items.size() == 1);
    CHECK(report.items[0].check == "integrity");
}

TEST_CASE("a post-hoc weakened gap function breaks the hash") {
    ResultDocument doc = mills_doc(3);
    doc.family_spec = "wright";  // lie about the construction
    CHECK(!doc.integrity_ok());
}

TEST_CASE("hypothesis re-check covers the realized indices") {
    const ResultDocument doc = mills_doc(4);
    const VerifyReport report = verify_hypotheses(doc);
    CHECK(report.all_passed());
    // the Mills window identity: g(h(v)) = v^2 <= 3v^2 + 3v + 1
    unsigned long windows = 0;
    for (const auto& item : report.items)
        if (item.check == "gap-window") {
            CHECK(item.status == "pass");
            ++windows;
        }
    CHECK(windows == doc.chain.size() - 1);
}

} // TEST_SUITE
