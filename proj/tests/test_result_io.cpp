#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "millwright/api.hpp"
#include "millwright/sha256.hpp"

using namespace millwright;

namespace {

ResultDocument compute_mills(unsigned long terms, std::optional<std::string> resume = {}) {
    ComputeRequest req;
    req.family_spec = "mills";
    req.terms = terms;
    req.digits = 10;
    req.resume_path = std::move(resume);
    return compute(req);
}

} // namespace

TEST_SUITE("result_io") {

TEST_CASE("canonical serialization is byte-stable") {
    const ResultDocument doc = compute_mills(3);
    const ResultDocument back = ResultDocument::from_json(doc.to_json());
    CHECK(back.canonical_payload() == doc.canonical_payload());
    CHECK(back.integrity_ok());
    CHECK(doc.integrity_ok());

    // round-trip through a file
    const char* path = "/tmp/millwright_doc.json";
    {
        std::ofstream out(path);
        out << doc.to_json().dump(2);
    }
    const ResultDocument loaded = ResultDocument::load(path);
    CHECK(loaded.canonical_payload() == doc.canonical_payload());
    CHECK(loaded.integrity == doc.integrity);
}

TEST_CASE("identical requests produce identical integrity hashes") {
    const ResultDocument a = compute_mills(4);
    const ResultDocument b = compute_mills(4);
    CHECK(a.integrity == b.integrity);
    CHECK(a.canonical_payload() == b.canonical_payload());
}

TEST_CASE("malformed documents are rejected") {
    const char* path = "/tmp/millwright_bad.json";
    {
        std::ofstream out(path);
        out << "{\"schema_version\": 1}";
    }
    CHECK_THROWS_AS(ResultDocument::load(path), ParseError);
    {
        std::ofstream out(path);
        out << "not json";
    }
    CHECK_THROWS_AS(ResultDocument::load(path), ParseError);
    CHECK_THROWS_AS(ResultDocument::load("/tmp/does_not_exist.json"), ParseError);
}

TEST_CASE("step cache appends and replays") {
    const std::string path = "/tmp/millwright_cache_test.jsonl";
    std::remove(path.c_str());

    const ResultDocument two = compute_mills(2, path);
    {
        // the cache now holds the seed and one step
        CacheFile cache(path + ".probe", "x", "y");  // unrelated file, just exercise creation
    }
    std::ifstream in(path);
    unsigned long lines = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 3);  // header + 2 states

    // resuming with more terms extends the cache and matches a clean run
    const ResultDocument four = compute_mills(4, path);
    const ResultDocument clean = compute_mills(4);
    CHECK(four.integrity == clean.integrity);

    // resuming with the same count replays without appending
    const ResultDocument again = compute_mills(4, path);
    CHECK(again.integrity == clean.integrity);

    // mismatched configuration is rejected
    ComputeRequest req;
    req.family_spec = "wright";
    req.terms = 2;
    req.resume_path = path;
    CHECK_THROWS_AS(compute(req), ParseError);

    (void)two;
    std::remove(path.c_str());
    std::remove((path + ".probe").c_str());
}

TEST_CASE("cache is locked against concurrent sessions") {
    const std::string path = "/tmp/millwright_cache_lock.jsonl";
    std::remove(path.c_str());
    CacheFile first(path, "mills", "primes");
    CHECK_THROWS_AS(CacheFile(path, "mills", "primes"), Error);
    std::remove(path.c_str());
}

TEST_CASE("file digests pin the sequence file") {
    const char* path = "/tmp/millwright_digest.txt";
    {
        std::ofstream out(path);
        out << "1\n2\n3\n";
    }
    const std::string d1 = file_sha256(path);
    CHECK(d1.size() == 64);
    CHECK(d1 == file_sha256(path));
    {
        std::ofstream out(path);
        out << "1\n2\n4\n";
    }
    CHECK(d1 != file_sha256(path));
}

TEST_CASE("sha256 reference vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

} // TEST_SUITE
