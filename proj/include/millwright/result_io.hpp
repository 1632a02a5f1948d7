#ifndef MILLWRIGHT_RESULT_IO_HPP
#define MILLWRIGHT_RESULT_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "millwright/constructor.hpp"

namespace millwright {

// Serialized construction result.  Canonical form: keys sorted, every big
// number rendered as a decimal string, integrity = sha256 over the canonical
// JSON without the integrity and timestamp fields.
struct ResultDocument {
    int schema_version = 1;
    std::string family_spec;
    std::map<std::string, std::string> parameters;

    struct SourceInfo {
        std::string kind;  // "primes" | "file"
        std::string path;  // file kind only
        std::string file_sha256;
        unsigned mr_rounds = 16;
    };
    SourceInfo source;

    std::vector<ChainEntry> chain;
    Bracket bracket;
    std::string digits;
    bool integer_part_undecided = false;
    std::vector<std::string> assumptions;
    std::vector<EscalationEvent> escalations;
    mpfr_prec_t final_precision = 0;

    std::string timestamp;  // excluded from the integrity hash
    std::string integrity;

    static ResultDocument from_result(const ConstructionResult& result, SourceInfo source);
    static ResultDocument from_json(const nlohmann::json& j);
    static ResultDocument load(const std::string& path);

    nlohmann::json to_json() const;
    std::string canonical_payload() const;
    void seal();  // fills timestamp (if empty) and integrity
    bool integrity_ok() const;
};

// Digest of a file's bytes (for pinning file-backed sources).
std::string file_sha256(const std::string& path);

// Append-only JSON-lines step cache.  The first line is a header carrying the
// family spec and source description; each further line is one committed
// construction state.  Lines are fsync'd as they are written, and the file is
// held under an exclusive lock while open.
struct CacheLine {
    unsigned long n = 0;
    std::optional<unsigned long> k;
    std::string v;
    std::string certainty;
    long precision = 0;
};

class CacheFile {
  public:
    // Opens (creating if needed) and locks the cache file.
    CacheFile(const std::string& path, const std::string& family_spec,
              const std::string& source_description);
    ~CacheFile();
    CacheFile(const CacheFile&) = delete;
    CacheFile& operator=(const CacheFile&) = delete;

    // Entries read at open time (empty for a fresh file).
    const std::vector<CacheLine>& entries() const { return entries_; }

    void append(const ConstructionState& state);

  private:
    int fd_ = -1;
    std::vector<CacheLine> entries_;
};

} // namespace millwright

#endif
