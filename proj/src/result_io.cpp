#include "millwright/result_io.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "millwright/sha256.hpp"

namespace millwright {

namespace {

using nlohmann::json;

std::string iso_utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json chain_to_json(const std::vector<ChainEntry>& chain) {
    json arr = json::array();
    for (const auto& e : chain) {
        json item;
        item["n"] = e.n;
        if (e.source_index)
            item["k"] = *e.source_index;
        else
            item["k"] = nullptr;
        item["v"] = e.v.get_str();
        item["certainty"] = to_string(e.certainty);
        arr.push_back(item);
    }
    return arr;
}

std::vector<ChainEntry> chain_from_json(const json& arr) {
    std::vector<ChainEntry> chain;
    for (const auto& item : arr) {
        ChainEntry e;
        e.n = item.at("n").get<unsigned long>();
        if (!item.at("k").is_null()) e.source_index = item.at("k").get<unsigned long>();
        e.v = mpz_class(item.at("v").get<std::string>(), 10);
        e.certainty = certainty_from_string(item.at("certainty").get<std::string>());
        chain.push_back(std::move(e));
    }
    return chain;
}

} // namespace

ResultDocument ResultDocument::from_result(const ConstructionResult& result, SourceInfo source) {
    ResultDocument doc;
    doc.family_spec = result.family_spec;
    doc.source = std::move(source);
    doc.chain = result.chain;
    doc.bracket = result.bracket;
    doc.digits = result.digits;
    doc.integer_part_undecided = result.integer_part_undecided;
    doc.assumptions = result.assumptions;
    doc.escalations = result.escalations;
    doc.final_precision = result.final_precision;

    // parameters: the resolved family spec split into its keys, plus the gap.
    const auto colon = result.family_spec.find(':');
    doc.parameters["family"] = result.family_spec.substr(0, colon);
    if (colon != std::string::npos) {
        std::stringstream ss(result.family_spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq != std::string::npos)
                doc.parameters[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    return doc;
}

nlohmann::json ResultDocument::to_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["family_spec"] = family_spec;
    j["parameters"] = parameters;
    json src;
    src["kind"] = source.kind;
    src["mr_rounds"] = source.mr_rounds;
    if (source.kind == "file") {
        src["path"] = source.path;
        src["file_sha256"] = source.file_sha256;
    }
    j["source"] = src;
    j["chain"] = chain_to_json(chain);
    j["bracket"] = {{"lo", bracket.lo}, {"hi", bracket.hi},
                    {"precision_bits", static_cast<long>(bracket.precision_bits)}};
    j["digits"] = digits;
    j["integer_part_undecided"] = integer_part_undecided;
    j["assumptions"] = assumptions;
    json esc = json::array();
    for (const auto& e : escalations)
        esc.push_back({{"n", e.n}, {"from", static_cast<long>(e.from)},
                       {"to", static_cast<long>(e.to)}});
    j["diagnostics"] = {{"escalations", esc},
                        {"final_precision", static_cast<long>(final_precision)},
                        {"terms", chain.size()}};
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    if (!integrity.empty()) j["integrity"] = integrity;
    return j;
}

ResultDocument ResultDocument::from_json(const nlohmann::json& j) {
    try {
        ResultDocument doc;
        doc.schema_version = j.at("schema_version").get<int>();
        if (doc.schema_version != 1)
            throw ParseError("unsupported schema_version " + std::to_string(doc.schema_version));
        doc.family_spec = j.at("family_spec").get<std::string>();
        for (const auto& [k, v] : j.at("parameters").items())
            doc.parameters[k] = v.get<std::string>();
        const auto& src = j.at("source");
        doc.source.kind = src.at("kind").get<std::string>();
        doc.source.mr_rounds = src.at("mr_rounds").get<unsigned>();
        if (doc.source.kind == "file") {
            doc.source.path = src.at("path").get<std::string>();
            doc.source.file_sha256 = src.at("file_sha256").get<std::string>();
        }
        doc.chain = chain_from_json(j.at("chain"));
        doc.bracket.lo = j.at("bracket").at("lo").get<std::string>();
        doc.bracket.hi = j.at("bracket").at("hi").get<std::string>();
        doc.bracket.precision_bits = j.at("bracket").at("precision_bits").get<long>();
        doc.digits = j.at("digits").get<std::string>();
        doc.integer_part_undecided = j.at("integer_part_undecided").get<bool>();
        for (const auto& a : j.at("assumptions")) doc.assumptions.push_back(a.get<std::string>());
        const auto& diag = j.at("diagnostics");
        for (const auto& e : diag.at("escalations"))
            doc.escalations.push_back({e.at("n").get<unsigned long>(),
                                       e.at("from").get<long>(), e.at("to").get<long>()});
        doc.final_precision = diag.at("final_precision").get<long>();
        if (j.contains("timestamp")) doc.timestamp = j.at("timestamp").get<std::string>();
        if (j.contains("integrity")) doc.integrity = j.at("integrity").get<std::string>();
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed result document: ") + e.what());
    }
}

ResultDocument ResultDocument::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open result document '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed result document: ") + e.what());
    }
    return from_json(j);
}

std::string ResultDocument::canonical_payload() const {
    json j = to_json();
    j.erase("integrity");
    j.erase("timestamp");
    return j.dump();
}

void ResultDocument::seal() {
    if (timestamp.empty()) timestamp = iso_utc_now();
    integrity = "sha256:" + sha256_hex(canonical_payload());
}

bool ResultDocument::integrity_ok() const {
    return integrity == "sha256:" + sha256_hex(canonical_payload());
}

std::string file_sha256(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

// ---------------------------------------------------------------------------
// Step cache.
// ---------------------------------------------------------------------------

CacheFile::CacheFile(const std::string& path, const std::string& family_spec,
                     const std::string& source_description) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_APPEND, 0644);
    if (fd_ < 0) throw Error("cannot open cache file '" + path + "': " + std::strerror(errno));
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        throw Error("cache file '" + path + "' is locked by another session");
    }

    std::ifstream in(path);
    std::string line;
    bool have_header = false;
    unsigned long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad cache line: " + e.what());
        }
        if (!have_header) {
            if (j.value("cache_schema", 0) != 1 ||
                j.at("family_spec").get<std::string>() != family_spec ||
                j.at("source").get<std::string>() != source_description)
                throw ParseError("cache file does not match this family/source configuration");
            have_header = true;
            continue;
        }
        CacheLine e;
        e.n = j.at("n").get<unsigned long>();
        if (!j.at("k").is_null()) e.k = j.at("k").get<unsigned long>();
        e.v = j.at("v").get<std::string>();
        e.certainty = j.at("certainty").get<std::string>();
        e.precision = j.at("precision").get<long>();
        entries_.push_back(std::move(e));
    }

    if (!have_header) {
        json header;
        header["cache_schema"] = 1;
        header["family_spec"] = family_spec;
        header["source"] = source_description;
        const std::string out = header.dump() + "\n";
        if (::write(fd_, out.data(), out.size()) != static_cast<ssize_t>(out.size()))
            throw Error("cache header write failed");
        ::fsync(fd_);
    }
}

CacheFile::~CacheFile() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

void CacheFile::append(const ConstructionState& state) {
    json j;
    j["n"] = state.n;
    if (state.k)
        j["k"] = *state.k;
    else
        j["k"] = nullptr;
    j["v"] = state.v.get_str();
    j["certainty"] = to_string(state.certainty);
    j["precision"] = static_cast<long>(state.precision);
    j["timestamp"] = iso_utc_now();
    const std::string out = j.dump() + "\n";
    if (::write(fd_, out.data(), out.size()) != static_cast<ssize_t>(out.size()))
        throw Error("cache write failed");
    ::fsync(fd_);
}

} // namespace millwright
