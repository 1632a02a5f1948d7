#include "millwright/api.hpp"

namespace millwright {

std::unique_ptr<SequenceSource> open_source(const std::string& source_spec, unsigned mr_rounds) {
    if (source_spec == "primes") {
        PrimeSource::Options opts;
        opts.extra_mr_rounds = mr_rounds;
        return std::make_unique<PrimeSource>(opts);
    }
    if (source_spec.rfind("file:", 0) == 0) {
        return std::make_unique<FileSource>(FileSource::load(source_spec.substr(5)));
    }
    throw ParseError("unknown source '" + source_spec + "' (expected primes or file:PATH)");
}

ResultDocument compute(const ComputeRequest& request) {
    auto source = open_source(request.source_spec, request.mr_rounds);

    FamilyDescriptor::ResolveOptions resolve;
    resolve.gap_fit_limit = request.gap_fit_limit;
    const auto* file = dynamic_cast<const FileSource*>(source.get());
    resolve.file = file;
    const FamilyDescriptor family = FamilyDescriptor::parse(request.family_spec, resolve);

    const unsigned long terms = request.terms.value_or(family.default_terms());
    if (terms < 1) throw DomainError("term count must be >= 1");

    ConstructorOptions opts;
    opts.precision_start = request.precision_start;
    opts.precision_cap = request.precision_cap;
    opts.seed_index = request.seed_index;

    ConstructionSession session(family, *source, opts);

    std::optional<CacheFile> cache;
    if (request.resume_path)
        cache.emplace(*request.resume_path, family.spec_string(), source->describe());

    ConstructionResult result = [&]() {
        if (!cache) return session.run(terms, request.digits);

        // Replay the cached prefix, then continue stepping and caching.
        const auto& cached = cache->entries();
        std::vector<ChainEntry> chain;
        ConstructionState st = session.init();
        if (!cached.empty()) {
            if (mpz_class(cached.front().v) != st.v || cached.front().n != st.n)
                throw ParseError("cache seed does not match this configuration");
        } else {
            cache->append(st);
        }
        chain.push_back({st.n, st.k, st.v, st.certainty});
        for (size_t i = 1; i < cached.size() && chain.size() < terms; ++i) {
            st = session.advance_with_term(st, mpz_class(cached[i].v));
            chain.push_back({st.n, st.k, st.v, st.certainty});
        }
        session.on_state = [&](const ConstructionState& s) { cache->append(s); };
        while (chain.size() < terms) {
            st = session.step(st);
            chain.push_back({st.n, st.k, st.v, st.certainty});
        }
        session.on_state = nullptr;
        return session.finalize(st, std::move(chain), request.digits);
    }();

    ResultDocument::SourceInfo info;
    info.mr_rounds = request.mr_rounds;
    if (file != nullptr) {
        info.kind = "file";
        info.path = request.source_spec.substr(5);
        info.file_sha256 = file_sha256(info.path);
    } else {
        info.kind = "primes";
    }

    ResultDocument doc = ResultDocument::from_result(result, std::move(info));
    doc.seal();
    return doc;
}

VerifyReport verify_document(const ResultDocument& doc, std::optional<std::string> file_override) {
    std::unique_ptr<SequenceSource> source;
    if (doc.source.kind == "file") {
        const std::string path = file_override.value_or(doc.source.path);
        const std::string digest = file_sha256(path);
        if (digest != doc.source.file_sha256) {
            VerifyReport report;
            report.add("source", path, "fail",
                       "sequence file hash mismatch (file changed since the run)");
            return report;
        }
        source = std::make_unique<FileSource>(FileSource::load(path));
    } else {
        PrimeSource::Options opts;
        opts.extra_mr_rounds = doc.source.mr_rounds;
        source = std::make_unique<PrimeSource>(opts);
    }
    return verify_all(doc, *source);
}

} // namespace millwright
