#include "millwright/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace millwright {

namespace {

// ---------------------------------------------------------------------------
// 64-bit deterministic Miller-Rabin.
// ---------------------------------------------------------------------------

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Strong probable prime test; n odd, n > 2.
bool sprp_u64(uint64_t n, uint64_t a) {
    a %= n;
    if (a == 0) return true;
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// This base set decides primality for every n < 2^64.
constexpr uint64_t kWitnesses[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    for (uint64_t a : kWitnesses)
        if (!sprp_u64(n, a)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Arbitrary-precision strong probable prime and strong Lucas tests.
// ---------------------------------------------------------------------------

mpz_class mod_pos(const mpz_class& x, const mpz_class& n) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool sprp_mpz(const mpz_class& n, const mpz_class& a_in) {
    mpz_class a = mod_pos(a_in, n);
    if (a == 0) return true;
    mpz_class nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    mpz_class d = nm1 >> s;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = mod_pos(x * x, n);
        if (x == nm1) return true;
    }
    return false;
}

// Halve x mod odd n; x must already be reduced into [0, n).
mpz_class half_mod(mpz_class x, const mpz_class& n) {
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    x >>= 1;
    return x;
}

// Strong Lucas probable prime test with Selfridge's parameter choice
// (P = 1, Q = (1 - D) / 4 for the first D in 5, -7, 9, -11, ... with
// Jacobi(D, n) = -1).  n must be odd, > 5, with no tiny factors.
bool strong_lucas_prp(const mpz_class& n) {
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;

    long d_abs = 5;
    int sign = 1;
    mpz_class D;
    while (true) {
        D = sign > 0 ? mpz_class(d_abs) : mpz_class(-d_abs);
        int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && mpz_cmpabs(n.get_mpz_t(), D.get_mpz_t()) != 0)
            return false;  // shares a factor with D
        sign = -sign;
        d_abs += 2;
        if (d_abs > 1'000'000)
            throw Error("Lucas parameter search failed");  // cannot happen: n is not a square
    }
    const mpz_class Q = (1 - D) / 4;
    const mpz_class delta = n + 1;
    const unsigned long s = mpz_scan1(delta.get_mpz_t(), 0);
    const mpz_class d = delta >> s;

    // Binary ladder for U_d, V_d, Q^d (mod n); P = 1.
    mpz_class U = 1, V = 1, Qk = mod_pos(Q, n);
    const size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
    for (size_t i = bits - 1; i-- > 0;) {
        // index doubling
        U = mod_pos(U * V, n);
        V = mod_pos(V * V - 2 * Qk, n);
        Qk = mod_pos(Qk * Qk, n);
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            // index + 1
            mpz_class U1 = half_mod(mod_pos(U + V, n), n);
            mpz_class V1 = half_mod(mod_pos(D * U + V, n), n);
            U = U1;
            V = V1;
            Qk = mod_pos(Qk * Q, n);
        }
    }

    if (U == 0) return true;
    if (V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = mod_pos(V * V - 2 * Qk, n);
        Qk = mod_pos(Qk * Qk, n);
        if (V == 0) return true;
    }
    return false;
}

bool bpsw(const mpz_class& n) {
    return sprp_mpz(n, 2) && strong_lucas_prp(n);
}

const std::vector<uint32_t>& tiny_primes() {
    static const std::vector<uint32_t> primes = [] {
        std::vector<uint32_t> out;
        std::vector<bool> comp(2048, false);
        for (uint32_t i = 2; i < 2048; ++i) {
            if (comp[i]) continue;
            out.push_back(i);
            for (uint32_t j = i * i; j < 2048; j += i) comp[j] = true;
        }
        return out;
    }();
    return primes;
}

} // namespace

const char* to_string(PrimalityCertainty c) {
    switch (c) {
        case PrimalityCertainty::SieveProven: return "SieveProven";
        case PrimalityCertainty::DeterministicMR: return "DeterministicMR";
        case PrimalityCertainty::ProbabilisticBPSW: return "ProbabilisticBPSW";
    }
    return "?";
}

PrimalityCertainty certainty_from_string(const std::string& s) {
    if (s == "SieveProven") return PrimalityCertainty::SieveProven;
    if (s == "DeterministicMR") return PrimalityCertainty::DeterministicMR;
    if (s == "ProbabilisticBPSW") return PrimalityCertainty::ProbabilisticBPSW;
    throw ParseError("unknown primality certainty '" + s + "'");
}

int certainty_rank(PrimalityCertainty c) {
    return c == PrimalityCertainty::ProbabilisticBPSW ? 1 : 2;
}

PrimalityResult is_prime(const mpz_class& n, unsigned extra_mr_rounds) {
    if (n < 0) throw DomainError("is_prime requires n >= 0");
    if (n < 2) return {false, PrimalityCertainty::SieveProven};

    for (uint32_t p : tiny_primes()) {
        if (n == p) {
            // Equality with a trial divisor below 100 is itself the proof;
            // larger table primes are reported through the MR path.
            if (p < 100) return {true, PrimalityCertainty::SieveProven};
            break;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return {false, PrimalityCertainty::SieveProven};
    }

    if (n.fits_ulong_p())
        return {is_prime_u64(n.get_ui()), PrimalityCertainty::DeterministicMR};

    if (!bpsw(n)) return {false, PrimalityCertainty::ProbabilisticBPSW};

    // Extra Miller-Rabin rounds with bases derived deterministically from n.
    if (extra_mr_rounds > 0) {
        gmp_randclass rng(gmp_randinit_mt);
        rng.seed(0x6d696c6cul ^ mpz_fdiv_ui(n.get_mpz_t(), 0xfffffffbul));
        for (unsigned i = 0; i < extra_mr_rounds; ++i) {
            mpz_class a = rng.get_z_range(n - 3) + 2;
            if (!sprp_mpz(n, a)) return {false, PrimalityCertainty::ProbabilisticBPSW};
        }
    }
    return {true, PrimalityCertainty::ProbabilisticBPSW};
}

// ---------------------------------------------------------------------------
// Shared segmented sieve.
// ---------------------------------------------------------------------------

namespace {

class SegmentedSieve {
  public:
    // 2^20 odd residues per segment.
    static constexpr unsigned long kSegmentOdds = 1ul << 20;
    static constexpr unsigned long kSegmentSpan = kSegmentOdds * 2;
    static constexpr size_t kCacheCapacity = 64;

    static SegmentedSieve& instance() {
        static SegmentedSieve sieve;
        return sieve;
    }

    // Smallest prime >= m; m must be within the sievable range.
    mpz_class next_prime_geq(const mpz_class& m) {
        if (m <= 2) return 2;
        unsigned long start = m.get_ui();  // caller guarantees m < 2^44
        unsigned long base = (start / kSegmentSpan) * kSegmentSpan;
        while (true) {
            std::shared_ptr<const std::vector<uint64_t>> seg = segment(base);
            unsigned long from = std::max(start, base + 1);
            unsigned long i = (from - base) / 2;           // odd slot index
            if ((from & 1) == 0) i = (from + 1 - base) / 2;
            for (; i < kSegmentOdds; ++i) {
                if (bit_clear(*seg, i)) return mpz_class(base + 2 * i + 1);
            }
            base += kSegmentSpan;
        }
    }

    void for_each_prime(unsigned long limit, const std::function<void(const mpz_class&)>& fn) {
        if (limit < 2) return;
        fn(mpz_class(2));
        unsigned long base = 0;
        // Streaming scan keeps its own segment outside the probe cache.
        while (base < limit) {
            std::vector<uint64_t> seg = build_segment(base);
            const unsigned long hi = std::min(base + kSegmentSpan - 1, limit);
            for (unsigned long i = 0; i < kSegmentOdds; ++i) {
                const unsigned long v = base + 2 * i + 1;
                if (v > hi) break;
                if (bit_clear(seg, i)) fn(mpz_class(v));
            }
            base += kSegmentSpan;
        }
    }

  private:
    static bool bit_clear(const std::vector<uint64_t>& seg, unsigned long i) {
        return (seg[i >> 6] & (1ull << (i & 63))) == 0;
    }

    void ensure_base_primes(unsigned long up_to) {
        if (up_to <= base_limit_) return;
        unsigned long newlimit = std::max(up_to, base_limit_ * 2);
        newlimit = std::max(newlimit, 1ul << 16);
        std::vector<bool> comp(newlimit + 1, false);
        base_primes_.clear();
        for (unsigned long i = 3; i <= newlimit; i += 2) {
            if (comp[i]) continue;
            base_primes_.push_back(static_cast<uint32_t>(i));
            if (i * i <= newlimit)
                for (unsigned long j = i * i; j <= newlimit; j += 2 * i) comp[j] = true;
        }
        base_limit_ = newlimit;
    }

    // Bitmap of composite odd numbers in [base+1, base+span-1]; bit i is
    // base + 2i + 1.
    std::vector<uint64_t> build_segment(unsigned long base) {
        const unsigned long hi = base + kSegmentSpan - 1;
        unsigned long root = static_cast<unsigned long>(std::sqrt(static_cast<double>(hi))) + 2;
        std::vector<uint64_t> seg(kSegmentOdds / 64, 0);
        {
            std::lock_guard<std::mutex> lock(base_mutex_);
            ensure_base_primes(root);
            for (uint32_t p : base_primes_) {
                const unsigned long pp = static_cast<unsigned long>(p) * p;
                if (pp > hi) break;
                unsigned long first = std::max<unsigned long>(pp, ((base + p) / p) * p);
                if ((first & 1) == 0) first += p;  // odd multiples only
                for (unsigned long v = first; v <= hi; v += 2 * p)
                    seg[((v - base) / 2) >> 6] |= 1ull << (((v - base) / 2) & 63);
            }
        }
        if (base == 0) seg[0] |= 1;  // 1 is not prime
        return seg;
    }

    std::shared_ptr<const std::vector<uint64_t>> segment(unsigned long base) {
        {
            std::lock_guard<std::mutex> lock(cache_mutex_);
            auto it = cache_index_.find(base);
            if (it != cache_index_.end()) {
                lru_.splice(lru_.begin(), lru_, it->second);
                return it->second->second;
            }
        }
        auto seg = std::make_shared<const std::vector<uint64_t>>(build_segment(base));
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_index_.find(base);
        if (it != cache_index_.end()) return it->second->second;
        lru_.emplace_front(base, seg);
        cache_index_[base] = lru_.begin();
        if (lru_.size() > kCacheCapacity) {
            cache_index_.erase(lru_.back().first);
            lru_.pop_back();
        }
        return seg;
    }

    std::mutex base_mutex_;
    std::vector<uint32_t> base_primes_;
    unsigned long base_limit_ = 0;

    using LruEntry = std::pair<unsigned long, std::shared_ptr<const std::vector<uint64_t>>>;
    std::mutex cache_mutex_;
    std::list<LruEntry> lru_;
    std::map<unsigned long, std::list<LruEntry>::iterator> cache_index_;
};

// Values up to here are found by sieving; larger ones by primality testing.
const mpz_class kSieveCeiling = mpz_class(1) << 44;
const mpz_class kStreamCeiling = mpz_class(1) << 40;

// Prime-counting helper: an odd-number bitmap with block prefix counts,
// grown lazily to the largest limit requested.
class PrimeIndexer {
  public:
    static PrimeIndexer& instance() {
        static PrimeIndexer idx;
        return idx;
    }

    // 0-based index of prime p (p must be prime, p <= the index limit).
    unsigned long index_of(const mpz_class& p) {
        std::lock_guard<std::mutex> lock(mutex_);
        const unsigned long v = p.get_ui();
        ensure(v);
        if (v == 2) return 0;
        const unsigned long slot = v / 2;  // v odd
        unsigned long count = 1 + prefix_[slot / kBlock];
        for (unsigned long i = (slot / kBlock) * kBlock; i < slot; ++i)
            if (!composite_[i]) ++count;
        return count;  // count of primes < v equals the 0-based index of v
    }

  private:
    static constexpr unsigned long kBlock = 4096;

    void ensure(unsigned long v) {
        if (v < limit_) return;
        unsigned long newlimit = std::max(v + 1, std::max(limit_ * 2, 1ul << 20));
        // composite_[i] marks 2i+1; slot 0 (the unit 1) counts as composite.
        composite_.assign(newlimit / 2 + 1, false);
        composite_[0] = true;
        for (unsigned long i = 3; i * i <= newlimit; i += 2) {
            if (composite_[i / 2]) continue;
            for (unsigned long j = i * i; j <= newlimit; j += 2 * i) composite_[j / 2] = true;
        }
        prefix_.assign(composite_.size() / kBlock + 2, 0);
        unsigned long run = 0;
        for (unsigned long i = 0; i < composite_.size(); ++i) {
            if (i % kBlock == 0) prefix_[i / kBlock] = run;
            if (!composite_[i]) ++run;
        }
        prefix_[composite_.size() / kBlock + 1] = run;
        limit_ = newlimit;
    }

    std::mutex mutex_;
    std::vector<bool> composite_;
    std::vector<unsigned long> prefix_;
    unsigned long limit_ = 0;
};

unsigned long prime_index_of(const mpz_class& p) {
    return PrimeIndexer::instance().index_of(p);
}

} // namespace

void for_each_prime(const mpz_class& limit, const std::function<void(const mpz_class&)>& fn) {
    if (limit > kStreamCeiling) throw DomainError("prime streaming limit exceeds 2^40");
    if (limit < 2) return;
    SegmentedSieve::instance().for_each_prime(limit.get_ui(), fn);
}

mpz_class Bound::certified_ceil() const {
    if (const auto* z = std::get_if<mpz_class>(&value_)) return *z;
    if (const auto* q = std::get_if<mpq_class>(&value_)) return mpq_ceil(*q);
    const auto& iv = std::get<BigInterval>(value_);
    const mpz_class cl = iv.ceil_lo();
    const mpz_class ch = iv.ceil_hi();
    if (cl != ch)
        throw IndeterminateBound("bound enclosure spans integers [" + cl.get_str() + ", " +
                                 ch.get_str() + "]");
    return cl;
}

Term PrimeSource::next_term_geq(const Bound& bound) {
    const mpz_class m = bound.certified_ceil();
    if (m <= 2) return {mpz_class(2), 0, PrimalityCertainty::SieveProven};

    mpz_class p;
    PrimalityCertainty certainty;
    if (m <= kSieveCeiling) {
        p = SegmentedSieve::instance().next_prime_geq(m);
        certainty = PrimalityCertainty::SieveProven;
    } else {
        mpz_class c = m;
        if (mpz_even_p(c.get_mpz_t())) c += 1;
        unsigned long guard = 0;
        while (true) {
            const PrimalityResult r = is_prime(c, opts_.extra_mr_rounds);
            if (r.is_prime) {
                p = c;
                certainty = r.certainty;
                break;
            }
            c += 2;
            if (++guard > 10'000'000)
                throw Error("no prime found within 2*10^7 of the requested bound");
        }
    }

    std::optional<unsigned long> index;
    if (p <= opts_.index_limit) index = prime_index_of(p);
    return {p, index, certainty};
}

Term PrimeSource::term_at(unsigned long index) {
    if (index > 10'000'000) throw DomainError("explicit prime index too large");
    mpz_class found = -1;
    unsigned long count = 0;
    // Generous upper bound for the (index+1)-th prime at desk scale.
    const unsigned long scan_limit = 32 + 24 * (index + 1);
    SegmentedSieve::instance().for_each_prime(scan_limit, [&](const mpz_class& p) {
        if (count == index && found < 0) found = p;
        ++count;
    });
    if (found < 0) throw SequenceExhausted("prime index scan limit reached");
    return {found, index, PrimalityCertainty::SieveProven};
}

void PrimeSource::for_each_pair(
    const mpz_class& limit,
    const std::function<void(unsigned long, const mpz_class&, const mpz_class&)>& fn) {
    mpz_class prev = -1;
    unsigned long index = 0;
    for_each_prime(limit, [&](const mpz_class& p) {
        if (prev > 0) {
            fn(index, prev, p);
            ++index;
        }
        prev = p;
    });
}

PrimalityResult PrimeSource::check_member(const mpz_class& value) {
    return is_prime(value, opts_.extra_mr_rounds);
}

FileSource FileSource::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sequence file '" + path + "'");
    std::vector<mpz_class> terms;
    std::string line;
    unsigned long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(a, b - a + 1);
        mpz_class v;
        if (mpz_set_str(v.get_mpz_t(), tok.c_str(), 10) != 0)
            throw ParseError(path + ":" + std::to_string(lineno) + ": not an integer: '" + tok + "'");
        if (!terms.empty() && v <= terms.back())
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": sequence not strictly increasing at value " + v.get_str());
        terms.push_back(std::move(v));
    }
    return FileSource(std::move(terms), "file:" + path);
}

FileSource::FileSource(std::vector<mpz_class> terms, std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {
    for (size_t i = 1; i < terms_.size(); ++i)
        if (terms_[i] <= terms_[i - 1])
            throw ParseError("sequence not strictly increasing at position " + std::to_string(i));
}

Term FileSource::next_term_geq(const Bound& bound) {
    const mpz_class m = bound.certified_ceil();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m);
    if (it == terms_.end())
        throw SequenceExhausted("file sequence has no term >= " + m.get_str());
    return {*it, static_cast<unsigned long>(it - terms_.begin()),
            PrimalityCertainty::SieveProven};
}

Term FileSource::term_at(unsigned long index) {
    if (index >= terms_.size())
        throw SequenceExhausted("file sequence has no index " + std::to_string(index));
    return {terms_[index], index, PrimalityCertainty::SieveProven};
}

void FileSource::for_each_pair(
    const mpz_class& limit,
    const std::function<void(unsigned long, const mpz_class&, const mpz_class&)>& fn) {
    for (size_t i = 0; i + 1 < terms_.size(); ++i) {
        if (terms_[i + 1] > limit) break;
        fn(static_cast<unsigned long>(i), terms_[i], terms_[i + 1]);
    }
}

PrimalityResult FileSource::check_member(const mpz_class& value) {
    const bool found = std::binary_search(terms_.begin(), terms_.end(), value);
    return {found, PrimalityCertainty::SieveProven};
}

mpz_class FileSource::max_gap() const {
    mpz_class g = 0;
    for (size_t i = 1; i < terms_.size(); ++i) g = std::max(g, mpz_class(terms_[i] - terms_[i - 1]));
    return g;
}

// ---------------------------------------------------------------------------
// Gap analysis.
// ---------------------------------------------------------------------------

GapReport scan_gaps(SequenceSource& source, const mpz_class& limit, const GapFunction& g) {
    GapReport report;
    report.limit = limit;
    report.max_gap = 0;
    report.argmax_term = 0;

    source.for_each_pair(limit, [&](unsigned long index, const mpz_class& u, const mpz_class& un) {
        const mpz_class gap = un - u;
        ++report.pairs_checked;
        if (gap > report.max_gap) {
            report.max_gap = gap;
            report.argmax_term = u;
        }

        bool violated;
        if (auto exact = g.eval_exact(u)) {
            violated = mpq_class(gap) > *exact - 1;
        } else {
            violated = false;
            bool decided = false;
            for (mpfr_prec_t prec = 96; prec <= 1 << 14; prec *= 2) {
                const BigInterval bound =
                    sub(g.eval(u, prec), BigInterval::from_integer(1, prec));
                const BigInterval gap_iv = BigInterval::from_integer(gap, prec);
                if (auto le = certified_le(gap_iv, bound)) {
                    violated = !*le;
                    decided = true;
                    break;
                }
            }
            if (!decided)
                throw PrecisionExhausted("gap comparison undecidable at u = " + u.get_str());
        }
        if (violated) report.violations.push_back({index, u, un});
    });
    return report;
}

GapFit fit_gap_constant(const mpz_class& limit, const mpq_class& k) {
    if (limit < 3) throw DomainError("fit_gap_constant requires limit >= 3");
    if (k <= 0) throw DomainError("fit_gap_constant requires k > 0");

    PrimeSource primes;
    const double kd = k.get_d();

    // First pass in doubles to locate the dominating pairs.
    double approx_max = 0;
    unsigned long pairs = 0;
    primes.for_each_pair(limit, [&](unsigned long, const mpz_class& u, const mpz_class& un) {
        ++pairs;
        const double r =
            mpz_get_d(mpz_class(un - u).get_mpz_t()) / std::pow(std::log(u.get_d()), kd);
        approx_max = std::max(approx_max, r);
    });
    if (pairs == 0) throw DomainError("no sequence pairs below the limit");

    // Second pass certifies every pair within 0.1% of the approximate max;
    // double rounding error is many orders of magnitude below that margin.
    const double threshold = approx_max * 0.999;
    const mpfr_prec_t prec = 128;
    const BigInterval kiv = BigInterval::from_rational(k, prec);
    mpq_class best(0);
    std::string best_decimal;
    GapFit fit;
    primes.for_each_pair(limit, [&](unsigned long, const mpz_class& u, const mpz_class& un) {
        const mpz_class gap = un - u;
        const double r = mpz_get_d(gap.get_mpz_t()) / std::pow(std::log(u.get_d()), kd);
        if (r < threshold) return;
        const BigInterval denom = pow_real(ln(BigInterval::from_integer(u, prec)), kiv);
        const BigInterval ratio = div(BigInterval::from_integer(gap, prec), denom);
        const std::string hi_decimal = mpfr_decimal(ratio.hi(), 12, MPFR_RNDU);
        const mpq_class hi = parse_mpq(hi_decimal);
        if (hi > best) {
            best = hi;
            best_decimal = hi_decimal;
            fit.argmax_prime = u;
            fit.argmax_gap = gap;
        }
    });

    fit.c = best;
    fit.c_decimal = best_decimal;
    fit.pairs_checked = pairs;
    return fit;
}

} // namespace millwright
