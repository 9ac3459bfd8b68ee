// oracle.hpp -- brute-force ground truth: direct sequence evaluation, direct
// border checking, and exhaustive cross-checks of stage machines against
// their defining predicates over integer boxes.
//
// The sweeps here are exact (no sampling, no probabilistic shortcuts). The
// big boxes are made tractable by precomputing split evaluation tables for
// the automaton side and a longest-common-extension table for border
// predicates; both are exact rewritings, not approximations.
#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "autoseq/dfa.hpp"
#include "autoseq/dfao.hpp"

namespace autoseq {

inline std::vector<int> sequence_prefix(const Dfao& seq, size_t length) {
    std::vector<int> out;
    out.reserve(length);
    for (size_t n = 0; n < length; ++n) out.push_back(seq.run(n));
    return out;
}

// Does the factor prefix[j..j+n) have a border of length l? Requires
// 0 < l <= n/2 and j+n within the prefix.
inline bool brute_border(std::span<const int> prefix, uint64_t j, uint64_t n, uint64_t l) {
    if (l == 0 || 2 * l > n) throw std::invalid_argument("brute_border: l out of range");
    if (j + n > prefix.size()) throw std::invalid_argument("brute_border: prefix too short");
    for (uint64_t i = 0; i < l; ++i)
        if (prefix[j + i] != prefix[j + n - l + i]) return false;
    return true;
}

inline bool brute_factor_unbordered(std::span<const int> prefix, uint64_t j, uint64_t n) {
    for (uint64_t l = 1; 2 * l <= n; ++l)
        if (brute_border(prefix, j, n, l)) return false;
    return true;
}

// Does some position j <= j_bound start an unbordered factor of length n?
inline bool brute_unbordered_exists(std::span<const int> prefix, uint64_t n, uint64_t j_bound) {
    if (n == 0) return false;
    if (j_bound + n > prefix.size())
        throw std::invalid_argument("brute_unbordered_exists: prefix too short");
    for (uint64_t j = 0; j <= j_bound; ++j)
        if (brute_factor_unbordered(prefix, j, n)) return true;
    return false;
}

// Longest common extension table over a fixed prefix: lce(a, b) = length of
// the longest block with prefix[a..a+len) == prefix[b..b+len). O(N^2) space,
// O(1) exact queries; border(j, n, l) becomes lce(j, j+n-l) >= l.
struct LceTable {
    size_t n = 0;
    std::vector<uint16_t> table; // (n+1) x (n+1)

    explicit LceTable(std::span<const int> prefix) : n(prefix.size()) {
        table.assign((n + 1) * (n + 1), 0);
        for (size_t a = n; a-- > 0;)
            for (size_t b = n; b-- > 0;)
                if (prefix[a] == prefix[b]) {
                    uint32_t v = table[(a + 1) * (n + 1) + (b + 1)] + 1u;
                    table[a * (n + 1) + b] = static_cast<uint16_t>(std::min(v, 65535u));
                }
    }
    uint32_t lce(size_t a, size_t b) const { return table[a * (n + 1) + b]; }
    bool equal_blocks(size_t a, size_t b, size_t len) const { return lce(a, b) >= len; }
};

struct CheckReport {
    std::string stage;
    std::vector<uint64_t> bounds;
    uint64_t tests = 0;
    uint64_t mismatch_count = 0;
    std::vector<std::vector<uint64_t>> mismatches; // lexicographically first ones
    bool pass() const { return mismatch_count == 0; }
};

inline void write_report(std::ostream& out, const CheckReport& r) {
    out << "stage " << r.stage << ": bounds";
    for (uint64_t b : r.bounds) out << ' ' << b;
    out << ", " << r.tests << " tests, " << r.mismatch_count << " mismatches: "
        << (r.pass() ? "PASS" : "FAIL") << "\n";
    for (const auto& t : r.mismatches) {
        out << "  counterexample (";
        for (size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
        out << ")\n";
    }
    if (r.mismatch_count > r.mismatches.size())
        out << "  ... and " << (r.mismatch_count - r.mismatches.size()) << " more\n";
}

namespace detail {

// Exact split evaluation of a DFA over a box: every value is at most
// `bound`, so words have D digits; the run is factored into a table of
// states after the low H digits and acceptance maps over the high digits.
struct BoxRunner {
    const Dfa& dfa;
    std::vector<uint64_t> bounds;
    uint32_t digits = 0, low_digits = 0;
    uint64_t low_space = 1; // (k^H)^r
    bool split = false;

    // per track: contribution tables value -> partial index
    std::vector<std::vector<uint32_t>> low_contrib, high_contrib;
    std::vector<State> low_state;       // low index -> state
    std::vector<char> high_accept;      // high index * |Q| + q -> accept
    uint64_t high_space = 1;

    BoxRunner(const Dfa& d, std::span<const uint64_t> bs) : dfa(d), bounds(bs.begin(), bs.end()) {
        const uint32_t k = d.alphabet.base, r = d.alphabet.arity;
        uint64_t maxb = 0;
        for (uint64_t b : bounds) maxb = std::max(maxb, b);
        while (pow_u64(k, digits) <= maxb) ++digits;
        if (digits == 0) digits = 1;

        low_digits = digits / 2;
        uint64_t low_per_track = pow_u64(k, low_digits);
        low_space = 1;
        bool overflow = false;
        for (uint32_t t = 0; t < r && !overflow; ++t) {
            if (low_space > (1ull << 26) / low_per_track) overflow = true;
            low_space *= low_per_track;
        }
        high_space = 1;
        for (uint32_t t = 0; t < r; ++t) high_space *= bounds[t] / low_per_track + 1;

        uint64_t box = 1;
        for (uint64_t b : bounds) box *= b + 1;
        split = !overflow && low_digits > 0 && box > 1u << 22 &&
                high_space * d.state_count < (1ull << 31);
        if (split)
            build_tables(low_per_track);
    }

    static uint64_t pow_u64(uint64_t b, uint32_t e) {
        uint64_t v = 1;
        while (e--) v *= b;
        return v;
    }

    void build_tables(uint64_t low_per_track) {
        const uint32_t k = dfa.alphabet.base, r = dfa.alphabet.arity;
        low_contrib.assign(r, {});
        high_contrib.assign(r, {});
        std::vector<uint64_t> low_stride(r), high_stride(r);
        {
            uint64_t ls = 1, hs = 1;
            for (uint32_t t = r; t-- > 0;) {
                low_stride[t] = ls;
                ls *= low_per_track;
                high_stride[t] = hs;
                hs *= bounds[t] / low_per_track + 1;
            }
        }
        for (uint32_t t = 0; t < r; ++t) {
            low_contrib[t].resize(bounds[t] + 1);
            high_contrib[t].resize(bounds[t] + 1);
            for (uint64_t v = 0; v <= bounds[t]; ++v) {
                low_contrib[t][v] = static_cast<uint32_t>((v % low_per_track) * low_stride[t]);
                high_contrib[t][v] = static_cast<uint32_t>((v / low_per_track) * high_stride[t]);
            }
        }

        // states after the low word of every low-part combination
        low_state.resize(low_space);
        std::vector<uint64_t> lows(r);
        std::vector<uint32_t> dig(r);
        for (uint64_t idx = 0; idx < low_space; ++idx) {
            uint64_t rem = idx;
            for (uint32_t t = r; t-- > 0;) {
                lows[t] = rem % low_per_track;
                rem /= low_per_track;
            }
            State q = dfa.initial;
            uint64_t place = 1;
            for (uint32_t p = 0; p < low_digits; ++p) {
                for (uint32_t t = 0; t < r; ++t) dig[t] = (lows[t] / place) % k;
                q = dfa.next(q, dfa.alphabet.pack(dig));
                place *= k;
            }
            low_state[idx] = q;
        }

        // acceptance per state for every high-part combination
        high_accept.resize(high_space * dfa.state_count);
        std::vector<uint64_t> highs(r);
        std::vector<uint64_t> hsizes(r);
        for (uint32_t t = 0; t < r; ++t) hsizes[t] = bounds[t] / low_per_track + 1;
        for (uint64_t idx = 0; idx < high_space; ++idx) {
            uint64_t rem = idx;
            for (uint32_t t = r; t-- > 0;) {
                highs[t] = rem % hsizes[t];
                rem /= hsizes[t];
            }
            for (State q0 = 0; q0 < dfa.state_count; ++q0) {
                State q = q0;
                uint64_t place = 1;
                for (uint32_t p = low_digits; p < digits; ++p) {
                    for (uint32_t t = 0; t < r; ++t) dig[t] = (highs[t] / place) % k;
                    q = dfa.next(q, dfa.alphabet.pack(dig));
                    place *= k;
                }
                high_accept[idx * dfa.state_count + q0] = dfa.is_final(q);
            }
        }
    }

    bool accepts(const uint64_t* tuple) const {
        const uint32_t r = dfa.alphabet.arity;
        if (split) {
            uint32_t li = 0, hi = 0;
            for (uint32_t t = 0; t < r; ++t) {
                li += low_contrib[t][tuple[t]];
                hi += high_contrib[t][tuple[t]];
            }
            return high_accept[static_cast<uint64_t>(hi) * dfa.state_count + low_state[li]] != 0;
        }
        const uint32_t k = dfa.alphabet.base;
        State q = dfa.initial;
        uint64_t v[8];
        for (uint32_t t = 0; t < r; ++t) v[t] = tuple[t];
        for (uint32_t p = 0; p < digits; ++p) {
            uint32_t sym = 0; // track 0 is the most significant digit
            for (uint32_t t = 0; t < r; ++t) {
                sym = sym * k + static_cast<uint32_t>(v[t] % k);
                v[t] /= k;
            }
            q = dfa.next(q, sym);
        }
        return dfa.is_final(q);
    }
};

} // namespace detail

// Exhaustively compares machine membership against `predicate` over the box
// {0..bounds[0]} x ... x {0..bounds[r-1]}, in lexicographic order. The sweep
// is chunked over the first coordinate across threads; reports are
// independent of the execution order.
template <class Pred>
CheckReport cross_check_stage(const Dfa& machine, std::string stage_name,
                              std::span<const uint64_t> bounds, Pred&& predicate,
                              unsigned threads = 0, size_t mismatch_cap = 20) {
    if (bounds.size() != machine.alphabet.arity)
        throw std::invalid_argument("cross_check_stage: bounds arity mismatch");
    const uint32_t r = machine.alphabet.arity;
    if (r > 8) throw std::invalid_argument("cross_check_stage: too many tracks");

    detail::BoxRunner runner(machine, bounds);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    struct ChunkResult {
        uint64_t tests = 0;
        uint64_t mismatch_count = 0;
        std::vector<std::vector<uint64_t>> mismatches;
    };
    uint64_t outer = bounds[0] + 1;
    unsigned nchunks = static_cast<unsigned>(std::min<uint64_t>(threads, outer));
    std::vector<ChunkResult> results(nchunks);

    auto sweep_chunk = [&](unsigned chunk) {
        ChunkResult& res = results[chunk];
        uint64_t begin = outer * chunk / nchunks, end = outer * (chunk + 1) / nchunks;
        uint64_t tuple[8] = {0};
        for (uint64_t v0 = begin; v0 < end; ++v0) {
            tuple[0] = v0;
            for (uint32_t t = 1; t < r; ++t) tuple[t] = 0;
            bool more = true;
            while (more) {
                bool got = runner.accepts(tuple);
                bool want = predicate(tuple);
                ++res.tests;
                if (got != want) {
                    ++res.mismatch_count;
                    if (res.mismatches.size() < mismatch_cap)
                        res.mismatches.emplace_back(tuple, tuple + r);
                }
                // odometer over coordinates r-1 .. 1
                more = false;
                for (uint32_t t = r; t-- > 1;) {
                    if (tuple[t] < bounds[t]) {
                        ++tuple[t];
                        more = true;
                        break;
                    }
                    tuple[t] = 0;
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned c = 1; c < nchunks; ++c) pool.emplace_back(sweep_chunk, c);
    sweep_chunk(0);
    for (auto& th : pool) th.join();

    CheckReport report;
    report.stage = std::move(stage_name);
    report.bounds.assign(bounds.begin(), bounds.end());
    for (auto& res : results) {
        report.tests += res.tests;
        report.mismatch_count += res.mismatch_count;
        for (auto& m : res.mismatches)
            if (report.mismatches.size() < mismatch_cap) report.mismatches.push_back(m);
    }
    return report;
}

// ---------------------------------------------------------------------------
// exhaustive stage checks for the unbordered pipeline

struct UnborderedCheckOptions {
    uint64_t bound = 200;        // per-variable default box
    bool paper_bounds = false;   // n,j,l <= 1400 on stages 2-4
    bool skip_stage1 = false;    // stage 1 always runs at `bound`; skip if already done
    unsigned threads = 0;
    uint64_t stage4_prefix = 8192; // witness search window for the final stage
};

// Stage machines carry tracks (n,j,l,i), (n,j,l), (n,j), (n). Stage 1 always
// sweeps the full default box (a 1400^4 box is out of reach); the 1400
// reference bound applies from stage 2 on, the stage its original testing
// regime was stated for.
inline std::vector<CheckReport> check_unbordered_stages(const Dfao& seq, const Dfa& stage1,
                                                        const Dfa& stage2, const Dfa& stage3,
                                                        const Dfa& final_dfa,
                                                        const UnborderedCheckOptions& opts = {}) {
    const uint64_t b1 = opts.bound;
    const uint64_t b2 = opts.paper_bounds ? 1400 : opts.bound;
    std::vector<int> prefix = sequence_prefix(seq, 3 * b1 + 4);
    std::vector<int> prefix2 = sequence_prefix(seq, 2 * b2 + 4);
    LceTable lce(prefix2);
    std::vector<CheckReport> out;

    if (!opts.skip_stage1) {
        const std::vector<int>& p = prefix;
        uint64_t bounds[4] = {b1, b1, b1, b1};
        out.push_back(cross_check_stage(
            stage1, "S1", std::span<const uint64_t>(bounds, 4),
            [&p](const uint64_t* t) {
                uint64_t n = t[0], j = t[1], l = t[2], i = t[3];
                return l >= 1 && 2 * l <= n && i < l &&
                       p[j + i] != p[n + j - l + i];
            },
            opts.threads));
    }
    {
        uint64_t bounds[3] = {b2, b2, b2};
        out.push_back(cross_check_stage(
            stage2, "S2", std::span<const uint64_t>(bounds, 3),
            [&lce](const uint64_t* t) {
                uint64_t n = t[0], j = t[1], l = t[2];
                return l < 1 || 2 * l > n || lce.equal_blocks(j, j + n - l, l);
            },
            opts.threads));
    }
    {
        uint64_t bounds[2] = {b2, b2};
        out.push_back(cross_check_stage(
            stage3, "S3", std::span<const uint64_t>(bounds, 2),
            [&lce](const uint64_t* t) {
                uint64_t n = t[0], j = t[1];
                for (uint64_t l = 1; 2 * l <= n; ++l)
                    if (lce.equal_blocks(j, j + n - l, l)) return false;
                return true;
            },
            opts.threads));
    }
    {
        std::vector<int> window = sequence_prefix(seq, std::max(opts.stage4_prefix, 2 * b2 + 4));
        uint64_t bounds[1] = {b2};
        out.push_back(cross_check_stage(
            final_dfa, "S4", std::span<const uint64_t>(bounds, 1),
            [&window](const uint64_t* t) {
                uint64_t n = t[0];
                if (n <= 1) return false;
                return !brute_unbordered_exists(window, n, window.size() - n);
            },
            opts.threads));
    }
    return out;
}

} // namespace autoseq
