// ops.hpp -- the algebra of automata over tuple alphabets: determinization,
// minimization, boolean combinations, track surgery (cylindrify / project),
// reversal, zero-saturation, and the decision tests.
//
// All operations are pure: they take automata by const reference and return
// new ones. Determinize and minimize number states canonically (BFS discovery
// order, symbols ascending), so state counts and structural comparisons are
// reproducible across runs.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "autoseq/dfa.hpp"
#include "autoseq/nfa.hpp"

namespace autoseq {

struct StateBudgetExceeded : std::runtime_error {
    explicit StateBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct DeterminizeLimits {
    size_t max_states = 2'000'000;
    size_t max_subset_elements = 50'000'000;
};

// ---------------------------------------------------------------------------
// determinize: subset construction. Subsets are discovered breadth-first with
// symbols enumerated in ascending (lexicographic tuple) order; the empty
// subset doubles as the explicit dead state.

namespace detail {
struct SubsetHash {
    size_t operator()(const std::vector<State>& v) const {
        size_t h = 1469598103934665603ull;
        for (State s : v) {
            h ^= s;
            h *= 1099511628211ull;
        }
        return h;
    }
};
} // namespace detail

inline Dfa determinize(const Nfa& n, const DeterminizeLimits& limits = {}) {
    const uint32_t sigma = n.alphabet.size();
    std::unordered_map<std::vector<State>, State, detail::SubsetHash> ids;
    std::vector<std::vector<State>> subsets;
    std::vector<State> rows;
    std::vector<char> finals;
    size_t total_elements = 0;

    auto is_final_subset = [&](const std::vector<State>& set) {
        for (State q : set)
            if (n.is_final(q)) return true;
        return false;
    };
    auto intern = [&](std::vector<State>&& set) -> State {
        auto it = ids.find(set);
        if (it != ids.end()) return it->second;
        if (subsets.size() >= limits.max_states)
            throw StateBudgetExceeded("determinize: subset count budget exceeded");
        total_elements += set.size();
        if (total_elements > limits.max_subset_elements)
            throw StateBudgetExceeded("determinize: subset element budget exceeded");
        State id = static_cast<State>(subsets.size());
        finals.push_back(is_final_subset(set));
        subsets.push_back(set);
        ids.emplace(std::move(set), id);
        return id;
    };

    intern(std::vector<State>(n.initials));

    std::vector<std::vector<State>> targets(sigma);
    for (size_t cur = 0; cur < subsets.size(); ++cur) {
        const std::vector<State> members = subsets[cur]; // copy: subsets may grow
        for (auto& t : targets) t.clear();
        for (State q : members)
            for (const Nfa::Edge& e : n.edges[q]) targets[e.symbol].push_back(e.to);
        for (Symbol s = 0; s < sigma; ++s) {
            auto& t = targets[s];
            std::sort(t.begin(), t.end());
            t.erase(std::unique(t.begin(), t.end()), t.end());
            rows.push_back(intern(std::move(t)));
            t = {};
        }
    }

    Dfa out(n.alphabet, static_cast<uint32_t>(subsets.size()));
    out.initial = 0;
    out.final_mask = std::move(finals);
    out.transitions = std::move(rows);
    return out;
}

// ---------------------------------------------------------------------------
// canonical renumbering: BFS from the initial state with symbols ascending;
// unreachable states are dropped.

inline Dfa canonical_renumber(const Dfa& d) {
    constexpr State unset = ~State(0);
    std::vector<State> idx(d.state_count, unset);
    std::vector<State> bfs;
    bfs.reserve(d.state_count);
    idx[d.initial] = 0;
    bfs.push_back(d.initial);
    for (size_t i = 0; i < bfs.size(); ++i) {
        for (Symbol s = 0; s < d.sigma(); ++s) {
            State t = d.next(bfs[i], s);
            if (idx[t] == unset) {
                idx[t] = static_cast<State>(bfs.size());
                bfs.push_back(t);
            }
        }
    }
    Dfa out(d.alphabet, static_cast<uint32_t>(bfs.size()));
    out.initial = 0;
    out.saturated = d.saturated;
    for (State q = 0; q < out.state_count; ++q) {
        State old = bfs[q];
        out.final_mask[q] = d.final_mask[old];
        for (Symbol s = 0; s < d.sigma(); ++s) out.next(q, s) = idx[d.next(old, s)];
    }
    return out;
}

// ---------------------------------------------------------------------------
// minimize: partition refinement (Hopcroft), smaller splitter halves pushed
// first. The seed partition is {final, non-final} for language minimization
// and the output-letter partition for DFAO minimization.

namespace detail {

// Refines the seed partition of the REACHABLE part of `d` to the coarsest
// congruence. Returns the class of each state (unreachable states map to
// ~0u) and the class count. Class of a reachable state is stable under the
// automaton's transitions by construction.
inline std::pair<std::vector<uint32_t>, uint32_t>
refine_partition(const Dfa& d, const std::vector<uint32_t>& seed) {
    constexpr uint32_t unset = ~uint32_t(0);
    const uint32_t sigma = d.sigma();

    // reachable trim, compacted ids
    std::vector<State> compact(d.state_count, unset), original;
    original.reserve(d.state_count);
    {
        compact[d.initial] = 0;
        original.push_back(d.initial);
        for (size_t i = 0; i < original.size(); ++i)
            for (Symbol s = 0; s < sigma; ++s) {
                State t = d.next(original[i], s);
                if (compact[t] == unset) {
                    compact[t] = static_cast<State>(original.size());
                    original.push_back(t);
                }
            }
    }
    const uint32_t n = static_cast<uint32_t>(original.size());

    // inverse transitions, CSR per symbol
    std::vector<uint32_t> inv_off(static_cast<size_t>(sigma) * (n + 1), 0);
    std::vector<State> inv_data(static_cast<size_t>(sigma) * n);
    {
        for (State q = 0; q < n; ++q)
            for (Symbol s = 0; s < sigma; ++s) {
                State t = compact[d.next(original[q], s)];
                ++inv_off[static_cast<size_t>(s) * (n + 1) + t + 1];
            }
        for (Symbol s = 0; s < sigma; ++s) {
            size_t base = static_cast<size_t>(s) * (n + 1);
            for (uint32_t q = 0; q < n; ++q) inv_off[base + q + 1] += inv_off[base + q];
        }
        std::vector<uint32_t> fill(static_cast<size_t>(sigma) * n, 0);
        for (State q = 0; q < n; ++q)
            for (Symbol s = 0; s < sigma; ++s) {
                State t = compact[d.next(original[q], s)];
                size_t base = static_cast<size_t>(s) * (n + 1);
                inv_data[static_cast<size_t>(s) * n + inv_off[base + t] + fill[static_cast<size_t>(s) * n + t]++] = q;
            }
    }

    // partition structure
    std::vector<State> order(n), loc(n);
    std::vector<uint32_t> class_of(n);
    std::vector<uint32_t> first, past, marked;
    uint32_t class_count = 0;
    {
        // bucket reachable states by seed label
        std::unordered_map<uint32_t, uint32_t> label_class;
        std::vector<std::vector<State>> buckets;
        for (State q = 0; q < n; ++q) {
            uint32_t lab = seed[original[q]];
            auto [it, fresh] = label_class.emplace(lab, static_cast<uint32_t>(buckets.size()));
            if (fresh) buckets.emplace_back();
            buckets[it->second].push_back(q);
        }
        uint32_t pos = 0;
        for (auto& b : buckets) {
            first.push_back(pos);
            for (State q : b) {
                order[pos] = q;
                loc[q] = pos;
                class_of[q] = class_count;
                ++pos;
            }
            past.push_back(pos);
            marked.push_back(0);
            ++class_count;
        }
    }

    std::vector<std::pair<uint32_t, Symbol>> worklist;
    std::vector<char> in_worklist(static_cast<size_t>(class_count) * sigma, 0);
    auto push_work = [&](uint32_t c, Symbol s) {
        size_t slot = static_cast<size_t>(c) * sigma + s;
        if (!in_worklist[slot]) {
            in_worklist[slot] = 1;
            worklist.emplace_back(c, s);
        }
    };
    {
        // push every seed class but the largest
        uint32_t largest = 0;
        for (uint32_t c = 1; c < class_count; ++c)
            if (past[c] - first[c] > past[largest] - first[largest]) largest = c;
        for (uint32_t c = 0; c < class_count; ++c) {
            if (c == largest && class_count > 1) continue;
            for (Symbol s = 0; s < sigma; ++s) push_work(c, s);
        }
    }

    std::vector<uint32_t> touched;
    std::vector<State> splitter_preimage;
    auto mark = [&](State x) {
        uint32_t c = class_of[x];
        if (marked[c] == 0) touched.push_back(c);
        uint32_t i = loc[x], j = first[c] + marked[c];
        std::swap(order[i], order[j]);
        loc[order[i]] = i;
        loc[order[j]] = j;
        ++marked[c];
    };

    while (!worklist.empty()) {
        auto [C, a] = worklist.back();
        worklist.pop_back();
        in_worklist[static_cast<size_t>(C) * sigma + a] = 0;

        splitter_preimage.clear();
        size_t base = static_cast<size_t>(a) * (n + 1);
        for (uint32_t i = first[C]; i < past[C]; ++i) {
            State q = order[i];
            for (uint32_t k = inv_off[base + q]; k < inv_off[base + q + 1]; ++k)
                splitter_preimage.push_back(inv_data[static_cast<size_t>(a) * n + k]);
        }
        for (State x : splitter_preimage) mark(x);

        for (uint32_t c : touched) {
            uint32_t size_c = past[c] - first[c];
            if (marked[c] == size_c) {
                marked[c] = 0;
                continue;
            }
            // carve the marked zone into a new class
            uint32_t c2 = class_count++;
            first.push_back(first[c]);
            past.push_back(first[c] + marked[c]);
            marked.push_back(0);
            first[c] = past[c2];
            for (uint32_t i = first[c2]; i < past[c2]; ++i) class_of[order[i]] = c2;
            marked[c] = 0;
            in_worklist.resize(static_cast<size_t>(class_count) * sigma, 0);

            uint32_t small =
                (past[c2] - first[c2] <= past[c] - first[c]) ? c2 : c;
            for (Symbol s = 0; s < sigma; ++s) {
                if (in_worklist[static_cast<size_t>(c) * sigma + s])
                    push_work(c2, s);
                else
                    push_work(small, s);
            }
        }
        touched.clear();
    }

    std::vector<uint32_t> result(d.state_count, unset);
    for (State q = 0; q < n; ++q) result[original[q]] = class_of[q];
    return {std::move(result), class_count};
}

} // namespace detail

struct MinimizedDfa {
    Dfa dfa;                      // canonical quotient
    std::vector<State> state_map; // input state -> quotient state (~0u if unreachable)
};

inline MinimizedDfa minimize_mapped(const Dfa& d, const std::vector<uint32_t>& seed) {
    constexpr uint32_t unset = ~uint32_t(0);
    auto [class_of, class_count] = detail::refine_partition(d, seed);

    Dfa quotient(d.alphabet, class_count);
    quotient.initial = class_of[d.initial];
    quotient.saturated = d.saturated;
    std::vector<char> built(class_count, 0);
    for (State q = 0; q < d.state_count; ++q) {
        uint32_t c = class_of[q];
        if (c == unset || built[c]) continue;
        built[c] = 1;
        quotient.final_mask[c] = d.final_mask[q];
        for (Symbol s = 0; s < d.sigma(); ++s) quotient.next(c, s) = class_of[d.next(q, s)];
    }

    // canonical BFS renumber of the quotient, then compose the two maps
    constexpr State funset = ~State(0);
    std::vector<State> idx(class_count, funset);
    std::vector<State> bfs;
    idx[quotient.initial] = 0;
    bfs.push_back(quotient.initial);
    for (size_t i = 0; i < bfs.size(); ++i)
        for (Symbol s = 0; s < quotient.sigma(); ++s) {
            State t = quotient.next(bfs[i], s);
            if (idx[t] == funset) {
                idx[t] = static_cast<State>(bfs.size());
                bfs.push_back(t);
            }
        }

    MinimizedDfa out;
    out.dfa = Dfa(d.alphabet, static_cast<uint32_t>(bfs.size()));
    out.dfa.initial = 0;
    out.dfa.saturated = d.saturated;
    for (State q = 0; q < out.dfa.state_count; ++q) {
        State old = bfs[q];
        out.dfa.final_mask[q] = quotient.final_mask[old];
        for (Symbol s = 0; s < quotient.sigma(); ++s)
            out.dfa.next(q, s) = idx[quotient.next(old, s)];
    }
    out.state_map.assign(d.state_count, funset);
    for (State q = 0; q < d.state_count; ++q)
        if (class_of[q] != unset) out.state_map[q] = idx[class_of[q]];
    return out;
}

// Unique minimal total DFA for the language, canonically numbered.
inline Dfa minimize(const Dfa& d) {
    std::vector<uint32_t> seed(d.state_count);
    for (State q = 0; q < d.state_count; ++q) seed[q] = d.final_mask[q] ? 1 : 0;
    return minimize_mapped(d, seed).dfa;
}

// ---------------------------------------------------------------------------
// boolean product over reachable pairs

enum class BoolOp { And, Or, Xor, AndNot };

inline bool apply_bool(BoolOp op, bool a, bool b) {
    switch (op) {
        case BoolOp::And: return a && b;
        case BoolOp::Or: return a || b;
        case BoolOp::Xor: return a != b;
        case BoolOp::AndNot: return a && !b;
    }
    return false;
}

inline Dfa product(const Dfa& a, const Dfa& b, BoolOp op) {
    if (!(a.alphabet == b.alphabet))
        throw std::invalid_argument("product: alphabet mismatch");
    const uint32_t sigma = a.sigma();
    std::unordered_map<uint64_t, State> ids;
    std::vector<uint64_t> pairs;
    std::vector<State> rows;
    std::vector<char> finals;

    auto intern = [&](State qa, State qb) -> State {
        uint64_t key = static_cast<uint64_t>(qa) * b.state_count + qb;
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        State id = static_cast<State>(pairs.size());
        ids.emplace(key, id);
        pairs.push_back(key);
        finals.push_back(apply_bool(op, a.is_final(qa), b.is_final(qb)));
        return id;
    };
    intern(a.initial, b.initial);
    for (size_t cur = 0; cur < pairs.size(); ++cur) {
        State qa = static_cast<State>(pairs[cur] / b.state_count);
        State qb = static_cast<State>(pairs[cur] % b.state_count);
        for (Symbol s = 0; s < sigma; ++s) rows.push_back(intern(a.next(qa, s), b.next(qb, s)));
    }

    Dfa out(a.alphabet, static_cast<uint32_t>(pairs.size()));
    out.initial = 0;
    out.final_mask = std::move(finals);
    out.transitions = std::move(rows);
    out.saturated = a.saturated && b.saturated;
    return out;
}

// ---------------------------------------------------------------------------
// complement by final swap -- sound only for saturated automata, where every
// representation of a tuple is accepted or none is.

inline Dfa complement(const Dfa& d) {
    if (!d.saturated)
        throw std::invalid_argument("complement: input not saturated (pipeline ordering bug)");
    Dfa out = d;
    for (auto& f : out.final_mask) f = !f;
    return out;
}

// ---------------------------------------------------------------------------
// track surgery

// Rebuild `d` over `target`, with source track t reading the digits of
// target track track_of_source[t]. Several source tracks may share one
// target track (merging); target tracks not referenced are unconstrained.
inline Dfa lift_tracks(const Dfa& d, const TupleAlphabet& target,
                       std::span<const uint32_t> track_of_source) {
    if (track_of_source.size() != d.alphabet.arity)
        throw std::invalid_argument("lift_tracks: mapping size mismatch");
    if (target.base != d.alphabet.base)
        throw std::invalid_argument("lift_tracks: base mismatch");
    for (uint32_t t : track_of_source)
        if (t >= target.arity) throw std::invalid_argument("lift_tracks: track out of range");

    const uint32_t sigma_t = target.size();
    std::vector<Symbol> source_symbol(sigma_t);
    std::vector<uint32_t> tdig(target.arity), sdig(d.alphabet.arity);
    for (Symbol s = 0; s < sigma_t; ++s) {
        target.unpack(s, tdig);
        for (uint32_t t = 0; t < d.alphabet.arity; ++t) sdig[t] = tdig[track_of_source[t]];
        source_symbol[s] = d.alphabet.pack(sdig);
    }

    Dfa out(target, d.state_count);
    out.initial = d.initial;
    out.final_mask = d.final_mask;
    out.saturated = d.saturated;
    for (State q = 0; q < d.state_count; ++q)
        for (Symbol s = 0; s < sigma_t; ++s) out.next(q, s) = d.next(q, source_symbol[s]);
    return out;
}

// Insert a fresh unconstrained track at `insert_at`.
inline Dfa cylindrify(const Dfa& d, uint32_t insert_at, const TupleAlphabet& target) {
    if (insert_at >= target.arity)
        throw std::invalid_argument("cylindrify: index out of range");
    if (target.arity != d.alphabet.arity + 1)
        throw std::invalid_argument("cylindrify: target arity must be source arity + 1");
    std::vector<uint32_t> map(d.alphabet.arity);
    for (uint32_t t = 0; t < d.alphabet.arity; ++t) map[t] = t < insert_at ? t : t + 1;
    return lift_tracks(d, target, map);
}

inline Dfa cylindrify(const Dfa& d, uint32_t insert_at) {
    return cylindrify(d, insert_at, TupleAlphabet(d.alphabet.base, d.alphabet.arity + 1));
}

// Delete a track (existential quantification). A transition on a reduced
// symbol exists iff some digit of the dropped track completes it to a source
// transition. Afterwards finality is closed backward over symbols whose kept
// tracks are all zero: the dropped variable may need more digits than the
// kept ones.
inline Nfa project(const Nfa& n, uint32_t drop_track) {
    if (n.alphabet.arity < 2)
        throw std::invalid_argument("project: cannot drop the only track");
    if (drop_track >= n.alphabet.arity)
        throw std::invalid_argument("project: track out of range");
    TupleAlphabet reduced(n.alphabet.base, n.alphabet.arity - 1);

    std::vector<Symbol> kept(n.alphabet.size());
    std::vector<uint32_t> sdig(n.alphabet.arity), rdig(reduced.arity);
    for (Symbol s = 0; s < n.alphabet.size(); ++s) {
        n.alphabet.unpack(s, sdig);
        uint32_t w = 0;
        for (uint32_t t = 0; t < n.alphabet.arity; ++t)
            if (t != drop_track) rdig[w++] = sdig[t];
        kept[s] = reduced.pack(rdig);
    }

    Nfa out(reduced, n.state_count);
    out.initials = n.initials;
    out.final_mask = n.final_mask;
    for (State q = 0; q < n.state_count; ++q)
        for (const Nfa::Edge& e : n.edges[q]) out.add_edge(q, kept[e.symbol], e.to);
    out.normalize();

    // backward closure of finals over kept-zero edges
    std::vector<std::vector<State>> rev_zero(out.state_count);
    for (State q = 0; q < out.state_count; ++q)
        for (const Nfa::Edge& e : out.edges[q])
            if (e.symbol == TupleAlphabet::zero_symbol()) rev_zero[e.to].push_back(q);
    std::vector<State> stack;
    for (State q = 0; q < out.state_count; ++q)
        if (out.final_mask[q]) stack.push_back(q);
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        for (State p : rev_zero[q])
            if (!out.final_mask[p]) {
                out.final_mask[p] = 1;
                stack.push_back(p);
            }
    }
    return out;
}

inline Nfa project(const Dfa& d, uint32_t drop_track) { return project(to_nfa(d), drop_track); }

// Accepts exactly the reversals of accepted words.
inline Nfa reverse(const Nfa& n) {
    Nfa out(n.alphabet, n.state_count);
    for (State q = 0; q < n.state_count; ++q)
        if (n.final_mask[q]) out.initials.push_back(q);
    for (State q : n.initials) out.final_mask[q] = 1;
    for (State q = 0; q < n.state_count; ++q)
        for (const Nfa::Edge& e : n.edges[q]) out.add_edge(e.to, e.symbol, q);
    out.normalize();
    return out;
}

inline Nfa reverse(const Dfa& d) { return reverse(to_nfa(d)); }

// ---------------------------------------------------------------------------
// saturation: close the language under appending/removing trailing all-zeros
// symbols, so that acceptance depends only on the denoted tuple. Backward
// direction marks final every state that reaches a final via zero symbols;
// forward direction accepts w 0^m for accepted w via a fresh zero sink.

inline Nfa saturate(const Nfa& n) {
    Nfa out = n;
    std::vector<std::vector<State>> rev_zero(out.state_count);
    for (State q = 0; q < out.state_count; ++q)
        for (const Nfa::Edge& e : out.edges[q])
            if (e.symbol == TupleAlphabet::zero_symbol()) rev_zero[e.to].push_back(q);
    std::vector<State> stack;
    for (State q = 0; q < out.state_count; ++q)
        if (out.final_mask[q]) stack.push_back(q);
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        for (State p : rev_zero[q])
            if (!out.final_mask[p]) {
                out.final_mask[p] = 1;
                stack.push_back(p);
            }
    }

    State sink = out.state_count++;
    out.final_mask.push_back(1);
    out.edges.emplace_back();
    out.add_edge(sink, TupleAlphabet::zero_symbol(), sink);
    for (State q = 0; q < sink; ++q)
        if (out.final_mask[q]) out.add_edge(q, TupleAlphabet::zero_symbol(), sink);
    out.normalize();
    return out;
}

inline Dfa saturate(const Dfa& d, const DeterminizeLimits& limits = {}) {
    if (d.saturated) return d;
    Dfa out = determinize(saturate(to_nfa(d)), limits);
    out.saturated = true;
    return out;
}

// A DFA accepts a saturated language iff finality is stable along the
// all-zeros transition on every reachable state.
inline bool saturation_consistent(const Dfa& d) {
    std::vector<char> seen(d.state_count, 0);
    std::vector<State> stack{d.initial};
    seen[d.initial] = 1;
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        if (d.is_final(d.next(q, TupleAlphabet::zero_symbol())) != d.is_final(q)) return false;
        for (Symbol s = 0; s < d.sigma(); ++s) {
            State t = d.next(q, s);
            if (!seen[t]) {
                seen[t] = 1;
                stack.push_back(t);
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// decision tests

inline bool is_empty(const Dfa& d) {
    std::vector<char> seen(d.state_count, 0);
    std::vector<State> stack{d.initial};
    seen[d.initial] = 1;
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        if (d.is_final(q)) return false;
        for (Symbol s = 0; s < d.sigma(); ++s) {
            State t = d.next(q, s);
            if (!seen[t]) {
                seen[t] = 1;
                stack.push_back(t);
            }
        }
    }
    return true;
}

inline bool is_empty(const Nfa& n) {
    std::vector<char> seen(n.state_count, 0);
    std::vector<State> stack;
    for (State q : n.initials) {
        seen[q] = 1;
        stack.push_back(q);
    }
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        if (n.is_final(q)) return false;
        for (const Nfa::Edge& e : n.edges[q])
            if (!seen[e.to]) {
                seen[e.to] = 1;
                stack.push_back(e.to);
            }
    }
    return true;
}

inline bool is_universal(const Dfa& d) {
    if (!d.saturated)
        throw std::invalid_argument("is_universal: input not saturated");
    std::vector<char> seen(d.state_count, 0);
    std::vector<State> stack{d.initial};
    seen[d.initial] = 1;
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        if (!d.is_final(q)) return false;
        for (Symbol s = 0; s < d.sigma(); ++s) {
            State t = d.next(q, s);
            if (!seen[t]) {
                seen[t] = 1;
                stack.push_back(t);
            }
        }
    }
    return true;
}

// True iff the set of denoted tuples is infinite. Padding makes every
// nonempty saturated language infinite as a word set, so the automaton is
// first restricted to canonical representations (empty word or last symbol
// not all-zeros); that restriction has infinitely many words iff it has a
// reachable cycle from which a final state is reachable.
inline bool accepts_infinitely_many(const Dfa& d) {
    if (!d.saturated)
        throw std::invalid_argument("accepts_infinitely_many: input not saturated");

    // canonical-representation checker: state 0 = empty-or-start (final),
    // 1 = last symbol nonzero (final), 2 = nonempty, last symbol zero
    Dfa canon(d.alphabet, 3);
    canon.initial = 0;
    canon.final_mask = {1, 1, 0};
    for (State q = 0; q < 3; ++q)
        for (Symbol s = 0; s < d.sigma(); ++s)
            canon.next(q, s) = (s == TupleAlphabet::zero_symbol()) ? 2 : 1;
    canon.saturated = false; // irrelevant below

    Dfa p = product(d, canon, BoolOp::And);

    // states reaching a final
    const uint32_t n = p.state_count;
    std::vector<std::vector<State>> rev(n);
    for (State q = 0; q < n; ++q)
        for (Symbol s = 0; s < p.sigma(); ++s) rev[p.next(q, s)].push_back(q);
    std::vector<char> cofinal(n, 0);
    std::vector<State> stack;
    for (State q = 0; q < n; ++q)
        if (p.is_final(q)) {
            cofinal[q] = 1;
            stack.push_back(q);
        }
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        for (State r : rev[q])
            if (!cofinal[r]) {
                cofinal[r] = 1;
                stack.push_back(r);
            }
    }

    // cycle search in the subgraph induced on reachable-and-cofinal states
    // (product states are reachable by construction)
    std::vector<uint8_t> color(n, 0); // 0 white, 1 gray, 2 black
    std::vector<std::pair<State, Symbol>> dfs;
    for (State start = 0; start < n; ++start) {
        if (!cofinal[start] || color[start] != 0) continue;
        dfs.emplace_back(start, 0);
        color[start] = 1;
        while (!dfs.empty()) {
            auto& [q, s] = dfs.back();
            if (s == p.sigma()) {
                color[q] = 2;
                dfs.pop_back();
                continue;
            }
            State t = p.next(q, s++);
            if (!cofinal[t]) continue;
            if (color[t] == 1) return true; // back edge: reachable cycle
            if (color[t] == 0) {
                color[t] = 1;
                dfs.emplace_back(t, 0);
            }
        }
    }
    return false;
}

// Breadth-first shortest accepted word, ties broken by ascending symbol
// order; nullopt iff the language is empty.
inline std::optional<DigitWord> shortest_accepted(const Dfa& d) {
    constexpr State unset = ~State(0);
    std::vector<State> parent(d.state_count, unset);
    std::vector<Symbol> via(d.state_count, 0);
    std::vector<State> queue{d.initial};
    std::vector<char> seen(d.state_count, 0);
    seen[d.initial] = 1;
    std::optional<State> hit;
    if (d.is_final(d.initial)) hit = d.initial;
    for (size_t i = 0; i < queue.size() && !hit; ++i) {
        State q = queue[i];
        for (Symbol s = 0; s < d.sigma() && !hit; ++s) {
            State t = d.next(q, s);
            if (seen[t]) continue;
            seen[t] = 1;
            parent[t] = q;
            via[t] = s;
            if (d.is_final(t)) hit = t;
            queue.push_back(t);
        }
    }
    if (!hit) return std::nullopt;
    std::vector<Symbol> word;
    for (State q = *hit; parent[q] != unset; q = parent[q]) word.push_back(via[q]);
    std::reverse(word.begin(), word.end());
    DigitWord w(d.alphabet);
    w.symbols = std::move(word);
    return w;
}

inline bool equivalent(const Dfa& a, const Dfa& b) {
    if (!(a.alphabet == b.alphabet))
        throw std::invalid_argument("equivalent: alphabet mismatch");
    if (a.saturated != b.saturated)
        throw std::invalid_argument("equivalent: saturation mismatch");
    return is_empty(product(a, b, BoolOp::Xor));
}

// ---------------------------------------------------------------------------
// Brzozowski minimization: determinize the reversal twice. The route of
// choice when direct subset construction blows up, since the reversal may
// determinize to something small even then.

inline Dfa brzozowski_minimize(const Nfa& n, const DeterminizeLimits& limits = {}) {
    Dfa d1 = determinize(reverse(n), limits);
    return determinize(reverse(d1), limits);
}

} // namespace autoseq
