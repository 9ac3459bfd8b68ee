// nfa.hpp -- nondeterministic finite automata over tuple alphabets.
#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "autoseq/dfa.hpp"
#include "autoseq/digit_word.hpp"

namespace autoseq {

// Edges are kept per state, sorted by (symbol, target) and deduplicated
// by normalize(). No epsilon transitions; constructions that need them
// (regex compilation) eliminate them before building an Nfa.
struct Nfa {
    struct Edge {
        Symbol symbol;
        State to;
        auto operator<=>(const Edge&) const = default;
    };

    TupleAlphabet alphabet;
    uint32_t state_count = 0;
    std::vector<State> initials; // sorted, unique
    std::vector<char> final_mask;
    std::vector<std::vector<Edge>> edges; // per source state

    Nfa() = default;
    Nfa(TupleAlphabet a, uint32_t n)
        : alphabet(a), state_count(n), final_mask(n, 0), edges(n) {}

    void add_edge(State from, Symbol s, State to) { edges[from].push_back({s, to}); }

    void normalize() {
        for (auto& es : edges) {
            std::sort(es.begin(), es.end());
            es.erase(std::unique(es.begin(), es.end()), es.end());
        }
        std::sort(initials.begin(), initials.end());
        initials.erase(std::unique(initials.begin(), initials.end()), initials.end());
    }

    bool is_final(State q) const { return final_mask[q] != 0; }

    // direct subset simulation; fine for tests and small words
    bool accepts(std::span<const Symbol> word) const {
        std::vector<char> cur(state_count, 0), nxt(state_count, 0);
        for (State q : initials) cur[q] = 1;
        for (Symbol s : word) {
            std::fill(nxt.begin(), nxt.end(), 0);
            for (State q = 0; q < state_count; ++q) {
                if (!cur[q]) continue;
                for (const Edge& e : edges[q])
                    if (e.symbol == s) nxt[e.to] = 1;
            }
            cur.swap(nxt);
        }
        for (State q = 0; q < state_count; ++q)
            if (cur[q] && is_final(q)) return true;
        return false;
    }

    bool accepts(const DigitWord& w) const {
        if (!(w.alphabet == alphabet))
            throw std::invalid_argument("Nfa::accepts: alphabet mismatch");
        return accepts(std::span<const Symbol>(w.symbols));
    }
};

inline Nfa to_nfa(const Dfa& d) {
    Nfa n(d.alphabet, d.state_count);
    n.initials = {d.initial};
    n.final_mask = d.final_mask;
    for (State q = 0; q < d.state_count; ++q)
        for (Symbol s = 0; s < d.sigma(); ++s)
            n.add_edge(q, s, d.next(q, s));
    n.normalize();
    return n;
}

} // namespace autoseq
