// dfa.hpp -- deterministic finite automata over tuple alphabets.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "autoseq/digit_word.hpp"

namespace autoseq {

// A total DFA: the transition table has an entry for every (state, symbol),
// with a dead state made explicit rather than implied.
//
// `saturated` records whether the accepted language is closed under
// appending/removing trailing all-zeros symbols, i.e. whether acceptance
// depends only on the denoted tuple. Complementation and the universality /
// infinity tests require it.
struct Dfa {
    TupleAlphabet alphabet;
    uint32_t state_count = 0;
    State initial = 0;
    std::vector<char> final_mask;
    std::vector<State> transitions; // state_count * alphabet.size(), row per state
    bool saturated = false;

    Dfa() = default;
    Dfa(TupleAlphabet a, uint32_t n)
        : alphabet(a), state_count(n), final_mask(n, 0),
          transitions(static_cast<size_t>(n) * a.size(), 0) {}

    uint32_t sigma() const { return alphabet.size(); }

    State next(State q, Symbol s) const {
        return transitions[static_cast<size_t>(q) * sigma() + s];
    }
    State& next(State q, Symbol s) {
        return transitions[static_cast<size_t>(q) * sigma() + s];
    }

    bool is_final(State q) const { return final_mask[q] != 0; }

    State run(std::span<const Symbol> word) const {
        State q = initial;
        for (Symbol s : word) q = next(q, s);
        return q;
    }

    bool accepts(std::span<const Symbol> word) const { return is_final(run(word)); }
    bool accepts(const DigitWord& w) const {
        if (!(w.alphabet == alphabet))
            throw std::invalid_argument("Dfa::accepts: alphabet mismatch");
        return accepts(std::span<const Symbol>(w.symbols));
    }
    bool accepts_tuple(std::span<const uint64_t> values) const {
        return accepts(encode(values, alphabet));
    }
    bool accepts_tuple(std::initializer_list<uint64_t> values) const {
        return accepts_tuple(std::span<const uint64_t>(values.begin(), values.size()));
    }

    void check_valid() const {
        if (state_count == 0) throw std::logic_error("Dfa: no states");
        if (initial >= state_count) throw std::logic_error("Dfa: initial out of range");
        if (final_mask.size() != state_count) throw std::logic_error("Dfa: bad final mask");
        if (transitions.size() != static_cast<size_t>(state_count) * sigma())
            throw std::logic_error("Dfa: transition table not total");
        for (State q : transitions)
            if (q >= state_count) throw std::logic_error("Dfa: transition target out of range");
    }
};

// 1-state DFA accepting every word (hence every tuple).
inline Dfa universal_dfa(const TupleAlphabet& a) {
    Dfa d(a, 1);
    d.final_mask[0] = 1;
    d.saturated = true;
    return d;
}

// 1-state DFA accepting nothing.
inline Dfa empty_dfa(const TupleAlphabet& a) {
    Dfa d(a, 1);
    d.saturated = true;
    return d;
}

// Structural equality up to the saturation flag; with canonical numbering
// (BFS order) this is DFA isomorphism.
inline bool same_structure(const Dfa& a, const Dfa& b) {
    return a.alphabet == b.alphabet && a.state_count == b.state_count &&
           a.initial == b.initial && a.final_mask == b.final_mask &&
           a.transitions == b.transitions;
}

} // namespace autoseq
