// dfao.hpp -- deterministic finite automata with output, the generators of
// k-automatic sequences, plus the three built-in sequences.
//
// A Dfao reads the LSD-first base-k digits of n and outputs the letter
// attached to the last state reached. Valid DFAOs are representation
// independent: padded and canonical digit words of the same n yield the
// same output, which holds exactly when outputs are constant along
// zero-symbol transitions.
#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "autoseq/dfa.hpp"
#include "autoseq/io.hpp"
#include "autoseq/ops.hpp"

namespace autoseq {

struct Dfao {
    Dfa dfa;                 // arity 1; the saturated flag is unused here
    std::vector<int> output; // one letter per state

    int run(uint64_t n) const {
        State q = dfa.initial;
        uint32_t k = dfa.alphabet.base;
        while (n > 0) {
            q = dfa.next(q, static_cast<Symbol>(n % k));
            n /= k;
        }
        return output[q];
    }

    int run_word(const DigitWord& w) const { return output[dfa.run(w.symbols)]; }

    std::vector<int> output_domain() const {
        std::vector<int> d = output;
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        return d;
    }

    // representation independence: outputs constant along zero transitions
    void check_valid() const {
        dfa.check_valid();
        if (dfa.alphabet.arity != 1) throw std::logic_error("Dfao: arity must be 1");
        if (output.size() != dfa.state_count) throw std::logic_error("Dfao: output size mismatch");
        for (State q = 0; q < dfa.state_count; ++q)
            if (output[dfa.next(q, TupleAlphabet::zero_symbol())] != output[q])
                throw std::logic_error("Dfao: output not stable under trailing zeros");
    }
};

// Saturated DFA accepting exactly the representations of {n : run(m,n) = d}.
inline Dfa output_language(const Dfao& m, int d) {
    bool in_domain = false;
    for (int v : m.output)
        if (v == d) in_domain = true;
    if (!in_domain) throw std::invalid_argument("output_language: value not in output alphabet");
    Dfa out = m.dfa;
    for (State q = 0; q < out.state_count; ++q) out.final_mask[q] = m.output[q] == d;
    // valid DFAOs have zero-stable outputs, so this language is saturated
    out.saturated = true;
    return out;
}

// Fewest-states DFAO computing the same function (Moore-style refinement
// seeded with the output partition).
inline Dfao minimize_dfao(const Dfao& m) {
    std::vector<int> domain = m.output_domain();
    std::vector<uint32_t> seed(m.dfa.state_count);
    for (State q = 0; q < m.dfa.state_count; ++q)
        seed[q] = static_cast<uint32_t>(
            std::lower_bound(domain.begin(), domain.end(), m.output[q]) - domain.begin());
    MinimizedDfa mm = minimize_mapped(m.dfa, seed);
    Dfao out;
    out.dfa = std::move(mm.dfa);
    out.dfa.saturated = false;
    out.output.assign(out.dfa.state_count, 0);
    for (State q = 0; q < m.dfa.state_count; ++q)
        if (mm.state_map[q] != ~State(0)) out.output[mm.state_map[q]] = m.output[q];
    return out;
}

// ---------------------------------------------------------------------------
// built-in sequences (all base 2)

// Thue-Morse: t(n) = parity of the number of 1 bits of n; outputs {0,1}.
inline Dfao thue_morse() {
    Dfao m;
    m.dfa = Dfa(TupleAlphabet(2, 1), 2);
    m.dfa.initial = 0;
    m.dfa.next(0, 0) = 0;
    m.dfa.next(0, 1) = 1;
    m.dfa.next(1, 0) = 1;
    m.dfa.next(1, 1) = 0;
    m.output = {0, 1};
    return m;
}

// Rudin-Shapiro: r(n) = (-1)^(number of 11 occurrences in the binary
// representation of n); the count is the same read from either end, so the
// LSD-first machine tracks (previous digit, parity). Outputs {+1,-1}.
inline Dfao rudin_shapiro() {
    Dfao m;
    m.dfa = Dfa(TupleAlphabet(2, 1), 4);
    m.dfa.initial = 0;
    // state = 2*parity + prev_digit
    for (State q = 0; q < 4; ++q) {
        uint32_t parity = q >> 1, prev = q & 1;
        m.dfa.next(q, 0) = static_cast<State>(parity << 1);
        uint32_t parity1 = prev == 1 ? parity ^ 1u : parity;
        m.dfa.next(q, 1) = static_cast<State>((parity1 << 1) | 1);
    }
    m.output = {+1, +1, -1, -1};
    return m;
}

// Paperfolding: append 00 to the LSD-first digits of n, write the result as
// 1^i 0 a w, output (-1)^a. The machine skips the low run of 1s, skips one 0,
// then latches the sign of the next digit; outputs of non-latched states are
// what reading the virtual 00 would produce.
inline Dfao paperfolding() {
    Dfao m;
    m.dfa = Dfa(TupleAlphabet(2, 1), 4);
    m.dfa.initial = 0;
    // 0 = in low 1-run, 1 = seen terminating 0, 2 = latched +1, 3 = latched -1
    m.dfa.next(0, 1) = 0;
    m.dfa.next(0, 0) = 1;
    m.dfa.next(1, 0) = 2;
    m.dfa.next(1, 1) = 3;
    m.dfa.next(2, 0) = 2;
    m.dfa.next(2, 1) = 2;
    m.dfa.next(3, 0) = 3;
    m.dfa.next(3, 1) = 3;
    m.output = {+1, +1, +1, -1};
    return m;
}

// ---------------------------------------------------------------------------
// text format: DFA lines plus one `output q v` line per state

inline void write_dfao(std::ostream& out, const Dfao& m) {
    write_automaton(out, m.dfa);
    for (State q = 0; q < m.dfa.state_count; ++q) out << "output " << q << ' ' << m.output[q] << "\n";
}

inline Dfao read_dfao(std::istream& in) {
    auto a = detail::read_automaton_text(in);
    if (a.initials.size() != 1) throw std::runtime_error("read_dfao: need exactly one initial state");
    Dfao m;
    m.dfa = Dfa(a.alphabet, a.state_count);
    m.dfa.initial = a.initials[0];
    for (State q : a.finals) m.dfa.final_mask[q] = 1;
    std::vector<char> defined(static_cast<size_t>(a.state_count) * a.alphabet.size(), 0);
    for (auto& t : a.transitions) {
        size_t slot = static_cast<size_t>(t.from) * a.alphabet.size() + t.symbol;
        if (defined[slot]) throw std::runtime_error("read_dfao: duplicate transition");
        defined[slot] = 1;
        m.dfa.next(t.from, t.symbol) = t.to;
    }
    for (char v : defined)
        if (!v) throw std::runtime_error("read_dfao: transition function not total");
    m.output.assign(a.state_count, 0);
    std::vector<char> have(a.state_count, 0);
    for (auto& [q, v] : a.outputs) {
        if (q >= a.state_count) throw std::runtime_error("read_dfao: output state out of range");
        m.output[q] = v;
        have[q] = 1;
    }
    for (char v : have)
        if (!v) throw std::runtime_error("read_dfao: missing output line");
    m.check_valid();
    return m;
}

} // namespace autoseq
