// io.hpp -- line-oriented text format and DOT export for automata.
//
// Layout:
//   base 2 arity 1 states 7
//   initial 0            (or: initials 0 2 5)
//   finals 1 3
//   saturated 1          (optional, DFA/NFA)
//   0 [0] 1              (one transition per line: q [d1,...,dr] q')
//   ...
//   output 0 1           (DFAO only, one line per state)
#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoseq/dfa.hpp"
#include "autoseq/nfa.hpp"
#include "autoseq/ops.hpp"

namespace autoseq {

namespace detail {

struct AutomatonText {
    TupleAlphabet alphabet;
    uint32_t state_count = 0;
    std::vector<State> initials;
    std::vector<State> finals;
    bool saturated = false;
    struct Tr {
        State from;
        Symbol symbol;
        State to;
    };
    std::vector<Tr> transitions;
    std::vector<std::pair<State, int>> outputs;
};

inline AutomatonText read_automaton_text(std::istream& in) {
    AutomatonText a;
    std::string line;
    size_t lineno = 0;
    bool header_seen = false;
    auto fail = [&](const std::string& why) {
        throw std::runtime_error("automaton text, line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok == "base") {
            std::string karity, kstates;
            uint32_t base, arity, states;
            if (!(ls >> base >> karity >> arity >> kstates >> states) || karity != "arity" ||
                kstates != "states")
                fail("malformed header");
            a.alphabet = TupleAlphabet(base, arity);
            a.state_count = states;
            header_seen = true;
        } else if (tok == "initial" || tok == "initials") {
            State q;
            while (ls >> q) a.initials.push_back(q);
        } else if (tok == "finals") {
            State q;
            while (ls >> q) a.finals.push_back(q);
        } else if (tok == "saturated") {
            int v = 0;
            ls >> v;
            a.saturated = v != 0;
        } else if (tok == "output") {
            State q;
            int v;
            if (!(ls >> q >> v)) fail("malformed output line");
            a.outputs.emplace_back(q, v);
        } else {
            if (!header_seen) fail("transition before header");
            State from = static_cast<State>(std::stoul(tok));
            std::string sym;
            State to;
            if (!(ls >> sym >> to)) fail("malformed transition");
            DigitWord w = parse_digit_word(sym, a.alphabet);
            if (w.size() != 1) fail("transition symbol must be a single tuple");
            a.transitions.push_back({from, w.symbols[0], to});
        }
    }
    if (!header_seen) throw std::runtime_error("automaton text: missing header");
    for (State q : a.initials)
        if (q >= a.state_count) throw std::runtime_error("automaton text: initial out of range");
    for (State q : a.finals)
        if (q >= a.state_count) throw std::runtime_error("automaton text: final out of range");
    for (auto& t : a.transitions)
        if (t.from >= a.state_count || t.to >= a.state_count)
            throw std::runtime_error("automaton text: transition state out of range");
    return a;
}

} // namespace detail

inline void write_automaton(std::ostream& out, const Dfa& d) {
    out << "base " << d.alphabet.base << " arity " << d.alphabet.arity << " states "
        << d.state_count << "\n";
    out << "initial " << d.initial << "\n";
    out << "finals";
    for (State q = 0; q < d.state_count; ++q)
        if (d.is_final(q)) out << ' ' << q;
    out << "\n";
    out << "saturated " << (d.saturated ? 1 : 0) << "\n";
    for (State q = 0; q < d.state_count; ++q)
        for (Symbol s = 0; s < d.sigma(); ++s)
            out << q << ' ' << d.alphabet.symbol_text(s) << ' ' << d.next(q, s) << "\n";
}

inline void write_automaton(std::ostream& out, const Nfa& n) {
    out << "base " << n.alphabet.base << " arity " << n.alphabet.arity << " states "
        << n.state_count << "\n";
    out << "initials";
    for (State q : n.initials) out << ' ' << q;
    out << "\n";
    out << "finals";
    for (State q = 0; q < n.state_count; ++q)
        if (n.is_final(q)) out << ' ' << q;
    out << "\n";
    for (State q = 0; q < n.state_count; ++q)
        for (const Nfa::Edge& e : n.edges[q])
            out << q << ' ' << n.alphabet.symbol_text(e.symbol) << ' ' << e.to << "\n";
}

inline Dfa read_dfa(std::istream& in) {
    auto a = detail::read_automaton_text(in);
    if (a.initials.size() != 1) throw std::runtime_error("read_dfa: need exactly one initial state");
    Dfa d(a.alphabet, a.state_count);
    d.initial = a.initials[0];
    d.saturated = a.saturated;
    for (State q : a.finals) d.final_mask[q] = 1;
    std::vector<char> defined(static_cast<size_t>(a.state_count) * a.alphabet.size(), 0);
    for (auto& t : a.transitions) {
        size_t slot = static_cast<size_t>(t.from) * a.alphabet.size() + t.symbol;
        if (defined[slot]) throw std::runtime_error("read_dfa: duplicate transition");
        defined[slot] = 1;
        d.next(t.from, t.symbol) = t.to;
    }
    for (char v : defined)
        if (!v) throw std::runtime_error("read_dfa: transition function not total");
    if (d.saturated && !saturation_consistent(d))
        throw std::runtime_error(
            "read_dfa: file claims saturation but acceptance depends on trailing zeros");
    return d;
}

inline Nfa read_nfa(std::istream& in) {
    auto a = detail::read_automaton_text(in);
    Nfa n(a.alphabet, a.state_count);
    n.initials = a.initials;
    for (State q : a.finals) n.final_mask[q] = 1;
    for (auto& t : a.transitions) n.add_edge(t.from, t.symbol, t.to);
    n.normalize();
    return n;
}

inline void write_dot(std::ostream& out, const Dfa& d, const std::string& name = "automaton",
                      const std::vector<int>* outputs = nullptr) {
    out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
    out << "  start [shape=point];\n  start -> q" << d.initial << ";\n";
    for (State q = 0; q < d.state_count; ++q) {
        out << "  q" << q << " [label=\"" << q;
        if (outputs) out << "/" << (*outputs)[q];
        out << "\"";
        if (d.is_final(q)) out << ", shape=doublecircle";
        out << "];\n";
    }
    // merge parallel edges into one label
    for (State q = 0; q < d.state_count; ++q) {
        std::unordered_map<State, std::string> labels;
        for (Symbol s = 0; s < d.sigma(); ++s) {
            std::string& l = labels[d.next(q, s)];
            if (!l.empty()) l += ' ';
            l += d.alphabet.symbol_text(s);
        }
        for (State t = 0; t < d.state_count; ++t) {
            auto it = labels.find(t);
            if (it != labels.end())
                out << "  q" << q << " -> q" << t << " [label=\"" << it->second << "\"];\n";
        }
    }
    out << "}\n";
}

} // namespace autoseq
