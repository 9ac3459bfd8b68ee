// regex.hpp -- a small regular-expression compiler over digit alphabets,
// used to state reference languages (digit strings written MSD-first) and
// test automata against them. Supports literals 0-9, grouping, alternation
// '|', and the postfix operators * + ?.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoseq/nfa.hpp"

namespace autoseq {

namespace detail {

// Thompson construction over an epsilon-NFA, eliminated before returning.
struct RegexBuilder {
    uint32_t base;
    std::vector<std::vector<std::pair<int, State>>> edges; // symbol or -1 for epsilon
    std::vector<char> final_mask;

    explicit RegexBuilder(uint32_t k) : base(k) {}

    State fresh() {
        edges.emplace_back();
        final_mask.push_back(0);
        return static_cast<State>(edges.size() - 1);
    }
    void link(State a, int sym, State b) { edges[a].emplace_back(sym, b); }

    struct Frag {
        State start, accept;
    };

    const std::string* text = nullptr;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("regex: " + why + " at offset " + std::to_string(pos));
    }
    bool at_end() const { return pos >= text->size(); }
    char peek() const { return (*text)[pos]; }

    Frag parse_alt() {
        Frag f = parse_cat();
        while (!at_end() && peek() == '|') {
            ++pos;
            Frag g = parse_cat();
            State s = fresh(), a = fresh();
            link(s, -1, f.start);
            link(s, -1, g.start);
            link(f.accept, -1, a);
            link(g.accept, -1, a);
            f = {s, a};
        }
        return f;
    }

    Frag parse_cat() {
        Frag f = parse_rep();
        while (!at_end() && peek() != '|' && peek() != ')') {
            Frag g = parse_rep();
            link(f.accept, -1, g.start);
            f = {f.start, g.accept};
        }
        return f;
    }

    Frag parse_rep() {
        Frag f = parse_atom();
        while (!at_end() && (peek() == '*' || peek() == '+' || peek() == '?')) {
            char op = peek();
            ++pos;
            State s = fresh(), a = fresh();
            link(s, -1, f.start);
            if (op != '+') link(s, -1, a);
            link(f.accept, -1, a);
            if (op != '?') link(f.accept, -1, f.start);
            f = {s, a};
        }
        return f;
    }

    Frag parse_atom() {
        if (at_end()) fail("unexpected end");
        char c = peek();
        if (c == '(') {
            ++pos;
            Frag f = parse_alt();
            if (at_end() || peek() != ')') fail("missing ')'");
            ++pos;
            return f;
        }
        if (c >= '0' && c <= '9') {
            uint32_t d = static_cast<uint32_t>(c - '0');
            if (d >= base) fail("digit out of base range");
            ++pos;
            State s = fresh(), a = fresh();
            link(s, static_cast<int>(d), a);
            return {s, a};
        }
        fail("unexpected character");
    }
};

} // namespace detail

inline Nfa regex_to_nfa(const std::string& pattern, uint32_t base) {
    detail::RegexBuilder b(base);
    b.text = &pattern;
    auto frag = b.parse_alt();
    if (!b.at_end()) b.fail("trailing input");
    b.final_mask[frag.accept] = 1;

    const uint32_t n = static_cast<uint32_t>(b.edges.size());

    // epsilon closures
    std::vector<std::vector<State>> eclose(n);
    for (State q = 0; q < n; ++q) {
        std::vector<char> seen(n, 0);
        std::vector<State> stack{q};
        seen[q] = 1;
        while (!stack.empty()) {
            State p = stack.back();
            stack.pop_back();
            eclose[q].push_back(p);
            for (auto& [sym, to] : b.edges[p])
                if (sym < 0 && !seen[to]) {
                    seen[to] = 1;
                    stack.push_back(to);
                }
        }
    }

    Nfa out(TupleAlphabet(base, 1), n);
    out.initials = {frag.start};
    for (State q = 0; q < n; ++q) {
        for (State p : eclose[q]) {
            if (b.final_mask[p]) out.final_mask[q] = 1;
            for (auto& [sym, to] : b.edges[p])
                if (sym >= 0) out.add_edge(q, static_cast<Symbol>(sym), to);
        }
    }
    out.normalize();
    return out;
}

} // namespace autoseq
