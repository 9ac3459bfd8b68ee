// parser.hpp -- concrete syntax for formulas.
//
//   formula     := implication
//   implication := disjunction ['=>' formula]          (right associative)
//   disjunction := conjunction ('|' conjunction)*
//   conjunction := negation ('&' negation)*
//   negation    := '~' negation | primary
//   primary     := '(' formula ')' | quantified | atom
//   quantified  := ('E'|'A') var (',' var)* ':' formula
//   atom        := operand cmp operand
//   operand     := NAME '[' term ']' | term
//   term        := addend (('+'|'-') addend)*
//   addend      := factor ('*' factor)*                (at most one variable)
//   factor      := NUMBER | NAME
//   cmp         := '=' | '!=' | '<' | '<=' | '>' | '>='
//
// 'E' and 'A' are reserved. Sequence operands only combine with '=' / '!='
// against another sequence operand or an integer constant (which may be
// negative). Constant multiplication is expanded to repeated addition.
// A quantifier's body extends as far to the right as possible.
#pragma once

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "autoseq/formula.hpp"

namespace autoseq {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

namespace detail {

struct FormulaParser {
    const std::string& text;
    size_t pos = 0;
    std::set<std::string> bound;

    explicit FormulaParser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& why) const { throw ParseError(why, pos); }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(const std::string& tok) {
        skip_ws();
        if (text.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }
    bool peek_char(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    std::optional<std::string> try_name() {
        skip_ws();
        size_t p = pos;
        if (p >= text.size()) return std::nullopt;
        if (!std::isalpha(static_cast<unsigned char>(text[p])) && text[p] != '_')
            return std::nullopt;
        size_t start = p;
        while (p < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[p])) || text[p] == '_'))
            ++p;
        pos = p;
        return text.substr(start, p - start);
    }

    std::optional<uint64_t> try_number() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            return std::nullopt;
        uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + static_cast<uint64_t>(text[pos++] - '0');
        return v;
    }

    // --- terms ------------------------------------------------------------

    struct Factor {
        std::optional<std::string> var;
        uint64_t constant = 1;
    };

    Factor parse_factor() {
        if (auto num = try_number()) return {std::nullopt, *num};
        if (auto name = try_name()) {
            if (*name == "E" || *name == "A") fail("'" + *name + "' is a reserved quantifier");
            return {*name, 1};
        }
        fail("expected a number or variable");
    }

    // one multiplicative group; constant * variable expands later
    std::pair<std::optional<std::string>, uint64_t> parse_addend() {
        Factor f = parse_factor();
        std::optional<std::string> var = f.var;
        uint64_t c = f.var ? 1 : f.constant;
        while (eat("*")) {
            Factor g = parse_factor();
            if (g.var) {
                if (var) fail("cannot multiply two variables");
                var = g.var;
            } else {
                c *= g.constant;
            }
        }
        return {var, c};
    }

    TermPtr parse_term() {
        TermPtr acc;
        bool subtract = false;
        while (true) {
            auto [var, c] = parse_addend();
            TermPtr piece;
            if (var) {
                if (c > 64) fail("constant coefficient too large");
                for (uint64_t i = 0; i < c; ++i)
                    piece = piece ? Term::add(piece, Term::var(*var)) : Term::var(*var);
                if (!piece) piece = Term::constant(0); // 0 * var
            } else {
                piece = Term::constant(c);
            }
            acc = !acc ? piece : subtract ? Term::sub(acc, piece) : Term::add(acc, piece);
            if (eat("+"))
                subtract = false;
            else if (peek_char('-')) {
                ++pos;
                subtract = true;
            } else
                break;
        }
        return acc;
    }

    // --- atoms ------------------------------------------------------------

    struct Operand {
        bool is_seq = false;
        std::string seq;
        TermPtr term; // index term for sequences, value term otherwise
    };

    Operand parse_operand() {
        skip_ws();
        size_t save = pos;
        if (auto name = try_name()) {
            if (*name == "E" || *name == "A") fail("'" + *name + "' is a reserved quantifier");
            if (peek_char('[')) {
                ++pos;
                TermPtr idx = parse_term();
                if (!eat("]")) fail("expected ']'");
                return {true, *name, idx};
            }
            pos = save; // plain variable: reparse as a term
        }
        return {false, "", parse_term()};
    }

    CmpOp parse_cmp() {
        if (eat("!=")) return CmpOp::Ne;
        if (eat("<=")) return CmpOp::Le;
        if (eat(">=")) return CmpOp::Ge;
        if (eat("=")) return CmpOp::Eq;
        if (eat("<")) return CmpOp::Lt;
        if (eat(">")) return CmpOp::Gt;
        fail("expected a comparison operator");
    }

    FormulaPtr parse_atom() {
        Operand lhs = parse_operand();
        size_t op_pos = pos;
        CmpOp op = parse_cmp();
        if (lhs.is_seq) {
            if (op != CmpOp::Eq && op != CmpOp::Ne) {
                pos = op_pos;
                fail("sequence values only compare with '=' or '!='");
            }
            bool eq = op == CmpOp::Eq;
            skip_ws();
            if (eat("-")) {
                auto num = try_number();
                if (!num) fail("expected a number after '-'");
                return Formula::seq_value(lhs.seq, lhs.term, eq, -static_cast<int>(*num));
            }
            size_t save = pos;
            if (auto name = try_name()) {
                if (*name == "E" || *name == "A") fail("'" + *name + "' is a reserved quantifier");
                if (peek_char('[')) {
                    ++pos;
                    TermPtr idx = parse_term();
                    if (!eat("]")) fail("expected ']'");
                    return Formula::seq_index_compare(lhs.seq, lhs.term, eq, *name, idx);
                }
                pos = save;
                fail("sequence values compare with sequence values or integer constants");
            }
            auto num = try_number();
            if (!num) fail("expected a sequence operand or integer constant");
            return Formula::seq_value(lhs.seq, lhs.term, eq, static_cast<int>(*num));
        }
        Operand rhs = parse_operand();
        if (rhs.is_seq) {
            pos = op_pos;
            fail("sequence operand on the right requires one on the left");
        }
        return Formula::compare(lhs.term, op, rhs.term);
    }

    // --- formulas ---------------------------------------------------------

    FormulaPtr parse_quantified(bool existential) {
        std::vector<std::string> vars;
        while (true) {
            auto name = try_name();
            if (!name) fail("expected a variable after quantifier");
            if (*name == "E" || *name == "A") fail("'" + *name + "' is a reserved quantifier");
            if (bound.count(*name)) fail("variable '" + *name + "' bound twice on one path");
            bound.insert(*name);
            vars.push_back(*name);
            if (eat(",")) continue;
            break;
        }
        if (!eat(":")) fail("expected ':' after quantified variables");
        FormulaPtr body = parse_formula();
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
            body = existential ? Formula::exists(*it, body) : Formula::forall(*it, body);
            bound.erase(*it);
        }
        return body;
    }

    FormulaPtr parse_primary() {
        if (peek_char('(')) {
            ++pos;
            FormulaPtr f = parse_formula();
            if (!eat(")")) fail("expected ')'");
            return f;
        }
        skip_ws();
        size_t save = pos;
        if (auto name = try_name()) {
            if ((*name == "E" || *name == "A")) return parse_quantified(*name == "E");
            pos = save;
        }
        return parse_atom();
    }

    FormulaPtr parse_negation() {
        if (eat("~")) return Formula::lnot(parse_negation());
        return parse_primary();
    }

    FormulaPtr parse_conjunction() {
        FormulaPtr f = parse_negation();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '&') {
                ++pos;
                f = Formula::land(f, parse_negation());
            } else
                break;
        }
        return f;
    }

    FormulaPtr parse_disjunction() {
        FormulaPtr f = parse_conjunction();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '|') {
                ++pos;
                f = Formula::lor(f, parse_conjunction());
            } else
                break;
        }
        return f;
    }

    FormulaPtr parse_formula() {
        FormulaPtr f = parse_disjunction();
        if (eat("=>")) f = Formula::implies(f, parse_formula());
        return f;
    }
};

} // namespace detail

// Parse a formula. When `allowed_free` is given, any free variable outside
// it is an error (pass an empty set to demand a sentence).
inline FormulaPtr parse_formula(const std::string& text,
                                std::optional<std::set<std::string>> allowed_free = std::nullopt) {
    detail::FormulaParser p(text);
    FormulaPtr f = p.parse_formula();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    check_no_shadowing(f);
    if (allowed_free) {
        for (const auto& v : free_vars(f))
            if (!allowed_free->count(v))
                throw ParseError("unbound variable '" + v + "'", text.size());
    }
    return f;
}

} // namespace autoseq
