// formula.hpp -- abstract syntax for first-order predicates over naturals
// with addition, comparisons, and indexing into registered sequences.
#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

#include "autoseq/relations.hpp"

namespace autoseq {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind { Var, Const, Add, Sub };
    Kind kind;
    std::string name;  // Var
    uint64_t value = 0; // Const
    TermPtr lhs, rhs;  // Add / Sub

    static TermPtr var(std::string n) {
        auto t = std::make_shared<Term>();
        t->kind = Kind::Var;
        t->name = std::move(n);
        return t;
    }
    static TermPtr constant(uint64_t v) {
        auto t = std::make_shared<Term>();
        t->kind = Kind::Const;
        t->value = v;
        return t;
    }
    static TermPtr add(TermPtr a, TermPtr b) {
        auto t = std::make_shared<Term>();
        t->kind = Kind::Add;
        t->lhs = std::move(a);
        t->rhs = std::move(b);
        return t;
    }
    static TermPtr sub(TermPtr a, TermPtr b) {
        auto t = std::make_shared<Term>();
        t->kind = Kind::Sub;
        t->lhs = std::move(a);
        t->rhs = std::move(b);
        return t;
    }
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind {
        True,
        False,
        Compare,         // t1 op t2
        SeqValue,        // seq1[t1] = value  (or != when !eq)
        SeqIndexCompare, // seq1[t1] = seq2[t2]  (or != when !eq)
        Not,
        And,
        Or,
        Implies,
        Exists,
        Forall,
    };
    Kind kind;
    TermPtr t1, t2;
    CmpOp op = CmpOp::Eq;
    std::string seq1, seq2;
    bool eq = true;
    int value = 0;
    FormulaPtr a, b;
    std::string var;

    static FormulaPtr make(Kind k) {
        auto f = std::make_shared<Formula>();
        f->kind = k;
        return f;
    }
    static FormulaPtr truth(bool v) { return make(v ? Kind::True : Kind::False); }
    static FormulaPtr compare(TermPtr l, CmpOp op, TermPtr r) {
        auto f = make(Kind::Compare);
        auto* m = const_cast<Formula*>(f.get());
        m->t1 = std::move(l);
        m->op = op;
        m->t2 = std::move(r);
        return f;
    }
    static FormulaPtr seq_value(std::string seq, TermPtr idx, bool eq, int value) {
        auto f = make(Kind::SeqValue);
        auto* m = const_cast<Formula*>(f.get());
        m->seq1 = std::move(seq);
        m->t1 = std::move(idx);
        m->eq = eq;
        m->value = value;
        return f;
    }
    static FormulaPtr seq_index_compare(std::string s1, TermPtr i1, bool eq, std::string s2,
                                        TermPtr i2) {
        auto f = make(Kind::SeqIndexCompare);
        auto* m = const_cast<Formula*>(f.get());
        m->seq1 = std::move(s1);
        m->t1 = std::move(i1);
        m->eq = eq;
        m->seq2 = std::move(s2);
        m->t2 = std::move(i2);
        return f;
    }
    static FormulaPtr lnot(FormulaPtr x) {
        auto f = make(Kind::Not);
        const_cast<Formula*>(f.get())->a = std::move(x);
        return f;
    }
    static FormulaPtr binary(Kind k, FormulaPtr x, FormulaPtr y) {
        auto f = make(k);
        auto* m = const_cast<Formula*>(f.get());
        m->a = std::move(x);
        m->b = std::move(y);
        return f;
    }
    static FormulaPtr land(FormulaPtr x, FormulaPtr y) { return binary(Kind::And, x, y); }
    static FormulaPtr lor(FormulaPtr x, FormulaPtr y) { return binary(Kind::Or, x, y); }
    static FormulaPtr implies(FormulaPtr x, FormulaPtr y) { return binary(Kind::Implies, x, y); }
    static FormulaPtr quantifier(Kind k, std::string var, FormulaPtr body) {
        auto f = make(k);
        auto* m = const_cast<Formula*>(f.get());
        m->var = std::move(var);
        m->a = std::move(body);
        return f;
    }
    static FormulaPtr exists(std::string var, FormulaPtr body) {
        return quantifier(Kind::Exists, std::move(var), std::move(body));
    }
    static FormulaPtr forall(std::string var, FormulaPtr body) {
        return quantifier(Kind::Forall, std::move(var), std::move(body));
    }
};

namespace detail {
inline void term_vars(const TermPtr& t, std::set<std::string>& out) {
    if (!t) return;
    if (t->kind == Term::Kind::Var) out.insert(t->name);
    term_vars(t->lhs, out);
    term_vars(t->rhs, out);
}
inline void collect_free(const FormulaPtr& f, std::set<std::string> bound,
                         std::set<std::string>& out) {
    if (!f) return;
    std::set<std::string> tv;
    term_vars(f->t1, tv);
    term_vars(f->t2, tv);
    for (const auto& v : tv)
        if (!bound.count(v)) out.insert(v);
    if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall) {
        bound.insert(f->var);
        collect_free(f->a, bound, out);
        return;
    }
    collect_free(f->a, bound, out);
    collect_free(f->b, bound, out);
}
inline void check_no_shadowing(const FormulaPtr& f, std::set<std::string> bound) {
    if (!f) return;
    if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall) {
        if (bound.count(f->var))
            throw std::invalid_argument("variable '" + f->var + "' bound twice on one path");
        bound.insert(f->var);
        check_no_shadowing(f->a, bound);
        return;
    }
    check_no_shadowing(f->a, bound);
    check_no_shadowing(f->b, bound);
}
} // namespace detail

inline std::set<std::string> free_vars(const FormulaPtr& f) {
    std::set<std::string> out;
    detail::collect_free(f, {}, out);
    return out;
}

inline void check_no_shadowing(const FormulaPtr& f) { detail::check_no_shadowing(f, {}); }

} // namespace autoseq
