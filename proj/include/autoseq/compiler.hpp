// compiler.hpp -- compiles first-order formulas to saturated minimized DFAs
// over their free variables.
//
// Atoms come from the relation automata and the sequence output languages;
// conjunction and disjunction align tracks (cylindrify) and take products;
// negation is complementation of a saturated machine; an existential
// quantifier projects its track, saturates, determinizes and minimizes.
// Universal quantifiers are rewritten through negation. Every intermediate
// is minimized, and tracks always carry the formula's variables in
// lexicographic name order.
//
// Comparisons are first normalized to an addition-only form: both sides
// become sums of variables and constants, with subtraction moved across the
// relation and constant multiples expanded. Fresh bound variables (named
// "$0", "$1", ... so they cannot collide with surface syntax) carry shared
// subterms, exactly in the style of rewriting x[j+i] != x[n+j-l+i] into
// "exists u, v: u = j+i and v+l = n+j+i and x[u] != x[v]". A sequence atom
// whose index can take no natural value (after moving subtraction) is false,
// for '=' and '!=' alike.
#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoseq/dfao.hpp"
#include "autoseq/formula.hpp"
#include "autoseq/ops.hpp"
#include "autoseq/relations.hpp"

namespace autoseq {

struct StageReport {
    std::string label;
    uint64_t raw_states = 0; // before minimization (determinization / product size)
    uint64_t min_states = 0;
    double millis = 0;
    bool via_reversal = false;
};

struct CompilationTrace {
    std::vector<StageReport> stages;
    double total_millis = 0;
};

struct SequenceEnv {
    std::map<std::string, Dfao> sequences;

    const Dfao& lookup(const std::string& name) const {
        auto it = sequences.find(name);
        if (it == sequences.end())
            throw std::invalid_argument("unknown sequence '" + name + "'");
        return it->second;
    }
    uint32_t base_or(uint32_t fallback) const {
        uint32_t k = fallback;
        bool first = true;
        for (const auto& [name, m] : sequences) {
            if (first) {
                k = m.dfa.alphabet.base;
                first = false;
            } else if (m.dfa.alphabet.base != k) {
                throw std::invalid_argument("sequences use mixed bases");
            }
        }
        return k;
    }
};

struct CompileOptions {
    uint32_t base = 2; // used when the environment has no sequences
    DeterminizeLimits limits{};
};

// Product of two sequence automata comparing their outputs: accepts (u, v)
// iff seq1[u] = seq2[v] (or != when equal is false). Saturated since valid
// DFAO outputs are stable under trailing zeros.
inline Dfa output_compare(const Dfao& s1, const Dfao& s2, bool equal) {
    TupleAlphabet a(s1.dfa.alphabet.base, 2);
    if (s2.dfa.alphabet.base != a.base)
        throw std::invalid_argument("output_compare: base mismatch");
    std::unordered_map<uint64_t, State> ids;
    std::vector<uint64_t> pairs;
    std::vector<State> rows;
    std::vector<char> finals;
    auto intern = [&](State q1, State q2) -> State {
        uint64_t key = static_cast<uint64_t>(q1) * s2.dfa.state_count + q2;
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        State id = static_cast<State>(pairs.size());
        ids.emplace(key, id);
        pairs.push_back(key);
        finals.push_back((s1.output[q1] == s2.output[q2]) == equal);
        return id;
    };
    intern(s1.dfa.initial, s2.dfa.initial);
    std::vector<uint32_t> dig(2);
    for (size_t cur = 0; cur < pairs.size(); ++cur) {
        State q1 = static_cast<State>(pairs[cur] / s2.dfa.state_count);
        State q2 = static_cast<State>(pairs[cur] % s2.dfa.state_count);
        for (Symbol s = 0; s < a.size(); ++s) {
            a.unpack(s, dig);
            rows.push_back(intern(s1.dfa.next(q1, dig[0]), s2.dfa.next(q2, dig[1])));
        }
    }
    Dfa out(a, static_cast<uint32_t>(pairs.size()));
    out.initial = 0;
    out.final_mask = std::move(finals);
    out.transitions = std::move(rows);
    out.saturated = true;
    return out;
}

// A compiled (sub)formula: either a known constant, or a saturated minimized
// DFA whose tracks are `vars` in sorted order.
struct Compiled {
    std::optional<bool> constant;
    Dfa dfa;
    std::vector<std::string> vars;

    static Compiled truth(bool v) {
        Compiled c;
        c.constant = v;
        return c;
    }
};

class FormulaCompiler {
public:
    FormulaCompiler(const SequenceEnv& env, CompileOptions opts = {})
        : env_(env), opts_(opts), base_(env.base_or(opts.base)) {}

    uint32_t base() const { return base_; }
    CompilationTrace& trace() { return trace_; }

    // ------------------------------------------------------------------
    // full recursive compilation

    Compiled compile(const FormulaPtr& f) {
        switch (f->kind) {
            case Formula::Kind::True: return Compiled::truth(true);
            case Formula::Kind::False: return Compiled::truth(false);
            case Formula::Kind::Compare: return atom_compare(f->t1, f->op, f->t2);
            case Formula::Kind::SeqValue:
                return atom_seq_value(f->seq1, f->t1, f->eq, f->value);
            case Formula::Kind::SeqIndexCompare:
                return atom_seq_index_compare(f->seq1, f->t1, f->eq, f->seq2, f->t2);
            case Formula::Kind::Not: return negate(compile(f->a));
            case Formula::Kind::And: return conjoin(compile(f->a), compile(f->b));
            case Formula::Kind::Or: return disjoin(compile(f->a), compile(f->b));
            case Formula::Kind::Implies:
                return disjoin(negate(compile(f->a)), compile(f->b));
            case Formula::Kind::Exists: return exists(compile(f->a), f->var);
            case Formula::Kind::Forall: return forall(compile(f->a), f->var);
        }
        throw std::logic_error("compile: unhandled formula kind");
    }

    // ------------------------------------------------------------------
    // connectives

    Compiled conjoin(Compiled a, Compiled b) {
        if (a.constant) return *a.constant ? std::move(b) : std::move(a);
        if (b.constant) return *b.constant ? std::move(a) : std::move(b);
        return combine(std::move(a), std::move(b), BoolOp::And, "&");
    }

    Compiled disjoin(Compiled a, Compiled b) {
        if (a.constant) return *a.constant ? std::move(a) : std::move(b);
        if (b.constant) return *b.constant ? std::move(b) : std::move(a);
        return combine(std::move(a), std::move(b), BoolOp::Or, "|");
    }

    Compiled negate(Compiled a) {
        if (a.constant) return Compiled::truth(!*a.constant);
        auto t0 = now();
        a.dfa = complement(a.dfa);
        record("~", a.dfa.state_count, a.dfa.state_count, t0, false);
        return a;
    }

    Compiled exists(Compiled a, const std::string& var) {
        if (a.constant) return a;
        auto track = var_track(a.vars, var);
        if (!track) return a; // var unconstrained: exists over nonempty domain
        auto t0 = now();
        if (a.vars.size() == 1) {
            bool nonempty = !is_empty(a.dfa);
            record("E " + var, 1, 1, t0, false);
            return Compiled::truth(nonempty);
        }
        Nfa projected = saturate(project(a.dfa, *track));
        Dfa det;
        bool via_reversal = false;
        try {
            det = determinize(projected, opts_.limits);
        } catch (const StateBudgetExceeded&) {
            det = brzozowski_minimize(projected, opts_.limits);
            via_reversal = true;
        }
        uint64_t raw = det.state_count;
        Compiled out;
        out.dfa = minimize(det);
        out.dfa.saturated = true;
        out.vars = a.vars;
        out.vars.erase(out.vars.begin() + static_cast<ptrdiff_t>(*track));
        record("E " + var, raw, out.dfa.state_count, t0, via_reversal);
        return out;
    }

    Compiled forall(Compiled a, const std::string& var) {
        return negate(exists(negate(std::move(a)), var));
    }

    // ------------------------------------------------------------------
    // atoms

    Compiled atom_compare(const TermPtr& lhs, CmpOp op, const TermPtr& rhs) {
        AtomScope scope(this);
        LinearForm lf = linearize(lhs);
        subtract_into(lf, linearize(rhs));
        return linear_atom(lf, op);
    }

    Compiled atom_seq_value(const std::string& seq, const TermPtr& idx, bool eq, int value) {
        AtomScope scope(this);
        const Dfao& m = env_.lookup(seq);
        bool in_domain = false;
        for (int v : m.output)
            if (v == value) in_domain = true;
        Dfa value_lang;
        if (in_domain) {
            value_lang = output_language(m, value);
            if (!eq) value_lang = complement(value_lang);
        } else {
            if (eq) return Compiled::truth(false);
            value_lang = universal_dfa(TupleAlphabet(base_, 1)); // output always != value
        }
        auto [index_var, constraint, is_temp] = bind_index(idx);
        Compiled atom = lift_relation(value_lang, {index_var});
        Compiled joined = conjoin(std::move(constraint), std::move(atom));
        return is_temp ? exists(std::move(joined), index_var) : joined;
    }

    Compiled atom_seq_index_compare(const std::string& s1, const TermPtr& t1, bool eq,
                                    const std::string& s2, const TermPtr& t2) {
        AtomScope scope(this);
        Dfa cmp = output_compare(env_.lookup(s1), env_.lookup(s2), eq);
        auto [u, cu, tu] = bind_index(t1);
        auto [v, cv, tv] = bind_index(t2);
        if (u == v) {
            // same index on both sides: compare outputs at one position
            Compiled atom = lift_relation(cmp, {u, u});
            Compiled joined = conjoin(std::move(cu), std::move(atom));
            return tu ? exists(std::move(joined), u) : joined;
        }
        Compiled atom = lift_relation(cmp, {u, v});
        Compiled joined = conjoin(conjoin(std::move(cu), std::move(cv)), std::move(atom));
        if (tv) joined = exists(std::move(joined), v);
        if (tu) joined = exists(std::move(joined), u);
        return joined;
    }

    // Lift a relation automaton onto named variables (repeats allowed: the
    // same variable may feed several relation tracks).
    Compiled lift_relation(const Dfa& rel, const std::vector<std::string>& role_vars) {
        if (role_vars.size() != rel.alphabet.arity)
            throw std::logic_error("lift_relation: role count mismatch");
        std::vector<std::string> vars = role_vars;
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        std::vector<uint32_t> map(role_vars.size());
        for (size_t i = 0; i < role_vars.size(); ++i)
            map[i] = static_cast<uint32_t>(
                std::lower_bound(vars.begin(), vars.end(), role_vars[i]) - vars.begin());
        Compiled out;
        out.dfa = lift_tracks(rel, TupleAlphabet(base_, static_cast<uint32_t>(vars.size())), map);
        out.vars = std::move(vars);
        return out;
    }

    // Materialize onto a declared track order (a permutation or superset of
    // the compiled variables). Constants become universal/empty machines.
    Dfa materialize(const Compiled& c, const std::vector<std::string>& order) {
        if (order.empty()) throw std::invalid_argument("materialize: empty variable order");
        TupleAlphabet target(base_, static_cast<uint32_t>(order.size()));
        if (c.constant) return *c.constant ? universal_dfa(target) : empty_dfa(target);
        std::vector<uint32_t> map(c.vars.size());
        for (size_t i = 0; i < c.vars.size(); ++i) {
            auto it = std::find(order.begin(), order.end(), c.vars[i]);
            if (it == order.end())
                throw std::invalid_argument("materialize: variable '" + c.vars[i] +
                                            "' missing from declared order");
            map[i] = static_cast<uint32_t>(it - order.begin());
        }
        Dfa lifted = lift_tracks(c.dfa, target, map);
        Dfa out = minimize(lifted);
        out.saturated = lifted.saturated;
        return out;
    }

    std::string fresh_var() { return "$" + std::to_string(fresh_counter_++); }

private:
    using Clock = std::chrono::steady_clock;
    static Clock::time_point now() { return Clock::now(); }

    // the trace carries one entry per quantifier/connective; operations
    // inside atom construction (adder chains, index binding) are not staged
    struct AtomScope {
        FormulaCompiler* fc;
        explicit AtomScope(FormulaCompiler* f) : fc(f) { ++fc->atom_depth_; }
        ~AtomScope() { --fc->atom_depth_; }
    };

    void record(std::string label, uint64_t raw, uint64_t min, Clock::time_point t0,
                bool via_reversal) {
        if (atom_depth_ > 0) return;
        double ms = std::chrono::duration<double, std::milli>(now() - t0).count();
        trace_.stages.push_back({std::move(label), raw, min, ms, via_reversal});
        trace_.total_millis += ms;
    }

    static std::optional<uint32_t> var_track(const std::vector<std::string>& vars,
                                             const std::string& var) {
        auto it = std::lower_bound(vars.begin(), vars.end(), var);
        if (it == vars.end() || *it != var) return std::nullopt;
        return static_cast<uint32_t>(it - vars.begin());
    }

    Compiled combine(Compiled a, Compiled b, BoolOp op, const char* label) {
        auto t0 = now();
        std::vector<std::string> vars;
        std::merge(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                   std::back_inserter(vars));
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        Dfa da = lift_to(a.dfa, a.vars, vars);
        Dfa db = lift_to(b.dfa, b.vars, vars);
        Dfa prod = product(da, db, op);
        uint64_t raw = prod.state_count;
        Compiled out;
        out.dfa = minimize(prod);
        out.vars = std::move(vars);
        record(label, raw, out.dfa.state_count, t0, false);
        return out;
    }

    Dfa lift_to(const Dfa& d, const std::vector<std::string>& from,
                const std::vector<std::string>& to) {
        if (from == to) return d;
        std::vector<uint32_t> map(from.size());
        for (size_t i = 0; i < from.size(); ++i)
            map[i] = static_cast<uint32_t>(
                std::lower_bound(to.begin(), to.end(), from[i]) - to.begin());
        return lift_tracks(d, TupleAlphabet(base_, static_cast<uint32_t>(to.size())), map);
    }

    // ------------------------------------------------------------------
    // linear normalization

    struct LinearForm {
        std::map<std::string, int64_t> coeff;
        int64_t constant = 0;
    };

    static LinearForm linearize(const TermPtr& t, int64_t sign = 1) {
        LinearForm lf;
        add_term(lf, t, sign);
        return lf;
    }
    static void add_term(LinearForm& lf, const TermPtr& t, int64_t sign) {
        switch (t->kind) {
            case Term::Kind::Var: lf.coeff[t->name] += sign; break;
            case Term::Kind::Const: lf.constant += sign * static_cast<int64_t>(t->value); break;
            case Term::Kind::Add:
                add_term(lf, t->lhs, sign);
                add_term(lf, t->rhs, sign);
                break;
            case Term::Kind::Sub:
                add_term(lf, t->lhs, sign);
                add_term(lf, t->rhs, -sign);
                break;
        }
    }
    static void subtract_into(LinearForm& lf, const LinearForm& other) {
        for (const auto& [v, c] : other.coeff) lf.coeff[v] -= c;
        lf.constant -= other.constant;
    }

    // sides of a normalized relation: variable occurrence lists plus constants
    struct Sides {
        std::vector<std::string> lhs, rhs; // with multiplicity
        uint64_t lhs_const = 0, rhs_const = 0;
    };

    static Sides split_sides(const LinearForm& lf) {
        Sides s;
        for (const auto& [v, c] : lf.coeff) {
            for (int64_t i = 0; i < c; ++i) s.lhs.push_back(v);
            for (int64_t i = 0; i < -c; ++i) s.rhs.push_back(v);
        }
        if (lf.constant > 0)
            s.lhs_const = static_cast<uint64_t>(lf.constant);
        else
            s.rhs_const = static_cast<uint64_t>(-lf.constant);
        return s;
    }

    // atom: lf (op) 0 after normalization
    Compiled linear_atom(const LinearForm& lf, CmpOp op) {
        Sides s = split_sides(lf);
        if (s.lhs.empty() && s.rhs.empty())
            return Compiled::truth(apply_cmp(op, static_cast<int64_t>(s.lhs_const),
                                             static_cast<int64_t>(s.rhs_const)));
        // single variable against a constant: use const_relation directly
        if (s.rhs.empty() && s.lhs.size() == 1 && s.lhs_const <= s.rhs_const)
            return lift_relation(const_relation(base_, op, s.rhs_const - s.lhs_const).dfa,
                                 {s.lhs[0]});
        if (s.lhs.empty() && s.rhs.size() == 1 && s.rhs_const <= s.lhs_const)
            return lift_relation(const_relation(base_, flip(op), s.lhs_const - s.rhs_const).dfa,
                                 {s.rhs[0]});

        auto [lv, lc] = build_sum(s.lhs, s.lhs_const);
        auto [rv, rc] = build_sum(s.rhs, s.rhs_const);
        Compiled cmp = lift_relation(compare(base_, op).dfa, {lv.name, rv.name});
        Compiled out = conjoin(conjoin(std::move(lc), std::move(rc)), std::move(cmp));
        if (rv.is_temp) out = exists(std::move(out), rv.name);
        if (lv.is_temp) out = exists(std::move(out), lv.name);
        return out;
    }

    static CmpOp flip(CmpOp op) {
        switch (op) {
            case CmpOp::Lt: return CmpOp::Gt;
            case CmpOp::Le: return CmpOp::Ge;
            case CmpOp::Gt: return CmpOp::Lt;
            case CmpOp::Ge: return CmpOp::Le;
            default: return op;
        }
    }

    struct SumVar {
        std::string name;
        bool is_temp;
    };

    // Constrain a fresh (or reused) variable to equal a sum of variables and
    // a constant, chaining the three-track adder and projecting intermediates
    // eagerly. Returns the result variable and the accumulated constraint.
    std::pair<SumVar, Compiled> build_sum(const std::vector<std::string>& occurrences,
                                          uint64_t constant) {
        if (occurrences.empty()) {
            std::string r = fresh_var();
            return {{r, true},
                    lift_relation(const_relation(base_, CmpOp::Eq, constant).dfa, {r})};
        }
        if (occurrences.size() == 1 && constant == 0)
            return {{occurrences[0], false}, Compiled::truth(true)};

        Compiled acc = Compiled::truth(true);
        std::string cur = occurrences[0];
        bool cur_temp = false;
        for (size_t i = 1; i < occurrences.size(); ++i) {
            std::string next = fresh_var();
            acc = conjoin(std::move(acc),
                          lift_relation(adder(base_).dfa, {cur, occurrences[i], next}));
            if (cur_temp) acc = exists(std::move(acc), cur);
            cur = next;
            cur_temp = true;
        }
        if (constant > 0) {
            std::string cv = fresh_var();
            std::string next = fresh_var();
            acc = conjoin(std::move(acc),
                          lift_relation(const_relation(base_, CmpOp::Eq, constant).dfa, {cv}));
            acc = conjoin(std::move(acc), lift_relation(adder(base_).dfa, {cur, cv, next}));
            acc = exists(std::move(acc), cv);
            if (cur_temp) acc = exists(std::move(acc), cur);
            cur = next;
            cur_temp = true;
        }
        return {{cur, cur_temp}, std::move(acc)};
    }

    // Bind an index term to a variable: plain variables are used directly,
    // anything else gets a fresh variable u with the constraint u = term
    // (subtraction moved across the equality).
    struct BoundIndex {
        std::string var;
        Compiled constraint;
        bool is_temp;
    };

    BoundIndex bind_index(const TermPtr& t) {
        LinearForm lf = linearize(t);
        if (lf.constant == 0 && lf.coeff.size() == 1 && lf.coeff.begin()->second == 1)
            return {lf.coeff.begin()->first, Compiled::truth(true), false};
        std::string u = fresh_var();
        lf.coeff[u] -= 1; // u = term  <=>  term - u = 0
        Compiled c = linear_atom(lf, CmpOp::Eq);
        return {u, std::move(c), true};
    }

    const SequenceEnv& env_;
    CompileOptions opts_;
    uint32_t base_;
    CompilationTrace trace_;
    uint64_t fresh_counter_ = 0;
    int atom_depth_ = 0;
};

// ---------------------------------------------------------------------------
// top-level entry points

struct CompileResult {
    Dfa dfa; // over `vars`; a sentence yields a 1-track dummy machine
    std::vector<std::string> vars;
    CompilationTrace trace;
};

// Compile over the formula's free variables in lexicographic order (or an
// explicit order covering them).
inline CompileResult compile_formula(const FormulaPtr& f, const SequenceEnv& env,
                                     CompileOptions opts = {},
                                     std::optional<std::vector<std::string>> var_order =
                                         std::nullopt) {
    check_no_shadowing(f);
    FormulaCompiler fc(env, opts);
    auto t0 = std::chrono::steady_clock::now();
    Compiled c = fc.compile(f);
    CompileResult out;
    std::set<std::string> fv = free_vars(f);
    if (var_order) {
        for (const auto& v : fv)
            if (std::find(var_order->begin(), var_order->end(), v) == var_order->end())
                throw std::invalid_argument("declared order misses free variable '" + v + "'");
        out.vars = *var_order;
    } else {
        out.vars.assign(fv.begin(), fv.end());
    }
    // a sentence materializes over one dummy track
    std::vector<std::string> order = out.vars.empty() ? std::vector<std::string>{"$sentence"}
                                                       : out.vars;
    out.dfa = fc.materialize(c, order);
    out.dfa.saturated = true;
    out.trace = fc.trace();
    out.trace.total_millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

inline bool decide(const FormulaPtr& f, const SequenceEnv& env, CompileOptions opts = {}) {
    if (!free_vars(f).empty())
        throw std::invalid_argument("decide: formula has free variables");
    CompileResult r = compile_formula(f, env, opts);
    return is_universal(r.dfa);
}

inline bool holds_for_infinitely_many(const FormulaPtr& f, const SequenceEnv& env,
                                      CompileOptions opts = {}) {
    if (free_vars(f).size() != 1)
        throw std::invalid_argument("holds_for_infinitely_many: need exactly one free variable");
    CompileResult r = compile_formula(f, env, opts);
    return accepts_infinitely_many(r.dfa);
}

// Shortest satisfying assignment (breadth-first over representations, ties
// by symbol order), or nullopt if unsatisfiable.
inline std::optional<std::vector<std::pair<std::string, uint64_t>>>
witness(const FormulaPtr& f, const SequenceEnv& env, CompileOptions opts = {}) {
    std::set<std::string> fv = free_vars(f);
    if (fv.empty()) throw std::invalid_argument("witness: formula has no free variables");
    CompileResult r = compile_formula(f, env, opts);
    auto w = shortest_accepted(r.dfa);
    if (!w) return std::nullopt;
    std::vector<uint64_t> values = decode(*w);
    std::vector<std::pair<std::string, uint64_t>> out;
    for (size_t i = 0; i < r.vars.size(); ++i) out.emplace_back(r.vars[i], values[i]);
    return out;
}

} // namespace autoseq
