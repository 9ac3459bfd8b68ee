// queries.hpp -- prebuilt decision pipelines: the four-stage unbordered
// factor computation, shift equivalence, overlap-freeness, square-freeness,
// and ultimate periodicity.
#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "autoseq/compiler.hpp"
#include "autoseq/dfao.hpp"
#include "autoseq/ops.hpp"
#include "autoseq/relations.hpp"

namespace autoseq {

struct PipelineOptions {
    DeterminizeLimits limits{}; // stage-4 direct determinization budget
    bool compute_witness = true;
};

struct PipelineResult {
    Dfa final_dfa; // over (n): accepts n > 1 with NO unbordered factor of length n
    CompilationTrace trace; // one entry per stage
    bool empty = false;
    bool universal = false;
    bool infinite = false;
    std::optional<uint64_t> witness; // shortest accepted n, if any

    // intermediate stage machines for oracle cross-checks, tracks in the
    // order noted here
    Dfa stage1; // (n, j, l, i)
    Dfa stage2; // (n, j, l)
    Dfa stage3; // (n, j)
    Nfa stage4_nfa; // projection of stage 3 over (n), before determinization
    bool stage4_via_reversal = false;
};

// Lengths with no unbordered factor, computed in four stages over the
// characterization "some position j starts a factor of length n whose every
// candidate border length 1 <= l <= n/2 mismatches at some i < l":
//
//   stage 1: (n,j,l,i) with l in range, i < l, and x[j+i] != x[n+j-l+i]
//   stage 2: negation of (exists i): l is out of range or a border length
//   stage 3: negation of (exists l restricted to range): factor unbordered
//   stage 4: n > 1 and negation of (exists j): no unbordered factor
//
// The stage-3 projection re-asserts the range constraint: stage 2 accepts
// every out-of-range l vacuously, so projecting it unrestricted would be
// vacuously nonempty everywhere.
inline PipelineResult unbordered_lengths(const Dfao& seq, PipelineOptions opts = {}) {
    SequenceEnv env;
    env.sequences.emplace("x", seq);
    CompileOptions copts;
    copts.limits = opts.limits;
    FormulaCompiler fc(env, copts);

    using Clock = std::chrono::steady_clock;
    auto stage_ms = [](Clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    };
    PipelineResult out;

    auto var = [](const char* v) { return Term::var(v); };
    auto range_formula = [&] {
        return fc.conjoin(
            fc.atom_compare(Term::constant(1), CmpOp::Le, var("l")),
            fc.atom_compare(Term::add(var("l"), var("l")), CmpOp::Le, var("n")));
    };

    // ---- stage 1 ----------------------------------------------------------
    auto t0 = Clock::now();
    Compiled s1 = range_formula();
    s1 = fc.conjoin(std::move(s1), fc.atom_compare(var("i"), CmpOp::Lt, var("l")));
    TermPtr first_pos = Term::add(var("j"), var("i"));
    TermPtr second_pos =
        Term::add(Term::sub(Term::add(var("n"), var("j")), var("l")), var("i"));
    s1 = fc.conjoin(std::move(s1),
                    fc.atom_seq_index_compare("x", first_pos, false, "x", second_pos));
    uint64_t s1_raw = fc.trace().stages.empty() ? 0 : fc.trace().stages.back().raw_states;
    out.stage1 = fc.materialize(s1, {"n", "j", "l", "i"});
    out.trace.stages.push_back({"Stage 1", s1_raw, out.stage1.state_count, stage_ms(t0), false});

    // ---- stage 2 ----------------------------------------------------------
    t0 = Clock::now();
    Compiled p2 = fc.exists(s1, "i");
    StageReport e2 = fc.trace().stages.back();
    Compiled m2 = fc.negate(std::move(p2));
    out.stage2 = fc.materialize(m2, {"n", "j", "l"});
    out.trace.stages.push_back(
        {"Stage 2", e2.raw_states, out.stage2.state_count, stage_ms(t0), e2.via_reversal});

    // ---- stage 3 ----------------------------------------------------------
    t0 = Clock::now();
    Compiled p3 = fc.exists(fc.conjoin(std::move(m2), range_formula()), "l");
    StageReport e3 = fc.trace().stages.back();
    Compiled m3 = fc.negate(std::move(p3));
    out.stage3 = fc.materialize(m3, {"n", "j"});
    out.trace.stages.push_back(
        {"Stage 3", e3.raw_states, out.stage3.state_count, stage_ms(t0), e3.via_reversal});

    // ---- stage 4 ----------------------------------------------------------
    // by hand rather than through exists(): the pre-determinization NFA and
    // the reversal fallback are part of the reported result
    t0 = Clock::now();
    // m3.vars is sorted: (j, n); drop track 0 = j
    out.stage4_nfa = saturate(project(m3.dfa, 0));
    Dfa det4;
    try {
        det4 = determinize(out.stage4_nfa, opts.limits);
    } catch (const StateBudgetExceeded&) {
        det4 = brzozowski_minimize(out.stage4_nfa, opts.limits);
        out.stage4_via_reversal = true;
    }
    uint64_t s4_raw = det4.state_count;
    Dfa p4 = minimize(det4);
    p4.saturated = true;
    Compiled has_unbordered;
    has_unbordered.dfa = std::move(p4);
    has_unbordered.vars = {"n"};
    Compiled m4 = fc.conjoin(fc.negate(std::move(has_unbordered)),
                             fc.atom_compare(var("n"), CmpOp::Gt, Term::constant(1)));
    out.final_dfa = fc.materialize(m4, {"n"});
    out.trace.stages.push_back(
        {"Stage 4", s4_raw, out.final_dfa.state_count, stage_ms(t0), out.stage4_via_reversal});
    for (const auto& st : out.trace.stages) out.trace.total_millis += st.millis;

    out.empty = is_empty(out.final_dfa);
    out.universal = is_universal(out.final_dfa);
    out.infinite = out.empty ? false : accepts_infinitely_many(out.final_dfa);
    if (opts.compute_witness && !out.empty)
        if (auto w = shortest_accepted(out.final_dfa)) out.witness = decode(*w)[0];
    return out;
}

// Saturated minimized DFA over (c) accepting the shift constants: x[n] =
// y[n+c] for all n. x is a shift of y iff the result is nonempty.
inline Dfa shift_of(const Dfao& x, const Dfao& y, CompileOptions opts = {}) {
    if (x.dfa.alphabet.base != y.dfa.alphabet.base)
        throw std::invalid_argument("shift_of: base mismatch");
    SequenceEnv env;
    env.sequences.emplace("x", x);
    env.sequences.emplace("y", y);
    FormulaPtr mismatch = Formula::seq_index_compare(
        "x", Term::var("n"), false, "y", Term::add(Term::var("n"), Term::var("c")));
    FormulaPtr f = Formula::lnot(Formula::exists("n", mismatch));
    return compile_formula(f, env, opts).dfa;
}

// No factor of the form a y a y a: no position i and period n >= 1 with
// x[i+t] = x[i+n+t] for every t <= n.
inline bool is_overlapfree(const Dfao& seq, CompileOptions opts = {}) {
    SequenceEnv env;
    env.sequences.emplace("x", seq);
    auto var = [](const char* v) { return Term::var(v); };
    FormulaPtr match = Formula::seq_index_compare(
        "x", Term::add(var("i"), var("t")), true, "x",
        Term::add(Term::add(var("i"), var("n")), var("t")));
    FormulaPtr inner = Formula::forall(
        "t", Formula::implies(Formula::compare(var("t"), CmpOp::Le, var("n")), match));
    FormulaPtr overlap = Formula::exists(
        "i", Formula::exists(
                 "n", Formula::land(
                          Formula::compare(var("n"), CmpOp::Ge, Term::constant(1)), inner)));
    return decide(Formula::lnot(overlap), env, opts);
}

// No factor x x with x nonempty: as above with t < n.
inline bool is_squarefree(const Dfao& seq, CompileOptions opts = {}) {
    SequenceEnv env;
    env.sequences.emplace("x", seq);
    auto var = [](const char* v) { return Term::var(v); };
    FormulaPtr match = Formula::seq_index_compare(
        "x", Term::add(var("i"), var("t")), true, "x",
        Term::add(Term::add(var("i"), var("n")), var("t")));
    FormulaPtr inner = Formula::forall(
        "t", Formula::implies(Formula::compare(var("t"), CmpOp::Lt, var("n")), match));
    FormulaPtr square = Formula::exists(
        "i", Formula::exists(
                 "n", Formula::land(
                          Formula::compare(var("n"), CmpOp::Ge, Term::constant(1)), inner)));
    return decide(Formula::lnot(square), env, opts);
}

// exists p >= 1, N such that x[n] = x[n+p] for all n >= N.
inline bool is_ultimately_periodic(const Dfao& seq, CompileOptions opts = {}) {
    SequenceEnv env;
    env.sequences.emplace("x", seq);
    auto var = [](const char* v) { return Term::var(v); };
    FormulaPtr match = Formula::seq_index_compare("x", var("n"), true, "x",
                                                  Term::add(var("n"), var("p")));
    FormulaPtr tail = Formula::forall(
        "n", Formula::implies(Formula::compare(var("n"), CmpOp::Ge, var("N")), match));
    FormulaPtr f = Formula::exists(
        "p", Formula::land(Formula::compare(var("p"), CmpOp::Ge, Term::constant(1)),
                           Formula::exists("N", tail)));
    return decide(f, env, opts);
}

// Every accepted length (a length with no unbordered factor) is = 1 (mod 6):
// the accepted set intersected with the complement of that residue class is
// empty, checked at the automaton level.
inline bool currie_saari_check(const PipelineResult& result) {
    uint32_t k = result.final_dfa.alphabet.base;
    Dfa not_1_mod_6 = complement(residue(k, 6, 1).dfa);
    return is_empty(product(result.final_dfa, not_1_mod_6, BoolOp::And));
}

} // namespace autoseq
