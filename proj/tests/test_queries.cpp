#include <doctest.h>

#include "autoseq/oracle.hpp"
#include "autoseq/parser.hpp"
#include "autoseq/queries.hpp"
#include "autoseq/regex.hpp"
#include "test_util.hpp"

using namespace autoseq;

namespace {

// constant-zero DFAO and an eventually-constant one (0 below 4, then 1)
Dfao constant_dfao(int value) {
    Dfao m;
    m.dfa = Dfa(TupleAlphabet(2, 1), 1);
    m.dfa.next(0, 0) = 0;
    m.dfa.next(0, 1) = 0;
    m.output = {value};
    return m;
}

Dfao eventually_one_dfao() {
    // output 1 iff some bit of weight >= 4 is set, i.e. n >= 4
    Dfao m;
    m.dfa = Dfa(TupleAlphabet(2, 1), 4);
    m.dfa.initial = 0;
    for (Symbol s = 0; s < 2; ++s) {
        m.dfa.next(0, s) = 1;
        m.dfa.next(1, s) = s ? 3 : 2;
        m.dfa.next(2, s) = s ? 3 : 2;
        m.dfa.next(3, s) = 3;
    }
    m.dfa.next(2, 0) = 2;
    m.output = {0, 0, 0, 1};
    return m;
}

} // namespace

TEST_CASE("thue-morse unbordered pipeline") {
    PipelineResult r = unbordered_lengths(thue_morse());
    CHECK(r.final_dfa.state_count == 6); // canonical minimal machine; see acceptance notes
    CHECK(!r.empty);
    CHECK(!r.universal);
    CHECK(r.infinite);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == 7);

    // language equals the saturated reversal of the reference regex
    Dfa ref = minimize(saturate(determinize(reverse(determinize(regex_to_nfa("1(01*0)*10*1", 2))))));
    CHECK(equivalent(r.final_dfa, ref));

    // 31 has an unbordered factor, so it is not accepted
    CHECK(!r.final_dfa.accepts_tuple({31}));
    CHECK(r.final_dfa.accepts_tuple({7}));
    CHECK(r.final_dfa.accepts_tuple({13}));
    CHECK(r.final_dfa.accepts_tuple({25}));
    CHECK(!r.final_dfa.accepts_tuple({0}));
    CHECK(!r.final_dfa.accepts_tuple({1}));

    CHECK(currie_saari_check(r));
    CHECK(r.trace.stages.size() == 4);
}

TEST_CASE("rudin-shapiro pipeline: empty final machine, reversal route gives 1 state") {
    PipelineResult r = unbordered_lengths(rudin_shapiro());
    CHECK(r.empty);
    CHECK(is_empty(r.final_dfa));
    Dfa rev = determinize(reverse(r.stage4_nfa));
    CHECK(minimize(rev).state_count == 1);
}

TEST_CASE("paperfolding pipeline: 17-state final machine") {
    PipelineResult r = unbordered_lengths(paperfolding());
    CHECK(r.final_dfa.state_count == 17);
    CHECK(!r.empty);
    CHECK(r.infinite);
}

TEST_CASE("pipeline agrees with the one-shot compiled characterization") {
    SequenceEnv env;
    env.sequences.emplace("x", thue_morse());
    PipelineResult r = unbordered_lengths(thue_morse());

    // direct Theorem-style formula: n > 1 and no unbordered factor of length n
    FormulaPtr direct = parse_formula(
        "(n > 1) & ~(E j: A l: ((1 <= l) & (l + l <= n)) =>"
        " (E i: (i < l) & (x[j + i] != x[n + j - l + i])))",
        std::set<std::string>{"n"});
    CompileResult c = compile_formula(direct, env);
    CHECK(equivalent(r.final_dfa, c.dfa));
}

TEST_CASE("shift decidability") {
    Dfao tm = thue_morse(), rs = rudin_shapiro();
    Dfa self = shift_of(tm, tm);
    CHECK(self.accepts_tuple({0}));
    CHECK(!is_empty(self));

    // outputs live in disjoint alphabets, so no shift can exist
    Dfa cross = shift_of(tm, rs);
    CHECK(is_empty(cross));

    // y defined as x offset by 3, via formula compilation
    SequenceEnv env;
    env.sequences.emplace("T", tm);
    CompileResult sh = compile_formula(parse_formula("T[n + 3] = 1",
                                                     std::set<std::string>{"n"}),
                                       env);
    Dfao shifted;
    shifted.dfa = sh.dfa;
    shifted.output.assign(sh.dfa.state_count, 0);
    for (State q = 0; q < sh.dfa.state_count; ++q) shifted.output[q] = sh.dfa.is_final(q);
    shifted.check_valid();
    for (uint64_t n = 0; n < 500; ++n) CHECK(shifted.run(n) == tm.run(n + 3));

    Dfa sh3 = shift_of(shifted, tm);
    CHECK(sh3.accepts_tuple({3}));
    auto w = shortest_accepted(sh3);
    REQUIRE(w.has_value());
    CHECK(decode(*w)[0] == 3);
}

TEST_CASE("overlap-freeness") {
    CHECK(is_overlapfree(thue_morse()));
    CHECK(!is_overlapfree(rudin_shapiro()));
    CHECK(!is_overlapfree(constant_dfao(0)));

    // brute-force confirmation that rudin-shapiro has an overlap
    Dfao rs = rudin_shapiro();
    std::vector<int> p = sequence_prefix(rs, 1 << 12);
    bool found = false;
    for (size_t i = 0; i < p.size() - 20 && !found; ++i)
        for (size_t n = 1; n <= 8 && !found; ++n) {
            bool ok = true;
            for (size_t t = 0; t <= n && ok; ++t) ok = p[i + t] == p[i + n + t];
            found = ok;
        }
    CHECK(found);
}

TEST_CASE("square-freeness") {
    // no binary sequence is squarefree (no squarefree binary word of length 4)
    CHECK(!is_squarefree(thue_morse()));
    CHECK(!is_squarefree(constant_dfao(1)));

    Dfao tm = thue_morse();
    std::vector<int> p = sequence_prefix(tm, 16);
    CHECK(p[1] == p[2]); // the square 11 at positions 1,2 of 011010...
    CHECK(p[5] == p[6]); // and 00 at positions 5,6
}

TEST_CASE("ultimate periodicity") {
    CHECK(is_ultimately_periodic(constant_dfao(0)));
    CHECK(is_ultimately_periodic(eventually_one_dfao()));
    CHECK(!is_ultimately_periodic(thue_morse()));
    CHECK(!is_ultimately_periodic(paperfolding()));
}

TEST_CASE("currie-saari check rejects a corrupted machine") {
    PipelineResult r = unbordered_lengths(thue_morse());
    PipelineResult corrupted = r;
    Dfa eight = const_relation(2, CmpOp::Eq, 8).dfa;
    corrupted.final_dfa = product(r.final_dfa, eight, BoolOp::Or);
    CHECK(!currie_saari_check(corrupted));
}

TEST_CASE("the pipeline is base generic: ternary digit-sum sequence") {
    // s(n) = sum of base-3 digits of n, mod 3
    Dfao s3;
    s3.dfa = Dfa(TupleAlphabet(3, 1), 3);
    s3.dfa.initial = 0;
    for (State q = 0; q < 3; ++q)
        for (Symbol d = 0; d < 3; ++d) s3.dfa.next(q, d) = (q + d) % 3;
    s3.output = {0, 1, 2};
    s3.check_valid();

    // stage 4 of this sequence genuinely explodes under direct subset
    // construction; a modest budget sends it down the reversal route
    PipelineOptions popts;
    popts.limits.max_states = 20000;
    PipelineResult r = unbordered_lengths(s3, popts);
    CHECK(r.stage4_via_reversal);
    CHECK(r.empty);

    UnborderedCheckOptions opts;
    opts.bound = 40;
    opts.stage4_prefix = 2048;
    auto reports = check_unbordered_stages(s3, r.stage1, r.stage2, r.stage3, r.final_dfa, opts);
    for (const auto& rep : reports) {
        CAPTURE(rep.stage);
        CHECK(rep.pass());
    }
}

TEST_CASE("shortest accepted word of the thue-morse final machine denotes 7") {
    PipelineResult r = unbordered_lengths(thue_morse());
    auto w = shortest_accepted(r.final_dfa);
    REQUIRE(w.has_value());
    CHECK(w->text() == "[1][1][1]");
    CHECK(decode(*w)[0] == 7);
}

TEST_CASE("minimized stage counts agree with the double-reversal route") {
    // Hopcroft and Brzozowski must land on machines of identical size for
    // the pipeline's stage languages
    PipelineResult r = unbordered_lengths(thue_morse());
    for (const Dfa* d : {&r.stage2, &r.stage3, &r.final_dfa}) {
        Dfa brz = brzozowski_minimize(to_nfa(*d));
        CHECK(brz.state_count == d->state_count);
        brz.saturated = d->saturated;
        CHECK(equivalent(brz, *d));
    }
}

TEST_CASE("a tight determinization budget forces the reversal route") {
    // direct subset construction of stage 2 needs 674 states, the reversal
    // route about 200; a budget between them exercises the fallback
    PipelineOptions opts;
    opts.limits.max_states = 300;
    PipelineResult tight = unbordered_lengths(thue_morse(), opts);
    PipelineResult normal = unbordered_lengths(thue_morse());
    bool any_reversal = tight.stage4_via_reversal;
    for (const auto& st : tight.trace.stages) any_reversal = any_reversal || st.via_reversal;
    CHECK(any_reversal);
    CHECK(equivalent(tight.final_dfa, normal.final_dfa));
    CHECK(tight.final_dfa.state_count == normal.final_dfa.state_count);
}

TEST_CASE("stage machines match their defining predicates on a small box") {
    PipelineResult r = unbordered_lengths(thue_morse());
    UnborderedCheckOptions opts;
    opts.bound = 48;
    opts.stage4_prefix = 2048;
    auto reports = check_unbordered_stages(thue_morse(), r.stage1, r.stage2, r.stage3,
                                           r.final_dfa, opts);
    for (const auto& rep : reports) {
        CAPTURE(rep.stage);
        CHECK(rep.pass());
    }
}
