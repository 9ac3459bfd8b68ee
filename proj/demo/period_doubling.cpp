// Library usage walkthrough: define a 2-automatic sequence from scratch (the
// period-doubling sequence d(n) = parity of the exponent of 2 in n+1, given
// here by its 3-state automaton), then interrogate it.
//
//   g++ -std=c++20 -O2 -I ../include demo/period_doubling.cpp -o pd_demo

#include <cstdio>

#include "autoseq/parser.hpp"
#include "autoseq/compiler.hpp"
#include "autoseq/queries.hpp"

using namespace autoseq;

int main() {
    // d reads n LSD-first: skip the low 1-run of n+1... equivalently, on the
    // digits of n itself: count the low run of 1s; output its parity once a
    // 0 ends it. States: 0 = even run so far, 1 = odd run, 2/3 = latched.
    Dfao d;
    d.dfa = Dfa(TupleAlphabet(2, 1), 4);
    d.dfa.initial = 0;
    d.dfa.next(0, 1) = 1;
    d.dfa.next(1, 1) = 0;
    d.dfa.next(0, 0) = 2; // run ended with even length
    d.dfa.next(1, 0) = 3; // run ended with odd length
    d.dfa.next(2, 0) = 2;
    d.dfa.next(2, 1) = 2;
    d.dfa.next(3, 0) = 3;
    d.dfa.next(3, 1) = 3;
    d.output = {0, 1, 0, 1};
    d.check_valid();

    std::printf("prefix: ");
    for (uint64_t n = 0; n < 24; ++n) std::printf("%d", d.run(n));
    std::printf("\n");

    SequenceEnv env;
    env.sequences.emplace("D", d);

    // the period-doubling word contains squares and cubes (000 appears) but
    // no fourth power; each line below is a machine-checked theorem
    FormulaPtr square = parse_formula(
        "E i, n: n >= 1 & (A t: t < n => D[i+t] = D[i+n+t])");
    FormulaPtr cube = parse_formula(
        "E i, n: n >= 1 & (A t: t < n + n => D[i+t] = D[i+n+t])");
    FormulaPtr fourth = parse_formula(
        "E i, n: n >= 1 & (A t: t < n + n + n => D[i+t] = D[i+n+t])");
    std::printf("contains a square:    %s\n", decide(square, env) ? "yes" : "no");
    std::printf("contains a cube:      %s\n", decide(cube, env) ? "yes" : "no");
    std::printf("contains a 4th power: %s\n", decide(fourth, env) ? "yes" : "no");

    PipelineResult r = unbordered_lengths(d);
    std::printf("lengths with no unbordered factor: %s",
                r.empty ? "none\n" : "");
    if (!r.empty && r.witness) std::printf("smallest is %llu\n",
                                           (unsigned long long)*r.witness);
    return 0;
}
