#include <doctest.h>

#include <sstream>

#include "autoseq/io.hpp"
#include "autoseq/relations.hpp"
#include "test_util.hpp"

using namespace autoseq;

TEST_CASE("dfa text round trip") {
    testutil::Rng rng(99);
    for (int iter = 0; iter < 10; ++iter) {
        Dfa d = testutil::random_dfa(rng, TupleAlphabet(2, 2), 6);
        if (iter % 2 == 0) d = saturate(d); // the flag is validated on load
        std::stringstream ss;
        write_automaton(ss, d);
        Dfa back = read_dfa(ss);
        CHECK(same_structure(back, d));
        CHECK(back.saturated == d.saturated);
    }
}

TEST_CASE("nfa text round trip") {
    testutil::Rng rng(7);
    Nfa n = testutil::random_nfa(rng, TupleAlphabet(2, 1), 5, 12, 2);
    std::stringstream ss;
    write_automaton(ss, n);
    Nfa back = read_nfa(ss);
    CHECK(back.state_count == n.state_count);
    CHECK(back.initials == n.initials);
    CHECK(back.final_mask == n.final_mask);
    for (State q = 0; q < n.state_count; ++q) CHECK(back.edges[q] == n.edges[q]);
}

TEST_CASE("loader rejects broken input") {
    {
        std::stringstream ss("initial 0\nfinals\n");
        CHECK_THROWS(read_dfa(ss));
    }
    {
        // not total
        std::stringstream ss("base 2 arity 1 states 2\ninitial 0\nfinals 1\n0 [0] 1\n");
        CHECK_THROWS(read_dfa(ss));
    }
    {
        // out-of-range target
        std::stringstream ss("base 2 arity 1 states 1\ninitial 0\nfinals\n0 [0] 3\n0 [1] 0\n");
        CHECK_THROWS(read_dfa(ss));
    }
}

TEST_CASE("loader rejects a false saturation claim") {
    // accepts exactly the single word [1]: not closed under padding
    std::stringstream ss("base 2 arity 1 states 3\n"
                         "initial 0\nfinals 1\nsaturated 1\n"
                         "0 [0] 2\n0 [1] 1\n1 [0] 2\n1 [1] 2\n2 [0] 2\n2 [1] 2\n");
    CHECK_THROWS_WITH_AS(read_dfa(ss), doctest::Contains("claims saturation"),
                         std::runtime_error);

    // the honest version of the same file loads
    std::stringstream ok("base 2 arity 1 states 3\n"
                         "initial 0\nfinals 1\nsaturated 0\n"
                         "0 [0] 2\n0 [1] 1\n1 [0] 2\n1 [1] 2\n2 [0] 2\n2 [1] 2\n");
    CHECK(read_dfa(ok).state_count == 3);
}

TEST_CASE("dot export mentions all states") {
    Dfa d = adder(2).dfa;
    std::stringstream ss;
    write_dot(ss, d, "adder");
    std::string text = ss.str();
    CHECK(text.find("digraph adder") != std::string::npos);
    CHECK(text.find("q0") != std::string::npos);
    CHECK(text.find("q2") != std::string::npos);
    CHECK(text.find("doublecircle") != std::string::npos);
}
