#include <doctest.h>

#include "autoseq/ops.hpp"
#include "autoseq/regex.hpp"
#include "test_util.hpp"

using namespace autoseq;

namespace {

// MSD-first match of n against a regex-derived DFA
bool matches_msd(const Dfa& d, uint64_t n, uint32_t base) {
    std::vector<Symbol> word;
    for (uint64_t m = n; m; m /= base) word.push_back(static_cast<Symbol>(m % base));
    std::reverse(word.begin(), word.end());
    return d.accepts(word);
}

} // namespace

TEST_CASE("basic regex languages") {
    Dfa d01 = determinize(regex_to_nfa("01", 2));
    CHECK(d01.accepts(std::vector<Symbol>{0, 1}));
    CHECK(!d01.accepts(std::vector<Symbol>{1, 0}));
    CHECK(!d01.accepts(std::vector<Symbol>{0, 1, 0}));

    Dfa star = determinize(regex_to_nfa("(10)*", 2));
    CHECK(star.accepts(std::vector<Symbol>{}));
    CHECK(star.accepts(std::vector<Symbol>{1, 0, 1, 0}));
    CHECK(!star.accepts(std::vector<Symbol>{1, 0, 1}));

    Dfa alt = determinize(regex_to_nfa("0|1(0|1)?", 2));
    for (auto& w : testutil::enumerate_language(alt, 4)) CHECK(w.size() <= 2);

    CHECK_THROWS_AS(regex_to_nfa("2", 2), std::invalid_argument);
    CHECK_THROWS_AS(regex_to_nfa("(01", 2), std::invalid_argument);
}

TEST_CASE("the unbordered-lengths regex enumerates as expected") {
    // MSD form 1(01*0)*10*1; 7, 13, 25 match, 8 and 31 do not
    Dfa d = determinize(regex_to_nfa("1(01*0)*10*1", 2));
    CHECK(matches_msd(d, 7, 2));
    CHECK(matches_msd(d, 13, 2));
    CHECK(matches_msd(d, 25, 2));
    CHECK(!matches_msd(d, 8, 2));
    CHECK(!matches_msd(d, 31, 2));

    // every member is == 1 (mod 6) up to 2^16
    size_t members = 0;
    for (uint64_t n = 0; n < (1u << 16); ++n)
        if (matches_msd(d, n, 2)) {
            ++members;
            CHECK(n % 6 == 1);
        }
    CHECK(members > 50); // the set is infinite; plenty below 2^16
}
