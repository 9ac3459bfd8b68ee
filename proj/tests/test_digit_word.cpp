#include <doctest.h>

#include "autoseq/digit_word.hpp"
#include "test_util.hpp"

using namespace autoseq;

TEST_CASE("encode matches the worked base-2 examples") {
    // 6 in base 2, LSD-first
    auto w6 = encode(6, TupleAlphabet(2, 1));
    CHECK(w6.text() == "[0][1][1]");

    // the pair (20,13): first track spells 00101, second 10110
    auto wp = encode({20, 13}, TupleAlphabet(2, 2));
    CHECK(wp.text() == "[0,1][0,0][1,1][0,1][1,0]");

    // zero is the empty word
    CHECK(encode(0, TupleAlphabet(2, 1)).empty());
    CHECK(encode(0, TupleAlphabet(7, 1)).empty());
}

TEST_CASE("decode ignores trailing all-zeros padding") {
    TupleAlphabet a2(2, 2);
    auto w = parse_digit_word("[0,1][0,0][1,1][0,1][1,0][0,0]", a2);
    auto v = decode(w);
    CHECK(v == std::vector<uint64_t>{20, 13});

    DigitWord empty2(a2);
    CHECK(decode(empty2) == std::vector<uint64_t>{0, 0});

    auto w3 = parse_digit_word("[1][1][0][0]", TupleAlphabet(2, 1));
    CHECK(decode(w3) == std::vector<uint64_t>{3});
}

TEST_CASE("pad_align zips and pads single-track words") {
    TupleAlphabet a1(2, 1);
    DigitWord w6(a1, {0, 1, 1});
    DigitWord w13(a1, {1, 0, 1, 1});
    DigitWord z = pad_align(std::vector<DigitWord>{w6, w13});
    CHECK(z.text() == "[0,1][1,0][1,1][0,1]");

    DigitWord e1(a1), e2(a1);
    CHECK(pad_align(std::vector<DigitWord>{e1, e2}).empty());

    DigitWord o1(a1, {1}), o2(a1, {1});
    CHECK(pad_align(std::vector<DigitWord>{o1, o2}).text() == "[1,1]");

    DigitWord b3(TupleAlphabet(3, 1), {2});
    CHECK_THROWS_AS(pad_align(std::vector<DigitWord>{o1, b3}), std::invalid_argument);
    DigitWord multi(TupleAlphabet(2, 2), {1});
    CHECK_THROWS_AS(pad_align(std::vector<DigitWord>{multi}), std::invalid_argument);
    CHECK_THROWS_AS(pad_align(std::span<const DigitWord>{}), std::invalid_argument);
}

TEST_CASE("round trip and padding neutrality") {
    testutil::Rng rng(0x5eed);
    for (int iter = 0; iter < 500; ++iter) {
        uint32_t k = 2 + rng.below(4);
        uint32_t r = 1 + rng.below(3);
        TupleAlphabet a(k, r);
        std::vector<uint64_t> vals(r);
        for (auto& v : vals) v = rng.next() % (1u << 20);
        DigitWord w = encode(vals, a);
        CHECK(decode(w) == vals);
        // canonicality: no trailing all-zeros symbol
        if (!w.empty()) CHECK(w.symbols.back() != TupleAlphabet::zero_symbol());
        // padding neutrality
        DigitWord padded = w;
        for (int m = 0; m < 3; ++m) padded.symbols.push_back(TupleAlphabet::zero_symbol());
        CHECK(decode(padded) == vals);
    }
}

TEST_CASE("digit word text round trips") {
    testutil::Rng rng(42);
    for (int iter = 0; iter < 100; ++iter) {
        uint32_t k = 2 + rng.below(9);
        uint32_t r = 1 + rng.below(3);
        TupleAlphabet a(k, r);
        DigitWord w(a);
        size_t len = rng.below(6);
        for (size_t i = 0; i < len; ++i) w.symbols.push_back(rng.below(a.size()));
        DigitWord back = parse_digit_word(w.text(), a);
        CHECK(back.symbols == w.symbols);
    }
}
