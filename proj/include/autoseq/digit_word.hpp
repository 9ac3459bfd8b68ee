// digit_word.hpp -- LSD-first base-k digit words encoding tuples of naturals.
//
// A word over Sigma_k^r denotes an r-tuple of naturals, read track by track
// least significant digit first. Trailing all-zeros symbols are permitted
// padding and never change the denoted tuple; the canonical representation
// has none (zero encodes as the empty word).
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoseq/alphabet.hpp"

namespace autoseq {

struct DigitWord {
    TupleAlphabet alphabet;
    std::vector<Symbol> symbols;

    DigitWord() = default;
    explicit DigitWord(TupleAlphabet a, std::vector<Symbol> syms = {})
        : alphabet(a), symbols(std::move(syms)) {
        for (Symbol s : symbols)
            if (s >= alphabet.size())
                throw std::invalid_argument("DigitWord: symbol out of range");
    }

    size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }

    uint32_t digit(size_t pos, uint32_t track) const {
        return alphabet.digit(symbols[pos], track);
    }

    // bracket syntax, e.g. [0,1][0,0][1,1]; the empty word prints as []
    std::string text() const {
        if (symbols.empty()) return "[]";
        std::string out;
        for (Symbol s : symbols) out += alphabet.symbol_text(s);
        return out;
    }
};

inline std::vector<uint32_t> lsd_digits(uint64_t value, uint32_t base) {
    std::vector<uint32_t> d;
    while (value > 0) {
        d.push_back(static_cast<uint32_t>(value % base));
        value /= base;
    }
    return d;
}

// Canonical (shortest) representation: length is the longest track's digit
// count, shorter tracks padded with trailing zero digits.
inline DigitWord encode(std::span<const uint64_t> values, const TupleAlphabet& alphabet) {
    if (values.size() != alphabet.arity)
        throw std::invalid_argument("encode: tuple length does not match alphabet arity");
    std::vector<std::vector<uint32_t>> tracks(alphabet.arity);
    size_t len = 0;
    for (uint32_t t = 0; t < alphabet.arity; ++t) {
        tracks[t] = lsd_digits(values[t], alphabet.base);
        len = std::max(len, tracks[t].size());
    }
    DigitWord w(alphabet);
    w.symbols.reserve(len);
    std::vector<uint32_t> digits(alphabet.arity);
    for (size_t p = 0; p < len; ++p) {
        for (uint32_t t = 0; t < alphabet.arity; ++t)
            digits[t] = p < tracks[t].size() ? tracks[t][p] : 0;
        w.symbols.push_back(alphabet.pack(digits));
    }
    return w;
}

inline DigitWord encode(std::initializer_list<uint64_t> values, const TupleAlphabet& alphabet) {
    return encode(std::span<const uint64_t>(values.begin(), values.size()), alphabet);
}

inline DigitWord encode(uint64_t value, const TupleAlphabet& alphabet) {
    uint64_t v[1] = {value};
    return encode(std::span<const uint64_t>(v, 1), alphabet);
}

inline std::vector<uint64_t> decode(const DigitWord& w) {
    std::vector<uint64_t> values(w.alphabet.arity, 0);
    for (uint32_t t = 0; t < w.alphabet.arity; ++t) {
        uint64_t place = 1;
        for (size_t p = 0; p < w.size(); ++p) {
            values[t] += place * w.digit(p, t);
            place *= w.alphabet.base;
        }
    }
    return values;
}

// Zip single-track words into one multi-track word, padding the shorter
// inputs with trailing zero digits.
inline DigitWord pad_align(std::span<const DigitWord> words) {
    if (words.empty()) throw std::invalid_argument("pad_align: no input words");
    uint32_t base = words[0].alphabet.base;
    size_t len = 0;
    for (const DigitWord& w : words) {
        if (w.alphabet.arity != 1)
            throw std::invalid_argument("pad_align: inputs must be single-track");
        if (w.alphabet.base != base)
            throw std::invalid_argument("pad_align: mixed bases");
        len = std::max(len, w.size());
    }
    TupleAlphabet target(base, static_cast<uint32_t>(words.size()));
    DigitWord out(target);
    out.symbols.reserve(len);
    std::vector<uint32_t> digits(words.size());
    for (size_t p = 0; p < len; ++p) {
        for (size_t t = 0; t < words.size(); ++t)
            digits[t] = p < words[t].size() ? words[t].symbols[p] : 0;
        out.symbols.push_back(target.pack(digits));
    }
    return out;
}

// Parses the bracket syntax produced by DigitWord::text(). "[]" is the
// empty word; otherwise every [..] group must carry `arity` digits.
inline DigitWord parse_digit_word(const std::string& text, const TupleAlphabet& alphabet) {
    DigitWord w(alphabet);
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("parse_digit_word: " + why + " at offset " + std::to_string(i));
    };
    if (text == "[]") return w;
    std::vector<uint32_t> digits;
    while (i < text.size()) {
        if (text[i] != '[') fail("expected '['");
        ++i;
        digits.clear();
        while (true) {
            size_t start = i;
            while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == start) fail("expected digit");
            digits.push_back(static_cast<uint32_t>(std::stoul(text.substr(start, i - start))));
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            break;
        }
        if (i >= text.size() || text[i] != ']') fail("expected ']'");
        ++i;
        if (digits.size() != alphabet.arity) fail("wrong tuple arity");
        for (uint32_t d : digits)
            if (d >= alphabet.base) fail("digit out of base range");
        w.symbols.push_back(alphabet.pack(digits));
    }
    return w;
}

} // namespace autoseq
