// alphabet.hpp -- tuple alphabets Sigma_k^r for multi-track automata.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace autoseq {

using State = uint32_t;
using Symbol = uint32_t;

// An alphabet of r-tuples of base-k digits. Symbols are packed into a
// single index with track 0 as the most significant digit, so ascending
// symbol index enumerates tuples in lexicographic order.
struct TupleAlphabet {
    uint32_t base = 2;
    uint32_t arity = 1;

    TupleAlphabet() = default;
    TupleAlphabet(uint32_t k, uint32_t r) : base(k), arity(r) {
        if (k < 2) throw std::invalid_argument("TupleAlphabet: base must be >= 2");
        if (r < 1) throw std::invalid_argument("TupleAlphabet: arity must be >= 1");
        uint64_t n = 1;
        for (uint32_t t = 0; t < r; ++t) {
            n *= k;
            if (n > (1u << 22))
                throw std::invalid_argument("TupleAlphabet: k^r too large");
        }
    }

    uint32_t size() const {
        uint32_t n = 1;
        for (uint32_t t = 0; t < arity; ++t) n *= base;
        return n;
    }

    Symbol pack(std::span<const uint32_t> digits) const {
        Symbol s = 0;
        for (uint32_t t = 0; t < arity; ++t) s = s * base + digits[t];
        return s;
    }

    // digit of `sym` on a given track
    uint32_t digit(Symbol sym, uint32_t track) const {
        for (uint32_t t = arity - 1; t > track; --t) sym /= base;
        return sym % base;
    }

    void unpack(Symbol sym, std::span<uint32_t> out) const {
        for (uint32_t t = arity; t > 0; --t) {
            out[t - 1] = sym % base;
            sym /= base;
        }
    }

    std::vector<uint32_t> unpack(Symbol sym) const {
        std::vector<uint32_t> d(arity);
        unpack(sym, d);
        return d;
    }

    // the all-zeros padding symbol is always index 0
    static constexpr Symbol zero_symbol() { return 0; }

    std::string symbol_text(Symbol sym) const {
        std::string out = "[";
        auto d = unpack(sym);
        for (uint32_t t = 0; t < arity; ++t) {
            if (t) out += ',';
            out += std::to_string(d[t]);
        }
        out += ']';
        return out;
    }

    bool operator==(const TupleAlphabet&) const = default;
};

} // namespace autoseq
