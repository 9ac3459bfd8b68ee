// relations.hpp -- synchronized relation automata: addition with carry,
// digit-wise comparison, comparison against constants, and residues. All of
// them read LSD-first tuple words and are saturated by construction.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoseq/dfa.hpp"
#include "autoseq/digit_word.hpp"
#include "autoseq/ops.hpp"

namespace autoseq {

enum class CmpOp { Lt, Le, Eq, Ne, Gt, Ge };

inline bool apply_cmp(CmpOp op, int64_t a, int64_t b) {
    switch (op) {
        case CmpOp::Lt: return a < b;
        case CmpOp::Le: return a <= b;
        case CmpOp::Eq: return a == b;
        case CmpOp::Ne: return a != b;
        case CmpOp::Gt: return a > b;
        case CmpOp::Ge: return a >= b;
    }
    return false;
}

inline const char* cmp_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

// A saturated DFA together with the roles of its tracks, e.g. {"x","y","z"}
// for x + y = z.
struct RelationAutomaton {
    Dfa dfa;
    std::vector<std::string> roles;
};

// x + y = z over tracks (x, y, z): two carry states plus a dead state.
// From carry q on digits (a, b, c): step accepted iff a+b+q = c (mod k),
// new carry = (a+b+q >= k). Initial and sole final state is carry 0.
inline RelationAutomaton adder(uint32_t k) {
    if (k < 2) throw std::invalid_argument("adder: base must be >= 2");
    TupleAlphabet a(k, 3);
    Dfa d(a, 3); // 0 = carry 0, 1 = carry 1, 2 = dead
    d.initial = 0;
    d.final_mask = {1, 0, 0};
    std::vector<uint32_t> dig(3);
    for (State q = 0; q < 3; ++q)
        for (Symbol s = 0; s < a.size(); ++s) {
            if (q == 2) {
                d.next(q, s) = 2;
                continue;
            }
            a.unpack(s, dig);
            uint32_t sum = dig[0] + dig[1] + q;
            d.next(q, s) = (sum % k == dig[2]) ? (sum >= k ? 1 : 0) : 2;
        }
    d.saturated = true;
    return {std::move(d), {"x", "y", "z"}};
}

// x op y over tracks (x, y): three states {eq, lt, gt}. Reading LSD-first,
// a differing digit pair overwrites the verdict (later digits are more
// significant); equal digits preserve it.
inline RelationAutomaton compare(uint32_t k, CmpOp op) {
    if (k < 2) throw std::invalid_argument("compare: base must be >= 2");
    TupleAlphabet a(k, 2);
    Dfa d(a, 3); // 0 = eq, 1 = lt, 2 = gt
    d.initial = 0;
    d.final_mask = {apply_cmp(op, 0, 0), apply_cmp(op, 0, 1), apply_cmp(op, 1, 0)};
    std::vector<uint32_t> dig(2);
    for (State q = 0; q < 3; ++q)
        for (Symbol s = 0; s < a.size(); ++s) {
            a.unpack(s, dig);
            d.next(q, s) = dig[0] < dig[1] ? 1 : dig[0] > dig[1] ? 2 : q;
        }
    d.saturated = true;
    return {std::move(d), {"x", "y"}};
}

// x op c over track (x), by hard-coding the digit prefix of c. State (i, rel)
// records how the low i digits of x compare with the low i digits of c; once
// past the digits of c, any nonzero digit of x makes x greater for good.
inline RelationAutomaton const_relation(uint32_t k, CmpOp op, uint64_t c) {
    if (k < 2) throw std::invalid_argument("const_relation: base must be >= 2");
    TupleAlphabet a(k, 1);
    std::vector<uint32_t> cdig = lsd_digits(c, k);
    const uint32_t len = static_cast<uint32_t>(cdig.size());

    // states: (i, rel) for i in [0, len), rel in {eq, lt, gt}, packed as
    // 3*i + rel; then three absorbing-ish states at i = len.
    auto id = [&](uint32_t i, uint32_t rel) { return 3 * i + rel; };
    Dfa d(a, 3 * (len + 1));
    d.initial = id(0, 0);
    for (uint32_t i = 0; i <= len; ++i)
        for (uint32_t rel = 0; rel < 3; ++rel) {
            State q = id(i, rel);
            // a word ending here: if digits of c remain, their value dominates
            int64_t verdict = i < len ? -1 : (rel == 0 ? 0 : rel == 1 ? -1 : 1);
            d.final_mask[q] = apply_cmp(op, verdict, 0);
            for (Symbol s = 0; s < k; ++s) {
                if (i < len) {
                    uint32_t rel2 = s < cdig[i] ? 1 : s > cdig[i] ? 2 : rel;
                    d.next(q, s) = id(i + 1, rel2);
                } else {
                    d.next(q, s) = s > 0 ? id(len, 2) : q;
                }
            }
        }
    d.saturated = true;
    return {std::move(d), {"x"}};
}

// x = r (mod m) over track (x). LSD-first needs the running residue and the
// current place value k^pos mod m; states are such pairs, trimmed to the
// reachable ones.
inline RelationAutomaton residue(uint32_t k, uint64_t m, uint64_t r) {
    if (k < 2) throw std::invalid_argument("residue: base must be >= 2");
    if (m < 1 || m > 4096) throw std::invalid_argument("residue: modulus out of range");
    if (r >= m) throw std::invalid_argument("residue: remainder out of range");
    TupleAlphabet a(k, 1);
    auto id = [&](uint64_t acc, uint64_t place) { return static_cast<State>(acc * m + place); };
    Dfa d(a, static_cast<uint32_t>(m * m));
    d.initial = id(0, 1 % m);
    for (uint64_t acc = 0; acc < m; ++acc)
        for (uint64_t place = 0; place < m; ++place) {
            State q = id(acc, place);
            d.final_mask[q] = acc == r;
            for (Symbol s = 0; s < k; ++s)
                d.next(q, s) = id((acc + s * place) % m, (place * k) % m);
        }
    d.saturated = true;
    Dfa trimmed = canonical_renumber(d);
    return {std::move(trimmed), {"x"}};
}

} // namespace autoseq
