#pragma once
// Injective numbering of terms and formulas. A node is coded as
// pair(tag, payload) with the Cantor pairing function; numerals are coded as
// iterated successor applications, so code sizes roughly double per
// successor. Encoding aborts past kMarkerFloorBits (every abort therefore
// certifies that the true code exceeds that floor), and quote falls back to
// a non-materialized numeral carrying the formula itself.
#include <conlab/fo.hpp>

#include <optional>
#include <utility>

namespace conlab::coding {

BigNat pair(const BigNat& a, const BigNat& b);
std::pair<BigNat, BigNat> unpair(const BigNat& z);

// node tags (frozen; changing them invalidates every recorded code)
enum Tag : unsigned {
    kTagZero = 0, kTagBottom = 1, kTagEqual = 2, kTagTop = 3,
    kTagNot = 4, kTagImplies = 5, kTagAnd = 6, kTagOr = 7,
    kTagSucc = 8, kTagVariable = 9, kTagForAll = 10, kTagExists = 11,
    kTagLess = 12, kTagSum = 13, kTagProduct = 14, kTagExp = 15,
    kTagBoundedForAll = 16, kTagBoundedExists = 17,
};

// Throw ResourceError when any intermediate exceeds kMarkerFloorBits bits.
BigNat encode(const fo::TermPtr& t);
BigNat encode(const fo::FormulaPtr& f);

// The code as a number that may stay symbolic; total on marker-free input.
fo::LazyNat code_nat(const fo::FormulaPtr& f);

// Numeral of the code (the quotation used in arithmetized statements).
fo::TermPtr quote(const fo::FormulaPtr& f);

struct DecodeLimits {
    unsigned max_input_bits = 1u << 20;
    uint64_t max_nodes = 1u << 20;
};

// Total on its domain: nullopt means the number codes nothing of that sort.
// Inputs past the limits raise ResourceError instead of deciding.
std::optional<fo::TermPtr> decode_term(const BigNat& z, DecodeLimits limits = {});
std::optional<fo::FormulaPtr> decode(const BigNat& z, DecodeLimits limits = {});

} // namespace conlab::coding
