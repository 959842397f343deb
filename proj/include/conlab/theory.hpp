#pragma once
// A theory is presented to the object level by a recognizer: a formula with
// one free variable (index 0) that holds exactly of the codes of the theory's
// axioms. Everything downstream (proof predicates, consistency statements)
// manipulates the recognizer syntactically and never evaluates it.

#include <conlab/fo.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conlab::theory {

struct TheoryDescriptor {
    std::string name;
    // free variables exactly {0}; quantifier-free or bounded-quantifier only
    // for the usual presets, but anything up to one existential block is
    // accepted by the proof-predicate builder.
    fo::FormulaPtr axiom_recognizer;
    // names the pairing/tagging convention the recognizer's codes live in
    std::string coding_scheme_id;
};

// Recognizer is the disjunction of x0 = <code of axiom i>. Axioms must be
// closed; throws Error otherwise.
TheoryDescriptor make_theory_from_axiom_codes(const std::string& name,
                                              const std::vector<fo::FormulaPtr>& axioms);

// Finite core of elementary arithmetic: successor, addition, multiplication
// and exponentiation equations plus the order laws. Built once, cached.
const TheoryDescriptor& ea();

// A two-axiom theory with tiny axiom codes; recognizers stay readable, which
// keeps printed certificates small. Used by docs and goldens.
const TheoryDescriptor& toy();

// Ordinal notations below omega+1: finite stages or omega itself.
// Codes: finite n is pair(0, n), omega is pair(1, 0).
struct OrdinalNotation {
    std::optional<uint64_t> finite;

    static OrdinalNotation nat(uint64_t n) { return OrdinalNotation{n}; }
    static OrdinalNotation omega() { return OrdinalNotation{std::nullopt}; }
    bool is_omega() const { return !finite.has_value(); }
};

} // namespace conlab::theory
