#pragma once
// Replayable derivations over arithmetic sentences. A certificate is a
// numbered list of claims, each licensed by a single justification, checked
// step by step against a fact store; the checker reports the first step
// that fails. Facts are hypotheses: a passing certificate shows its final
// claim follows from the registered facts, nothing stronger.
#include <conlab/entail.hpp>
#include <conlab/fo.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace conlab::cert {

// claim follows propositionally from the cited prior steps together with
// every registered fact
struct Logic {
    std::vector<size_t> steps;
};
// claim is the cited step's claim with leading universal quantifiers
// stripped and their variables replaced by these terms, in order
struct Instantiation {
    size_t step;
    std::vector<fo::TermPtr> terms;
};
// claim is the sentence registered under this id
struct FactRef {
    std::string id;
};
// cited step derived (a -> b); claim is (map(a) -> map(b)) under the
// checker's registered monotone map
struct Monotonicity {
    size_t step;
};
// claim restates the cited step's claim
struct PriorStep {
    size_t step;
};

using Justification = std::variant<Logic, Instantiation, FactRef, Monotonicity, PriorStep>;

struct Step {
    fo::FormulaPtr claim;
    Justification how;
};

struct Certificate {
    std::vector<Step> steps;
};

struct CheckResult {
    bool ok;
    std::optional<size_t> first_failure; // step index, present iff !ok
    std::string detail;
};

// True iff (/\ premises -> claim) is a propositional tautology, reading
// each maximal non-propositional subformula as an atom under structural
// identity. Throws ResourceError past 20 distinct atoms.
bool propositional_consequence(const std::vector<fo::FormulaPtr>& premises,
                               const fo::FormulaPtr& claim);

CheckResult check_certificate(const Certificate& c, const entail::FactStore& facts,
                              const entail::MonotoneRule* mono = nullptr);

// One step per line: "<idx> | <sentence> | <justification>", display
// rendering (code-marker numerals come out as quote[...]).
std::string to_text(const Certificate& c);

} // namespace conlab::cert
