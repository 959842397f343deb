#pragma once
// Object-level templates over the coded syntax: a proof predicate for a
// recognizer-presented theory, consistency statements and their iterates, a
// partial-truth template per quantifier level, the diagonal construction, and
// the bridge sentence used by the certified derivations. Everything here is
// syntax to be inspected, classified and substituted into; none of it is ever
// run as a decision procedure. docs/proof_coding.md and
// docs/substitution_function.md record the conventions these shapes commit to.

#include <conlab/classify.hpp>
#include <conlab/entail.hpp>
#include <conlab/fo.hpp>
#include <conlab/theory.hpp>

#include <cstdint>
#include <functional>
#include <string>

namespace conlab::arith {

// Frozen variable conventions. The proof predicate keeps its recognizer slot
// at index 0 so the theory's recognizer appears verbatim; its own scratch
// variables start at 4 and template helpers allocate above their arguments.
inline constexpr uint32_t kVarConclusionSlot = 0;
inline constexpr uint32_t kVarProofCode = 1;
inline constexpr uint32_t kVarProvedCode = 2;
inline constexpr uint32_t kVarTruthInput = 1;

// How many predicate-logic axiom schemas a logic-axiom line may cite. The
// schema list itself is normative in docs/logic_axioms.md; proof codes only
// carry the schema number.
inline constexpr uint64_t kLogicSchemaCount = 12;

// s = <a, b> under the Cantor pairing. Quantifier-free.
fo::FormulaPtr pair_eq(fo::TermPtr s, fo::TermPtr a, fo::TermPtr b);

// e is the i-th entry of the sequence coded s (pair of a value and a modulus
// base, entries read off by division with remainder). Bounded quantifiers
// only; scratch variables sit above everything in the arguments.
fo::FormulaPtr beta_eq(fo::TermPtr s, fo::TermPtr i, fo::TermPtr e);

// c = pair(tag, pair(a, b)): c codes the binary node with that tag built on
// the codes a and b. The two instances the library uses by name:
fo::FormulaPtr implication_code_eq(fo::TermPtr c, fo::TermPtr a, fo::TermPtr b);
fo::FormulaPtr and_code_eq(fo::TermPtr c, fo::TermPtr a, fo::TermPtr b);

// Proof(p, x): p codes a derivation of the formula coded x from logic axioms
// and T's axioms by modus ponens, in the line format of docs/proof_coding.md.
// Free variables are exactly {kVarProofCode, kVarProvedCode}; the recognizer
// is embedded verbatim with its input rebound to the per-line conclusion.
// Classification matches the recognizer: bounded recognizers give a bounded
// predicate, a one-existential-block recognizer lifts it to one block.
fo::FormulaPtr build_proof_predicate(const theory::TheoryDescriptor& T);

// Con_T(phi) for a sentence phi: no p is a proof of phi -> bottom. The code
// of phi -> bottom enters as a quoted numeral, so the result syntactically
// contains phi. Single unbounded universal block over a bounded matrix.
fo::FormulaPtr build_con(const theory::TheoryDescriptor& T, const fo::FormulaPtr& phi);

// Con_T as a predicate of the free variable x: no p proves the implication
// from the formula coded x to bottom. The witness for that implication's code
// is found under a bound, so the whole thing stays one universal block.
fo::FormulaPtr con_predicate(const theory::TheoryDescriptor& T, uint32_t x);

// Truth template for the level-k universal class, k >= 1: k alternating
// unbounded quantifiers starting universal over a bounded matrix that reads a
// satisfaction trace. Free variable exactly {kVarTruthInput}. This is a
// structural stand-in with the right classification, not an evaluator.
fo::FormulaPtr build_partial_truth(unsigned k);

// The self-reference step. For psi with one free variable v, the defining
// frame is delta(x) = forall y (diag_sub(x, y) -> psi[v := y]) with x, y
// fresh, and the result sentence is delta at the numeral of delta's own code.
struct DiagonalResult {
    fo::FormulaPtr sentence;
    fo::FormulaPtr defining_formula; // the input psi, kept for recomputation
    fo::FormulaPtr frame;            // delta, one free variable
};
DiagonalResult diagonal(const fo::FormulaPtr& psi);

// y codes the result of substituting x's own numeral into the formula coded
// x (the shape docs/substitution_function.md fixes). Bounded quantifiers only.
fo::FormulaPtr diag_sub(fo::TermPtr x, fo::TermPtr y);

// u strictly precedes w among ordinal notation codes (finite below finite,
// every finite below omega). Bounded quantifiers only.
fo::FormulaPtr ordinal_prec(fo::TermPtr u, fo::TermPtr w);

// Numeric code of a notation: finite n is pair(0, n), omega is pair(1, 0).
BigNat notation_code(const theory::OrdinalNotation& alpha);

// Iterated consistency. Finite stages unfold: stage 0 is top, stage n+1 is
// Con_T(phi and stage n). The omega stage is the diagonal fixed point saying
// every notation below omega has a consistent stage instance along the coded
// iteration; its defining formula contains the proof predicate and the
// notation order verbatim.
fo::FormulaPtr build_iterated_con(const theory::TheoryDescriptor& T,
                                  const theory::OrdinalNotation& alpha,
                                  const fo::FormulaPtr& phi);

// forall x forall y ((G(x, y) and True_k(y)) -> Con_T(x)). G must have free
// variables exactly {0, 1} and classify no higher than one existential block.
// The truth template and G appear verbatim.
fo::FormulaPtr build_sentence_A(const fo::FormulaPtr& G, unsigned k,
                                const theory::TheoryDescriptor& T);

// Records the graph instance G(quote phi, quote psi) as an assumed fact,
// after checking that psi really is op applied to phi. The returned fact is
// also added to the store. Rationale: a true one-existential-block sentence
// is provable, and the instance is true by construction.
entail::SchematicFact sigma1_fact(const fo::FormulaPtr& G, const fo::FormulaPtr& phi,
                                  const fo::FormulaPtr& psi,
                                  const std::function<fo::FormulaPtr(const fo::FormulaPtr&)>& op,
                                  entail::FactStore& store, const std::string& op_id);

} // namespace conlab::arith
