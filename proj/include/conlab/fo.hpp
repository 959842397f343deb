#pragma once

// First-order arithmetic syntax: terms over 0, S, +, *, exp and variables,
// formulas over =, <, the propositional connectives and (bounded) quantifiers.
// Nodes are immutable and shared; all operations are purely structural.

#include <conlab/common.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

namespace conlab::fo {

class Term;
class Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

// Every non-materialized code value exceeds this many bits (the encoder
// only falls back to a marker past its cap), so a marker always denotes a
// larger number than any concrete value below the floor.
inline constexpr unsigned kMarkerFloorBits = 1u << 20;

// Natural number that is either materialized or known only as "the code of
// this formula, plus an offset" when materializing the code would exceed the
// coding resource cap. Equality is exact for concrete values and for
// offset-free markers (codes are injective and the encoder deterministic);
// once offsets enter, marker comparisons read the representation.
class LazyNat {
public:
    LazyNat() : value_(0) {}
    LazyNat(BigNat v) : value_(std::move(v)) {}
    LazyNat(unsigned long v) : value_(v) {}
    static LazyNat code_of(FormulaPtr f);

    bool is_code_marker() const { return static_cast<bool>(code_of_); }
    // pre: !is_code_marker()
    const BigNat& value() const;
    const FormulaPtr& marked_formula() const { return code_of_; }
    // pre: is_code_marker(); successors stacked on top of the quoted code
    const BigNat& marker_offset() const { return value_; }

    bool equals(const LazyNat& o) const;
    // Deterministic total order used for canonical sorting; agrees with the
    // numeric order on materialized values.
    int compare(const LazyNat& o) const;

    LazyNat plus(const BigNat& n) const;

private:
    BigNat value_;     // concrete value, or the run-offset added on top of a marker
    FormulaPtr code_of_;
};

enum class TermKind : uint8_t { Zero, Succ, Sum, Product, Exp, Variable };
enum class FormulaKind : uint8_t {
    Equal, Less, Bottom, Top, Not, And, Or, Implies,
    ForAll, Exists, BoundedForAll, BoundedExists
};

// Saturating size cap; anything at the cap is "too large to count exactly".
inline constexpr uint64_t kSizeCap = uint64_t(1) << 62;

class Term {
public:
    TermKind kind;
    LazyNat succ_run;        // Succ: number of S applications (>= 1)
    TermPtr a, b;            // Succ: base in a; binary ops in a,b
    uint32_t var = 0;        // Variable
    uint64_t size_clamped;   // node count, saturated at kSizeCap
    uint32_t depth_clamped;
    bool has_marker;         // contains a non-materialized numeral run

    Term(TermKind k, LazyNat run, TermPtr a_, TermPtr b_, uint32_t v);
};

class Formula {
public:
    FormulaKind kind;
    TermPtr ta, tb;          // Equal/Less operands; bounded quantifier bound in ta
    FormulaPtr fa, fb;
    uint32_t var = 0;        // quantifier variable index
    uint64_t size_clamped;
    uint32_t depth_clamped;
    bool has_marker;

    Formula(FormulaKind k, TermPtr ta_, TermPtr tb_, FormulaPtr fa_, FormulaPtr fb_, uint32_t v);
};

// --- constructors -----------------------------------------------------------

TermPtr zero();
TermPtr succ(TermPtr t);                  // merges into an existing run
TermPtr succ_run(LazyNat n, TermPtr t);   // n may be 0 (returns t)
TermPtr sum(TermPtr a, TermPtr b);
TermPtr product(TermPtr a, TermPtr b);
TermPtr exp(TermPtr a, TermPtr b);
TermPtr variable(uint32_t index);
TermPtr numeral(LazyNat n); // iterated successor of zero
// The numeral value when t is one (zero or a successor run on zero).
std::optional<LazyNat> as_numeral(const TermPtr& t);

FormulaPtr equal(TermPtr a, TermPtr b);
FormulaPtr less(TermPtr a, TermPtr b);
FormulaPtr bottom();
FormulaPtr top();
FormulaPtr lnot(FormulaPtr a);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(uint32_t v, FormulaPtr a);
FormulaPtr exists(uint32_t v, FormulaPtr a);
// pre: bound does not contain the bound variable (throws Error)
FormulaPtr bounded_forall(uint32_t v, TermPtr bound, FormulaPtr a);
FormulaPtr bounded_exists(uint32_t v, TermPtr bound, FormulaPtr a);

// --- structural operations --------------------------------------------------

bool term_eq(const TermPtr& a, const TermPtr& b);
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);
// Total deterministic order (kind, then components); used for canonical sorts.
int term_cmp(const TermPtr& a, const TermPtr& b);
int formula_cmp(const FormulaPtr& a, const FormulaPtr& b);

std::set<uint32_t> free_variables(const TermPtr& t);
std::set<uint32_t> free_variables(const FormulaPtr& f);
bool is_closed(const FormulaPtr& f);

TermPtr substitute(const TermPtr& t, uint32_t v, const TermPtr& repl);
// Capture-avoiding; a bound variable that would capture is renamed to the
// smallest index free in neither the body nor the replacement term.
FormulaPtr substitute(const FormulaPtr& f, uint32_t v, const TermPtr& repl);

// Exact node count; absent when the formula contains a non-materialized run.
std::optional<BigNat> node_count(const FormulaPtr& f);
std::optional<BigNat> node_count(const TermPtr& t);

// Right-nested conjunction of the sentences in canonical order
// (structural order above); empty list gives Top, singleton the sentence.
FormulaPtr conjoin(std::vector<FormulaPtr> sentences);

// Containment descends through code markers, so a numeral kept as the code of
// a formula contains everything that formula contains.
bool contains_subterm(const TermPtr& haystack, const TermPtr& needle);
bool contains_subterm(const FormulaPtr& haystack, const TermPtr& needle);
bool contains_subformula(const FormulaPtr& haystack, const FormulaPtr& needle);

} // namespace conlab::fo
