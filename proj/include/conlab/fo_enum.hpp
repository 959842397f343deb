#pragma once
// Exhaustive size-ordered streams of terms and formulas over a small fixed
// pool (variables x0, x1), for sweep tests. Deterministic: same size, same
// order, every run.
#include <conlab/fo.hpp>

#include <vector>

namespace conlab::fo_enum {

// size = node count; size-1 terms are 0, x0, x1
const std::vector<fo::TermPtr>& terms_of_size(unsigned n);
const std::vector<fo::FormulaPtr>& formulas_of_size(unsigned n);

// concatenation of sizes 1..n in order
std::vector<fo::FormulaPtr> formulas_up_to(unsigned n);

} // namespace conlab::fo_enum
