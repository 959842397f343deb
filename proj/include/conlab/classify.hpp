#pragma once
// Arithmetical hierarchy placement by syntactic prenexing. Bounded
// quantifiers are transparent; unbounded ones contribute alternation blocks.
// Connectives pull the left operand's prefix out before the right one's, so
// the measured level is exactly that of the explicit left-first prenex form.
#include <conlab/fo.hpp>
#include <string>

namespace conlab::classify {

enum class Shape : uint8_t { Delta, Sigma, Pi };

struct HierarchyLevel {
    Shape shape = Shape::Delta;
    unsigned k = 0; // 0 for Delta, >= 1 otherwise

    bool operator==(const HierarchyLevel&) const = default;
};

inline constexpr HierarchyLevel kDelta0{Shape::Delta, 0};

HierarchyLevel classify(const fo::FormulaPtr& f);

// Inclusion order of the hierarchy classes (partial: Sigma_k and Pi_k are
// incomparable).
bool level_le(HierarchyLevel a, HierarchyLevel b);

std::string to_string(HierarchyLevel lvl);

} // namespace conlab::classify
