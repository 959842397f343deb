#pragma once
// Decision procedure for provability logic (K plus the Löb rule) by
// backward sequent search: invertible propositional rules to saturation,
// then the Löb-style box rule with backtracking over the boxed succedents.
// A failed search assembles a finite transitive irreflexive tree that
// refutes the formula at its root.
#include <conlab/modal.hpp>

#include <optional>
#include <vector>

namespace conlab::gl {

struct Countermodel {
    // worlds in depth-first order, 0 is the root; the accessibility
    // relation is proper descendant in this tree
    std::vector<int> parent;                        // parent[0] == -1
    std::vector<std::set<uint32_t>> true_atoms;     // per world

    size_t size() const { return parent.size(); }
};

struct Result {
    bool provable;
    std::optional<Countermodel> countermodel; // present iff not provable
};

Result prove(const modal::MPtr& f);
bool provable(const modal::MPtr& f);

// Truth at a world of the model; diamonds are handled by normalization.
bool eval_at(const Countermodel& m, const modal::MPtr& f, int world);

} // namespace conlab::gl
