#pragma once
// Brute-force semantic check, independent of the sequent machinery: searches
// every transitive irreflexive tree up to a world bound, with every atom
// labeling, for a root refutation. Sound and complete for provability logic
// when the bound is at least the one below (small models suffice at these
// sizes; the tests cross-validate the bound against the prover).
#include <conlab/gl.hpp>
#include <conlab/modal.hpp>

#include <optional>

namespace conlab::kripke {

std::optional<gl::Countermodel> find_refutation(const modal::MPtr& f, unsigned max_worlds);

inline unsigned suggested_world_bound(const modal::MPtr& f) { return f->size; }

bool oracle_provable(const modal::MPtr& f, unsigned max_worlds);
inline bool oracle_provable(const modal::MPtr& f) {
    return oracle_provable(f, suggested_world_bound(f));
}

} // namespace conlab::kripke
