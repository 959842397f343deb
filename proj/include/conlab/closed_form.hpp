#pragma once
// Atom-free modal formulas have a decidable normal form: over transitive
// irreflexive trees their truth at a world depends only on the world's
// height (the longest chain below it), and the height-to-truth map is
// eventually constant. Profiles capture that map; two closed formulas are
// interderivable exactly when their profiles match, and a closed formula is
// provable exactly when its profile is identically true.
#include <conlab/modal.hpp>

#include <map>
#include <optional>

namespace conlab::closed_form {

struct Profile {
    std::vector<bool> at;  // truth at heights 0 .. at.size()-1
    bool tail;             // truth at every larger height

    // trimmed so the last stored entry differs from the tail
    void normalize();
    bool value(size_t height) const { return height < at.size() ? at[height] : tail; }
    bool operator==(const Profile&) const = default;
    bool always_true() const;
};

// pre: no atoms (throws Error)
Profile profile(const modal::MPtr& f);

// Canonical formula with the given profile, built from nested boxes of bot.
modal::MPtr to_formula(const Profile& p);

bool provable_closed(const modal::MPtr& f);

// Assignment of truth values to atoms; lookups outside the explicit map use
// the fallback, and with no fallback they throw Error.
struct Valuation {
    std::map<uint32_t, bool> fixed;
    std::optional<bool> fallback;

    bool at(uint32_t atom) const;
    static Valuation all_true() { return {{}, true}; }
};

// Substitutes the valuation's constants for the atoms.
modal::MPtr close_under(const modal::MPtr& f, const Valuation& v);

// Truth under the standard reading: the stable value at large heights, with
// a box counting as true when its body holds at every height below.
bool truth(const modal::MPtr& f, const Valuation& v);

} // namespace conlab::closed_form
