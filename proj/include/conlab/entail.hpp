#pragma once
// One contract for "does T plus the context entail the goal?", served by two
// providers. The GL provider decides modal queries outright (it doubles as
// the classical-provability face and as the oracle that settles consistency
// questions). The schematic prover works on arithmetic sentences by budgeted
// forward saturation over registered facts and rules; it is sound but
// incomplete and signals exhaustion with Unknown instead of guessing.
#include <conlab/closed_form.hpp>
#include <conlab/fo.hpp>
#include <conlab/modal.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace conlab::entail {

enum class Verdict : uint8_t { Provable, Refutable, Independent, Unknown };

std::string to_string(Verdict v);

// Rule-application allowance for one schematic query. Decidable providers
// ignore budgets.
struct Budget {
    uint64_t max_steps = 4096; // positive
};

// Decides context |- goal with two GL runs over C = conjoined context:
// Valid(C -> goal) gives Provable, otherwise Valid(C -> ~goal) gives
// Refutable, two countermodels give Independent. An inconsistent context
// passes both runs and lands on Provable (explosion). Never Unknown.
//
// Schematic by default: atoms stay in place, so the verdict is uniform in
// them. Constructed with a valuation, the provider closes atoms off first
// (an atom models a decided Delta0 fact, which a sound base theory settles
// the same way the valuation does).
class GlProvider {
public:
    GlProvider() = default;
    explicit GlProvider(closed_form::Valuation v) : valuation_(std::move(v)) {}

    Verdict entails(const std::vector<modal::MPtr>& context, const modal::MPtr& goal) const;

    bool valued() const { return valuation_.has_value(); }

private:
    std::optional<closed_form::Valuation> valuation_;
};

Verdict entails(const std::vector<modal::MPtr>& context, const modal::MPtr& goal,
                const GlProvider& provider = GlProvider());

// Assumption available to the schematic prover, with a record of what
// licenses it. Facts only ever feed the antecedent side of a query; nothing
// here asserts them as theorems.
struct SchematicFact {
    std::string id;
    fo::FormulaPtr sentence;
    std::string provenance;
};

// Append-only; populate before any concurrent query phase.
class FactStore {
public:
    // id must be fresh (throws Error on a duplicate)
    const SchematicFact& add(SchematicFact fact);
    const SchematicFact& add(std::string id, fo::FormulaPtr sentence, std::string provenance);

    const SchematicFact* find(const std::string& id) const; // null when absent
    const std::vector<SchematicFact>& all() const { return facts_; }

private:
    std::vector<SchematicFact> facts_;
};

// From a derived implication (a -> b), license (map(a) -> map(b)). The map
// must be monotone over the intended theory; the prover trusts the
// registration.
struct MonotoneRule {
    std::string name;
    std::function<fo::FormulaPtr(const fo::FormulaPtr&)> map;
};

// Forward saturation from the context plus every stored fact: conjunction
// elimination, modus ponens, universal instantiation at ground subterms of
// the query, conjunction introduction toward the goal, and the monotone
// rules. Each rule application spends one budget step.
class SchematicProver {
public:
    explicit SchematicProver(const FactStore* facts = nullptr) : facts_(facts) {}

    void register_monotone(MonotoneRule rule);

    // Provable once the goal (or bottom) is derived, Refutable when
    // saturation finishes having derived the goal's negation, Unknown on
    // budget exhaustion or a completed search that settled nothing.
    Verdict entails(const std::vector<fo::FormulaPtr>& context, const fo::FormulaPtr& goal,
                    Budget budget = Budget()) const;

private:
    const FactStore* facts_;
    std::vector<MonotoneRule> rules_;
};

} // namespace conlab::entail
