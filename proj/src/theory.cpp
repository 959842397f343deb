#include <conlab/theory.hpp>

#include <conlab/coding.hpp>
#include <conlab/common.hpp>

namespace conlab::theory {

using namespace fo;

TheoryDescriptor make_theory_from_axiom_codes(const std::string& name,
                                              const std::vector<FormulaPtr>& axioms) {
    if (axioms.empty()) throw Error("theory needs at least one axiom");
    FormulaPtr rec;
    for (auto it = axioms.rbegin(); it != axioms.rend(); ++it) {
        if (!is_closed(*it)) throw Error("theory axiom must be a sentence");
        FormulaPtr clause = equal(variable(0), numeral(LazyNat(coding::encode(*it))));
        rec = rec ? lor(std::move(clause), std::move(rec)) : std::move(clause);
    }
    return TheoryDescriptor{name, std::move(rec), "cantor-pair-tags-v1"};
}

const TheoryDescriptor& ea() {
    static const TheoryDescriptor t = [] {
        const TermPtr x = variable(0);
        const TermPtr y = variable(1);
        auto both = [](FormulaPtr f) { return forall(0, forall(1, std::move(f))); };
        std::vector<FormulaPtr> axioms;
        axioms.push_back(forall(0, lnot(equal(succ(x), zero()))));
        axioms.push_back(both(implies(equal(succ(x), succ(y)), equal(x, y))));
        axioms.push_back(forall(0, equal(sum(x, zero()), x)));
        axioms.push_back(both(equal(sum(x, succ(y)), succ(sum(x, y)))));
        axioms.push_back(forall(0, equal(product(x, zero()), zero())));
        axioms.push_back(both(equal(product(x, succ(y)), sum(product(x, y), x))));
        axioms.push_back(forall(0, equal(exp(x, zero()), succ(zero()))));
        axioms.push_back(both(equal(exp(x, succ(y)), product(exp(x, y), x))));
        axioms.push_back(forall(0, lnot(less(x, zero()))));
        axioms.push_back(both(land(
            implies(less(x, succ(y)), lor(less(x, y), equal(x, y))),
            implies(lor(less(x, y), equal(x, y)), less(x, succ(y))))));
        return make_theory_from_axiom_codes("EA", axioms);
    }();
    return t;
}

const TheoryDescriptor& toy() {
    static const TheoryDescriptor t = [] {
        std::vector<FormulaPtr> axioms;
        axioms.push_back(equal(zero(), zero()));
        axioms.push_back(lnot(less(zero(), zero())));
        return make_theory_from_axiom_codes("toy", axioms);
    }();
    return t;
}

} // namespace conlab::theory
