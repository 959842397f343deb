#include <conlab/entail.hpp>

#include <conlab/gl.hpp>

#include <deque>
#include <map>

namespace conlab::entail {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Provable: return "Provable";
        case Verdict::Refutable: return "Refutable";
        case Verdict::Independent: return "Independent";
        case Verdict::Unknown: return "Unknown";
    }
    throw Error("bad verdict");
}

Verdict GlProvider::entails(const std::vector<modal::MPtr>& context,
                            const modal::MPtr& goal) const {
    modal::MPtr c = modal::conjoin(context);
    modal::MPtr fwd = modal::mimplies(c, goal);
    modal::MPtr bwd = modal::mimplies(c, modal::mnot(goal));
    if (valuation_) {
        fwd = closed_form::close_under(fwd, *valuation_);
        bwd = closed_form::close_under(bwd, *valuation_);
    }
    if (gl::provable(fwd)) return Verdict::Provable;
    if (gl::provable(bwd)) return Verdict::Refutable;
    return Verdict::Independent;
}

Verdict entails(const std::vector<modal::MPtr>& context, const modal::MPtr& goal,
                const GlProvider& provider) {
    return provider.entails(context, goal);
}

const SchematicFact& FactStore::add(SchematicFact fact) {
    if (find(fact.id)) throw Error("duplicate fact id: " + fact.id);
    facts_.push_back(std::move(fact));
    return facts_.back();
}

const SchematicFact& FactStore::add(std::string id, fo::FormulaPtr sentence,
                                    std::string provenance) {
    return add(SchematicFact{std::move(id), std::move(sentence), std::move(provenance)});
}

const SchematicFact* FactStore::find(const std::string& id) const {
    for (const auto& f : facts_)
        if (f.id == id) return &f;
    return nullptr;
}

void SchematicProver::register_monotone(MonotoneRule rule) {
    rules_.push_back(std::move(rule));
}

namespace {

struct FormulaLess {
    bool operator()(const fo::FormulaPtr& a, const fo::FormulaPtr& b) const {
        return fo::formula_cmp(a, b) < 0;
    }
};
struct TermLess {
    bool operator()(const fo::TermPtr& a, const fo::TermPtr& b) const {
        return fo::term_cmp(a, b) < 0;
    }
};

void ground_subterms(const fo::TermPtr& t, std::set<fo::TermPtr, TermLess>& out) {
    if (!t) return;
    if (fo::free_variables(t).empty()) out.insert(t);
    ground_subterms(t->a, out);
    ground_subterms(t->b, out);
}

void ground_subterms(const fo::FormulaPtr& f, std::set<fo::TermPtr, TermLess>& out) {
    if (!f) return;
    ground_subterms(f->ta, out);
    ground_subterms(f->tb, out);
    ground_subterms(f->fa, out);
    ground_subterms(f->fb, out);
}

void and_subformulas(const fo::FormulaPtr& f, std::set<fo::FormulaPtr, FormulaLess>& out) {
    if (f->kind != fo::FormulaKind::And) return;
    out.insert(f);
    and_subformulas(f->fa, out);
    and_subformulas(f->fb, out);
}

struct Saturation {
    std::set<fo::FormulaPtr, FormulaLess> derived;
    std::deque<fo::FormulaPtr> queue;
    // implications seen so far, grouped by antecedent
    std::map<fo::FormulaPtr, std::vector<fo::FormulaPtr>, FormulaLess> pending;
    uint64_t steps_left;

    bool add(const fo::FormulaPtr& f) {
        if (!derived.insert(f).second) return false;
        queue.push_back(f);
        return true;
    }
    bool has(const fo::FormulaPtr& f) const { return derived.count(f) > 0; }
    // one rule application; false once the budget is gone
    bool spend() { return steps_left == 0 ? false : (--steps_left, true); }
};

} // namespace

Verdict SchematicProver::entails(const std::vector<fo::FormulaPtr>& context,
                                 const fo::FormulaPtr& goal, Budget budget) const {
    if (budget.max_steps == 0) throw Error("budget must be positive");

    Saturation s;
    s.steps_left = budget.max_steps;

    std::set<fo::TermPtr, TermLess> pool_set;
    for (const auto& f : context) {
        s.add(f);
        ground_subterms(f, pool_set);
    }
    if (facts_)
        for (const auto& fact : facts_->all()) {
            s.add(fact.sentence);
            ground_subterms(fact.sentence, pool_set);
        }
    ground_subterms(goal, pool_set);
    std::vector<fo::TermPtr> pool(pool_set.begin(), pool_set.end());

    std::set<fo::FormulaPtr, FormulaLess> wanted_ands;
    and_subformulas(goal, wanted_ands);

    const fo::FormulaPtr refutation = fo::lnot(goal);
    bool refuted = false;

    auto note = [&](const fo::FormulaPtr& f) {
        if (fo::formula_eq(f, refutation)) refuted = true;
        if (goal->kind == fo::FormulaKind::Not && fo::formula_eq(f, goal->fa)) refuted = true;
    };
    for (const auto& f : s.derived) note(f);

    while (!s.queue.empty()) {
        fo::FormulaPtr f = s.queue.front();
        s.queue.pop_front();

        if (f->kind == fo::FormulaKind::Bottom) return Verdict::Provable;
        if (fo::formula_eq(f, goal)) return Verdict::Provable;
        note(f);

        switch (f->kind) {
            case fo::FormulaKind::And:
                if (!s.spend()) return Verdict::Unknown;
                s.add(f->fa);
                s.add(f->fb);
                break;
            case fo::FormulaKind::Implies: {
                if (s.has(f->fa)) {
                    if (!s.spend()) return Verdict::Unknown;
                    s.add(f->fb);
                } else {
                    s.pending[f->fa].push_back(f->fb);
                }
                for (const auto& rule : rules_) {
                    if (!s.spend()) return Verdict::Unknown;
                    s.add(fo::implies(rule.map(f->fa), rule.map(f->fb)));
                }
                break;
            }
            case fo::FormulaKind::ForAll:
                for (const auto& t : pool) {
                    if (!s.spend()) return Verdict::Unknown;
                    s.add(fo::substitute(f->fa, f->var, t));
                }
                break;
            default:
                break;
        }

        // modus ponens against implications that were waiting on f
        if (auto it = s.pending.find(f); it != s.pending.end()) {
            for (const auto& conseq : it->second) {
                if (!s.spend()) return Verdict::Unknown;
                s.add(conseq);
            }
            s.pending.erase(it);
        }

        // conjunction introduction, only toward conjunctions the goal needs
        for (const auto& w : wanted_ands) {
            if (s.has(w) || !s.has(w->fa) || !s.has(w->fb)) continue;
            if (!s.spend()) return Verdict::Unknown;
            s.add(w);
        }
    }

    if (s.has(goal)) return Verdict::Provable;
    return refuted ? Verdict::Refutable : Verdict::Unknown;
}

} // namespace conlab::entail
