#include <conlab/certificate.hpp>

#include <conlab/fo_text.hpp>

#include <map>

namespace conlab::cert {

using fo::FormulaKind;
using fo::FormulaPtr;

namespace {

struct FormulaLess {
    bool operator()(const FormulaPtr& a, const FormulaPtr& b) const {
        return fo::formula_cmp(a, b) < 0;
    }
};

// Propositional skeleton: connectives recurse, anything else is an atom.
struct Skeleton {
    std::map<FormulaPtr, size_t, FormulaLess> atoms;

    size_t atom_id(const FormulaPtr& f) {
        auto [it, fresh] = atoms.emplace(f, atoms.size());
        if (fresh && atoms.size() > 20)
            throw ResourceError("propositional check past 20 atoms");
        return it->second;
    }

    bool eval(const FormulaPtr& f, uint32_t assignment) {
        switch (f->kind) {
            case FormulaKind::Bottom: return false;
            case FormulaKind::Top: return true;
            case FormulaKind::Not: return !eval(f->fa, assignment);
            case FormulaKind::And: return eval(f->fa, assignment) && eval(f->fb, assignment);
            case FormulaKind::Or: return eval(f->fa, assignment) || eval(f->fb, assignment);
            case FormulaKind::Implies:
                return !eval(f->fa, assignment) || eval(f->fb, assignment);
            default: return (assignment >> atom_id(f)) & 1u;
        }
    }

    void collect(const FormulaPtr& f) {
        switch (f->kind) {
            case FormulaKind::Bottom:
            case FormulaKind::Top: return;
            case FormulaKind::Not: collect(f->fa); return;
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Implies:
                collect(f->fa);
                collect(f->fb);
                return;
            default: atom_id(f); return;
        }
    }
};

} // namespace

bool propositional_consequence(const std::vector<FormulaPtr>& premises, const FormulaPtr& claim) {
    Skeleton sk;
    for (const auto& p : premises) sk.collect(p);
    sk.collect(claim);
    for (uint32_t a = 0; a < (1u << sk.atoms.size()); ++a) {
        bool all = true;
        for (const auto& p : premises)
            if (!sk.eval(p, a)) {
                all = false;
                break;
            }
        if (all && !sk.eval(claim, a)) return false;
    }
    return true;
}

namespace {

struct Checker {
    const Certificate& c;
    const entail::FactStore& facts;
    const entail::MonotoneRule* mono;

    std::string why;

    bool cited(size_t idx, size_t from) {
        if (idx < from) return true;
        why = "cites step " + std::to_string(idx) + " which is not prior";
        return false;
    }

    bool step_ok(size_t idx) {
        const Step& st = c.steps[idx];
        return std::visit([&](const auto& j) { return check(idx, st.claim, j); }, st.how);
    }

    bool check(size_t idx, const FormulaPtr& claim, const Logic& j) {
        std::vector<FormulaPtr> premises;
        for (size_t s : j.steps) {
            if (!cited(s, idx)) return false;
            premises.push_back(c.steps[s].claim);
        }
        for (const auto& f : facts.all()) premises.push_back(f.sentence);
        if (propositional_consequence(premises, claim)) return true;
        why = "not a propositional consequence of the cited steps and facts";
        return false;
    }

    bool check(size_t idx, const FormulaPtr& claim, const Instantiation& j) {
        if (!cited(j.step, idx)) return false;
        FormulaPtr body = c.steps[j.step].claim;
        for (const auto& t : j.terms) {
            if (body->kind != FormulaKind::ForAll) {
                why = "instantiation of a non-universal claim";
                return false;
            }
            body = fo::substitute(body->fa, body->var, t);
        }
        if (fo::formula_eq(body, claim)) return true;
        why = "claim differs from the instantiated body";
        return false;
    }

    bool check(size_t, const FormulaPtr& claim, const FactRef& j) {
        const entail::SchematicFact* f = facts.find(j.id);
        if (!f) {
            why = "fact " + j.id + " is not registered";
            return false;
        }
        if (fo::formula_eq(f->sentence, claim)) return true;
        why = "claim differs from fact " + j.id;
        return false;
    }

    bool check(size_t idx, const FormulaPtr& claim, const Monotonicity& j) {
        if (!mono) {
            why = "no monotone map registered with the checker";
            return false;
        }
        if (!cited(j.step, idx)) return false;
        const FormulaPtr& base = c.steps[j.step].claim;
        if (base->kind != FormulaKind::Implies) {
            why = "monotonicity applied to a non-implication";
            return false;
        }
        if (fo::formula_eq(claim, fo::implies(mono->map(base->fa), mono->map(base->fb))))
            return true;
        why = "claim differs from the mapped implication";
        return false;
    }

    bool check(size_t idx, const FormulaPtr& claim, const PriorStep& j) {
        if (!cited(j.step, idx)) return false;
        if (fo::formula_eq(claim, c.steps[j.step].claim)) return true;
        why = "claim differs from the restated step";
        return false;
    }
};

} // namespace

CheckResult check_certificate(const Certificate& c, const entail::FactStore& facts,
                              const entail::MonotoneRule* mono) {
    Checker ch{c, facts, mono, {}};
    for (size_t i = 0; i < c.steps.size(); ++i)
        if (!ch.step_ok(i))
            return {false, i, "step " + std::to_string(i) + ": " + ch.why};
    return {true, std::nullopt, {}};
}

std::string to_text(const Certificate& c) {
    std::string out;
    for (size_t i = 0; i < c.steps.size(); ++i) {
        out += std::to_string(i);
        out += " | ";
        out += fo_text::print_display(c.steps[i].claim);
        out += " | ";
        const auto& how = c.steps[i].how;
        if (auto* l = std::get_if<Logic>(&how)) {
            out += "logic";
            for (size_t s : l->steps) out += " " + std::to_string(s);
        } else if (auto* ins = std::get_if<Instantiation>(&how)) {
            out += "inst " + std::to_string(ins->step) + " [";
            for (size_t k = 0; k < ins->terms.size(); ++k) {
                if (k) out += ", ";
                out += fo_text::print_display(ins->terms[k]);
            }
            out += "]";
        } else if (auto* f = std::get_if<FactRef>(&how)) {
            out += "fact " + f->id;
        } else if (auto* m = std::get_if<Monotonicity>(&how)) {
            out += "mono " + std::to_string(m->step);
        } else {
            out += "prior " + std::to_string(std::get<PriorStep>(how).step);
        }
        out += "\n";
    }
    return out;
}

} // namespace conlab::cert
