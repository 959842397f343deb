#include <conlab/fo_eval.hpp>

#include <conlab/classify.hpp>

#include <map>
#include <vector>

namespace conlab::fo_eval {

using namespace conlab::fo;

namespace {

struct Evaluator {
    Limits limits;
    uint64_t steps_left;
    std::map<uint32_t, BigNat> env;

    explicit Evaluator(Limits l) : limits(l), steps_left(l.max_steps) {}

    void tick() {
        if (steps_left == 0) throw ResourceError("evaluation step budget exhausted");
        --steps_left;
    }

    const BigNat& check(const BigNat& v) {
        if (msb_bits(v) > limits.max_value_bits)
            throw ResourceError("intermediate value exceeds the evaluation cap");
        return v;
    }

    static unsigned msb_bits(const BigNat& v) {
        return v == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(v)) + 1u;
    }

    BigNat term(const TermPtr& t) {
        tick();
        switch (t->kind) {
            case TermKind::Zero: return 0;
            case TermKind::Variable: {
                auto it = env.find(t->var);
                if (it == env.end()) throw Error("evaluation of an open term");
                return it->second;
            }
            case TermKind::Succ: {
                if (t->succ_run.is_code_marker())
                    throw ResourceError("unmaterialized numeral in arithmetic position");
                BigNat v = term(t->a) + t->succ_run.value();
                check(v);
                return v;
            }
            case TermKind::Sum: {
                BigNat v = term(t->a) + term(t->b);
                check(v);
                return v;
            }
            case TermKind::Product: {
                BigNat v = term(t->a) * term(t->b);
                check(v);
                return v;
            }
            case TermKind::Exp: {
                BigNat base = term(t->a);
                BigNat e = term(t->b);
                if (base == 0) return e == 0 ? 1 : 0;
                if (base == 1) return 1;
                // result needs roughly e * bits(base) bits; reject before computing
                if (e > BigNat(limits.max_value_bits))
                    throw ResourceError("exponent exceeds the evaluation cap");
                BigNat v = boost::multiprecision::pow(base, static_cast<unsigned>(e));
                check(v);
                return v;
            }
        }
        throw Error("unreachable term kind");
    }

    // Exact decision for atoms touching non-materialized numerals, where
    // possible: markers denote values beyond every materialized one.
    bool atom_with_marker(const FormulaPtr& f) {
        auto a = as_numeral(f->ta);
        auto b = as_numeral(f->tb);
        if (a && b) {
            if (f->kind == FormulaKind::Equal) {
                if (a->is_code_marker() && b->is_code_marker() &&
                    !formula_eq(a->marked_formula(), b->marked_formula()) &&
                    (a->marker_offset() != 0 || b->marker_offset() != 0))
                    throw ResourceError("equality of distinct non-materialized numerals with offsets");
                return a->equals(*b);
            }
            if (a->is_code_marker() && b->is_code_marker()) {
                // same quoted code: the offsets decide exactly
                if (formula_eq(a->marked_formula(), b->marked_formula()))
                    return a->marker_offset() < b->marker_offset();
                throw ResourceError("order of two non-materialized numerals");
            }
            const LazyNat& concrete = a->is_code_marker() ? *b : *a;
            if (msb_bits(concrete.value()) > kMarkerFloorBits)
                throw ResourceError("concrete numeral is above the marker floor");
            return b->is_code_marker(); // the marker side is the larger value
        }
        throw ResourceError("non-materialized numeral compared with a compound term");
    }

    bool formula(const FormulaPtr& f) {
        tick();
        switch (f->kind) {
            case FormulaKind::Equal:
                if (term_eq(f->ta, f->tb)) return true;
                if (f->ta->has_marker || f->tb->has_marker) return atom_with_marker(f);
                return term(f->ta) == term(f->tb);
            case FormulaKind::Less:
                if (f->ta->has_marker || f->tb->has_marker) return atom_with_marker(f);
                return term(f->ta) < term(f->tb);
            case FormulaKind::Bottom: return false;
            case FormulaKind::Top: return true;
            case FormulaKind::Not: return !formula(f->fa);
            case FormulaKind::And: return formula(f->fa) && formula(f->fb);
            case FormulaKind::Or: return formula(f->fa) || formula(f->fb);
            case FormulaKind::Implies: return !formula(f->fa) || formula(f->fb);
            case FormulaKind::ForAll:
            case FormulaKind::Exists:
                throw Error("unbounded quantifier in bounded evaluation");
            case FormulaKind::BoundedForAll:
            case FormulaKind::BoundedExists: {
                bool universal = f->kind == FormulaKind::BoundedForAll;
                BigNat bound = term(f->ta);
                auto saved = env.find(f->var) != env.end()
                                 ? std::optional<BigNat>(env[f->var])
                                 : std::nullopt;
                bool result = universal;
                for (BigNat v = 0; v < bound; ++v) {
                    tick();
                    env[f->var] = v;
                    bool inner = formula(f->fa);
                    if (inner != universal) {
                        result = inner;
                        break;
                    }
                }
                if (saved) env[f->var] = *saved;
                else env.erase(f->var);
                return result;
            }
        }
        throw Error("unreachable formula kind");
    }
};

} // namespace

BigNat evaluate_term(const TermPtr& t, Limits limits) {
    if (!free_variables(t).empty()) throw Error("evaluate_term needs a closed term");
    Evaluator ev(limits);
    return ev.term(t);
}

bool evaluate_bounded(const FormulaPtr& f, Limits limits) {
    if (!is_closed(f)) throw Error("evaluate_bounded needs a sentence");
    if (classify::classify(f) != classify::kDelta0)
        throw Error("evaluate_bounded needs a formula without unbounded quantifiers");
    Evaluator ev(limits);
    return ev.formula(f);
}

} // namespace conlab::fo_eval
