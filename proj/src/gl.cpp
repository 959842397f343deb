#include <conlab/gl.hpp>

#include <algorithm>
#include <map>
#include <string>

namespace conlab::gl {

using modal::MKind;
using modal::MPtr;

namespace {

struct TreeModel {
    std::set<uint32_t> atoms;
    std::vector<TreeModel> children;
};

// sorted, deduplicated
using FSet = std::vector<MPtr>;

bool member(const FSet& s, const MPtr& f) {
    auto it = std::lower_bound(s.begin(), s.end(), f,
                               [](const MPtr& a, const MPtr& b) { return modal::cmp(a, b) < 0; });
    return it != s.end() && modal::eq(*it, f);
}

FSet with(FSet s, const MPtr& f) {
    auto it = std::lower_bound(s.begin(), s.end(), f,
                               [](const MPtr& a, const MPtr& b) { return modal::cmp(a, b) < 0; });
    if (it == s.end() || !modal::eq(*it, f)) s.insert(it, f);
    return s;
}

FSet without(FSet s, size_t idx) {
    s.erase(s.begin() + idx);
    return s;
}

std::string key_of(const FSet& l, const FSet& r) {
    std::string k;
    for (const MPtr& f : l) {
        k += modal::print(f);
        k += ',';
    }
    k += "=>";
    for (const MPtr& f : r) {
        k += modal::print(f);
        k += ',';
    }
    return k;
}

struct Outcome {
    bool provable;
    std::optional<TreeModel> model;
};

struct Search {
    std::map<std::string, Outcome> memo;

    Outcome seq(const FSet& left, const FSet& right) {
        std::string key = key_of(left, right);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Outcome out = compute(left, right);
        memo.emplace(std::move(key), out);
        return out;
    }

    Outcome compute(const FSet& left, const FSet& right) {
        // axioms (the shared-formula case covers the box rule's re-entry,
        // which keeps the search terminating)
        for (const MPtr& f : left) {
            if (f->kind == MKind::Bottom) return {true, {}};
            if (member(right, f)) return {true, {}};
        }
        for (const MPtr& f : right)
            if (f->kind == MKind::Top) return {true, {}};

        // invertible propositional rules, one step then recurse
        for (size_t i = 0; i < left.size(); ++i) {
            const MPtr& f = left[i];
            switch (f->kind) {
                case MKind::Top:
                    return seq(without(left, i), right);
                case MKind::Not:
                    return seq(without(left, i), with(right, f->a));
                case MKind::And:
                    return seq(with(with(without(left, i), f->a), f->b), right);
                case MKind::Or: {
                    Outcome a = seq(with(without(left, i), f->a), right);
                    if (!a.provable) return a;
                    return seq(with(without(left, i), f->b), right);
                }
                case MKind::Implies: {
                    Outcome a = seq(without(left, i), with(right, f->a));
                    if (!a.provable) return a;
                    return seq(with(without(left, i), f->b), right);
                }
                case MKind::Diamond:
                    return seq(with(without(left, i), modal::box_normal(f)), right);
                default:
                    break;
            }
        }
        for (size_t i = 0; i < right.size(); ++i) {
            const MPtr& f = right[i];
            switch (f->kind) {
                case MKind::Bottom:
                    return seq(left, without(right, i));
                case MKind::Not:
                    return seq(with(left, f->a), without(right, i));
                case MKind::Or:
                    return seq(left, with(with(without(right, i), f->a), f->b));
                case MKind::Implies:
                    return seq(with(left, f->a), with(without(right, i), f->b));
                case MKind::And: {
                    Outcome a = seq(left, with(without(right, i), f->a));
                    if (!a.provable) return a;
                    return seq(left, with(without(right, i), f->b));
                }
                case MKind::Diamond:
                    return seq(left, with(without(right, i), modal::box_normal(f)));
                default:
                    break;
            }
        }

        // saturated: atoms and boxes only, no axiom matched; try the box
        // rule on each boxed succedent, collecting refuting subtrees from
        // the failures
        TreeModel here;
        for (const MPtr& f : left)
            if (f->kind == MKind::Atom) here.atoms.insert(f->atom_index);

        for (const MPtr& f : right) {
            if (f->kind != MKind::Box) continue;
            FSet pleft;
            for (const MPtr& g : left)
                if (g->kind == MKind::Box) {
                    pleft = with(std::move(pleft), g);
                    pleft = with(std::move(pleft), g->a);
                }
            pleft = with(std::move(pleft), f);
            Outcome premise = seq(pleft, {f->a});
            if (premise.provable) return {true, {}};
            here.children.push_back(std::move(*premise.model));
        }
        return {false, std::move(here)};
    }
};

void flatten(const TreeModel& t, int parent, Countermodel& out) {
    int id = static_cast<int>(out.parent.size());
    out.parent.push_back(parent);
    out.true_atoms.push_back(t.atoms);
    for (const TreeModel& c : t.children) flatten(c, id, out);
}

} // namespace

Result prove(const modal::MPtr& f) {
    Search search;
    Outcome out = search.seq({}, {modal::box_normal(f)});
    if (out.provable) return {true, {}};
    Countermodel m;
    flatten(*out.model, -1, m);
    return {false, std::move(m)};
}

bool provable(const modal::MPtr& f) { return prove(f).provable; }

bool eval_at(const Countermodel& m, const modal::MPtr& f, int world) {
    switch (f->kind) {
        case MKind::Atom: return m.true_atoms[world].count(f->atom_index) > 0;
        case MKind::Bottom: return false;
        case MKind::Top: return true;
        case MKind::Not: return !eval_at(m, f->a, world);
        case MKind::And: return eval_at(m, f->a, world) && eval_at(m, f->b, world);
        case MKind::Or: return eval_at(m, f->a, world) || eval_at(m, f->b, world);
        case MKind::Implies: return !eval_at(m, f->a, world) || eval_at(m, f->b, world);
        case MKind::Box: {
            for (size_t w = 0; w < m.size(); ++w) {
                // proper descendant of `world`
                for (int anc = m.parent[w]; anc != -1; anc = m.parent[anc])
                    if (anc == world) {
                        if (!eval_at(m, f->a, static_cast<int>(w))) return false;
                        break;
                    }
            }
            return true;
        }
        case MKind::Diamond: return eval_at(m, modal::mnot(modal::box(modal::mnot(f->a))), world);
    }
    throw Error("unreachable modal kind");
}

} // namespace conlab::gl
