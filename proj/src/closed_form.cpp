#include <conlab/closed_form.hpp>

#include <algorithm>

namespace conlab::closed_form {

using modal::MKind;
using modal::MPtr;

void Profile::normalize() {
    while (!at.empty() && at.back() == tail) at.pop_back();
}

bool Profile::always_true() const {
    return tail && std::all_of(at.begin(), at.end(), [](bool b) { return b; });
}

namespace {

Profile pointwise(const Profile& x, const Profile& y, bool (*op)(bool, bool)) {
    Profile out;
    out.at.resize(std::max(x.at.size(), y.at.size()));
    for (size_t k = 0; k < out.at.size(); ++k) out.at[k] = op(x.value(k), y.value(k));
    out.tail = op(x.tail, y.tail);
    out.normalize();
    return out;
}

} // namespace

Profile profile(const modal::MPtr& f) {
    switch (f->kind) {
        case MKind::Atom: throw Error("profile of a formula with atoms");
        case MKind::Bottom: return {{}, false};
        case MKind::Top: return {{}, true};
        case MKind::Not: {
            Profile p = profile(f->a);
            p.at.flip();
            p.tail = !p.tail;
            return p;
        }
        case MKind::And:
            return pointwise(profile(f->a), profile(f->b), [](bool a, bool b) { return a && b; });
        case MKind::Or:
            return pointwise(profile(f->a), profile(f->b), [](bool a, bool b) { return a || b; });
        case MKind::Implies:
            return pointwise(profile(f->a), profile(f->b), [](bool a, bool b) { return !a || b; });
        case MKind::Box: {
            // true at height k exactly when the body holds at all heights
            // below k; stabilizes one step past the body's profile
            Profile p = profile(f->a);
            Profile out;
            out.at.resize(p.at.size() + 2);
            bool acc = true;
            for (size_t k = 0; k < out.at.size(); ++k) {
                out.at[k] = acc;
                acc = acc && p.value(k);
            }
            out.tail = acc && p.tail;
            out.normalize();
            return out;
        }
        case MKind::Diamond:
            return profile(modal::mnot(modal::box(modal::mnot(f->a))));
    }
    throw Error("unreachable modal kind");
}

modal::MPtr to_formula(const Profile& p) {
    Profile q = p;
    q.normalize();
    // box^n bot holds exactly at heights below n
    auto below = [](size_t n) {
        MPtr f = modal::bottom();
        for (size_t i = 0; i < n; ++i) f = modal::box(f);
        return f;
    };
    if (q.at.empty()) return q.tail ? modal::top() : modal::bottom();
    std::vector<MPtr> pieces; // exact-height indicators for the true entries
    for (size_t k = 0; k < q.at.size(); ++k)
        if (q.at[k]) pieces.push_back(modal::mand(below(k + 1), modal::mnot(below(k))));
    if (q.tail) pieces.push_back(modal::mnot(below(q.at.size())));
    if (pieces.empty()) return modal::bottom();
    MPtr out = pieces.back();
    for (size_t i = pieces.size() - 1; i-- > 0;) out = modal::mor(pieces[i], out);
    return out;
}

bool provable_closed(const modal::MPtr& f) { return profile(f).always_true(); }

bool Valuation::at(uint32_t atom) const {
    auto it = fixed.find(atom);
    if (it != fixed.end()) return it->second;
    if (fallback) return *fallback;
    throw Error("valuation does not cover p" + std::to_string(atom));
}

modal::MPtr close_under(const modal::MPtr& f, const Valuation& v) {
    switch (f->kind) {
        case MKind::Atom: return v.at(f->atom_index) ? modal::top() : modal::bottom();
        case MKind::Bottom:
        case MKind::Top: return f;
        case MKind::Not: return modal::mnot(close_under(f->a, v));
        case MKind::And: return modal::mand(close_under(f->a, v), close_under(f->b, v));
        case MKind::Or: return modal::mor(close_under(f->a, v), close_under(f->b, v));
        case MKind::Implies:
            return modal::mimplies(close_under(f->a, v), close_under(f->b, v));
        case MKind::Box: return modal::box(close_under(f->a, v));
        case MKind::Diamond: return modal::diamond(close_under(f->a, v));
    }
    throw Error("unreachable modal kind");
}

bool truth(const modal::MPtr& f, const Valuation& v) {
    return profile(close_under(f, v)).tail;
}

} // namespace conlab::closed_form
