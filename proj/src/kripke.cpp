#include <conlab/kripke.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace conlab::kripke {

using modal::MKind;
using modal::MPtr;

namespace {

struct Shape {
    std::vector<int> parent;
    std::vector<uint64_t> desc; // proper descendants of each world
};

std::string canon(const std::vector<int>& parent, int root) {
    std::vector<std::string> kids;
    for (size_t i = 0; i < parent.size(); ++i)
        if (parent[i] == root) kids.push_back(canon(parent, static_cast<int>(i)));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (auto& k : kids) out += k;
    out += ")";
    return out;
}

const std::vector<Shape>& shapes_of(unsigned n) {
    static std::map<unsigned, std::vector<Shape>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<Shape> shapes;
    std::set<std::string> seen;
    std::vector<int> parent(n, -1);
    // odometer over parent choices; parent[i] in [0, i)
    auto emit = [&] {
        if (!seen.insert(canon(parent, 0)).second) return;
        Shape s;
        s.parent = parent;
        s.desc.assign(n, 0);
        for (unsigned w = 0; w < n; ++w)
            for (int anc = parent[w]; anc != -1; anc = parent[anc])
                s.desc[anc] |= uint64_t(1) << w;
        shapes.push_back(std::move(s));
    };
    if (n >= 1) {
        std::vector<unsigned> choice(n, 0);
        while (true) {
            for (unsigned i = 1; i < n; ++i) parent[i] = static_cast<int>(choice[i]);
            emit();
            unsigned i = n - 1;
            while (i >= 1) {
                if (++choice[i] < i) break;
                choice[i] = 0;
                --i;
            }
            if (i < 1) break;
        }
    }
    return cache.emplace(n, std::move(shapes)).first->second;
}

uint64_t eval_mask(const MPtr& f, const Shape& s, uint64_t full,
                   const std::map<uint32_t, uint64_t>& val) {
    switch (f->kind) {
        case MKind::Atom: return val.at(f->atom_index);
        case MKind::Bottom: return 0;
        case MKind::Top: return full;
        case MKind::Not: return full & ~eval_mask(f->a, s, full, val);
        case MKind::And: return eval_mask(f->a, s, full, val) & eval_mask(f->b, s, full, val);
        case MKind::Or: return eval_mask(f->a, s, full, val) | eval_mask(f->b, s, full, val);
        case MKind::Implies:
            return full & (~eval_mask(f->a, s, full, val) | eval_mask(f->b, s, full, val));
        case MKind::Box: {
            uint64_t inner = eval_mask(f->a, s, full, val);
            uint64_t out = 0;
            for (size_t w = 0; w < s.desc.size(); ++w)
                if ((s.desc[w] & ~inner) == 0) out |= uint64_t(1) << w;
            return out;
        }
        case MKind::Diamond: {
            uint64_t inner = eval_mask(f->a, s, full, val);
            uint64_t out = 0;
            for (size_t w = 0; w < s.desc.size(); ++w)
                if (s.desc[w] & inner) out |= uint64_t(1) << w;
            return out;
        }
    }
    throw Error("unreachable modal kind");
}

} // namespace

std::optional<gl::Countermodel> find_refutation(const modal::MPtr& f, unsigned max_worlds) {
    std::set<uint32_t> atom_set = modal::atoms_of(f);
    std::vector<uint32_t> atoms(atom_set.begin(), atom_set.end());
    if (max_worlds > 24 || atoms.size() * max_worlds > 24)
        throw ResourceError("labeling space too large for exhaustive search");

    for (unsigned n = 1; n <= max_worlds; ++n) {
        uint64_t full = (uint64_t(1) << n) - 1;
        uint64_t combos = uint64_t(1) << (n * atoms.size());
        for (const Shape& s : shapes_of(n)) {
            for (uint64_t c = 0; c < combos; ++c) {
                std::map<uint32_t, uint64_t> val;
                uint64_t rest = c;
                for (uint32_t a : atoms) {
                    val[a] = rest & full;
                    rest >>= n;
                }
                if (eval_mask(f, s, full, val) & 1) continue; // true at the root
                gl::Countermodel m;
                m.parent = s.parent;
                m.true_atoms.assign(n, {});
                for (unsigned w = 0; w < n; ++w)
                    for (uint32_t a : atoms)
                        if (val[a] >> w & 1) m.true_atoms[w].insert(a);
                return m;
            }
        }
    }
    return std::nullopt;
}

bool oracle_provable(const modal::MPtr& f, unsigned max_worlds) {
    return !find_refutation(f, max_worlds).has_value();
}

} // namespace conlab::kripke
