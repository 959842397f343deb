#include <conlab/classify.hpp>

#include <vector>

namespace conlab::classify {

using namespace conlab::fo;

namespace {

// Collapsed alternation pattern of the prenex prefix, outermost first;
// true = universal block, false = existential block.
using Blocks = std::vector<bool>;

void append_block(Blocks& blocks, bool universal) {
    if (blocks.empty() || blocks.back() != universal) blocks.push_back(universal);
}

void append_all(Blocks& blocks, const Blocks& more) {
    for (bool b : more) append_block(blocks, b);
}

Blocks dual(Blocks blocks) {
    blocks.flip();
    return blocks;
}

Blocks signature(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Equal:
        case FormulaKind::Less:
        case FormulaKind::Bottom:
        case FormulaKind::Top:
            return {};
        case FormulaKind::Not:
            return dual(signature(f->fa));
        case FormulaKind::And:
        case FormulaKind::Or: {
            Blocks out = signature(f->fa);
            append_all(out, signature(f->fb));
            return out;
        }
        case FormulaKind::Implies: {
            Blocks out = dual(signature(f->fa));
            append_all(out, signature(f->fb));
            return out;
        }
        case FormulaKind::ForAll:
        case FormulaKind::Exists: {
            Blocks out;
            append_block(out, f->kind == FormulaKind::ForAll);
            append_all(out, signature(f->fa));
            return out;
        }
        case FormulaKind::BoundedForAll:
        case FormulaKind::BoundedExists:
            return signature(f->fa);
    }
    throw Error("unreachable formula kind");
}

} // namespace

HierarchyLevel classify(const FormulaPtr& f) {
    Blocks blocks = signature(f);
    if (blocks.empty()) return kDelta0;
    return {blocks.front() ? Shape::Pi : Shape::Sigma, static_cast<unsigned>(blocks.size())};
}

bool level_le(HierarchyLevel a, HierarchyLevel b) {
    if (a.shape == Shape::Delta) return true;
    if (b.shape == Shape::Delta) return false;
    if (a.shape == b.shape) return a.k <= b.k;
    return a.k < b.k;
}

std::string to_string(HierarchyLevel lvl) {
    switch (lvl.shape) {
        case Shape::Delta: return "Delta" + std::to_string(lvl.k);
        case Shape::Sigma: return "Sigma" + std::to_string(lvl.k);
        case Shape::Pi: return "Pi" + std::to_string(lvl.k);
    }
    throw Error("unreachable shape");
}

} // namespace conlab::classify
