#include <conlab/modal.hpp>

#include <algorithm>
#include <cctype>
#include <map>

namespace conlab::modal {

MFormula::MFormula(MKind k, uint32_t atom, MPtr a_, MPtr b_)
    : kind(k), atom_index(atom), a(std::move(a_)), b(std::move(b_)) {
    size = 1 + (a ? a->size : 0) + (b ? b->size : 0);
    modal_depth = std::max(a ? a->modal_depth : 0, b ? b->modal_depth : 0);
    if (kind == MKind::Box || kind == MKind::Diamond) ++modal_depth;
}

MPtr atom(uint32_t index) { return std::make_shared<MFormula>(MKind::Atom, index, nullptr, nullptr); }
MPtr bottom() {
    static const MPtr f = std::make_shared<MFormula>(MKind::Bottom, 0, nullptr, nullptr);
    return f;
}
MPtr top() {
    static const MPtr f = std::make_shared<MFormula>(MKind::Top, 0, nullptr, nullptr);
    return f;
}
MPtr mnot(MPtr a) { return std::make_shared<MFormula>(MKind::Not, 0, std::move(a), nullptr); }
MPtr mand(MPtr a, MPtr b) { return std::make_shared<MFormula>(MKind::And, 0, std::move(a), std::move(b)); }
MPtr mor(MPtr a, MPtr b) { return std::make_shared<MFormula>(MKind::Or, 0, std::move(a), std::move(b)); }
MPtr mimplies(MPtr a, MPtr b) { return std::make_shared<MFormula>(MKind::Implies, 0, std::move(a), std::move(b)); }
MPtr box(MPtr a) { return std::make_shared<MFormula>(MKind::Box, 0, std::move(a), nullptr); }
MPtr diamond(MPtr a) { return std::make_shared<MFormula>(MKind::Diamond, 0, std::move(a), nullptr); }

int cmp(const MPtr& a, const MPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (a->atom_index != b->atom_index) return a->atom_index < b->atom_index ? -1 : 1;
    for (auto pick : {&MFormula::a, &MFormula::b}) {
        const MPtr& x = (*a).*pick;
        const MPtr& y = (*b).*pick;
        if (!x != !y) return !x ? -1 : 1;
        if (x) {
            int c = cmp(x, y);
            if (c != 0) return c;
        }
    }
    return 0;
}

bool eq(const MPtr& a, const MPtr& b) { return cmp(a, b) == 0; }

namespace {
void collect_atoms(const MPtr& a, std::set<uint32_t>& out) {
    if (a->kind == MKind::Atom) out.insert(a->atom_index);
    if (a->a) collect_atoms(a->a, out);
    if (a->b) collect_atoms(a->b, out);
}
} // namespace

std::set<uint32_t> atoms_of(const MPtr& a) {
    std::set<uint32_t> out;
    collect_atoms(a, out);
    return out;
}

bool is_closed(const MPtr& a) { return atoms_of(a).empty(); }

MPtr box_normal(const MPtr& a) {
    switch (a->kind) {
        case MKind::Atom:
        case MKind::Bottom:
        case MKind::Top: return a;
        case MKind::Not: {
            MPtr x = box_normal(a->a);
            return x.get() == a->a.get() ? a : mnot(std::move(x));
        }
        case MKind::And:
        case MKind::Or:
        case MKind::Implies: {
            MPtr x = box_normal(a->a), y = box_normal(a->b);
            if (x.get() == a->a.get() && y.get() == a->b.get()) return a;
            if (a->kind == MKind::And) return mand(std::move(x), std::move(y));
            if (a->kind == MKind::Or) return mor(std::move(x), std::move(y));
            return mimplies(std::move(x), std::move(y));
        }
        case MKind::Box: {
            MPtr x = box_normal(a->a);
            return x.get() == a->a.get() ? a : box(std::move(x));
        }
        case MKind::Diamond: return mnot(box(mnot(box_normal(a->a))));
    }
    throw Error("unreachable modal kind");
}

MPtr conjoin(std::vector<MPtr> parts) {
    if (parts.empty()) return top();
    std::stable_sort(parts.begin(), parts.end(),
                     [](const MPtr& a, const MPtr& b) { return cmp(a, b) < 0; });
    MPtr acc = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) acc = mand(parts[i], std::move(acc));
    return acc;
}

// --- text --------------------------------------------------------------------

namespace {

void print_into(const MPtr& a, std::string& out) {
    switch (a->kind) {
        case MKind::Atom: out += "p" + std::to_string(a->atom_index); return;
        case MKind::Bottom: out += "bot"; return;
        case MKind::Top: out += "top"; return;
        case MKind::Not:
            out += "~";
            print_into(a->a, out);
            return;
        case MKind::And:
        case MKind::Or:
        case MKind::Implies:
            out += "(";
            print_into(a->a, out);
            out += a->kind == MKind::And ? " & " : a->kind == MKind::Or ? " | " : " -> ";
            print_into(a->b, out);
            out += ")";
            return;
        case MKind::Box:
            out += "[]";
            print_into(a->a, out);
            return;
        case MKind::Diamond:
            out += "<>";
            print_into(a->a, out);
            return;
    }
}

struct MParser {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

    bool try_consume(std::string_view tok) {
        skip_ws();
        if (text.substr(pos, tok.size()) != tok) return false;
        if (std::isalpha(static_cast<unsigned char>(tok.back()))) {
            size_t after = pos + tok.size();
            if (after < text.size() && std::isalnum(static_cast<unsigned char>(text[after])))
                return false;
        }
        pos += tok.size();
        return true;
    }

    MPtr formula() {
        skip_ws();
        if (try_consume("bot")) return bottom();
        if (try_consume("top")) return top();
        if (try_consume("~")) return mnot(formula());
        if (try_consume("[]")) return box(formula());
        if (try_consume("<>")) return diamond(formula());
        if (try_consume("(")) {
            MPtr a = formula();
            skip_ws();
            MPtr b;
            if (try_consume("&")) {
                b = formula();
                consume_close();
                return mand(std::move(a), std::move(b));
            }
            if (try_consume("->")) {
                b = formula();
                consume_close();
                return mimplies(std::move(a), std::move(b));
            }
            if (try_consume("|")) {
                b = formula();
                consume_close();
                return mor(std::move(a), std::move(b));
            }
            fail("expected a connective");
        }
        if (pos < text.size() && text[pos] == 'p') {
            size_t start = ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) fail("expected an atom index");
            if (pos - start > 9) fail("atom index out of range");
            return atom(static_cast<uint32_t>(std::stoul(std::string(text.substr(start, pos - start)))));
        }
        fail("expected a formula");
    }

    void consume_close() {
        skip_ws();
        if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
        ++pos;
    }
};

} // namespace

std::string print(const MPtr& a) {
    std::string out;
    print_into(a, out);
    return out;
}

MPtr parse(std::string_view text) {
    MParser p{text};
    MPtr f = p.formula();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

// --- enumeration ---------------------------------------------------------------

namespace {
std::map<std::pair<unsigned, unsigned>, std::vector<MPtr>>& size_cache() {
    static std::map<std::pair<unsigned, unsigned>, std::vector<MPtr>> c;
    return c;
}
} // namespace

const std::vector<MPtr>& of_size(unsigned n, unsigned atoms) {
    auto& cache = size_cache();
    auto key = std::make_pair(n, atoms);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<MPtr> out;
    if (n == 1) {
        out.push_back(bottom());
        out.push_back(top());
        for (uint32_t i = 0; i < atoms; ++i) out.push_back(atom(i));
    } else {
        for (const MPtr& f : of_size(n - 1, atoms)) {
            out.push_back(mnot(f));
            out.push_back(box(f));
            out.push_back(diamond(f));
        }
        for (unsigned la = 1; la + 1 < n; ++la) {
            const auto& lhs = of_size(la, atoms);
            const auto& rhs = of_size(n - 1 - la, atoms);
            for (const MPtr& a : lhs)
                for (const MPtr& b : rhs) {
                    out.push_back(mand(a, b));
                    out.push_back(mor(a, b));
                    out.push_back(mimplies(a, b));
                }
        }
    }
    return cache.emplace(key, std::move(out)).first->second;
}

std::vector<MPtr> up_to_size(unsigned n, unsigned atoms) {
    std::vector<MPtr> out;
    for (unsigned i = 1; i <= n; ++i) {
        const auto& layer = of_size(i, atoms);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace conlab::modal
