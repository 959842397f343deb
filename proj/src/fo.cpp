#include <conlab/fo.hpp>

#include <algorithm>

namespace conlab::fo {

// --- LazyNat -----------------------------------------------------------------

LazyNat LazyNat::code_of(FormulaPtr f) {
    LazyNat n;
    n.code_of_ = std::move(f);
    return n;
}

const BigNat& LazyNat::value() const {
    if (code_of_) throw ResourceError("numeral is not materialized");
    return value_;
}

bool LazyNat::equals(const LazyNat& o) const {
    // A marker stands for the code of a formula whose encoding exceeded the
    // cap, so its value is strictly larger than any successfully encoded
    // value; the encoder is deterministic, hence marker vs concrete is
    // always unequal. Marker vs marker compares the quoted formula and the
    // offset on top of it; for zero offsets that is exact (codes are
    // injective), with offsets it is the representational reading.
    if (code_of_ && o.code_of_)
        return value_ == o.value_ && formula_eq(code_of_, o.code_of_);
    if (code_of_ || o.code_of_) return false;
    return value_ == o.value_;
}

int LazyNat::compare(const LazyNat& o) const {
    if (!code_of_ && !o.code_of_) return value_ < o.value_ ? -1 : value_ == o.value_ ? 0 : 1;
    if (!code_of_ && o.code_of_) return -1; // representational order beyond the cap
    if (code_of_ && !o.code_of_) return 1;
    if (int c = formula_cmp(code_of_, o.code_of_)) return c;
    return value_ < o.value_ ? -1 : value_ == o.value_ ? 0 : 1;
}

LazyNat LazyNat::plus(const BigNat& n) const {
    LazyNat r = *this;
    r.value_ += n;
    return r;
}

// --- node construction -------------------------------------------------------

namespace {

uint64_t clamp_add(uint64_t a, uint64_t b) {
    return (a >= kSizeCap - b) ? kSizeCap : a + b;
}

uint64_t run_as_clamped(const LazyNat& n) {
    if (n.is_code_marker()) return kSizeCap;
    const BigNat& v = n.value();
    if (v >= BigNat(kSizeCap)) return kSizeCap;
    return static_cast<uint64_t>(v);
}

uint32_t depth_above(uint32_t child) {
    return child == UINT32_MAX ? UINT32_MAX : child + 1;
}

} // namespace

Term::Term(TermKind k, LazyNat run, TermPtr a_, TermPtr b_, uint32_t v)
    : kind(k), succ_run(std::move(run)), a(std::move(a_)), b(std::move(b_)), var(v) {
    size_clamped = 1;
    depth_clamped = 1;
    has_marker = false;
    if (kind == TermKind::Succ) {
        uint64_t r = run_as_clamped(succ_run);
        size_clamped = clamp_add(a->size_clamped, r);
        uint64_t d = clamp_add(a->depth_clamped, r);
        depth_clamped = d > UINT32_MAX ? UINT32_MAX : static_cast<uint32_t>(d);
        has_marker = a->has_marker || succ_run.is_code_marker();
    } else if (a) {
        size_clamped = clamp_add(1, clamp_add(a->size_clamped, b ? b->size_clamped : 0));
        depth_clamped = depth_above(std::max(a->depth_clamped, b ? b->depth_clamped : 0));
        has_marker = a->has_marker || (b && b->has_marker);
    }
}

Formula::Formula(FormulaKind k, TermPtr ta_, TermPtr tb_, FormulaPtr fa_, FormulaPtr fb_, uint32_t v)
    : kind(k), ta(std::move(ta_)), tb(std::move(tb_)), fa(std::move(fa_)), fb(std::move(fb_)), var(v) {
    size_clamped = 1;
    depth_clamped = 1;
    has_marker = false;
    for (const TermPtr* t : {&ta, &tb}) {
        if (*t) {
            size_clamped = clamp_add(size_clamped, (*t)->size_clamped);
            depth_clamped = std::max(depth_clamped, depth_above((*t)->depth_clamped));
            has_marker = has_marker || (*t)->has_marker;
        }
    }
    for (const FormulaPtr* f : {&fa, &fb}) {
        if (*f) {
            size_clamped = clamp_add(size_clamped, (*f)->size_clamped);
            depth_clamped = std::max(depth_clamped, depth_above((*f)->depth_clamped));
            has_marker = has_marker || (*f)->has_marker;
        }
    }
}

TermPtr zero() {
    static const TermPtr z = std::make_shared<Term>(TermKind::Zero, LazyNat(), nullptr, nullptr, 0);
    return z;
}

TermPtr succ_run(LazyNat n, TermPtr t) {
    if (!n.is_code_marker() && n.value() == 0) return t;
    if (t->kind == TermKind::Succ) {
        // keep runs canonical: base of a run is never itself a Succ. A
        // concrete extension of a marker run becomes an offset on it; two
        // distinct markers cannot be merged.
        if (n.is_code_marker() && t->succ_run.is_code_marker())
            throw ResourceError("cannot merge unmaterialized numeral runs");
        if (n.is_code_marker())
            return std::make_shared<Term>(TermKind::Succ, n.plus(t->succ_run.value()), t->a,
                                          nullptr, 0);
        return std::make_shared<Term>(TermKind::Succ, t->succ_run.plus(n.value()), t->a, nullptr, 0);
    }
    return std::make_shared<Term>(TermKind::Succ, std::move(n), std::move(t), nullptr, 0);
}

TermPtr succ(TermPtr t) { return succ_run(LazyNat(1ul), std::move(t)); }
TermPtr sum(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(TermKind::Sum, LazyNat(), std::move(a), std::move(b), 0);
}
TermPtr product(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(TermKind::Product, LazyNat(), std::move(a), std::move(b), 0);
}
TermPtr exp(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(TermKind::Exp, LazyNat(), std::move(a), std::move(b), 0);
}
TermPtr variable(uint32_t index) {
    return std::make_shared<Term>(TermKind::Variable, LazyNat(), nullptr, nullptr, index);
}

TermPtr numeral(LazyNat n) { return succ_run(std::move(n), zero()); }

std::optional<LazyNat> as_numeral(const TermPtr& t) {
    if (t->kind == TermKind::Zero) return LazyNat();
    if (t->kind == TermKind::Succ && t->a->kind == TermKind::Zero) return t->succ_run;
    return std::nullopt;
}

namespace {
FormulaPtr mk(FormulaKind k, TermPtr ta, TermPtr tb, FormulaPtr fa, FormulaPtr fb, uint32_t v) {
    return std::make_shared<Formula>(k, std::move(ta), std::move(tb), std::move(fa), std::move(fb), v);
}
} // namespace

FormulaPtr equal(TermPtr a, TermPtr b) { return mk(FormulaKind::Equal, std::move(a), std::move(b), nullptr, nullptr, 0); }
FormulaPtr less(TermPtr a, TermPtr b) { return mk(FormulaKind::Less, std::move(a), std::move(b), nullptr, nullptr, 0); }
FormulaPtr bottom() {
    static const FormulaPtr f = mk(FormulaKind::Bottom, nullptr, nullptr, nullptr, nullptr, 0);
    return f;
}
FormulaPtr top() {
    static const FormulaPtr f = mk(FormulaKind::Top, nullptr, nullptr, nullptr, nullptr, 0);
    return f;
}
FormulaPtr lnot(FormulaPtr a) { return mk(FormulaKind::Not, nullptr, nullptr, std::move(a), nullptr, 0); }
FormulaPtr land(FormulaPtr a, FormulaPtr b) { return mk(FormulaKind::And, nullptr, nullptr, std::move(a), std::move(b), 0); }
FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return mk(FormulaKind::Or, nullptr, nullptr, std::move(a), std::move(b), 0); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return mk(FormulaKind::Implies, nullptr, nullptr, std::move(a), std::move(b), 0); }
FormulaPtr forall(uint32_t v, FormulaPtr a) { return mk(FormulaKind::ForAll, nullptr, nullptr, std::move(a), nullptr, v); }
FormulaPtr exists(uint32_t v, FormulaPtr a) { return mk(FormulaKind::Exists, nullptr, nullptr, std::move(a), nullptr, v); }

namespace {
void check_bound(uint32_t v, const TermPtr& bound) {
    if (free_variables(bound).count(v))
        throw Error("bound term of a bounded quantifier contains the bound variable");
}
} // namespace

FormulaPtr bounded_forall(uint32_t v, TermPtr bound, FormulaPtr a) {
    check_bound(v, bound);
    return mk(FormulaKind::BoundedForAll, std::move(bound), nullptr, std::move(a), nullptr, v);
}
FormulaPtr bounded_exists(uint32_t v, TermPtr bound, FormulaPtr a) {
    check_bound(v, bound);
    return mk(FormulaKind::BoundedExists, std::move(bound), nullptr, std::move(a), nullptr, v);
}

// --- comparison --------------------------------------------------------------

int term_cmp(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
        case TermKind::Zero: return 0;
        case TermKind::Variable: return a->var < b->var ? -1 : a->var == b->var ? 0 : 1;
        case TermKind::Succ: {
            int c = a->succ_run.compare(b->succ_run);
            if (c != 0) return c;
            return term_cmp(a->a, b->a);
        }
        default: {
            int c = term_cmp(a->a, b->a);
            if (c != 0) return c;
            return term_cmp(a->b, b->b);
        }
    }
}

int formula_cmp(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (a->var != b->var) return a->var < b->var ? -1 : 1;
    for (auto pick : {&Formula::ta, &Formula::tb}) {
        const TermPtr& x = (*a).*pick;
        const TermPtr& y = (*b).*pick;
        if (!x != !y) return !x ? -1 : 1;
        if (x) {
            int c = term_cmp(x, y);
            if (c != 0) return c;
        }
    }
    for (auto pick : {&Formula::fa, &Formula::fb}) {
        const FormulaPtr& x = (*a).*pick;
        const FormulaPtr& y = (*b).*pick;
        if (!x != !y) return !x ? -1 : 1;
        if (x) {
            int c = formula_cmp(x, y);
            if (c != 0) return c;
        }
    }
    return 0;
}

bool term_eq(const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) == 0; }
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) { return formula_cmp(a, b) == 0; }

// --- free variables ----------------------------------------------------------

namespace {

void collect_free(const TermPtr& t, std::set<uint32_t>& out) {
    switch (t->kind) {
        case TermKind::Zero: return;
        case TermKind::Variable: out.insert(t->var); return;
        case TermKind::Succ: collect_free(t->a, out); return;
        default:
            collect_free(t->a, out);
            collect_free(t->b, out);
    }
}

void collect_free(const FormulaPtr& f, std::set<uint32_t>& out) {
    switch (f->kind) {
        case FormulaKind::Equal:
        case FormulaKind::Less:
            collect_free(f->ta, out);
            collect_free(f->tb, out);
            return;
        case FormulaKind::Bottom:
        case FormulaKind::Top:
            return;
        case FormulaKind::Not:
            collect_free(f->fa, out);
            return;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            collect_free(f->fa, out);
            collect_free(f->fb, out);
            return;
        case FormulaKind::ForAll:
        case FormulaKind::Exists: {
            std::set<uint32_t> inner;
            collect_free(f->fa, inner);
            inner.erase(f->var);
            out.insert(inner.begin(), inner.end());
            return;
        }
        case FormulaKind::BoundedForAll:
        case FormulaKind::BoundedExists: {
            collect_free(f->ta, out); // bound term is outside the binder's scope
            std::set<uint32_t> inner;
            collect_free(f->fa, inner);
            inner.erase(f->var);
            out.insert(inner.begin(), inner.end());
            return;
        }
    }
}

} // namespace

std::set<uint32_t> free_variables(const TermPtr& t) {
    std::set<uint32_t> out;
    collect_free(t, out);
    return out;
}

std::set<uint32_t> free_variables(const FormulaPtr& f) {
    std::set<uint32_t> out;
    collect_free(f, out);
    return out;
}

bool is_closed(const FormulaPtr& f) { return free_variables(f).empty(); }

// --- substitution ------------------------------------------------------------

TermPtr substitute(const TermPtr& t, uint32_t v, const TermPtr& repl) {
    switch (t->kind) {
        case TermKind::Zero: return t;
        case TermKind::Variable: return t->var == v ? repl : t;
        case TermKind::Succ: {
            TermPtr base = substitute(t->a, v, repl);
            if (base.get() == t->a.get()) return t;
            return succ_run(t->succ_run, std::move(base));
        }
        default: {
            TermPtr a = substitute(t->a, v, repl);
            TermPtr b = substitute(t->b, v, repl);
            if (a.get() == t->a.get() && b.get() == t->b.get()) return t;
            return std::make_shared<Term>(t->kind, LazyNat(), std::move(a), std::move(b), 0);
        }
    }
}

namespace {

uint32_t smallest_fresh(const std::set<uint32_t>& avoid) {
    uint32_t i = 0;
    while (avoid.count(i)) ++i;
    return i;
}

} // namespace

FormulaPtr substitute(const FormulaPtr& f, uint32_t v, const TermPtr& repl) {
    switch (f->kind) {
        case FormulaKind::Equal:
        case FormulaKind::Less: {
            TermPtr a = substitute(f->ta, v, repl);
            TermPtr b = substitute(f->tb, v, repl);
            if (a.get() == f->ta.get() && b.get() == f->tb.get()) return f;
            return mk(f->kind, std::move(a), std::move(b), nullptr, nullptr, 0);
        }
        case FormulaKind::Bottom:
        case FormulaKind::Top:
            return f;
        case FormulaKind::Not: {
            FormulaPtr a = substitute(f->fa, v, repl);
            if (a.get() == f->fa.get()) return f;
            return lnot(std::move(a));
        }
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies: {
            FormulaPtr a = substitute(f->fa, v, repl);
            FormulaPtr b = substitute(f->fb, v, repl);
            if (a.get() == f->fa.get() && b.get() == f->fb.get()) return f;
            return mk(f->kind, nullptr, nullptr, std::move(a), std::move(b), 0);
        }
        case FormulaKind::ForAll:
        case FormulaKind::Exists:
        case FormulaKind::BoundedForAll:
        case FormulaKind::BoundedExists: {
            bool bounded = f->kind == FormulaKind::BoundedForAll || f->kind == FormulaKind::BoundedExists;
            TermPtr bound = bounded ? substitute(f->ta, v, repl) : nullptr;
            if (f->var == v) {
                if (bounded && bound.get() != f->ta.get())
                    return mk(f->kind, std::move(bound), nullptr, f->fa, nullptr, f->var);
                return f;
            }
            std::set<uint32_t> body_free = free_variables(f->fa);
            if (!body_free.count(v)) {
                if (bounded && bound.get() != f->ta.get())
                    return mk(f->kind, std::move(bound), nullptr, f->fa, nullptr, f->var);
                return f;
            }
            uint32_t binder = f->var;
            FormulaPtr body = f->fa;
            std::set<uint32_t> repl_free = free_variables(repl);
            if (repl_free.count(binder)) {
                // rename to the smallest index free in neither the body nor repl
                std::set<uint32_t> avoid = body_free;
                avoid.insert(repl_free.begin(), repl_free.end());
                avoid.insert(v);
                avoid.insert(binder);
                uint32_t fresh = smallest_fresh(avoid);
                body = substitute(body, binder, variable(fresh));
                binder = fresh;
            }
            body = substitute(body, v, repl);
            return mk(f->kind, std::move(bound), nullptr, std::move(body), nullptr, binder);
        }
    }
    throw Error("unreachable formula kind");
}

// --- metrics and helpers -----------------------------------------------------

std::optional<BigNat> node_count(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Zero:
        case TermKind::Variable:
            return BigNat(1);
        case TermKind::Succ: {
            if (t->succ_run.is_code_marker()) return std::nullopt;
            auto base = node_count(t->a);
            if (!base) return std::nullopt;
            return *base + t->succ_run.value();
        }
        default: {
            auto a = node_count(t->a), b = node_count(t->b);
            if (!a || !b) return std::nullopt;
            return *a + *b + 1;
        }
    }
}

std::optional<BigNat> node_count(const FormulaPtr& f) {
    BigNat total = 1;
    for (const TermPtr& t : {f->ta, f->tb})
        if (t) {
            auto c = node_count(t);
            if (!c) return std::nullopt;
            total += *c;
        }
    for (const FormulaPtr& g : {f->fa, f->fb})
        if (g) {
            auto c = node_count(g);
            if (!c) return std::nullopt;
            total += *c;
        }
    return total;
}

FormulaPtr conjoin(std::vector<FormulaPtr> sentences) {
    if (sentences.empty()) return top();
    std::stable_sort(sentences.begin(), sentences.end(),
                     [](const FormulaPtr& a, const FormulaPtr& b) { return formula_cmp(a, b) < 0; });
    FormulaPtr acc = sentences.back();
    for (size_t i = sentences.size() - 1; i-- > 0;) acc = land(sentences[i], std::move(acc));
    return acc;
}

// Containment looks through code markers: a numeral held as the code of a
// formula counts as containing that formula's syntax.
bool contains_subterm(const TermPtr& haystack, const TermPtr& needle) {
    if (term_eq(haystack, needle)) return true;
    switch (haystack->kind) {
        case TermKind::Zero:
        case TermKind::Variable:
            return false;
        case TermKind::Succ:
            if (haystack->succ_run.is_code_marker() &&
                contains_subterm(haystack->succ_run.marked_formula(), needle))
                return true;
            return contains_subterm(haystack->a, needle);
        default:
            return contains_subterm(haystack->a, needle) || contains_subterm(haystack->b, needle);
    }
}

bool contains_subterm(const FormulaPtr& haystack, const TermPtr& needle) {
    for (const TermPtr& t : {haystack->ta, haystack->tb})
        if (t && contains_subterm(t, needle)) return true;
    for (const FormulaPtr& g : {haystack->fa, haystack->fb})
        if (g && contains_subterm(g, needle)) return true;
    return false;
}

namespace {

bool term_carries_formula(const TermPtr& t, const FormulaPtr& needle);

bool formula_contains(const FormulaPtr& haystack, const FormulaPtr& needle) {
    if (formula_eq(haystack, needle)) return true;
    for (const FormulaPtr& g : {haystack->fa, haystack->fb})
        if (g && formula_contains(g, needle)) return true;
    for (const TermPtr& t : {haystack->ta, haystack->tb})
        if (t && term_carries_formula(t, needle)) return true;
    return false;
}

bool term_carries_formula(const TermPtr& t, const FormulaPtr& needle) {
    switch (t->kind) {
        case TermKind::Zero:
        case TermKind::Variable:
            return false;
        case TermKind::Succ:
            if (t->succ_run.is_code_marker() &&
                formula_contains(t->succ_run.marked_formula(), needle))
                return true;
            return term_carries_formula(t->a, needle);
        default:
            return term_carries_formula(t->a, needle) || term_carries_formula(t->b, needle);
    }
}

} // namespace

bool contains_subformula(const FormulaPtr& haystack, const FormulaPtr& needle) {
    return formula_contains(haystack, needle);
}

} // namespace conlab::fo
