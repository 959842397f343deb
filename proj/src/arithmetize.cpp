#include <conlab/arithmetize.hpp>

#include <conlab/coding.hpp>
#include <conlab/common.hpp>

#include <algorithm>
#include <initializer_list>

namespace conlab::arith {

using namespace fo;

namespace {

// Largest variable index appearing anywhere (bound or free). Code markers are
// inert quotations, not binders, so they do not count.
void max_var(const TermPtr& t, uint32_t& mx, bool& any);

void max_var(const FormulaPtr& f, uint32_t& mx, bool& any) {
    if (!f) return;
    if (f->kind == FormulaKind::ForAll || f->kind == FormulaKind::Exists ||
        f->kind == FormulaKind::BoundedForAll || f->kind == FormulaKind::BoundedExists) {
        mx = any ? std::max(mx, f->var) : f->var;
        any = true;
    }
    max_var(f->ta, mx, any);
    max_var(f->tb, mx, any);
    max_var(f->fa, mx, any);
    max_var(f->fb, mx, any);
}

void max_var(const TermPtr& t, uint32_t& mx, bool& any) {
    if (!t) return;
    if (t->kind == TermKind::Variable) {
        mx = any ? std::max(mx, t->var) : t->var;
        any = true;
    }
    max_var(t->a, mx, any);
    max_var(t->b, mx, any);
}

uint32_t fresh_above(std::initializer_list<TermPtr> ts) {
    uint32_t mx = 0;
    bool any = false;
    for (const TermPtr& t : ts) max_var(t, mx, any);
    return any ? mx + 1 : 0;
}

TermPtr nat(uint64_t n) { return numeral(LazyNat(BigNat(n))); }

// Generous strict bound for the value of a sequence entry at position i of
// the code s: entries are below 1 + (i+1)*s <= (i+1)*(s+1) + 1.
TermPtr entry_bound(const TermPtr& i, const TermPtr& s) {
    return succ(product(succ(i), succ(s)));
}

FormulaPtr node_code_eq(uint64_t tag, const TermPtr& c, const TermPtr& a, const TermPtr& b) {
    const uint32_t q = fresh_above({c, a, b});
    return bounded_exists(q, succ(c),
                          land(pair_eq(variable(q), a, b), pair_eq(c, nat(tag), variable(q))));
}

// e codes the result of substituting the term coded t into the formula coded
// f (shape fixed by docs/substitution_function.md: a pairing ticket for the
// pair (f, t), then a sequence read at that ticket).
FormulaPtr subst_code_eq(const TermPtr& e, const TermPtr& f, const TermPtr& t) {
    const uint32_t w = fresh_above({e, f, t});
    const TermPtr bound = succ(exp(succ(sum(f, t)), nat(2)));
    return bounded_exists(w, bound,
                          land(pair_eq(variable(w), f, t), beta_eq(e, f, variable(w))));
}

// line i of the sequence s is the pair of conclusion c and justification j
FormulaPtr line_eq(const TermPtr& s, const TermPtr& i, const TermPtr& c, const TermPtr& j) {
    const uint32_t u = fresh_above({s, i, c, j});
    return bounded_exists(u, entry_bound(i, s),
                          land(beta_eq(s, i, variable(u)), pair_eq(variable(u), c, j)));
}

BigNat cantor(const BigNat& a, const BigNat& b) {
    BigNat s = a + b;
    return s * (s + 1) / 2 + b;
}

} // namespace

FormulaPtr pair_eq(TermPtr s, TermPtr a, TermPtr b) {
    TermPtr ab = sum(a, b);
    return equal(product(nat(2), std::move(s)),
                 sum(product(ab, succ(ab)), product(nat(2), std::move(b))));
}

FormulaPtr beta_eq(TermPtr s, TermPtr i, TermPtr e) {
    const uint32_t va = fresh_above({s, i, e});
    const uint32_t vb = va + 1;
    const uint32_t vq = va + 2;
    TermPtr modulus = succ(product(succ(i), variable(vb)));
    FormulaPtr divides = bounded_exists(
        vq, succ(variable(va)),
        land(equal(variable(va), sum(product(variable(vq), modulus), e)), less(e, modulus)));
    return bounded_exists(
        va, succ(s),
        bounded_exists(vb, succ(s), land(pair_eq(s, variable(va), variable(vb)),
                                         std::move(divides))));
}

FormulaPtr implication_code_eq(TermPtr c, TermPtr a, TermPtr b) {
    return node_code_eq(coding::kTagImplies, c, a, b);
}

FormulaPtr and_code_eq(TermPtr c, TermPtr a, TermPtr b) {
    return node_code_eq(coding::kTagAnd, c, a, b);
}

FormulaPtr build_proof_predicate(const theory::TheoryDescriptor& T) {
    if (free_variables(T.axiom_recognizer) != std::set<uint32_t>{kVarConclusionSlot})
        throw Error("axiom recognizer must have exactly one free variable, index 0");
    if (!classify::level_le(classify::classify(T.axiom_recognizer),
                            classify::HierarchyLevel{classify::Shape::Sigma, 1}))
        throw Error("axiom recognizer above one existential block");

    const TermPtr p = variable(kVarProofCode);
    const TermPtr x = variable(kVarProvedCode);
    const uint32_t n = 4, s = 5, i = 6, ju = 7, sc = 8;
    const uint32_t jj = 9, kk = 10, prem = 11, ju1 = 12, impc = 13, ju2 = 14, d = 15;
    const uint32_t juLast = 17, iLast = 19;
    const TermPtr vs = variable(s);
    const TermPtr vi = variable(i);
    const TermPtr vju = variable(ju);

    FormulaPtr logicLine = bounded_exists(
        sc, succ(vju),
        land(pair_eq(vju, nat(0), variable(sc)), less(variable(sc), nat(kLogicSchemaCount))));

    FormulaPtr theoryLine = land(pair_eq(vju, nat(1), nat(0)), T.axiom_recognizer);

    FormulaPtr mpCore =
        land(pair_eq(vju, nat(2), variable(d)),
             land(pair_eq(variable(d), variable(jj), variable(kk)),
                  land(line_eq(vs, variable(jj), variable(prem), variable(ju1)),
                       land(line_eq(vs, variable(kk), variable(impc), variable(ju2)),
                            implication_code_eq(variable(impc), variable(prem),
                                                variable(kVarConclusionSlot))))));
    FormulaPtr mpLine = bounded_exists(
        jj, vi,
        bounded_exists(
            kk, vi,
            bounded_exists(
                prem, entry_bound(variable(jj), vs),
                bounded_exists(
                    impc, entry_bound(variable(kk), vs),
                    bounded_exists(
                        ju1, entry_bound(variable(jj), vs),
                        bounded_exists(ju2, entry_bound(variable(kk), vs),
                                       bounded_exists(d, succ(vju), std::move(mpCore))))))));

    FormulaPtr perLine = bounded_forall(
        i, variable(n),
        bounded_exists(
            kVarConclusionSlot, entry_bound(vi, vs),
            bounded_exists(ju, entry_bound(vi, vs),
                           land(line_eq(vs, vi, variable(kVarConclusionSlot), vju),
                                lor(std::move(logicLine),
                                    lor(std::move(theoryLine), std::move(mpLine)))))));

    FormulaPtr lastLine = bounded_forall(
        iLast, variable(n),
        implies(equal(succ(variable(iLast)), variable(n)),
                bounded_exists(juLast, entry_bound(variable(iLast), vs),
                               line_eq(vs, variable(iLast), x, variable(juLast)))));

    return bounded_exists(
        n, succ(p),
        bounded_exists(s, succ(p),
                       land(pair_eq(p, variable(n), vs),
                            land(lnot(equal(variable(n), zero())),
                                 land(std::move(lastLine), std::move(perLine))))));
}

FormulaPtr build_con(const theory::TheoryDescriptor& T, const FormulaPtr& phi) {
    if (!is_closed(phi)) throw Error("consistency statements take sentences");
    TermPtr refutation = coding::quote(implies(phi, bottom()));
    FormulaPtr proof = substitute(build_proof_predicate(T), kVarProvedCode, refutation);
    return forall(kVarProofCode, lnot(std::move(proof)));
}

FormulaPtr con_predicate(const theory::TheoryDescriptor& T, uint32_t x) {
    const uint32_t e = 3; // above the proof predicate's free variables
    if (x == kVarProofCode || x == e)
        throw Error("con_predicate input variable collides with its binders");
    FormulaPtr proof = substitute(build_proof_predicate(T), kVarProvedCode, variable(e));
    TermPtr bound = succ(exp(sum(variable(x), nat(4)), nat(4)));
    TermPtr bottomCode = numeral(LazyNat(coding::encode(bottom())));
    FormulaPtr body = land(implication_code_eq(variable(e), variable(x), std::move(bottomCode)),
                           std::move(proof));
    return forall(kVarProofCode,
                  lnot(bounded_exists(e, std::move(bound), std::move(body))));
}

FormulaPtr build_partial_truth(unsigned k) {
    if (k == 0) throw Error("truth templates start at one quantifier block");
    const uint32_t zBase = 24;
    const uint32_t m = zBase + k;
    TermPtr zsum = variable(zBase + k - 1);
    for (unsigned j = k - 1; j-- > 0;) zsum = sum(variable(zBase + j), std::move(zsum));
    const TermPtr y = variable(kVarTruthInput);
    FormulaPtr body = bounded_exists(
        m, succ(sum(y, zsum)),
        land(beta_eq(y, zsum, variable(m)), lnot(equal(variable(m), zero()))));
    for (unsigned j = k; j-- > 0;)
        body = (j % 2 == 0) ? forall(zBase + j, std::move(body))
                            : exists(zBase + j, std::move(body));
    return body;
}

FormulaPtr diag_sub(TermPtr x, TermPtr y) { return subst_code_eq(y, x, x); }

DiagonalResult diagonal(const FormulaPtr& psi) {
    std::set<uint32_t> fv = free_variables(psi);
    if (fv.size() != 1) throw Error("diagonal takes a formula with one free variable");
    const uint32_t v = *fv.begin();
    uint32_t mx = 0;
    bool any = false;
    max_var(psi, mx, any);
    const uint32_t x = any ? mx + 1 : 1;
    const uint32_t y = x + 1;
    FormulaPtr frame = forall(y, implies(diag_sub(variable(x), variable(y)),
                                         substitute(psi, v, variable(y))));
    FormulaPtr sentence = substitute(frame, x, numeral(coding::code_nat(frame)));
    return DiagonalResult{std::move(sentence), psi, std::move(frame)};
}

FormulaPtr ordinal_prec(TermPtr u, TermPtr w) {
    const uint32_t iu = fresh_above({u, w});
    const uint32_t jw = iu + 1;
    FormulaPtr below_finite = bounded_exists(
        jw, succ(w), land(pair_eq(w, nat(0), variable(jw)), less(variable(iu), variable(jw))));
    return bounded_exists(
        iu, succ(u),
        land(pair_eq(u, nat(0), variable(iu)),
             lor(pair_eq(w, nat(1), nat(0)), std::move(below_finite))));
}

BigNat notation_code(const theory::OrdinalNotation& alpha) {
    return alpha.is_omega() ? cantor(1, 0) : cantor(0, BigNat(*alpha.finite));
}

FormulaPtr build_iterated_con(const theory::TheoryDescriptor& T,
                              const theory::OrdinalNotation& alpha, const FormulaPtr& phi) {
    if (!is_closed(phi)) throw Error("iterated consistency takes sentences");
    if (!alpha.is_omega()) {
        FormulaPtr stage = top();
        for (uint64_t m = 0; m < *alpha.finite; ++m) stage = build_con(T, land(phi, stage));
        return stage;
    }
    // One free variable v; the diagonal then closes it with the frame's own
    // code. Says: every notation below omega has an entry along v's coded
    // iteration, and phi conjoined with that entry is consistent.
    const uint32_t v = 60, b = 61, e = 62, c = 63;
    TermPtr omegaCode = numeral(LazyNat(notation_code(theory::OrdinalNotation::omega())));
    TermPtr phiCode = coding::quote(phi);
    TermPtr eBound = succ(exp(succ(sum(variable(v), variable(b))), nat(4)));
    TermPtr cBound = succ(exp(sum(phiCode, sum(variable(e), nat(6))), nat(4)));
    FormulaPtr stage_ok = bounded_exists(
        c, std::move(cBound),
        land(and_code_eq(variable(c), phiCode, variable(e)), con_predicate(T, c)));
    FormulaPtr has_entry = bounded_exists(
        e, std::move(eBound),
        land(subst_code_eq(variable(e), variable(v), variable(b)), std::move(stage_ok)));
    FormulaPtr psi = forall(
        b, implies(ordinal_prec(variable(b), std::move(omegaCode)), std::move(has_entry)));
    return diagonal(psi).sentence;
}

FormulaPtr build_sentence_A(const FormulaPtr& G, unsigned k,
                            const theory::TheoryDescriptor& T) {
    if (free_variables(G) != std::set<uint32_t>{0, 1})
        throw Error("graph formula must have free variables exactly {0, 1}");
    if (!classify::level_le(classify::classify(G),
                            classify::HierarchyLevel{classify::Shape::Sigma, 1}))
        throw Error("graph formula above one existential block");
    if (k == 0) throw Error("truth level must be positive");
    return forall(0, forall(1, implies(land(G, build_partial_truth(k)),
                                       con_predicate(T, 0))));
}

entail::SchematicFact sigma1_fact(const FormulaPtr& G, const FormulaPtr& phi,
                                  const FormulaPtr& psi,
                                  const std::function<FormulaPtr(const FormulaPtr&)>& op,
                                  entail::FactStore& store, const std::string& op_id) {
    if (free_variables(G) != std::set<uint32_t>{0, 1})
        throw Error("graph formula must have free variables exactly {0, 1}");
    if (!op) throw Error("sigma1_fact needs the operator itself");
    if (!formula_eq(op(phi), psi))
        throw Error("claimed value disagrees with the operator on this input");
    FormulaPtr instance = substitute(substitute(G, 0, coding::quote(phi)), 1, coding::quote(psi));
    std::string id = op_id + ":star:" + std::to_string(store.all().size());
    return store.add(std::move(id), std::move(instance),
                     "true graph instance; one-existential-block truths are taken as provable");
}

} // namespace conlab::arith
