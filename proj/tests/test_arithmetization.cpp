#include <doctest.h>

#include <conlab/arithmetize.hpp>
#include <conlab/classify.hpp>
#include <conlab/coding.hpp>
#include <conlab/common.hpp>
#include <conlab/fo.hpp>
#include <conlab/fo_enum.hpp>
#include <conlab/fo_eval.hpp>
#include <conlab/fo_text.hpp>
#include <conlab/theory.hpp>

#include <set>
#include <vector>

using namespace conlab;
using namespace conlab::fo;

namespace {

TermPtr num(const BigNat& n) { return numeral(LazyNat(n)); }

BigNat cpair(const BigNat& a, const BigNat& b) {
    BigNat s = a + b;
    return s * (s + 1) / 2 + b;
}

bool ev(const FormulaPtr& f) {
    return fo_eval::evaluate_bounded(f, {512, 50'000'000});
}

classify::HierarchyLevel pi(unsigned k) { return {classify::Shape::Pi, k}; }
classify::HierarchyLevel sigma(unsigned k) { return {classify::Shape::Sigma, k}; }

// node count with every successor run, quoted or concrete, collapsed to one
uint64_t surface_nodes(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Zero:
        case TermKind::Variable:
            return 1;
        case TermKind::Succ:
            return 1 + surface_nodes(t->a);
        default:
            return 1 + surface_nodes(t->a) + surface_nodes(t->b);
    }
}

uint64_t surface_nodes(const FormulaPtr& f) {
    uint64_t total = 1;
    for (const TermPtr& t : {f->ta, f->tb})
        if (t) total += surface_nodes(t);
    for (const FormulaPtr& g : {f->fa, f->fb})
        if (g) total += surface_nodes(g);
    return total;
}

const std::set<uint32_t> kFree01{0, 1};

} // namespace

TEST_CASE("pairing and sequence templates decide correctly on closed instances") {
    CHECK(cpair(3, 5) == 41);
    for (unsigned a = 0; a < 7; ++a)
        for (unsigned b = 0; b < 7; ++b) {
            CHECK(ev(arith::pair_eq(num(cpair(a, b)), num(a), num(b))));
            CHECK_FALSE(ev(arith::pair_eq(num(cpair(a, b) + 1), num(a), num(b))));
        }

    // s = pair(8, 1): the stored value 8 read modulo 1 + (i+1)*1
    const TermPtr s = num(cpair(8, 1));
    CHECK(ev(arith::beta_eq(s, num(0), num(0))));
    CHECK(ev(arith::beta_eq(s, num(1), num(2))));
    CHECK(ev(arith::beta_eq(s, num(2), num(0))));
    CHECK(ev(arith::beta_eq(s, num(3), num(3))));
    CHECK_FALSE(ev(arith::beta_eq(s, num(1), num(3))));
    CHECK_FALSE(ev(arith::beta_eq(s, num(0), num(1))));

    FormulaPtr open_beta = arith::beta_eq(variable(0), variable(1), variable(2));
    CHECK(free_variables(open_beta) == std::set<uint32_t>{0, 1, 2});
    CHECK(classify::classify(open_beta) == classify::kDelta0);

    const BigNat impCode = coding::encode(implies(bottom(), bottom()));
    const BigNat botCode = coding::encode(bottom());
    CHECK(ev(arith::implication_code_eq(num(impCode), num(botCode), num(botCode))));
    CHECK_FALSE(ev(arith::implication_code_eq(num(impCode), num(botCode), num(botCode + 1))));
    const BigNat andCode = coding::encode(land(bottom(), bottom()));
    CHECK(ev(arith::and_code_eq(num(andCode), num(botCode), num(botCode))));
    CHECK_FALSE(ev(arith::and_code_eq(num(impCode), num(botCode), num(botCode))));
}

TEST_CASE("ordinal notation codes and the strict precedence template") {
    using theory::OrdinalNotation;
    CHECK(arith::notation_code(OrdinalNotation::nat(0)) == cpair(0, 0));
    CHECK(arith::notation_code(OrdinalNotation::nat(1)) == cpair(0, 1));
    CHECK(arith::notation_code(OrdinalNotation::nat(2)) == cpair(0, 2));
    CHECK(arith::notation_code(OrdinalNotation::omega()) == cpair(1, 0));

    auto code = [](OrdinalNotation a) { return num(arith::notation_code(a)); };
    for (uint64_t i = 0; i < 5; ++i)
        CHECK(ev(arith::ordinal_prec(code(OrdinalNotation::nat(i)),
                                     code(OrdinalNotation::omega()))));
    CHECK(ev(arith::ordinal_prec(code(OrdinalNotation::nat(1)), code(OrdinalNotation::nat(2)))));
    CHECK_FALSE(ev(arith::ordinal_prec(code(OrdinalNotation::nat(2)),
                                       code(OrdinalNotation::nat(1)))));
    CHECK_FALSE(ev(arith::ordinal_prec(code(OrdinalNotation::nat(2)),
                                       code(OrdinalNotation::nat(2)))));
    CHECK_FALSE(ev(arith::ordinal_prec(code(OrdinalNotation::omega()),
                                       code(OrdinalNotation::omega()))));
    CHECK_FALSE(ev(arith::ordinal_prec(code(OrdinalNotation::omega()),
                                       code(OrdinalNotation::nat(7)))));

    FormulaPtr open_prec = arith::ordinal_prec(variable(0), variable(1));
    CHECK(free_variables(open_prec) == kFree01);
    CHECK(classify::classify(open_prec) == classify::kDelta0);
}

TEST_CASE("proof predicate embeds the recognizer and classifies with it") {
    const theory::TheoryDescriptor& toy = theory::toy();
    FormulaPtr pp = arith::build_proof_predicate(toy);
    CHECK(free_variables(pp) ==
          std::set<uint32_t>{arith::kVarProofCode, arith::kVarProvedCode});
    CHECK(classify::classify(pp) == classify::kDelta0);
    CHECK(contains_subformula(pp, toy.axiom_recognizer));
    CHECK(fo_text::print_display(pp).size() > 100);

    FormulaPtr ppea = arith::build_proof_predicate(theory::ea());
    CHECK(classify::classify(ppea) == classify::kDelta0);
    CHECK(contains_subformula(ppea, theory::ea().axiom_recognizer));

    theory::TheoryDescriptor halves{
        "halves", exists(70, equal(variable(0), sum(variable(70), variable(70)))), "custom"};
    CHECK(classify::classify(arith::build_proof_predicate(halves)) == sigma(1));

    theory::TheoryDescriptor twofree{"bad", equal(variable(0), variable(1)), "custom"};
    CHECK_THROWS_AS(arith::build_proof_predicate(twofree), Error);
    theory::TheoryDescriptor closed{"bad", equal(zero(), zero()), "custom"};
    CHECK_THROWS_AS(arith::build_proof_predicate(closed), Error);
    theory::TheoryDescriptor toohigh{
        "bad", forall(70, lnot(equal(variable(0), variable(70)))), "custom"};
    CHECK_THROWS_AS(arith::build_proof_predicate(toohigh), Error);
}

TEST_CASE("consistency statement and predicate shapes") {
    const theory::TheoryDescriptor& toy = theory::toy();
    FormulaPtr phi = equal(zero(), zero());
    FormulaPtr con = arith::build_con(toy, phi);
    CHECK(is_closed(con));
    CHECK(classify::classify(con) == pi(1));
    CHECK(contains_subterm(con, coding::quote(implies(phi, bottom()))));
    CHECK_THROWS_AS(arith::build_con(toy, equal(variable(0), variable(0))), Error);

    FormulaPtr cp = arith::con_predicate(toy, 0);
    CHECK(free_variables(cp) == std::set<uint32_t>{0});
    CHECK(classify::classify(cp) == pi(1));
    CHECK(free_variables(arith::con_predicate(toy, 2)) == std::set<uint32_t>{2});
    CHECK_THROWS_AS(arith::con_predicate(toy, 1), Error);
    CHECK_THROWS_AS(arith::con_predicate(toy, 3), Error);

    // a small sentence has a concrete code, a consistency statement does not
    auto smallq = as_numeral(coding::quote(phi));
    REQUIRE(smallq.has_value());
    CHECK_FALSE(smallq->is_code_marker());
    TermPtr q = coding::quote(con);
    auto bigq = as_numeral(q);
    REQUIRE(bigq.has_value());
    CHECK(bigq->is_code_marker());
    CHECK(fo_eval::evaluate_bounded(equal(q, q)));
}

TEST_CASE("iterated consistency unfolds finitely and stays small through quotation") {
    using theory::OrdinalNotation;
    const theory::TheoryDescriptor& toy = theory::toy();
    FormulaPtr phi = lnot(equal(succ(zero()), zero()));

    FormulaPtr st0 = arith::build_iterated_con(toy, OrdinalNotation::nat(0), phi);
    CHECK(formula_eq(st0, top()));
    FormulaPtr st1 = arith::build_iterated_con(toy, OrdinalNotation::nat(1), phi);
    CHECK(formula_eq(st1, arith::build_con(toy, land(phi, top()))));

    FormulaPtr prev = st1;
    for (uint64_t n = 2; n <= 4; ++n) {
        FormulaPtr st = arith::build_iterated_con(toy, OrdinalNotation::nat(n), phi);
        CHECK(is_closed(st));
        CHECK(classify::classify(st) == pi(1));
        CHECK(contains_subformula(st, prev));
        CHECK_FALSE(formula_eq(st, prev));
        CHECK(formula_eq(st, arith::build_con(toy, land(phi, prev))));
        // the previous stage rides inside one quoted numeral, so the visible
        // syntax does not grow with the stage
        CHECK(surface_nodes(st) == surface_nodes(st1));
        prev = st;
    }
    CHECK(contains_subformula(prev, st1));
}

TEST_CASE("omega stage is a closed fixed point mentioning the order and the proof predicate") {
    using theory::OrdinalNotation;
    const theory::TheoryDescriptor& toy = theory::toy();
    FormulaPtr phi = lnot(equal(succ(zero()), zero()));
    FormulaPtr w = arith::build_iterated_con(toy, OrdinalNotation::omega(), phi);

    CHECK(is_closed(w));
    CHECK(classify::classify(w) == pi(1));
    FormulaPtr prec_instance =
        arith::ordinal_prec(variable(61), num(arith::notation_code(OrdinalNotation::omega())));
    CHECK(contains_subformula(w, prec_instance));
    CHECK(contains_subformula(w, arith::con_predicate(toy, 63)));
    CHECK(contains_subterm(w, coding::quote(phi)));
}

TEST_CASE("diagonal construction is recomputable from its own output") {
    FormulaPtr psi = equal(variable(0), variable(0));
    arith::DiagonalResult d = arith::diagonal(psi);
    CHECK(formula_eq(d.defining_formula, psi));
    REQUIRE(d.frame->kind == FormulaKind::ForAll);
    const uint32_t y = d.frame->var;
    std::set<uint32_t> frameFree = free_variables(d.frame);
    REQUIRE(frameFree.size() == 1);
    const uint32_t x = *frameFree.begin();
    CHECK(x == 1);
    CHECK(y == 2);
    FormulaPtr frame2 = forall(
        y, implies(arith::diag_sub(variable(x), variable(y)), substitute(psi, 0, variable(y))));
    CHECK(formula_eq(d.frame, frame2));
    CHECK(formula_eq(d.sentence, substitute(d.frame, x, numeral(coding::code_nat(d.frame)))));
    CHECK(is_closed(d.sentence));

    CHECK_THROWS_AS(arith::diagonal(equal(zero(), zero())), Error);
    CHECK_THROWS_AS(arith::diagonal(equal(variable(0), variable(1))), Error);
}

TEST_CASE("diagonal shape identity holds across an enumerated pool") {
    std::vector<FormulaPtr> pool;
    for (const FormulaPtr& f : fo_enum::formulas_up_to(5))
        if (free_variables(f) == std::set<uint32_t>{0}) pool.push_back(f);
    REQUIRE(pool.size() >= 50);
    pool.resize(50);

    for (const FormulaPtr& f : pool) {
        arith::DiagonalResult d = arith::diagonal(f);
        const uint32_t y = d.frame->var;
        std::set<uint32_t> frameFree = free_variables(d.frame);
        REQUIRE(frameFree.size() == 1);
        const uint32_t x = *frameFree.begin();
        FormulaPtr frame2 = forall(
            y, implies(arith::diag_sub(variable(x), variable(y)), substitute(f, 0, variable(y))));
        CHECK(formula_eq(d.frame, frame2));
        CHECK(formula_eq(d.sentence,
                         substitute(d.frame, x, numeral(coding::code_nat(d.frame)))));
        CHECK(is_closed(d.sentence));
    }
}

TEST_CASE("truth templates alternate quantifiers starting universal") {
    FormulaPtr prev;
    for (unsigned k = 1; k <= 4; ++k) {
        FormulaPtr tr = arith::build_partial_truth(k);
        CHECK(free_variables(tr) == std::set<uint32_t>{arith::kVarTruthInput});
        CHECK(classify::classify(tr) == pi(k));
        if (prev) CHECK_FALSE(formula_eq(tr, prev));
        prev = tr;
    }
    CHECK_THROWS_AS(arith::build_partial_truth(0), Error);
}

TEST_CASE("bridge sentence keeps its constituents verbatim") {
    const theory::TheoryDescriptor& toy = theory::toy();
    FormulaPtr G = exists(
        2, exists(3, land(arith::pair_eq(variable(2), variable(0), variable(1)),
                          arith::pair_eq(variable(3), num(7), variable(2)))));
    REQUIRE(free_variables(G) == kFree01);
    REQUIRE(classify::classify(G) == sigma(1));

    FormulaPtr A = arith::build_sentence_A(G, 1, toy);
    CHECK(is_closed(A));
    CHECK(contains_subformula(A, G));
    CHECK(contains_subformula(A, arith::build_partial_truth(1)));
    CHECK(contains_subformula(A, arith::con_predicate(toy, 0)));

    CHECK_THROWS_AS(arith::build_sentence_A(equal(variable(0), variable(0)), 1, toy), Error);
    FormulaPtr piG = forall(2, lor(equal(variable(0), variable(2)),
                                   equal(variable(1), variable(2))));
    REQUIRE(free_variables(piG) == kFree01);
    CHECK_THROWS_AS(arith::build_sentence_A(piG, 1, toy), Error);
    CHECK_THROWS_AS(arith::build_sentence_A(G, 0, toy), Error);
}

TEST_CASE("graph-instance facts are validated against the operator") {
    const theory::TheoryDescriptor& toy = theory::toy();
    (void)toy;
    FormulaPtr G = exists(
        2, exists(3, land(arith::pair_eq(variable(2), variable(0), variable(1)),
                          arith::pair_eq(variable(3), num(7), variable(2)))));
    auto pad = [](const FormulaPtr& f) { return land(f, top()); };
    FormulaPtr phi = equal(zero(), zero());
    FormulaPtr psi = pad(phi);

    entail::FactStore store;
    entail::SchematicFact fact = arith::sigma1_fact(G, phi, psi, pad, store, "pad");
    CHECK(fact.id == "pad:star:0");
    CHECK(store.find("pad:star:0") != nullptr);
    FormulaPtr expected =
        substitute(substitute(G, 0, coding::quote(phi)), 1, coding::quote(psi));
    CHECK(formula_eq(fact.sentence, expected));
    CHECK(is_closed(fact.sentence));
    CHECK(classify::classify(fact.sentence) == sigma(1));

    CHECK_THROWS_AS(arith::sigma1_fact(G, phi, top(), pad, store, "pad"), Error);
    entail::SchematicFact again = arith::sigma1_fact(G, psi, pad(psi), pad, store, "pad");
    CHECK(again.id == "pad:star:1");
    CHECK(store.all().size() == 2);
}
