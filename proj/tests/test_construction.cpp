#include <doctest.h>

#include <conlab/arithmetize.hpp>
#include <conlab/construction.hpp>
#include <conlab/fo_text.hpp>

#include <set>
#include <string>

using namespace conlab;
using namespace conlab::construction;
using closed_form::Valuation;
using entail::Verdict;
using modal::MPtr;

namespace {

Valuation val(bool p0, bool p1) {
    Valuation v;
    v.fixed[0] = p0;
    v.fixed[1] = p1;
    v.fallback = true;
    return v;
}

// Nested consistency claims: level 0 is verum, level n+1 asserts the
// consistency of f joined with level n.
template <typename S>
S iterated_con(const StagedAlgebra<S>& alg, unsigned n, const S& f) {
    S cur = alg.verum;
    for (unsigned i = 0; i < n; ++i) cur = alg.con(alg.conj(f, cur));
    return cur;
}

std::vector<std::string> texts(const Trace<MPtr>& tr, const std::vector<size_t>& idxs) {
    std::vector<std::string> out;
    for (size_t i : idxs) out.push_back(modal::print(tr.nodes[i].sentence));
    return out;
}

std::vector<std::string> texts(const std::vector<ActiveEntry<MPtr>>& entries) {
    std::vector<std::string> out;
    for (const auto& e : entries) out.push_back(modal::print(e.sentence));
    return out;
}

} // namespace

TEST_CASE("stages zero and one match the hand staging") {
    Trace<MPtr> tr = run_stages(modal_algebra(), 1);
    REQUIRE(tr.nodes.size() == 6);
    REQUIRE(tr.events.size() == 2);

    CHECK(texts(tr, tr.events[0].numerated) ==
          std::vector<std::string>{"p0", "~p0"});
    CHECK(texts(tr.events[0].activated) ==
          std::vector<std::string>{"(p0 & <>p0)", "(~p0 & <>~p0)"});
    CHECK(tr.events[0].deactivated.empty());

    CHECK(texts(tr, tr.events[1].numerated) ==
          std::vector<std::string>{"((p0 & <>p0) & p1)", "((p0 & <>p0) & ~p1)",
                                   "((~p0 & <>~p0) & p1)", "((~p0 & <>~p0) & ~p1)"});
    CHECK(texts(tr.events[1].deactivated) == texts(tr.events[0].activated));
    CHECK(texts(tr.events[1].activated) ==
          std::vector<std::string>{
              "(((p0 & <>p0) & p1) & <>((p0 & <>p0) & p1))",
              "(((p0 & <>p0) & ~p1) & <>((p0 & <>p0) & ~p1))",
              "(((~p0 & <>~p0) & p1) & <>((~p0 & <>~p0) & p1))",
              "(((~p0 & <>~p0) & ~p1) & <>((~p0 & <>~p0) & ~p1))"});

    // parentage: stage-1 nodes point at the numerated sentence they extend
    CHECK(!tr.nodes[0].parent);
    CHECK(!tr.nodes[1].parent);
    CHECK(*tr.nodes[2].parent == 0);
    CHECK(*tr.nodes[3].parent == 0);
    CHECK(*tr.nodes[4].parent == 1);
    CHECK(*tr.nodes[5].parent == 1);
}

TEST_CASE("totals, distinctness and the activation ledger law") {
    for (unsigned N = 0; N <= 5; ++N) {
        Trace<MPtr> tr = run_stages(modal_algebra(), N);
        CHECK(tr.nodes.size() == (size_t{1} << (N + 2)) - 2);
        CHECK(tr.active.size() == (size_t{1} << (N + 1)));

        std::set<std::string> seen;
        for (const auto& n : tr.nodes) seen.insert(modal::print(n.sentence));
        CHECK(seen.size() == tr.nodes.size()); // numerated sentences pairwise distinct

        // everything activated at stage n is deactivated at stage n+1
        // and never appears in any later activation
        for (unsigned n = 0; n <= N; ++n) {
            if (n + 1 <= N) {
                CHECK(texts(tr.events[n].activated) == texts(tr.events[n + 1].deactivated));
            }
            std::set<std::string> here;
            for (const auto& e : tr.events[n].activated) here.insert(modal::print(e.sentence));
            for (unsigned m = n + 1; m <= N; ++m)
                for (const auto& e : tr.events[m].activated)
                    CHECK(!here.count(modal::print(e.sentence)));
        }
        CHECK(texts(tr.active) == texts(tr.events[N].activated));
    }
}

TEST_CASE("reruns are bit-exact and membership is syntactic") {
    Trace<MPtr> a = run_stages(modal_algebra(), 3);
    Trace<MPtr> b = run_stages(modal_algebra(), 3);
    CHECK(to_json(a) == to_json(b));

    TreeView va = tree(a, gl_judge());
    TreeView vb = tree(b, gl_judge());
    std::vector<size_t> branch = true_branch_nodes(a, Valuation::all_true());
    CHECK(to_dot(a, va, branch) == to_dot(b, vb, branch));

    for (const auto& n : a.nodes) {
        auto stage = membership(n.sentence, a);
        REQUIRE(stage);
        CHECK(*stage == n.stage);
    }
    CHECK(!membership(modal::atom(9), a));
    CHECK(!membership(a.alg.verum, a));
}

TEST_CASE("exactly one numerated and one active sentence is true per stage") {
    Trace<MPtr> tr = run_stages(modal_algebra(), 6);
    for (bool p0 : {false, true})
        for (bool p1 : {false, true}) {
            Valuation v = val(p0, p1);
            for (unsigned stage = 0; stage <= tr.stages; ++stage) {
                int true_numerated = 0;
                for (size_t idx : tr.events[stage].numerated)
                    if (closed_form::truth(tr.nodes[idx].sentence, v)) ++true_numerated;
                CHECK(true_numerated == 1);

                int true_active = 0;
                for (const auto& e : tr.events[stage].activated)
                    if (closed_form::truth(e.sentence, v)) ++true_active;
                CHECK(true_active == 1);
            }
            // the chain property: each true node extends the previous one
            std::vector<size_t> branch = true_branch_nodes(tr, v);
            REQUIRE(branch.size() == tr.stages + 1);
            for (unsigned n = 1; n < branch.size(); ++n)
                CHECK(*tr.nodes[branch[n]].parent == branch[n - 1]);
        }
}

TEST_CASE("tree keeps the consistent nodes and order matches entailment") {
    Trace<MPtr> tr = run_stages(modal_algebra(), 2);
    TreeView view = tree(tr, gl_judge());
    // with fresh atoms every numerated sentence is consistent
    CHECK(view.kept.size() == tr.nodes.size());

    // siblings contradict each other jointly
    for (const auto& n : tr.nodes) {
        std::vector<size_t> kids = view.children[n.index];
        if (kids.size() == 2) {
            Verdict v = entail::entails(
                {tr.nodes[kids[0]].sentence, tr.nodes[kids[1]].sentence}, modal::bottom());
            CHECK(v == Verdict::Provable);
        }
    }

    // ancestor-or-self in the trace coincides with reverse entailment
    auto ancestor_or_self = [&tr](size_t a, size_t b) {
        std::optional<size_t> cur = b;
        while (cur) {
            if (*cur == a) return true;
            cur = tr.nodes[*cur].parent;
        }
        return false;
    };
    for (size_t a : view.kept)
        for (size_t b : view.kept) {
            bool below = ancestor_or_self(a, b);
            bool entailed =
                entail::entails({tr.nodes[b].sentence}, tr.nodes[a].sentence) ==
                Verdict::Provable;
            CHECK(below == entailed);
        }
}

TEST_CASE("tree drops contradictory nodes and reports undecided ones") {
    StagedAlgebra<MPtr> alg = modal_algebra();
    alg.enumerate = [](size_t i) {
        return i == 1 ? modal::bottom() : modal::atom(static_cast<unsigned>(i));
    };
    Trace<MPtr> tr = run_stages(alg, 1);
    TreeView view = tree(tr, gl_judge());
    // stage 1 extends each root by bot and by ~bot; the bot side is excluded
    CHECK(view.kept == std::vector<size_t>{0, 1, 3, 5});
    CHECK(view.children[0] == std::vector<size_t>{3});
    CHECK(view.children[1] == std::vector<size_t>{5});
    CHECK(view.children[2].empty());

    EntailFn<MPtr> mute = [](const std::vector<MPtr>&, const MPtr&) {
        return Verdict::Unknown;
    };
    CHECK_THROWS_WITH_AS(tree(tr, mute), "consistency undecided for: p0", Error);
}

TEST_CASE("true branch sentences prove each finite iterated consistency claim") {
    StagedAlgebra<MPtr> alg = modal_algebra();
    Trace<MPtr> tr = run_stages(alg, 4);
    std::vector<size_t> branch = true_branch_nodes(tr, Valuation::all_true());
    for (unsigned n = 0; n <= 4; ++n) {
        MPtr claim = iterated_con(alg, n, alg.verum);
        CHECK(entail::entails({tr.nodes[branch[n]].sentence}, claim) == Verdict::Provable);
    }
    // and one level deeper fails: stage n cannot see n+1 nested claims
    MPtr beyond = iterated_con(alg, 3, alg.verum);
    CHECK(entail::entails({tr.nodes[branch[2]].sentence}, beyond) != Verdict::Provable);
}

TEST_CASE("theta picks the next base sentence and rebuilds the successor") {
    StagedAlgebra<MPtr> alg = modal_algebra();
    Trace<MPtr> tr = run_stages(alg, 5);
    for (bool p0 : {false, true})
        for (bool p2 : {false, true}) {
            Valuation v;
            v.fixed[0] = p0;
            v.fixed[2] = p2;
            v.fallback = true;
            std::vector<size_t> branch = true_branch_nodes(tr, v);
            for (unsigned n = 0; n + 1 <= tr.stages; ++n) {
                MPtr psi = tr.nodes[branch[n]].sentence;
                MPtr th = theta(psi, tr, v);
                MPtr base = alg.enumerate(n + 1);
                CHECK(modal::eq(th, closed_form::truth(base, v) ? base : modal::mnot(base)));
                MPtr successor = alg.conj(alg.conj(psi, alg.con(psi)), th);
                CHECK(modal::eq(tr.nodes[branch[n + 1]].sentence, successor));
            }
        }

    // off the branch or never numerated: errors
    Valuation v = Valuation::all_true();
    CHECK_THROWS_AS(theta(tr.nodes[1].sentence, tr, v), Error); // ~p0 is false
    CHECK_THROWS_AS(theta(modal::atom(9), tr, v), Error);
}

TEST_CASE("sharp holds on honest stagings and fails when theta is settled") {
    Trace<MPtr> tr = run_stages(modal_algebra(), 3);
    Valuation v = Valuation::all_true();
    std::vector<size_t> branch = true_branch_nodes(tr, v);
    for (size_t idx : branch)
        CHECK(check_sharp(tr.nodes[idx].sentence, tr, v));

    // doctor the base stream so stage 1 extends by verum: the strengthened
    // stage-0 sentence already proves that theta
    StagedAlgebra<MPtr> alg = modal_algebra();
    alg.enumerate = [](size_t i) {
        return i == 1 ? modal::top() : modal::atom(static_cast<unsigned>(i));
    };
    Trace<MPtr> doctored = run_stages(alg, 1);
    CHECK(!check_sharp(doctored.nodes[0].sentence, doctored, v));
}

TEST_CASE("the arithmetic algebra shares the staging engine") {
    StagedAlgebra<fo::FormulaPtr> alg = arith_algebra(theory::toy());
    Trace<fo::FormulaPtr> tr = run_stages(alg, 1);
    REQUIRE(tr.nodes.size() == 6);
    for (const auto& n : tr.nodes) CHECK(fo::is_closed(n.sentence));

    // active entries really are the consistency strengthenings of their origin
    for (const auto& e : tr.active) {
        const fo::FormulaPtr& origin = tr.nodes[e.origin].sentence;
        CHECK(fo::formula_eq(e.sentence,
                             fo::land(origin, arith::build_con(theory::toy(), origin))));
    }

    CHECK(to_json(tr) == to_json(run_stages(arith_algebra(theory::toy()), 1)));
    CHECK(membership(tr.nodes[4].sentence, tr) == 1);
}
