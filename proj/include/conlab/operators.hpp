#pragma once
// Monotone maps on sentences: a small operator library, the staged-trace
// image operator (conjunction of consistency statements over the entailed
// numerated sentences), Lindenbaum-class comparisons, cones and the
// trivial-or-consistency dichotomy, and the certified bridge derivation.

#include <conlab/arithmetize.hpp>
#include <conlab/certificate.hpp>
#include <conlab/classify.hpp>
#include <conlab/construction.hpp>
#include <conlab/entail.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conlab::operators {

struct Operator {
    std::string id;
    uint64_t tag = 0; // keys the registered graph template
    std::function<modal::MPtr(const modal::MPtr&)> modal_apply;
    std::function<fo::FormulaPtr(const fo::FormulaPtr&)> arith_apply; // may be empty
    // level every arithmetic image must stay within, when one is declared
    std::optional<classify::HierarchyLevel> declared_level;
    fo::FormulaPtr graph; // free variables exactly {0, 1}; null without one
};

modal::MPtr apply_operator(const Operator& g, const modal::MPtr& phi);
fo::FormulaPtr apply_operator(const Operator& g, const fo::FormulaPtr& phi);

// The registered relation template for an operator: some pair node carrying
// the operator's tag joins x to y. One existential block, free {0, 1}.
fo::FormulaPtr operator_graph(uint64_t tag);

Operator const_top_op();
Operator identity_op();
Operator con_op(const theory::TheoryDescriptor& T);
// n-fold nesting: level 0 is verum, level i+1 asserts consistency of the
// argument joined with level i.
Operator con_n_op(unsigned n, const theory::TheoryDescriptor& T);
// ignores its argument and returns the consistency of verum
Operator constant_con_top_op(const theory::TheoryDescriptor& T);
// deliberately non-monotone: swaps verum and falsum (surrogate mode only)
Operator broken_op();

// Stage bound used for the trace image: the argument's position in the base
// stream when it appears there, otherwise the whole recorded window.
template <typename S>
unsigned enumeration_index(const S& phi, const construction::Trace<S>& tr) {
    for (unsigned i = 0; i <= tr.stages; ++i)
        if (tr.alg.eq(tr.alg.enumerate(i), phi)) return i;
    return tr.stages;
}

// The trace image of phi: falsum when phi is inconsistent; otherwise the
// conjunction, in numeration order, of the consistency statements of every
// numerated sentence within the stage bound that phi entails (verum when
// none). Unknown verdicts surface as OracleRequired.
template <typename S>
S trace_image(const S& phi, const construction::Trace<S>& tr,
              const construction::EntailFn<S>& judge,
              std::optional<unsigned> stage_bound = std::nullopt) {
    auto decide = [&](const std::vector<S>& ctx, const S& goal) {
        entail::Verdict v = judge(ctx, goal);
        if (v == entail::Verdict::Unknown)
            throw OracleRequired("entailment undecided for: " + tr.alg.text(goal));
        return v;
    };
    if (decide({phi}, tr.alg.falsum) == entail::Verdict::Provable) return tr.alg.falsum;
    unsigned bound = stage_bound ? *stage_bound : enumeration_index(phi, tr);
    std::vector<S> cons;
    for (const auto& node : tr.nodes)
        if (node.stage <= bound &&
            decide({phi}, node.sentence) == entail::Verdict::Provable)
            cons.push_back(tr.alg.con(node.sentence));
    if (cons.empty()) return tr.alg.verum;
    S out = cons.back();
    for (size_t i = cons.size() - 1; i-- > 0;) out = tr.alg.conj(cons[i], out);
    return out;
}

enum class PairStatus { Inapplicable, Holds, Violation, Inconclusive };

template <typename S>
struct MonotonePairResult {
    S phi;
    S psi;
    PairStatus status;
};

template <typename S>
struct MonotoneReport {
    std::vector<MonotonePairResult<S>> pairs;
    bool ok = true; // no violations
};

// For each pair whose first member provably entails the second, checks that
// the images do too. Unknown on either side is inconclusive, not a violation.
template <typename S>
MonotoneReport<S> monotone_check(const std::function<S(const S&)>& g,
                                 const std::vector<std::pair<S, S>>& pairs,
                                 const construction::EntailFn<S>& judge) {
    MonotoneReport<S> report;
    for (const auto& [phi, psi] : pairs) {
        PairStatus status;
        entail::Verdict premise = judge({phi}, psi);
        if (premise == entail::Verdict::Unknown) {
            status = PairStatus::Inconclusive;
        } else if (premise != entail::Verdict::Provable) {
            status = PairStatus::Inapplicable;
        } else {
            entail::Verdict image = judge({g(phi)}, g(psi));
            status = image == entail::Verdict::Provable  ? PairStatus::Holds
                     : image == entail::Verdict::Unknown ? PairStatus::Inconclusive
                                                         : PairStatus::Violation;
        }
        if (status == PairStatus::Violation) report.ok = false;
        report.pairs.push_back({phi, psi, status});
    }
    return report;
}

MonotoneReport<modal::MPtr> monotone_check(
    const Operator& g, const std::vector<std::pair<modal::MPtr, modal::MPtr>>& pairs,
    const construction::EntailFn<modal::MPtr>& judge);

// Same Lindenbaum class: provable entailment both ways. Unknown surfaces as
// OracleRequired.
template <typename S>
bool class_equal(const S& a, const S& b, const construction::EntailFn<S>& judge) {
    auto decide = [&](const S& from, const S& to) {
        entail::Verdict v = judge({from}, to);
        if (v == entail::Verdict::Unknown) throw OracleRequired("class comparison undecided");
        return v == entail::Verdict::Provable;
    };
    return decide(a, b) && decide(b, a);
}

// phi sits strictly below psi: either the entailment is one-directional, or
// both collapse to the inconsistent class.
template <typename S>
bool strict_implies(const S& phi, const S& psi, const construction::EntailFn<S>& judge,
                    const S& falsum) {
    auto decide = [&](const std::vector<S>& ctx, const S& goal) {
        entail::Verdict v = judge(ctx, goal);
        if (v == entail::Verdict::Unknown) throw OracleRequired("strict comparison undecided");
        return v == entail::Verdict::Provable;
    };
    if (decide({phi}, psi) && !decide({psi}, phi)) return true;
    return decide({phi}, falsum) && decide({psi}, falsum);
}

enum class DichotomyCase { EventuallyTrivial, EventuallyConLike };

struct SampleResult {
    modal::MPtr sentence;
    entail::Verdict verdict;
    bool pass;
};

struct DichotomyReport {
    DichotomyCase tag;
    modal::MPtr generator;
    std::vector<SampleResult> samples;
    size_t requested = 0;
    bool exhausted = false; // candidate pool ran out before `requested`
    bool all_pass() const;
};

// Case split on the truth of g(falsum). True: report the cone above g(falsum)
// and verify each sampled member entails its own image. False: sample the
// candidate's cone and verify that a member joined with its image entails the
// member's consistency statement. Samples conjoin the cone generator with
// trace sentences and small enumerated sentences, shuffled by seed (falls
// back to CONLAB_SEED, then 0).
DichotomyReport dichotomy(const Operator& g, const construction::Trace<modal::MPtr>& tr,
                          const closed_form::Valuation& v,
                          const construction::EntailFn<modal::MPtr>& judge, size_t samples,
                          modal::MPtr candidate = nullptr,
                          std::optional<uint64_t> seed = std::nullopt);

// Facts the certified bridge derivation cites.
struct BridgeFacts {
    fo::FormulaPtr A;         // the bridge sentence for g's graph at level k
    fo::FormulaPtr psi;       // g applied to phi
    std::string cone_id;      // membership hypothesis: A itself
    std::string star_id;      // graph instance at (quote phi, quote psi)
    std::string truth_id;     // truth template at quote psi
};

BridgeFacts register_bridge_facts(const fo::FormulaPtr& phi, const Operator& g, unsigned k,
                                  const theory::TheoryDescriptor& T,
                                  entail::FactStore& store);

// The six-step derivation from the bridge sentence to the consistency of phi:
// cite A, instantiate it at the quoted pair, cite the graph instance, chain
// propositionally, and restate. Requires the facts to be registered already.
cert::Certificate bridge_certificate(const fo::FormulaPtr& phi, const Operator& g, unsigned k,
                                     const theory::TheoryDescriptor& T,
                                     const entail::FactStore& store);

enum class ClaimVerdict { Pass, Fail, Skipped };

struct ClaimResult {
    std::string claim;
    std::string instance;
    ClaimVerdict verdict;
    std::string countermodel; // first failing witness, empty otherwise
};

struct SuiteReport {
    std::vector<ClaimResult> results;
    bool all_pass() const; // skipped entries do not fail the suite
};

// Per-node image/consistency identity at every numerated sentence; then per
// true-branch sentence whose next step is unsettled: the entailment-transfer
// claim over all numerated sentences, the image/conjunction identity, and
// the final class identity. Settled branch sentences are recorded as skipped.
SuiteReport image_identity_suite(const construction::Trace<modal::MPtr>& tr,
                                 const closed_form::Valuation& v,
                                 const construction::EntailFn<modal::MPtr>& judge);

std::string report_to_json(const SuiteReport& report);
std::string report_to_json(const DichotomyReport& report);

} // namespace conlab::operators
