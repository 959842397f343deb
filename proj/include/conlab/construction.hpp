#pragma once
// The staged numeration. Stage 0 numerates the first base sentence and its
// negation and activates their consistency strengthenings; stage n+1 extends
// every active sentence by the next base sentence and by its negation,
// numerates the two results, retires the parent, and activates the
// strengthenings of the two new sentences. The engine is generic over a
// sentence algebra: the modal instance is decidable end to end, the
// arithmetic instance builds real consistency statements.

#include <conlab/closed_form.hpp>
#include <conlab/common.hpp>
#include <conlab/entail.hpp>
#include <conlab/fo.hpp>
#include <conlab/modal.hpp>
#include <conlab/theory.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace conlab::construction {

template <typename S>
struct StagedAlgebra {
    std::function<S(size_t)> enumerate; // total, deterministic base stream
    std::function<S(const S&)> con;     // consistency statement for a sentence
    std::function<S(const S&, const S&)> conj;
    std::function<S(const S&)> neg;
    std::function<bool(const S&, const S&)> eq; // syntactic identity
    std::function<std::string(const S&)> text;
    S falsum;
    S verum;
};

// Base stream p0, p1, ...; consistency is the diamond.
StagedAlgebra<modal::MPtr> modal_algebra();

// Base stream: size-ordered closed sentences (every closed sentence appears
// exactly once); consistency statements come from the theory.
StagedAlgebra<fo::FormulaPtr> arith_algebra(const theory::TheoryDescriptor& T);

template <typename S>
struct TraceNode {
    S sentence;
    size_t index;   // numeration order, 0-based
    unsigned stage;
    std::optional<size_t> parent; // numeration index this one extends
};

// An active sentence is the consistency strengthening of a numerated one;
// origin points back at that numeration index.
template <typename S>
struct ActiveEntry {
    S sentence;
    size_t origin;
};

template <typename S>
struct StageEvents {
    std::vector<size_t> numerated; // indices numerated at this stage
    std::vector<ActiveEntry<S>> activated;
    std::vector<ActiveEntry<S>> deactivated;
};

template <typename S>
struct Trace {
    StagedAlgebra<S> alg;
    unsigned stages = 0;              // ran stages 0..stages
    std::vector<TraceNode<S>> nodes;  // numeration order
    std::vector<ActiveEntry<S>> active;
    std::vector<StageEvents<S>> events;
};

template <typename S>
Trace<S> run_stages(StagedAlgebra<S> alg, unsigned N) {
    Trace<S> tr;
    tr.alg = alg;
    tr.stages = N;
    auto numerate = [&tr](S s, unsigned stage, std::optional<size_t> parent) {
        size_t idx = tr.nodes.size();
        tr.nodes.push_back(TraceNode<S>{std::move(s), idx, stage, parent});
        tr.events[stage].numerated.push_back(idx);
        return idx;
    };
    auto strengthen = [&alg](const S& s) { return alg.conj(s, alg.con(s)); };

    tr.events.resize(N + 1);
    S phi0 = alg.enumerate(0);
    size_t i0 = numerate(phi0, 0, std::nullopt);
    size_t i1 = numerate(alg.neg(phi0), 0, std::nullopt);
    tr.active.push_back({strengthen(tr.nodes[i0].sentence), i0});
    tr.active.push_back({strengthen(tr.nodes[i1].sentence), i1});
    tr.events[0].activated = tr.active;

    for (unsigned stage = 1; stage <= N; ++stage) {
        S phi = alg.enumerate(stage);
        S nphi = alg.neg(phi);
        std::vector<ActiveEntry<S>> next;
        for (const ActiveEntry<S>& entry : tr.active) {
            size_t ia = numerate(alg.conj(entry.sentence, phi), stage, entry.origin);
            size_t ib = numerate(alg.conj(entry.sentence, nphi), stage, entry.origin);
            next.push_back({strengthen(tr.nodes[ia].sentence), ia});
            next.push_back({strengthen(tr.nodes[ib].sentence), ib});
        }
        tr.events[stage].deactivated = tr.active;
        tr.events[stage].activated = next;
        tr.active = std::move(next);
    }
    return tr;
}

// Stage at which a syntactically identical sentence was numerated.
template <typename S>
std::optional<unsigned> membership(const S& s, const Trace<S>& tr) {
    for (const TraceNode<S>& n : tr.nodes)
        if (tr.alg.eq(n.sentence, s)) return n.stage;
    return std::nullopt;
}

template <typename S>
std::optional<size_t> find_numerated(const S& s, const Trace<S>& tr) {
    for (const TraceNode<S>& n : tr.nodes)
        if (tr.alg.eq(n.sentence, s)) return n.index;
    return std::nullopt;
}

template <typename S>
using EntailFn = std::function<entail::Verdict(const std::vector<S>&, const S&)>;

inline EntailFn<modal::MPtr> gl_judge(entail::GlProvider provider = {}) {
    return [provider](const std::vector<modal::MPtr>& ctx, const modal::MPtr& goal) {
        return provider.entails(ctx, goal);
    };
}

// Consistent numerated sentences under the trace parentage. Since any
// extension of an inconsistent sentence is inconsistent, the kept set is
// closed under parents and the result is a forest of at most binary nodes.
struct TreeView {
    std::vector<size_t> kept;                  // numeration indices, ascending
    std::vector<std::vector<size_t>> children; // indexed by numeration index
};

template <typename S>
TreeView tree(const Trace<S>& tr, const EntailFn<S>& judge) {
    TreeView view;
    view.children.resize(tr.nodes.size());
    std::vector<bool> kept(tr.nodes.size(), false);
    for (const TraceNode<S>& n : tr.nodes) {
        entail::Verdict v = judge({n.sentence}, tr.alg.falsum);
        if (v == entail::Verdict::Unknown)
            throw Error("consistency undecided for: " + tr.alg.text(n.sentence));
        if (v == entail::Verdict::Provable) continue; // inconsistent, excluded
        kept[n.index] = true;
        view.kept.push_back(n.index);
        if (n.parent && kept[*n.parent]) view.children[*n.parent].push_back(n.index);
    }
    return view;
}

// The unique chain of true numerated sentences, one per stage (throws Error
// if some stage does not have exactly one). Decidable-truth mode only.
std::vector<size_t> true_branch_nodes(const Trace<modal::MPtr>& tr,
                                      const closed_form::Valuation& v);
std::vector<modal::MPtr> true_branch(const Trace<modal::MPtr>& tr,
                                     const closed_form::Valuation& v);

// For psi numerated at stage n on the true branch: the next base sentence if
// it is true under v, otherwise its negation. Throws Error off the branch.
modal::MPtr theta(const modal::MPtr& psi, const Trace<modal::MPtr>& tr,
                  const closed_form::Valuation& v);

// Whether the strengthening of psi fails to settle theta: true iff
// psi and Con(psi) together do not entail theta(psi).
bool check_sharp(const modal::MPtr& psi, const Trace<modal::MPtr>& tr,
                 const closed_form::Valuation& v, const entail::GlProvider& provider = {});

// Per-stage events as JSON: [{stage, numerated:[text], activated:[text],
// deactivated:[text]}, ...] wrapped with stage and node totals.
template <typename S>
std::string to_json(const Trace<S>& tr);

// DOT digraph of the kept forest; indices in marked render with a double
// outline (used for the true branch).
template <typename S>
std::string to_dot(const Trace<S>& tr, const TreeView& view,
                   const std::vector<size_t>& marked = {});

} // namespace conlab::construction
