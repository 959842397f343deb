#include <conlab/operators.hpp>

#include <conlab/coding.hpp>
#include <conlab/fo_text.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

namespace conlab::operators {

modal::MPtr apply_operator(const Operator& g, const modal::MPtr& phi) {
    if (!g.modal_apply) throw Error("operator " + g.id + " has no surrogate image");
    return g.modal_apply(phi);
}

fo::FormulaPtr apply_operator(const Operator& g, const fo::FormulaPtr& phi) {
    if (!g.arith_apply) throw Error("operator " + g.id + " has no arithmetic image");
    return g.arith_apply(phi);
}

fo::FormulaPtr operator_graph(uint64_t tag) {
    fo::TermPtr x = fo::variable(0), y = fo::variable(1);
    fo::TermPtr s = fo::variable(2), m = fo::variable(3);
    return fo::exists(
        2, fo::exists(3, fo::land(arith::pair_eq(s, x, y),
                                  arith::pair_eq(m, fo::numeral(fo::LazyNat(BigNat(tag))), s))));
}

Operator const_top_op() {
    Operator g;
    g.id = "const-top";
    g.tag = 1;
    g.modal_apply = [](const modal::MPtr&) { return modal::top(); };
    g.arith_apply = [](const fo::FormulaPtr&) { return fo::top(); };
    g.declared_level = classify::kDelta0;
    g.graph = operator_graph(g.tag);
    return g;
}

Operator identity_op() {
    Operator g;
    g.id = "identity";
    g.tag = 2;
    g.modal_apply = [](const modal::MPtr& f) { return f; };
    g.arith_apply = [](const fo::FormulaPtr& f) { return f; };
    g.graph = operator_graph(g.tag);
    return g;
}

Operator con_op(const theory::TheoryDescriptor& T) {
    Operator g;
    g.id = "con";
    g.tag = 3;
    g.modal_apply = [](const modal::MPtr& f) { return modal::diamond(f); };
    g.arith_apply = [T](const fo::FormulaPtr& f) { return arith::build_con(T, f); };
    g.declared_level = classify::HierarchyLevel{classify::Shape::Pi, 1};
    g.graph = operator_graph(g.tag);
    return g;
}

Operator con_n_op(unsigned n, const theory::TheoryDescriptor& T) {
    Operator g;
    g.id = "con^" + std::to_string(n);
    g.tag = 100 + n;
    g.modal_apply = [n](const modal::MPtr& f) {
        modal::MPtr cur = modal::top();
        for (unsigned i = 0; i < n; ++i) cur = modal::diamond(modal::mand(f, cur));
        return cur;
    };
    g.arith_apply = [n, T](const fo::FormulaPtr& f) {
        return arith::build_iterated_con(T, theory::OrdinalNotation::nat(n), f);
    };
    g.declared_level = classify::HierarchyLevel{classify::Shape::Pi, 1};
    g.graph = operator_graph(g.tag);
    return g;
}

Operator constant_con_top_op(const theory::TheoryDescriptor& T) {
    Operator g;
    g.id = "constant-con-top";
    g.tag = 4;
    g.modal_apply = [](const modal::MPtr&) { return modal::diamond(modal::top()); };
    g.arith_apply = [T](const fo::FormulaPtr&) { return arith::build_con(T, fo::top()); };
    g.declared_level = classify::HierarchyLevel{classify::Shape::Pi, 1};
    g.graph = operator_graph(g.tag);
    return g;
}

Operator broken_op() {
    Operator g;
    g.id = "broken";
    g.tag = 0;
    g.modal_apply = [](const modal::MPtr& f) {
        if (modal::eq(f, modal::top())) return modal::bottom();
        if (modal::eq(f, modal::bottom())) return modal::top();
        return f;
    };
    return g;
}

MonotoneReport<modal::MPtr> monotone_check(
    const Operator& g, const std::vector<std::pair<modal::MPtr, modal::MPtr>>& pairs,
    const construction::EntailFn<modal::MPtr>& judge) {
    std::function<modal::MPtr(const modal::MPtr&)> fn = [&g](const modal::MPtr& f) {
        return apply_operator(g, f);
    };
    return monotone_check<modal::MPtr>(fn, pairs, judge);
}

bool DichotomyReport::all_pass() const {
    for (const SampleResult& s : samples)
        if (!s.pass) return false;
    return true;
}

namespace {

uint64_t env_seed() {
    const char* raw = std::getenv("CONLAB_SEED");
    if (!raw) return 0;
    return std::strtoull(raw, nullptr, 10);
}

} // namespace

DichotomyReport dichotomy(const Operator& g, const construction::Trace<modal::MPtr>& tr,
                          const closed_form::Valuation& v,
                          const construction::EntailFn<modal::MPtr>& judge, size_t samples,
                          modal::MPtr candidate, std::optional<uint64_t> seed) {
    DichotomyReport rep;
    rep.requested = samples;
    modal::MPtr image_of_falsum = apply_operator(g, modal::bottom());
    bool trivial = closed_form::truth(image_of_falsum, v);
    rep.tag = trivial ? DichotomyCase::EventuallyTrivial : DichotomyCase::EventuallyConLike;
    rep.generator = trivial ? image_of_falsum : (candidate ? candidate : modal::top());

    // cone members: the generator joined with trace sentences, then with
    // small enumerated sentences; order fixed by the seed
    std::vector<modal::MPtr> pool;
    for (const auto& node : tr.nodes) pool.push_back(node.sentence);
    for (const modal::MPtr& f : modal::up_to_size(4, 2)) pool.push_back(f);
    std::mt19937_64 rng(seed ? *seed : env_seed());
    std::shuffle(pool.begin(), pool.end(), rng);

    std::set<std::string> seen;
    for (const modal::MPtr& extra : pool) {
        if (rep.samples.size() >= samples) break;
        modal::MPtr phi = modal::mand(rep.generator, extra);
        if (!seen.insert(modal::print(phi)).second) continue;
        entail::Verdict verdict =
            trivial ? judge({phi}, apply_operator(g, phi))
                    : judge({phi, apply_operator(g, phi)}, tr.alg.con(phi));
        rep.samples.push_back({phi, verdict, verdict == entail::Verdict::Provable});
    }
    rep.exhausted = rep.samples.size() < samples;
    return rep;
}

BridgeFacts register_bridge_facts(const fo::FormulaPtr& phi, const Operator& g, unsigned k,
                                  const theory::TheoryDescriptor& T,
                                  entail::FactStore& store) {
    if (!g.arith_apply) throw Error("operator " + g.id + " has no arithmetic image");
    if (!g.graph) throw Error("operator " + g.id + " has no registered graph");
    if (!fo::is_closed(phi)) throw Error("bridge facts need a closed sentence");

    BridgeFacts out;
    out.psi = g.arith_apply(phi);
    out.A = arith::build_sentence_A(g.graph, k, T);

    out.cone_id = g.id + ":cone:" + std::to_string(store.all().size());
    store.add(out.cone_id, out.A, "cone membership hypothesis: the argument proves the bridge");

    out.star_id = arith::sigma1_fact(g.graph, phi, out.psi, g.arith_apply, store, g.id).id;

    fo::FormulaPtr truth_psi = fo::substitute(arith::build_partial_truth(k),
                                              arith::kVarTruthInput, coding::quote(out.psi));
    out.truth_id = g.id + ":image-true:" + std::to_string(store.all().size());
    store.add(out.truth_id, truth_psi, "case hypothesis: the image sentence is true at level " +
                                           std::to_string(k));
    return out;
}

cert::Certificate bridge_certificate(const fo::FormulaPtr& phi, const Operator& g, unsigned k,
                                     const theory::TheoryDescriptor& T,
                                     const entail::FactStore& store) {
    if (!g.arith_apply) throw Error("operator " + g.id + " has no arithmetic image");
    if (!g.graph) throw Error("operator " + g.id + " has no registered graph");
    fo::FormulaPtr psi = g.arith_apply(phi);
    fo::FormulaPtr A = arith::build_sentence_A(g.graph, k, T);
    fo::TermPtr qphi = coding::quote(phi);
    fo::TermPtr qpsi = coding::quote(psi);

    // instantiate exactly the way the checker replays it
    fo::FormulaPtr body = A;
    for (const fo::TermPtr& t : {qphi, qpsi}) {
        if (body->kind != fo::FormulaKind::ForAll)
            throw Error("bridge sentence lost its universal prefix");
        body = fo::substitute(body->fa, body->var, t);
    }
    // body = (graph-instance and truth-instance) -> consistency-instance
    fo::FormulaPtr star = body->fa->fa;
    fo::FormulaPtr truth_psi = body->fa->fb;
    fo::FormulaPtr con_phi = body->fb;

    auto fact_id = [&store](const fo::FormulaPtr& sentence, const char* what) {
        for (const entail::SchematicFact& f : store.all())
            if (fo::formula_eq(f.sentence, sentence)) return f.id;
        throw Error(std::string("fact not registered: ") + what);
    };
    std::string cone_id = fact_id(A, "bridge sentence");
    std::string star_id = fact_id(star, "graph instance");
    fact_id(truth_psi, "image truth"); // cited implicitly by the logic step

    cert::Certificate c;
    c.steps.push_back({A, cert::FactRef{cone_id}});
    c.steps.push_back({body, cert::Instantiation{0, {qphi, qpsi}}});
    c.steps.push_back({star, cert::FactRef{star_id}});
    c.steps.push_back({fo::implies(truth_psi, con_phi), cert::Logic{{1, 2}}});
    c.steps.push_back({con_phi, cert::Logic{{3}}});
    c.steps.push_back({con_phi, cert::PriorStep{4}});
    return c;
}

bool SuiteReport::all_pass() const {
    for (const ClaimResult& r : results)
        if (r.verdict == ClaimVerdict::Fail) return false;
    return true;
}

SuiteReport image_identity_suite(const construction::Trace<modal::MPtr>& tr,
                                 const closed_form::Valuation& v,
                                 const construction::EntailFn<modal::MPtr>& judge) {
    SuiteReport rep;
    auto push = [&rep](std::string claim, const modal::MPtr& instance, ClaimVerdict verdict,
                       std::string countermodel = "") {
        rep.results.push_back(
            {std::move(claim), modal::print(instance), verdict, std::move(countermodel)});
    };

    for (const auto& node : tr.nodes) {
        modal::MPtr img = trace_image(node.sentence, tr, judge);
        bool ok = class_equal(tr.alg.conj(node.sentence, img),
                              tr.alg.conj(node.sentence, tr.alg.con(node.sentence)), judge);
        push("node-image-identity", node.sentence, ok ? ClaimVerdict::Pass : ClaimVerdict::Fail);
    }

    for (size_t idx : construction::true_branch_nodes(tr, v)) {
        const modal::MPtr& psi = tr.nodes[idx].sentence;
        modal::MPtr strengthened = tr.alg.conj(psi, tr.alg.con(psi));
        modal::MPtr th = construction::theta(psi, tr, v);
        if (judge({strengthened}, th) == entail::Verdict::Provable) {
            push("entailment-transfer", psi, ClaimVerdict::Skipped,
                 "strengthening already settles the next step");
            push("image-conjunction-identity", psi, ClaimVerdict::Skipped,
                 "strengthening already settles the next step");
            push("class-fixed-point", psi, ClaimVerdict::Skipped,
                 "strengthening already settles the next step");
            continue;
        }

        // whatever the strengthening proves among the numerated sentences,
        // the sentence alone already proves
        bool transfer = true;
        std::string counter;
        for (const auto& z : tr.nodes) {
            if (judge({strengthened}, z.sentence) == entail::Verdict::Provable &&
                judge({psi}, z.sentence) != entail::Verdict::Provable) {
                transfer = false;
                counter = modal::print(z.sentence);
                break;
            }
        }
        push("entailment-transfer", psi, transfer ? ClaimVerdict::Pass : ClaimVerdict::Fail,
             counter);

        modal::MPtr img = trace_image(strengthened, tr, judge);
        std::vector<modal::MPtr> cons;
        for (const auto& z : tr.nodes)
            if (judge({psi}, z.sentence) == entail::Verdict::Provable)
                cons.push_back(tr.alg.con(z.sentence));
        modal::MPtr rhs = tr.alg.verum;
        if (!cons.empty()) {
            rhs = cons.back();
            for (size_t i = cons.size() - 1; i-- > 0;) rhs = tr.alg.conj(cons[i], rhs);
        }
        bool conjunction_match = class_equal(tr.alg.conj(strengthened, img),
                                             tr.alg.conj(strengthened, rhs), judge);
        push("image-conjunction-identity", psi,
             conjunction_match ? ClaimVerdict::Pass : ClaimVerdict::Fail);

        bool fixed = class_equal(strengthened, tr.alg.conj(strengthened, img), judge);
        push("class-fixed-point", psi, fixed ? ClaimVerdict::Pass : ClaimVerdict::Fail);
    }
    return rep;
}

namespace {

const char* verdict_name(ClaimVerdict v) {
    switch (v) {
        case ClaimVerdict::Pass: return "pass";
        case ClaimVerdict::Fail: return "fail";
        case ClaimVerdict::Skipped: return "skipped";
    }
    throw Error("unreachable claim verdict");
}

const char* verdict_name(entail::Verdict v) {
    switch (v) {
        case entail::Verdict::Provable: return "provable";
        case entail::Verdict::Refutable: return "refutable";
        case entail::Verdict::Independent: return "independent";
        case entail::Verdict::Unknown: return "unknown";
    }
    throw Error("unreachable verdict");
}

} // namespace

std::string report_to_json(const SuiteReport& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ClaimResult& r : report.results) {
        nlohmann::json obj;
        obj["claim"] = r.claim;
        obj["instance"] = r.instance;
        obj["verdict"] = verdict_name(r.verdict);
        if (!r.countermodel.empty()) obj["countermodel"] = r.countermodel;
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

std::string report_to_json(const DichotomyReport& report) {
    nlohmann::json j;
    j["case"] = report.tag == DichotomyCase::EventuallyTrivial ? "eventually-trivial"
                                                               : "eventually-con-like";
    j["generator"] = modal::print(report.generator);
    j["requested"] = report.requested;
    j["exhausted"] = report.exhausted;
    nlohmann::json arr = nlohmann::json::array();
    for (const SampleResult& s : report.samples) {
        nlohmann::json obj;
        obj["instance"] = modal::print(s.sentence);
        obj["verdict"] = verdict_name(s.verdict);
        obj["pass"] = s.pass;
        arr.push_back(obj);
    }
    j["samples"] = arr;
    return j.dump(2) + "\n";
}

} // namespace conlab::operators
