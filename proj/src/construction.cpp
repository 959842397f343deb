#include <conlab/construction.hpp>

#include <conlab/arithmetize.hpp>
#include <conlab/fo_enum.hpp>
#include <conlab/fo_text.hpp>

#include <json.hpp>

#include <algorithm>
#include <memory>
#include <set>

namespace conlab::construction {

StagedAlgebra<modal::MPtr> modal_algebra() {
    StagedAlgebra<modal::MPtr> alg;
    alg.enumerate = [](size_t i) { return modal::atom(static_cast<unsigned>(i)); };
    alg.con = [](const modal::MPtr& s) { return modal::diamond(s); };
    alg.conj = [](const modal::MPtr& a, const modal::MPtr& b) { return modal::mand(a, b); };
    alg.neg = [](const modal::MPtr& s) { return modal::mnot(s); };
    alg.eq = [](const modal::MPtr& a, const modal::MPtr& b) { return modal::eq(a, b); };
    alg.text = [](const modal::MPtr& s) { return modal::print(s); };
    alg.falsum = modal::bottom();
    alg.verum = modal::top();
    return alg;
}

StagedAlgebra<fo::FormulaPtr> arith_algebra(const theory::TheoryDescriptor& T) {
    struct Stream {
        std::vector<fo::FormulaPtr> closed;
        unsigned next_size = 1;
    };
    auto stream = std::make_shared<Stream>();
    StagedAlgebra<fo::FormulaPtr> alg;
    alg.enumerate = [stream](size_t i) {
        while (stream->closed.size() <= i) {
            if (stream->next_size > 12)
                throw ResourceError("sentence stream exhausted the size budget");
            for (const fo::FormulaPtr& f : fo_enum::formulas_of_size(stream->next_size))
                if (fo::is_closed(f)) stream->closed.push_back(f);
            ++stream->next_size;
        }
        return stream->closed[i];
    };
    alg.con = [T](const fo::FormulaPtr& s) { return arith::build_con(T, s); };
    alg.conj = [](const fo::FormulaPtr& a, const fo::FormulaPtr& b) { return fo::land(a, b); };
    alg.neg = [](const fo::FormulaPtr& s) { return fo::lnot(s); };
    alg.eq = [](const fo::FormulaPtr& a, const fo::FormulaPtr& b) { return fo::formula_eq(a, b); };
    alg.text = [](const fo::FormulaPtr& s) { return fo_text::print_display(s); };
    alg.falsum = fo::bottom();
    alg.verum = fo::top();
    return alg;
}

std::vector<size_t> true_branch_nodes(const Trace<modal::MPtr>& tr,
                                      const closed_form::Valuation& v) {
    std::vector<size_t> branch;
    for (unsigned stage = 0; stage <= tr.stages; ++stage) {
        std::vector<size_t> hits;
        for (size_t idx : tr.events[stage].numerated)
            if (closed_form::truth(tr.nodes[idx].sentence, v)) hits.push_back(idx);
        if (hits.size() != 1)
            throw Error("stage " + std::to_string(stage) + " has " +
                        std::to_string(hits.size()) + " true numerated sentences, expected 1");
        branch.push_back(hits.front());
    }
    return branch;
}

std::vector<modal::MPtr> true_branch(const Trace<modal::MPtr>& tr,
                                     const closed_form::Valuation& v) {
    std::vector<modal::MPtr> out;
    for (size_t idx : true_branch_nodes(tr, v)) out.push_back(tr.nodes[idx].sentence);
    return out;
}

modal::MPtr theta(const modal::MPtr& psi, const Trace<modal::MPtr>& tr,
                  const closed_form::Valuation& v) {
    std::optional<size_t> idx = find_numerated(psi, tr);
    if (!idx) throw Error("sentence was never numerated: " + modal::print(psi));
    std::vector<size_t> branch = true_branch_nodes(tr, v);
    unsigned stage = tr.nodes[*idx].stage;
    if (branch[stage] != *idx)
        throw Error("sentence is not on the true branch: " + modal::print(psi));
    modal::MPtr next = tr.alg.enumerate(stage + 1);
    return closed_form::truth(next, v) ? next : modal::mnot(next);
}

bool check_sharp(const modal::MPtr& psi, const Trace<modal::MPtr>& tr,
                 const closed_form::Valuation& v, const entail::GlProvider& provider) {
    modal::MPtr th = theta(psi, tr, v);
    modal::MPtr strengthened = tr.alg.conj(psi, tr.alg.con(psi));
    return provider.entails({strengthened}, th) != entail::Verdict::Provable;
}

template <typename S>
std::string to_json(const Trace<S>& tr) {
    nlohmann::json j;
    j["stages"] = tr.stages;
    j["total_numerated"] = tr.nodes.size();
    nlohmann::json events = nlohmann::json::array();
    for (unsigned stage = 0; stage <= tr.stages; ++stage) {
        const StageEvents<S>& ev = tr.events[stage];
        nlohmann::json obj;
        obj["stage"] = stage;
        nlohmann::json numerated = nlohmann::json::array();
        for (size_t idx : ev.numerated) numerated.push_back(tr.alg.text(tr.nodes[idx].sentence));
        obj["numerated"] = numerated;
        nlohmann::json activated = nlohmann::json::array();
        for (const ActiveEntry<S>& e : ev.activated) activated.push_back(tr.alg.text(e.sentence));
        obj["activated"] = activated;
        nlohmann::json deactivated = nlohmann::json::array();
        for (const ActiveEntry<S>& e : ev.deactivated)
            deactivated.push_back(tr.alg.text(e.sentence));
        obj["deactivated"] = deactivated;
        events.push_back(obj);
    }
    j["events"] = events;
    return j.dump(2) + "\n";
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

template <typename S>
std::string to_dot(const Trace<S>& tr, const TreeView& view, const std::vector<size_t>& marked) {
    std::set<size_t> mark(marked.begin(), marked.end());
    std::string out = "digraph staging {\n  rankdir=TB;\n  node [shape=box];\n";
    for (size_t idx : view.kept) {
        out += "  n" + std::to_string(idx) + " [label=\"" +
               dot_escape(tr.alg.text(tr.nodes[idx].sentence)) + "\"";
        if (mark.count(idx)) out += ", peripheries=2";
        out += "];\n";
    }
    for (size_t idx : view.kept)
        for (size_t child : view.children[idx])
            out += "  n" + std::to_string(idx) + " -> n" + std::to_string(child) + ";\n";
    out += "}\n";
    return out;
}

template std::string to_json<modal::MPtr>(const Trace<modal::MPtr>&);
template std::string to_json<fo::FormulaPtr>(const Trace<fo::FormulaPtr>&);
template std::string to_dot<modal::MPtr>(const Trace<modal::MPtr>&, const TreeView&,
                                         const std::vector<size_t>&);
template std::string to_dot<fo::FormulaPtr>(const Trace<fo::FormulaPtr>&, const TreeView&,
                                            const std::vector<size_t>&);

} // namespace conlab::construction
