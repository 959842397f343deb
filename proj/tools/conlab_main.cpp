// Command-line front end. Every operation of the workbench is reachable as a
// subcommand for scripted experiments; the README examples run through this
// binary and are checked byte for byte. Exit codes: 0 success, 1 domain
// error, 2 usage error.
#include <CLI11.hpp>
#include <json.hpp>

#include <conlab/arithmetize.hpp>
#include <conlab/certificate.hpp>
#include <conlab/classify.hpp>
#include <conlab/closed_form.hpp>
#include <conlab/common.hpp>
#include <conlab/construction.hpp>
#include <conlab/entail.hpp>
#include <conlab/fo.hpp>
#include <conlab/fo_text.hpp>
#include <conlab/gl.hpp>
#include <conlab/modal.hpp>
#include <conlab/operators.hpp>
#include <conlab/theory.hpp>

#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace conlab;

const theory::TheoryDescriptor& pick_theory(const std::string& name) {
    return name == "ea" ? theory::ea() : theory::toy();
}

bool is_number(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

operators::Operator pick_op(const std::string& name, const theory::TheoryDescriptor& T) {
    if (name == "const-top") return operators::const_top_op();
    if (name == "identity") return operators::identity_op();
    if (name == "con") return operators::con_op(T);
    if (name == "con-top") return operators::constant_con_top_op(T);
    if (name == "broken") return operators::broken_op();
    return operators::con_n_op(static_cast<unsigned>(std::stoul(name.substr(4))), T);
}

const std::string kOpHelp = "const-top, identity, con, con-top, broken or con^<n>";

std::string check_op_name(std::string& s) {
    if (s == "const-top" || s == "identity" || s == "con" || s == "con-top" || s == "broken")
        return {};
    if (s.rfind("con^", 0) == 0 && is_number(s.substr(4))) return {};
    return "expected " + kOpHelp;
}

// Strict reading: only atoms listed in the file get a value, so evaluating an
// unlisted atom is an error rather than a silent default.
closed_form::Valuation load_valuation(const std::string& path) {
    if (path.empty()) return closed_form::Valuation::all_true();
    std::ifstream in(path);
    if (!in.good()) throw Error("cannot open valuation file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("valuation file " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw Error("valuation file must be a JSON object like {\"p0\": true}");
    closed_form::Valuation v;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        if (key.size() < 2 || key[0] != 'p' || !is_number(key.substr(1)))
            throw Error("valuation keys look like p<index>, got: " + key);
        if (!it.value().is_boolean())
            throw Error("valuation values must be booleans, got: " + key);
        v.fixed[static_cast<uint32_t>(std::stoul(key.substr(1)))] = it.value().get<bool>();
    }
    return v;
}

construction::EntailFn<fo::FormulaPtr> arith_judge(uint64_t budget) {
    return [budget](const std::vector<fo::FormulaPtr>& ctx, const fo::FormulaPtr& goal) {
        entail::SchematicProver prover;
        return prover.entails(ctx, goal, entail::Budget{budget});
    };
}

// View keeping every numerated node, for rendering an unjudged trace.
template <typename S>
construction::TreeView full_view(const construction::Trace<S>& tr) {
    construction::TreeView view;
    view.children.resize(tr.nodes.size());
    for (const auto& n : tr.nodes) {
        view.kept.push_back(n.index);
        if (n.parent) view.children[*n.parent].push_back(n.index);
    }
    return view;
}

template <typename S>
std::string render_trace_text(const construction::Trace<S>& tr) {
    std::ostringstream out;
    out << "stages: " << tr.stages << "\n";
    out << "numerated: " << tr.nodes.size() << "\n";
    for (const auto& ev : tr.events) {
        out << "stage " << (&ev - tr.events.data()) << "\n";
        for (size_t idx : ev.numerated)
            out << "  [" << idx << "] " << tr.alg.text(tr.nodes[idx].sentence) << "\n";
        for (const auto& e : ev.activated) out << "  + " << tr.alg.text(e.sentence) << "\n";
        for (const auto& e : ev.deactivated) out << "  - " << tr.alg.text(e.sentence) << "\n";
    }
    return out.str();
}

template <typename S>
std::string render_tree_text(const construction::Trace<S>& tr,
                             const construction::TreeView& view) {
    std::vector<bool> kept(tr.nodes.size(), false);
    for (size_t i : view.kept) kept[i] = true;
    std::ostringstream out;
    std::function<void(size_t, unsigned)> walk = [&](size_t idx, unsigned depth) {
        out << std::string(2 * depth, ' ') << "[" << idx << "] "
            << tr.alg.text(tr.nodes[idx].sentence) << "\n";
        for (size_t c : view.children[idx]) walk(c, depth + 1);
    };
    for (size_t i : view.kept)
        if (!tr.nodes[i].parent || !kept[*tr.nodes[i].parent]) walk(i, 0);
    return out.str();
}

template <typename S>
std::string render_tree_json(const construction::Trace<S>& tr,
                             const construction::TreeView& view) {
    nlohmann::json j;
    j["kept"] = nlohmann::json::array();
    j["edges"] = nlohmann::json::array();
    for (size_t i : view.kept) {
        const auto& n = tr.nodes[i];
        j["kept"].push_back({{"index", n.index},
                             {"stage", n.stage},
                             {"sentence", tr.alg.text(n.sentence)}});
        for (size_t c : view.children[i]) j["edges"].push_back({i, c});
    }
    return j.dump(2) + "\n";
}

std::string render_dichotomy_text(const operators::DichotomyReport& rep) {
    std::ostringstream out;
    out << "case: "
        << (rep.tag == operators::DichotomyCase::EventuallyTrivial ? "eventually-trivial"
                                                                   : "eventually-con-like")
        << "\n";
    out << "generator: " << modal::print(rep.generator) << "\n";
    out << "requested: " << rep.requested << "\n";
    size_t passing = 0;
    for (const auto& s : rep.samples)
        if (s.pass) ++passing;
    out << "checked: " << rep.samples.size() << "\n";
    out << "passing: " << passing << "\n";
    for (const auto& s : rep.samples)
        if (!s.pass)
            out << "  fail (" << entail::to_string(s.verdict) << "): "
                << modal::print(s.sentence) << "\n";
    if (rep.exhausted) out << "note: candidate pool exhausted before the request\n";
    return out.str();
}

std::string render_suite_text(const operators::SuiteReport& rep) {
    std::ostringstream out;
    size_t failing = 0;
    for (const auto& r : rep.results) {
        const char* verdict = r.verdict == operators::ClaimVerdict::Pass      ? "pass"
                              : r.verdict == operators::ClaimVerdict::Skipped ? "skip"
                                                                              : "FAIL";
        if (r.verdict == operators::ClaimVerdict::Fail) ++failing;
        out << verdict << "  " << r.claim << ": " << r.instance << "\n";
        if (!r.countermodel.empty()) out << "      countermodel: " << r.countermodel << "\n";
    }
    out << (failing == 0 ? "all claims hold" : "failing claims: " + std::to_string(failing))
        << "\n";
    return out.str();
}

struct Options {
    std::string mode = "modal";
    std::string format = "text";
    std::string theory = "toy";
    std::string input;
    std::string prove;
    std::string valuation_path;
    std::string op = "con";
    std::string level = "1";
    std::string candidate;
    unsigned stages = 2;
    unsigned truth_level = 1;
    unsigned stage_bound = 0;
    uint64_t budget = 4096;
    uint64_t seed = 0;
    size_t samples = 25;
    bool show = false;
    bool countermodel = false;
};

construction::Trace<modal::MPtr> modal_trace(unsigned stages) {
    return construction::run_stages(construction::modal_algebra(), stages);
}

int cmd_parse(const Options& o) {
    if (o.mode == "modal")
        std::cout << modal::print(modal::parse(o.input)) << "\n";
    else
        std::cout << fo_text::print(fo_text::parse_formula(o.input)) << "\n";
    return 0;
}

int cmd_classify(const Options& o) {
    std::cout << classify::to_string(classify::classify(fo_text::parse_formula(o.input)))
              << "\n";
    return 0;
}

int cmd_con(const Options& o) {
    if (o.mode == "modal") {
        std::cout << modal::print(modal::diamond(modal::parse(o.input))) << "\n";
    } else {
        const auto& T = pick_theory(o.theory);
        std::cout << fo_text::print_display(arith::build_con(T, fo_text::parse_formula(o.input)))
                  << "\n";
    }
    return 0;
}

int cmd_itcon(const Options& o) {
    if (o.mode == "modal") {
        modal::MPtr f = modal::parse(o.input);
        modal::MPtr cur = modal::top();
        unsigned n = static_cast<unsigned>(std::stoul(o.level));
        for (unsigned i = 0; i < n; ++i) cur = modal::diamond(modal::mand(f, cur));
        std::cout << modal::print(cur) << "\n";
    } else {
        const auto& T = pick_theory(o.theory);
        theory::OrdinalNotation alpha = o.level == "omega"
                                            ? theory::OrdinalNotation::omega()
                                            : theory::OrdinalNotation::nat(std::stoull(o.level));
        std::cout << fo_text::print_display(
                         arith::build_iterated_con(T, alpha, fo_text::parse_formula(o.input)))
                  << "\n";
    }
    return 0;
}

int cmd_diagonal(const Options& o) {
    arith::DiagonalResult r = arith::diagonal(fo_text::parse_formula(o.input));
    std::cout << "frame: " << fo_text::print_display(r.frame) << "\n";
    std::cout << "sentence: " << fo_text::print_display(r.sentence) << "\n";
    return 0;
}

int cmd_gl(const Options& o) {
    gl::Result r = gl::prove(modal::parse(o.prove));
    std::cout << (r.provable ? "Valid" : "Invalid") << "\n";
    if (!r.provable && o.countermodel) {
        const gl::Countermodel& m = *r.countermodel;
        for (size_t w = 0; w < m.size(); ++w) {
            std::cout << "world " << w << " (parent " << m.parent[w] << "):";
            for (uint32_t a : m.true_atoms[w]) std::cout << " p" << a;
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_truth(const Options& o) {
    closed_form::Valuation v = load_valuation(o.valuation_path);
    std::cout << (closed_form::truth(modal::parse(o.input), v) ? "true" : "false") << "\n";
    return 0;
}

int cmd_build_a(const Options& o) {
    const auto& T = pick_theory(o.theory);
    operators::Operator g = pick_op(o.op, T);
    if (!g.graph) throw Error("operator " + g.id + " has no registered graph");
    std::cout << fo_text::print_display(arith::build_sentence_A(g.graph, o.truth_level, T))
              << "\n";
    return 0;
}

template <typename S>
int render_trace(const construction::Trace<S>& tr, const std::string& format,
                 const std::vector<size_t>& marked) {
    if (format == "json")
        std::cout << construction::to_json(tr);
    else if (format == "dot")
        std::cout << construction::to_dot(tr, full_view(tr), marked);
    else
        std::cout << render_trace_text(tr);
    return 0;
}

int cmd_construct(const Options& o) {
    if (o.mode == "modal") {
        auto tr = modal_trace(o.stages);
        std::vector<size_t> marked;
        if (!o.valuation_path.empty())
            marked = construction::true_branch_nodes(tr, load_valuation(o.valuation_path));
        return render_trace(tr, o.format, marked);
    }
    auto tr = construction::run_stages(construction::arith_algebra(pick_theory(o.theory)),
                                       o.stages);
    return render_trace(tr, o.format, {});
}

template <typename S>
int render_judged_tree(const construction::Trace<S>& tr, const construction::EntailFn<S>& judge,
                       const std::string& format, const std::vector<size_t>& marked) {
    construction::TreeView view = construction::tree(tr, judge);
    if (format == "json")
        std::cout << render_tree_json(tr, view);
    else if (format == "dot")
        std::cout << construction::to_dot(tr, view, marked);
    else
        std::cout << render_tree_text(tr, view);
    return 0;
}

int cmd_tree(const Options& o) {
    if (o.mode == "modal") {
        auto tr = modal_trace(o.stages);
        std::vector<size_t> marked;
        if (!o.valuation_path.empty())
            marked = construction::true_branch_nodes(tr, load_valuation(o.valuation_path));
        return render_judged_tree(tr, construction::gl_judge(), o.format, marked);
    }
    auto tr = construction::run_stages(construction::arith_algebra(pick_theory(o.theory)),
                                       o.stages);
    return render_judged_tree(tr, arith_judge(o.budget), o.format, {});
}

int cmd_g_apply(const Options& o, bool bounded) {
    std::optional<unsigned> bound;
    if (bounded) bound = o.stage_bound;
    if (o.mode == "modal") {
        auto tr = modal_trace(o.stages);
        modal::MPtr img =
            operators::trace_image(modal::parse(o.input), tr, construction::gl_judge(), bound);
        std::cout << modal::print(img) << "\n";
        return 0;
    }
    const auto& T = pick_theory(o.theory);
    auto tr = construction::run_stages(construction::arith_algebra(T), o.stages);
    fo::FormulaPtr img = operators::trace_image(fo_text::parse_formula(o.input), tr,
                                                arith_judge(o.budget), bound);
    std::cout << fo_text::print_display(img) << "\n";
    return 0;
}

int cmd_dichotomy(const Options& o, bool seeded) {
    const auto& T = pick_theory(o.theory);
    operators::Operator g = pick_op(o.op, T);
    auto tr = modal_trace(o.stages);
    closed_form::Valuation v = load_valuation(o.valuation_path);
    modal::MPtr candidate = o.candidate.empty() ? nullptr : modal::parse(o.candidate);
    std::optional<uint64_t> seed;
    if (seeded) seed = o.seed;
    operators::DichotomyReport rep =
        operators::dichotomy(g, tr, v, construction::gl_judge(), o.samples, candidate, seed);
    if (o.format == "json")
        std::cout << operators::report_to_json(rep);
    else
        std::cout << render_dichotomy_text(rep);
    return rep.all_pass() ? 0 : 1;
}

int cmd_claims(const Options& o) {
    auto tr = modal_trace(o.stages);
    closed_form::Valuation v = load_valuation(o.valuation_path);
    operators::SuiteReport rep =
        operators::image_identity_suite(tr, v, construction::gl_judge());
    if (o.format == "json")
        std::cout << operators::report_to_json(rep);
    else
        std::cout << render_suite_text(rep);
    return rep.all_pass() ? 0 : 1;
}

int cmd_certify(const Options& o) {
    const auto& T = pick_theory(o.theory);
    operators::Operator g = pick_op(o.op, T);
    fo::FormulaPtr phi = fo_text::parse_formula(o.input);
    entail::FactStore store;
    operators::register_bridge_facts(phi, g, o.truth_level, T, store);
    cert::Certificate c = operators::bridge_certificate(phi, g, o.truth_level, T, store);
    cert::CheckResult res = cert::check_certificate(c, store);
    if (o.show) std::cout << cert::to_text(c);
    std::cout << "steps: " << c.steps.size() << "\n";
    std::cout << "facts: " << store.all().size() << "\n";
    if (res.ok) {
        std::cout << "verdict: accepted\n";
        return 0;
    }
    std::cout << "verdict: rejected at step " << *res.first_failure << ": " << res.detail
              << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Workbench for consistency operators over staged sentence constructions.\n"
                 "Modal mode is decidable end to end; arith mode builds real arithmetized\n"
                 "statements and verdicts may come back undecided."};
    app.require_subcommand(1);
    Options o;
    int rc = 0;

    auto mode_opt = [&o](CLI::App* sub) {
        sub->add_option("--mode", o.mode, "sentence language: modal or arith")
            ->check(CLI::IsMember({"modal", "arith"}));
    };
    auto theory_opt = [&o](CLI::App* sub) {
        sub->add_option("--theory", o.theory, "axiom recognizer preset: toy or ea")
            ->check(CLI::IsMember({"toy", "ea"}));
    };
    auto valuation_opt = [&o](CLI::App* sub) {
        sub->add_option("--valuation", o.valuation_path,
                        "JSON file {\"p0\": true, ...}; unlisted atoms are errors "
                        "(default: every atom true)");
    };
    auto op_opt = [&o](CLI::App* sub) {
        sub->add_option("--op", o.op, "operator: " + kOpHelp)
            ->check(CLI::Validator(check_op_name, "OP"));
    };

    CLI::App* parse = app.add_subcommand("parse", "echo a formula in canonical syntax");
    mode_opt(parse);
    parse->add_option("--input", o.input, "formula text")->required();
    parse->callback([&] { rc = cmd_parse(o); });

    CLI::App* classifyc = app.add_subcommand(
        "classify", "quantifier shape of an arithmetic formula (Delta0/Sigma/Pi)");
    classifyc->add_option("--input", o.input, "arithmetic formula")->required();
    classifyc->callback([&] { rc = cmd_classify(o); });

    CLI::App* con = app.add_subcommand("con", "consistency statement for a sentence");
    mode_opt(con);
    theory_opt(con);
    con->add_option("--input", o.input, "sentence")->required();
    con->callback([&] { rc = cmd_con(o); });

    CLI::App* itcon = app.add_subcommand("itcon", "iterated consistency statement");
    mode_opt(itcon);
    theory_opt(itcon);
    itcon->add_option("--input", o.input, "sentence")->required();
    itcon->add_option("--level", o.level, "iteration count, or omega (arith only)")
        ->check(CLI::Validator(
            [](std::string& s) -> std::string {
                return (s == "omega" || is_number(s)) ? "" : "expected a number or omega";
            },
            "LEVEL"));
    itcon->callback([&] {
        if (o.mode == "modal" && o.level == "omega")
            throw CLI::ValidationError("--level omega needs --mode arith");
        rc = cmd_itcon(o);
    });

    CLI::App* diagonal =
        app.add_subcommand("diagonal", "fixed point of a one-free-variable formula");
    diagonal->add_option("--input", o.input, "arithmetic formula, one free variable")
        ->required();
    diagonal->callback([&] { rc = cmd_diagonal(o); });

    CLI::App* glc = app.add_subcommand("gl", "decide a modal formula in the provability logic");
    glc->add_option("--prove", o.prove, "modal formula")->required();
    glc->add_flag("--countermodel", o.countermodel, "print the refuting tree when invalid");
    glc->callback([&] { rc = cmd_gl(o); });

    CLI::App* truth = app.add_subcommand(
        "truth", "evaluate a modal sentence under a valuation (modal mode only)");
    truth->add_option("--input", o.input, "modal formula")->required();
    valuation_opt(truth);
    truth->callback([&] { rc = cmd_truth(o); });

    CLI::App* builda = app.add_subcommand(
        "build-a", "bridge sentence for an operator graph at a truth level");
    theory_opt(builda);
    op_opt(builda);
    builda->add_option("--level", o.truth_level, "truth template level, >= 1")
        ->check(CLI::PositiveNumber);
    builda->callback([&] { rc = cmd_build_a(o); });

    CLI::App* construct = app.add_subcommand("construct", "run the staged numeration");
    mode_opt(construct);
    theory_opt(construct);
    valuation_opt(construct);
    construct->add_option("--stages", o.stages, "last stage to run");
    construct->add_option("--format", o.format, "text, json or dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    construct->callback([&] { rc = cmd_construct(o); });

    CLI::App* treec =
        app.add_subcommand("tree", "staged nodes surviving the consistency judge");
    mode_opt(treec);
    theory_opt(treec);
    valuation_opt(treec);
    o.stages = 2;
    treec->add_option("--stages", o.stages, "last stage to run");
    treec->add_option("--format", o.format, "text, json or dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    CLI::Option* tree_budget =
        treec->add_option("--budget", o.budget, "prover step allowance (arith mode only)")
            ->check(CLI::PositiveNumber);
    treec->callback([&] {
        if (o.mode == "modal" && tree_budget->count() > 0)
            throw CLI::ValidationError("--budget needs --mode arith");
        rc = cmd_tree(o);
    });

    CLI::App* gapply =
        app.add_subcommand("g-apply", "trace image of a sentence through the staging");
    mode_opt(gapply);
    theory_opt(gapply);
    gapply->add_option("--input", o.input, "sentence")->required();
    gapply->add_option("--stages", o.stages, "last stage to run");
    CLI::Option* bound_opt = gapply->add_option(
        "--stage-bound", o.stage_bound, "cap on numeration stages considered");
    CLI::Option* gapply_budget =
        gapply->add_option("--budget", o.budget, "prover step allowance (arith mode only)")
            ->check(CLI::PositiveNumber);
    gapply->callback([&] {
        if (o.mode == "modal" && gapply_budget->count() > 0)
            throw CLI::ValidationError("--budget needs --mode arith");
        rc = cmd_g_apply(o, bound_opt->count() > 0);
    });

    CLI::App* dich = app.add_subcommand(
        "dichotomy", "case split and sampled verification for an operator's cone");
    theory_opt(dich);
    op_opt(dich);
    valuation_opt(dich);
    dich->add_option("--stages", o.stages, "trace depth for the sample pool");
    dich->add_option("--samples", o.samples, "cone members to verify");
    CLI::Option* seed_opt = dich->add_option(
        "--seed", o.seed, "sampling seed (default: CONLAB_SEED, then 0)");
    dich->add_option("--candidate", o.candidate,
                     "modal cone generator for the non-trivial case (default: top)");
    dich->add_option("--format", o.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    dich->callback([&] { rc = cmd_dichotomy(o, seed_opt->count() > 0); });

    CLI::App* claims = app.add_subcommand(
        "claims", "image identities and transfer checks over a staged trace");
    valuation_opt(claims);
    claims->add_option("--stages", o.stages, "trace depth");
    claims->add_option("--format", o.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    claims->callback([&] { rc = cmd_claims(o); });

    CLI::App* certify = app.add_subcommand(
        "certify", "build and check the bridge derivation for an operator");
    theory_opt(certify);
    op_opt(certify);
    certify->add_option("--input", o.input, "arithmetic sentence");
    certify->add_option("--level", o.truth_level, "truth template level, >= 1")
        ->check(CLI::PositiveNumber);
    certify->add_flag("--show", o.show, "print the full derivation");
    certify->callback([&] { rc = cmd_certify(o); });

    // subcommand defaults that differ from the shared struct defaults; set
    // before the subcommand's own flags are read, so flags still win
    treec->preparse_callback([&o](size_t) { o.stages = 3; });
    gapply->preparse_callback([&o](size_t) { o.stages = 4; });
    dich->preparse_callback([&o](size_t) { o.stages = 4; });
    claims->preparse_callback([&o](size_t) { o.stages = 4; });
    certify->preparse_callback([&o](size_t) { o.input = "0=0"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n";
        CLI::App* scope = &app;
        for (CLI::App* s : app.get_subcommands()) scope = s;
        std::cerr << scope->help();
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
