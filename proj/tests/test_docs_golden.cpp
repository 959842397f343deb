#include <doctest.h>

#include <conlab/arithmetize.hpp>
#include <conlab/classify.hpp>
#include <conlab/coding.hpp>
#include <conlab/fo.hpp>
#include <conlab/fo_text.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace conlab;

namespace {

std::string read_doc(const std::string& name) {
    std::filesystem::path p =
        std::filesystem::path(__FILE__).parent_path().parent_path() / "docs" / name;
    std::ifstream in(p);
    REQUIRE_MESSAGE(in.good(), "missing doc file: " << p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(std::string s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    size_t b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

std::string unticks(std::string s) {
    if (s.size() >= 2 && s.front() == '`' && s.back() == '`')
        return s.substr(1, s.size() - 2);
    return s;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Markdown table rows as trimmed cell lists. Separator rows are dropped and
// the escape \| inside a cell is restored to a plain pipe.
std::vector<std::vector<std::string>> table_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.size() < 2 || t.front() != '|') continue;
        std::string guarded;
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i] == '\\' && i + 1 < t.size() && t[i + 1] == '|') {
                guarded += '\x01';
                ++i;
            } else {
                guarded += t[i];
            }
        }
        std::vector<std::string> cells;
        std::string cur;
        for (size_t i = 1; i < guarded.size(); ++i) {
            if (guarded[i] == '|') {
                cells.push_back(trim(cur));
                cur.clear();
            } else {
                cur += guarded[i] == '\x01' ? '|' : guarded[i];
            }
        }
        if (!cells.empty() && cells[0].find("---") != std::string::npos) continue;
        if (!cells.empty()) rows.push_back(cells);
    }
    return rows;
}

std::vector<std::string> fenced_blocks(const std::string& text) {
    std::vector<std::string> blocks;
    std::istringstream in(text);
    std::string line;
    bool open = false;
    std::string cur;
    while (std::getline(in, line)) {
        if (trim(line).rfind("```", 0) == 0) {
            if (open) blocks.push_back(trim(cur));
            cur.clear();
            open = !open;
            continue;
        }
        if (open) {
            cur += line;
            cur += '\n';
        }
    }
    return blocks;
}

} // namespace

TEST_CASE("the constructor tag table matches the frozen enum") {
    const std::map<std::string, unsigned> tags = {
        {"Zero", coding::kTagZero},
        {"Bottom", coding::kTagBottom},
        {"Equal", coding::kTagEqual},
        {"Top", coding::kTagTop},
        {"Not", coding::kTagNot},
        {"Implies", coding::kTagImplies},
        {"And", coding::kTagAnd},
        {"Or", coding::kTagOr},
        {"Succ", coding::kTagSucc},
        {"Variable", coding::kTagVariable},
        {"ForAll", coding::kTagForAll},
        {"Exists", coding::kTagExists},
        {"Less", coding::kTagLess},
        {"Sum", coding::kTagSum},
        {"Product", coding::kTagProduct},
        {"Exp", coding::kTagExp},
        {"BoundedForAll", coding::kTagBoundedForAll},
        {"BoundedExists", coding::kTagBoundedExists},
    };
    const std::map<std::string, std::string> payloads = {
        {"Zero", "0"},
        {"Bottom", "0"},
        {"Equal", "pair(left, right)"},
        {"Top", "0"},
        {"Not", "body"},
        {"Implies", "pair(left, right)"},
        {"And", "pair(left, right)"},
        {"Or", "pair(left, right)"},
        {"Succ", "argument"},
        {"Variable", "index"},
        {"ForAll", "pair(index, body)"},
        {"Exists", "pair(index, body)"},
        {"Less", "pair(left, right)"},
        {"Sum", "pair(left, right)"},
        {"Product", "pair(left, right)"},
        {"Exp", "pair(left, right)"},
        {"BoundedForAll", "pair(index, pair(bound, body))"},
        {"BoundedExists", "pair(index, pair(bound, body))"},
    };

    auto rows = table_rows(read_doc("coding_scheme.md"));
    std::set<unsigned> seen;
    size_t found = 0;
    for (const auto& row : rows) {
        auto it = tags.find(row.empty() ? std::string() : row[0]);
        if (it == tags.end()) continue;
        REQUIRE(row.size() == 3);
        INFO("constructor " << row[0]);
        REQUIRE(all_digits(row[1]));
        CHECK(std::stoul(row[1]) == it->second);
        CHECK(row[2] == payloads.at(row[0]));
        CHECK(seen.insert(static_cast<unsigned>(std::stoul(row[1]))).second);
        ++found;
    }
    CHECK(found == tags.size());
    CHECK(seen == std::set<unsigned>{0, 1, 2,  3,  4,  5,  6,  7,  8,
                                     9, 10, 11, 12, 13, 14, 15, 16, 17});
}

TEST_CASE("the worked example codes re-encode from their canonical text") {
    auto rows = table_rows(read_doc("coding_scheme.md"));
    size_t found = 0;
    for (const auto& row : rows) {
        if (row.empty() || (row[0] != "term" && row[0] != "formula")) continue;
        REQUIRE(row.size() == 3);
        const std::string text = unticks(row[1]);
        INFO("example " << text);
        REQUIRE(all_digits(row[2]));
        const BigNat expected(row[2]);
        if (row[0] == "term") {
            fo::TermPtr t = fo_text::parse_term(text);
            CHECK(coding::encode(t) == expected);
            CHECK(fo_text::print(t) == text);
        } else {
            fo::FormulaPtr f = fo_text::parse_formula(text);
            CHECK(coding::encode(f) == expected);
            CHECK(fo_text::print(f) == text);
        }
        ++found;
    }
    CHECK(found == 9);
}

TEST_CASE("the logic schema table is numbered to match the checker's bound") {
    auto rows = table_rows(read_doc("logic_axioms.md"));
    std::vector<uint64_t> numbers;
    for (const auto& row : rows)
        if (!row.empty() && all_digits(row[0])) numbers.push_back(std::stoull(row[0]));
    REQUIRE(numbers.size() == arith::kLogicSchemaCount);
    for (uint64_t i = 0; i < numbers.size(); ++i) CHECK(numbers[i] == i);
}

TEST_CASE("the pinned substitution renderings match the implementation") {
    auto blocks = fenced_blocks(read_doc("substitution_function.md"));
    REQUIRE(blocks.size() == 3);

    fo::FormulaPtr pair_graph =
        arith::pair_eq(fo::variable(0), fo::variable(1), fo::variable(2));
    fo::FormulaPtr read =
        arith::beta_eq(fo::variable(0), fo::variable(1), fo::variable(2));
    fo::FormulaPtr diag = arith::diag_sub(fo::variable(1), fo::variable(2));

    CHECK(blocks[0] == fo_text::print_display(pair_graph));
    CHECK(blocks[1] == fo_text::print_display(read));
    CHECK(blocks[2] == fo_text::print_display(diag));

    CHECK(classify::to_string(classify::classify(pair_graph)) == "Delta0");
    CHECK(classify::to_string(classify::classify(read)) == "Delta0");
    CHECK(classify::to_string(classify::classify(diag)) == "Delta0");

    CHECK(fo::free_variables(pair_graph) == std::set<uint32_t>{0, 1, 2});
    CHECK(fo::free_variables(read) == std::set<uint32_t>{0, 1, 2});
    CHECK(fo::free_variables(diag) == std::set<uint32_t>{1, 2});
}

TEST_CASE("the justification kind table stays pinned to the line format") {
    auto rows = table_rows(read_doc("proof_coding.md"));
    std::map<uint64_t, std::vector<std::string>> kinds;
    for (const auto& row : rows)
        if (row.size() == 3 && all_digits(row[0]))
            kinds[std::stoull(row[0])] = row;
    REQUIRE(kinds.size() == 3);
    CHECK(kinds.count(0) == 1);
    CHECK(kinds.count(1) == 1);
    CHECK(kinds.count(2) == 1);
    CHECK(kinds.at(0)[1] == "logic axiom");
    CHECK(kinds.at(1)[1] == "theory axiom");
    CHECK(kinds.at(2)[1] == "modus ponens");
    CHECK(kinds.at(0)[2].find(std::to_string(arith::kLogicSchemaCount)) !=
          std::string::npos);
}
