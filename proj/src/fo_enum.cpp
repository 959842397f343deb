#include <conlab/fo_enum.hpp>

#include <map>

namespace conlab::fo_enum {

using namespace conlab::fo;

namespace {

constexpr uint32_t kVars[] = {0, 1};

std::map<unsigned, std::vector<TermPtr>>& term_cache() {
    static std::map<unsigned, std::vector<TermPtr>> c;
    return c;
}

std::map<unsigned, std::vector<FormulaPtr>>& formula_cache() {
    static std::map<unsigned, std::vector<FormulaPtr>> c;
    return c;
}

} // namespace

const std::vector<TermPtr>& terms_of_size(unsigned n) {
    auto& cache = term_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<TermPtr> out;
    if (n == 1) {
        out.push_back(zero());
        for (uint32_t v : kVars) out.push_back(variable(v));
    } else if (n >= 2) {
        for (const TermPtr& t : terms_of_size(n - 1)) out.push_back(succ(t));
        for (unsigned la = 1; la + 1 < n; ++la) {
            const auto& lhs = terms_of_size(la);
            const auto& rhs = terms_of_size(n - 1 - la);
            for (const TermPtr& a : lhs)
                for (const TermPtr& b : rhs) {
                    out.push_back(sum(a, b));
                    out.push_back(product(a, b));
                    out.push_back(exp(a, b));
                }
        }
    }
    return cache.emplace(n, std::move(out)).first->second;
}

const std::vector<FormulaPtr>& formulas_of_size(unsigned n) {
    auto& cache = formula_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<FormulaPtr> out;
    if (n == 1) {
        out.push_back(bottom());
        out.push_back(top());
    }
    if (n >= 3) {
        for (unsigned la = 1; la + 1 < n; ++la) {
            const auto& lhs = terms_of_size(la);
            const auto& rhs = terms_of_size(n - 1 - la);
            for (const TermPtr& a : lhs)
                for (const TermPtr& b : rhs) {
                    out.push_back(equal(a, b));
                    out.push_back(less(a, b));
                }
        }
    }
    if (n >= 2) {
        for (const FormulaPtr& f : formulas_of_size(n - 1)) {
            out.push_back(lnot(f));
            for (uint32_t v : kVars) {
                out.push_back(forall(v, f));
                out.push_back(exists(v, f));
            }
        }
        for (unsigned la = 1; la + 1 < n; ++la) {
            const auto& lhs = formulas_of_size(la);
            const auto& rhs = formulas_of_size(n - 1 - la);
            for (const FormulaPtr& a : lhs)
                for (const FormulaPtr& b : rhs) {
                    out.push_back(land(a, b));
                    out.push_back(lor(a, b));
                    out.push_back(implies(a, b));
                }
        }
        // bounded quantifiers, skipping bounds that mention the variable
        for (unsigned lb = 1; lb + 1 < n; ++lb) {
            const auto& bounds = terms_of_size(lb);
            const auto& bodies = formulas_of_size(n - 1 - lb);
            for (const TermPtr& bound : bounds)
                for (uint32_t v : kVars) {
                    if (free_variables(bound).count(v)) continue;
                    for (const FormulaPtr& body : bodies) {
                        out.push_back(bounded_forall(v, bound, body));
                        out.push_back(bounded_exists(v, bound, body));
                    }
                }
        }
    }
    return cache.emplace(n, std::move(out)).first->second;
}

std::vector<FormulaPtr> formulas_up_to(unsigned n) {
    std::vector<FormulaPtr> out;
    for (unsigned i = 1; i <= n; ++i) {
        const auto& layer = formulas_of_size(i);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace conlab::fo_enum
