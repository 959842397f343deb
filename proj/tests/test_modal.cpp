#include <doctest.h>

#include <conlab/closed_form.hpp>
#include <conlab/gl.hpp>
#include <conlab/kripke.hpp>
#include <conlab/modal.hpp>

#include <map>

using namespace conlab;
using namespace conlab::modal;

namespace {
MPtr M(const char* s) { return parse(s); }
}

TEST_CASE("modal text roundtrip") {
    const char* samples[] = {
        "p0", "bot", "top", "~p1", "[]p0", "<>~p0",
        "([](p0 -> p1) -> ([]p0 -> []p1))",
        "(<>top | ~<>top)",
        "[]([]p0 -> p0)",
    };
    for (const char* s : samples) {
        CAPTURE(s);
        CHECK(print(M(s)) == s);
    }
    CHECK(eq(M(" [] ( p0->p1 ) "), M("[](p0 -> p1)")));
    CHECK_THROWS_AS(M("p"), ParseError);
    CHECK_THROWS_AS(M("(p0 & p1"), ParseError);
    CHECK_THROWS_AS(M("q0"), ParseError);
    for (const MPtr& f : up_to_size(5, 2)) CHECK(eq(parse(print(f)), f));
}

TEST_CASE("enumeration sizes are stable") {
    CHECK(of_size(1, 1).size() == 3);
    CHECK(of_size(2, 1).size() == 9);
    CHECK(of_size(3, 1).size() == 54);
    CHECK(of_size(4, 1).size() == 324);
    CHECK(of_size(5, 1).size() == 2187);
    CHECK(of_size(6, 1).size() == 15309);
    CHECK(of_size(7, 1).size() == 111537);
    CHECK(up_to_size(7, 1).size() == 129423);
    CHECK(of_size(3, 0).size() == 30);
}

TEST_CASE("box normalization eliminates diamonds and preserves meaning") {
    MPtr f = M("<>(p0 & <>p1)");
    MPtr g = box_normal(f);
    CHECK(print(g) == "~[]~(p0 & ~[]~p1)");
    for (const MPtr& h : up_to_size(4, 1)) {
        auto r = gl::prove(h);
        if (r.provable) continue;
        const auto& m = *r.countermodel;
        for (size_t w = 0; w < m.size(); ++w)
            CHECK(gl::eval_at(m, h, static_cast<int>(w)) ==
                  gl::eval_at(m, box_normal(h), static_cast<int>(w)));
    }
}

TEST_CASE("provable and unprovable landmarks") {
    CHECK(gl::provable(M("(p0 -> p0)")));
    CHECK(gl::provable(M("([](p0 -> p1) -> ([]p0 -> []p1))")));   // distribution
    CHECK(gl::provable(M("([]([]p0 -> p0) -> []p0)")));          // the fixed point rule
    CHECK(gl::provable(M("([]p0 -> [][]p0)")));                  // transitivity falls out
    CHECK(gl::provable(M("([]bot -> []p0)")));
    CHECK(gl::provable(M("[](p0 -> p0)")));
    CHECK(gl::provable(M("(<>p0 -> <>(p0 | p1))")));

    CHECK(!gl::provable(M("p0")));
    CHECK(!gl::provable(M("([]p0 -> p0)")));     // no reflection
    CHECK(!gl::provable(M("~[]bot")));           // consistency is not internal
    CHECK(!gl::provable(M("<>top")));
    CHECK(!gl::provable(M("<>(p0 -> p0)")));
    CHECK(!gl::provable(M("(<>p0 -> <>(p0 & p1))")));
}

TEST_CASE("failed searches return genuine refutations up to size 5") {
    unsigned refuted = 0, proved = 0;
    size_t biggest = 0;
    for (const MPtr& f : up_to_size(5, 1)) {
        auto r = gl::prove(f);
        if (r.provable) {
            ++proved;
            continue;
        }
        ++refuted;
        const auto& m = *r.countermodel;
        REQUIRE(m.parent.size() == m.true_atoms.size());
        REQUIRE(m.parent[0] == -1);
        for (size_t w = 1; w < m.size(); ++w) REQUIRE(m.parent[w] < static_cast<int>(w));
        biggest = std::max(biggest, m.size());
        if (gl::eval_at(m, f, 0)) {
            CAPTURE(print(f));
            REQUIRE(!gl::eval_at(m, f, 0));
        }
    }
    CHECK(proved == 715);
    CHECK(refuted == 1862);
    CHECK(biggest <= 5);
}

TEST_CASE("sequent search and exhaustive tree search agree up to size 5") {
    for (const MPtr& f : up_to_size(5, 1)) {
        bool a = gl::provable(f);
        bool b = kripke::oracle_provable(f);
        if (a != b) {
            CAPTURE(print(f));
            CAPTURE(a);
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("exhaustive search returns a refuting model") {
    auto m = kripke::find_refutation(M("~[]bot"), 3);
    REQUIRE(m.has_value());
    CHECK(!gl::eval_at(*m, M("~[]bot"), 0));
    CHECK(!kripke::find_refutation(M("(p0 -> p0)"), 4).has_value());
    CHECK_THROWS_AS(kripke::find_refutation(M("(p0 & p1)"), 20), ResourceError);
}

TEST_CASE("height profiles of landmarks") {
    using closed_form::profile;
    using closed_form::Profile;
    CHECK(profile(M("bot")) == Profile{{}, false});
    CHECK(profile(M("top")) == Profile{{}, true});
    CHECK(profile(M("[]bot")) == Profile{{true}, false});
    CHECK(profile(M("~[]bot")) == Profile{{false}, true});
    CHECK(profile(M("[][]bot")) == Profile{{true, true}, false});
    CHECK(profile(M("([]bot | ~[]bot)")) == Profile{{}, true});
    CHECK(profile(M("<>top")) == Profile{{false}, true});
    CHECK(profile(M("<><>top")) == Profile{{false, false}, true});
    CHECK_THROWS_AS(profile(M("p0")), Error);
}

TEST_CASE("profiles characterize the closed fragment up to size 6") {
    std::map<std::string, std::vector<MPtr>> buckets;
    for (const MPtr& f : up_to_size(6, 0)) {
        bool via_profile = closed_form::provable_closed(f);
        bool via_search = gl::provable(f);
        if (via_profile != via_search) {
            CAPTURE(print(f));
            REQUIRE(via_profile == via_search);
        }
        auto p = closed_form::profile(f);
        std::string key;
        for (bool b : p.at) key += b ? '1' : '0';
        key += p.tail ? 'T' : 'F';
        auto& bucket = buckets[key];
        if (bucket.size() < 3) bucket.push_back(f);
    }
    // same profile means interderivable, different profile means not
    std::vector<std::pair<std::string, MPtr>> reps;
    for (auto& [key, bucket] : buckets) {
        for (size_t i = 1; i < bucket.size(); ++i) {
            CHECK(gl::provable(mand(mimplies(bucket[0], bucket[i]),
                                    mimplies(bucket[i], bucket[0]))));
        }
        reps.emplace_back(key, bucket[0]);
    }
    CHECK(reps.size() > 4);
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j)
            CHECK(!gl::provable(mand(mimplies(reps[i].second, reps[j].second),
                                     mimplies(reps[j].second, reps[i].second))));
}

TEST_CASE("profiles rebuild into formulas with the same profile") {
    using closed_form::Profile;
    using closed_form::profile;
    using closed_form::to_formula;
    for (unsigned len = 0; len <= 4; ++len)
        for (unsigned bits = 0; bits < (1u << len); ++bits)
            for (bool tail : {false, true}) {
                Profile p;
                for (unsigned k = 0; k < len; ++k) p.at.push_back(bits >> k & 1);
                p.tail = tail;
                Profile q = p;
                q.normalize();
                CHECK(profile(to_formula(p)) == q);
            }
}

TEST_CASE("truth under a valuation") {
    using closed_form::truth;
    using closed_form::Valuation;
    Valuation all = Valuation::all_true();
    CHECK(truth(M("~[]bot"), all));          // consistency holds
    CHECK(!truth(M("[]bot"), all));
    CHECK(truth(M("p0"), all));
    CHECK(!truth(M("~p0"), all));
    CHECK(truth(M("([]p0 -> p0)"), all));    // reflection is true, not provable
    CHECK(truth(M("[](p0 -> p0)"), all));

    Valuation v{{{0, false}}, true};
    CHECK(!truth(M("p0"), v));
    CHECK(truth(M("p1"), v));
    CHECK(!truth(M("[]p0"), v));             // body fails at height 1

    Valuation strict{{{0, true}}, std::nullopt};
    CHECK(truth(M("p0"), strict));
    CHECK_THROWS_AS(truth(M("p1"), strict), Error);
}
