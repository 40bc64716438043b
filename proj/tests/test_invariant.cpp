#include <doctest.h>

#include <vector>

#include "test_helpers.hpp"
#include "vlink/codec.hpp"
#include "vlink/invariant.hpp"
#include "vlink/random_gen.hpp"

using namespace vlink;
using vlink::testing::ap;
using vlink::testing::d1_term;
using vlink::testing::union_find_f;

TEST_CASE("state enumeration on tiny fixtures") {
    std::vector<StateReport> states;
    auto collect = [&](const StateReport& s) { states.push_back(s); };

    enumerate_states(catalog("unknot"), {}, collect);
    REQUIRE(states.size() == 1);
    CHECK(states[0].loop_count == 1);
    CHECK(states[0].monomial == MultiPoly::one());

    states.clear();
    enumerate_states(catalog("curl+"), {}, collect);
    REQUIRE(states.size() == 2);
    CHECK(states[0].splices == "A");
    CHECK(states[0].a_minus_b == 1);
    CHECK(states[0].loop_count == 2);
    CHECK(states[1].a_minus_b == -1);
    CHECK(states[1].loop_count == 1);

    states.clear();
    Diagram vt = catalog("vtrefoil");
    enumerate_states(vt, canonical_cut_system(vt), collect);
    REQUIRE(states.size() == 4);
    bool has_iota_one = false;
    for (const auto& s : states)
        for (const auto& lp : s.loops)
            if (lp.iota == 1) has_iota_one = true;
    CHECK(has_iota_one);
}

TEST_CASE("every semi-arc's edges appear in exactly one loop per state") {
    Diagram vt = catalog("vtrefoil");
    enumerate_states(vt, canonical_cut_system(vt), [&](const StateReport& s) {
        std::set<int> seen;
        size_t total = 0;
        for (const auto& lp : s.loops) {
            total += lp.edges.size();
            seen.insert(lp.edges.begin(), lp.edges.end());
        }
        CHECK(total == vt.edges().size());
        CHECK(seen.size() == vt.edges().size());
    });
}

TEST_CASE("double bracket values") {
    CHECK(double_bracket(catalog("unknot"), {}) == MultiPoly::one());
    CHECK(double_bracket(catalog("curl+"), {}) == MultiPoly::a_power(3, -1));
    Diagram curl_minus = catalog("curl-");
    CHECK(double_bracket(curl_minus, {}) == MultiPoly::a_power(-3, -1));
}

TEST_CASE("x polynomial fixtures") {
    CHECK(x_polynomial(catalog("unknot")) == MultiPoly::one());
    CHECK(x_polynomial(catalog("curl+")) == MultiPoly::one());
    CHECK(x_polynomial(catalog("curl-")) == MultiPoly::one());
    CHECK(x_polynomial(catalog("figure8")) == ap({{8, 1}, {4, -1}, {0, 1}, {-4, -1}, {-8, 1}}));
    CHECK(f_polynomial(catalog("trefoil")) == ap({{-16, -1}, {-12, 1}, {-4, 1}}));
    CHECK(f_polynomial(catalog("figure8")) == x_polynomial(catalog("figure8")));
}

TEST_CASE("f polynomial against the union-find oracle") {
    for (const auto& name : catalog_names())
        CHECK_MESSAGE(f_polynomial(catalog(name)) == union_find_f(catalog(name)), name);
    auto insts = random_instances(5150, 40, {.allow_virtual_tokens = true});
    for (const auto& in : insts) CHECK(f_polynomial(in.diagram) == union_find_f(in.diagram));
}

TEST_CASE("cut-free oracle equals the cut-system route") {
    for (const auto& name : catalog_names()) {
        Diagram d = catalog(name);
        CHECK_MESSAGE(arrow_oracle(d) == x_polynomial(d), name);
    }
}

TEST_CASE("cut system independence of the double bracket") {
    for (const auto& name : catalog_names()) {
        Diagram d = catalog(name);
        CutSystem canon = canonical_cut_system(d);
        MultiPoly base = double_bracket(d, canon);
        CutSystem perturbed = canon;
        auto arcs = semi_arcs(d);
        for (const auto& a : arcs) {
            perturbed = insert_canceling_pair(d, perturbed, a.id);
            CHECK_MESSAGE(double_bracket(d, perturbed) == base, name << " arc " << a.id);
        }
    }
}

TEST_CASE("almost classical diagrams have d-free invariants") {
    auto insts = random_instances(31337, 30, {});
    for (const auto& in : insts) {
        REQUIRE(is_almost_classical_diagram(in.diagram));
        MultiPoly x = x_polynomial(in.diagram);
        for (const auto& [m, c] : x.terms()) CHECK(m.d_part.empty());
    }
}

TEST_CASE("mirror property") {
    for (const auto& name : {"trefoil", "figure8", "vtrefoil", "hopf+"}) {
        Diagram d = catalog(name);
        CHECK_MESSAGE(x_polynomial(mirror(d)) == x_polynomial(d).invert_a(), name);
    }
    auto insts = random_instances(8080, 20, {.allow_virtual_tokens = true});
    for (const auto& in : insts)
        CHECK(x_polynomial(mirror(in.diagram)) == x_polynomial(in.diagram).invert_a());
}

TEST_CASE("invalid cut systems are rejected; odd sums are a hard failure") {
    Diagram un = catalog("unknot");
    CutSystem bad;
    bad.cuts.push_back({0, un.edges().front().id, 0, +1});
    CHECK_THROWS_AS(double_bracket(un, bad), std::invalid_argument);

    BracketOptions unchecked;
    unchecked.validate_cuts = false;
    CHECK_THROWS_AS(double_bracket(un, bad, unchecked), std::logic_error);
}

TEST_CASE("crossing cap") {
    Diagram f8 = catalog("figure8");
    BracketOptions tight;
    tight.max_crossings = 3;
    CHECK_THROWS_AS(x_polynomial(f8, tight), CapExceeded);
    tight.max_crossings = 4;
    CHECK(x_polynomial(f8, tight) == x_polynomial(f8));
    CHECK_THROWS_AS(x_polynomial(Diagram{}), std::invalid_argument);
}

TEST_CASE("threaded and serial state sums agree") {
    // 14 crossings crosses the parallel threshold
    Diagram d = parse_braid("s=3: s1 S2 s1 S2 s1 s1 S2 s1 s2 s1 S2 s1 s2 s1");
    REQUIRE(d.classical().size() == 14);
    BracketOptions serial;
    serial.threads = 1;
    BracketOptions parallel;
    parallel.threads = 2;
    CHECK(x_polynomial(d, serial) == x_polynomial(d, parallel));
}
