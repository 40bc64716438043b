#include <doctest.h>

#include <set>

#include "test_helpers.hpp"
#include "vlink/codec.hpp"
#include "vlink/diagram.hpp"
#include "vlink/invariant.hpp"
#include "vlink/random_gen.hpp"

using namespace vlink;

TEST_CASE("validate fixtures") {
    for (const auto& name : catalog_names())
        CHECK_MESSAGE(validate_diagram(catalog(name)).empty(), name);
}

TEST_CASE("validate flags dangling ports and arity violations") {
    Diagram tre = catalog("trefoil");
    Diagram broken = tre;
    broken.remove_edge(tre.edges().front().id);
    auto v = validate_diagram(broken);
    REQUIRE(!v.empty());
    bool dangling = false;
    for (const auto& s : v) dangling |= s.find("dangling") != std::string::npos;
    CHECK(dangling);

    Diagram doubled = tre;
    const Edge& e = tre.edges().front();
    doubled.add_edge(e.tail, e.head);
    v = validate_diagram(doubled);
    bool arity = false;
    for (const auto& s : v) arity |= s.find("arity") != std::string::npos;
    CHECK(arity);
}

TEST_CASE("components") {
    CHECK(components(catalog("unknot")) == 1);
    CHECK(components(catalog("hopf+")) == 2);
    CHECK(components(catalog("figure8")) == 1);
    CHECK(components(catalog("trefoil")) == 1);
    CHECK(components(catalog("vtrefoil")) == 1);
}

TEST_CASE("writhe") {
    CHECK(writhe(catalog("trefoil")) == 3);
    CHECK(writhe(catalog("figure8")) == 0);
    CHECK(writhe(catalog("vtrefoil")) == 2);
    CHECK(writhe(catalog("curl-")) == -1);
}

TEST_CASE("semi-arc counts") {
    CHECK(semi_arcs(catalog("trefoil")).size() == 6);
    CHECK(semi_arcs(catalog("unknot")).size() == 1);
    CHECK(semi_arcs(catalog("unknot")).front().closed);
    CHECK(semi_arcs(catalog("vtrefoil")).size() == 4);
}

TEST_CASE("semi-arcs partition the edges") {
    for (const auto& name : catalog_names()) {
        Diagram d = catalog(name);
        auto arcs = semi_arcs(d);
        std::set<int> covered;
        size_t total = 0;
        for (const auto& a : arcs) {
            total += a.edges.size();
            for (int e : a.edges) covered.insert(e);
        }
        CHECK(total == d.edges().size());
        CHECK(covered.size() == d.edges().size());
    }
}

TEST_CASE("crossing change") {
    Diagram tre = catalog("trefoil");
    Diagram once = crossing_change(tre, 1);
    CHECK(writhe(once) == 1);
    Diagram twice = crossing_change(once, 1);
    CHECK(emit_pd(twice) == emit_pd(tre));
    CHECK_THROWS_AS(crossing_change(catalog("vtrefoil"), 2), std::invalid_argument);  // virtual id
    CHECK_THROWS_AS(crossing_change(tre, 99), std::invalid_argument);
}

TEST_CASE("virtualize") {
    Diagram tre = catalog("trefoil");
    Diagram v = virtualize(tre, 0);
    CHECK(validate_diagram(v).empty());
    CHECK(writhe(v) == 2);
    CHECK(components(v) == components(tre));
    CHECK(v.virtual_crossings().size() == 1);
    // whole-diagram comparison: matches the virtual trefoil fixture's invariant
    CHECK(x_polynomial(v) == x_polynomial(catalog("vtrefoil")));

    // curl with its only crossing virtualized: one closed arc, X = 1
    Diagram vc = virtualize(catalog("curl+"), 0);
    auto arcs = semi_arcs(vc);
    REQUIRE(arcs.size() == 1);
    CHECK(arcs.front().closed);
    CHECK(x_polynomial(vc) == MultiPoly::one());
}

TEST_CASE("oriented smoothing") {
    Diagram hopf = catalog("hopf+");
    Diagram sm = smooth_oriented(hopf, 0);
    CHECK(validate_diagram(sm).empty());
    CHECK(sm.classical().size() == 1);
    CHECK(components(sm) == 1);

    // trefoil smoothed at one crossing becomes a Hopf-link diagram
    Diagram tre_sm = smooth_oriented(catalog("trefoil"), 0);
    CHECK(f_polynomial(tre_sm) == f_polynomial(hopf));

    // smoothing the curl splits off a free loop
    Diagram curl_sm = smooth_oriented(catalog("curl+"), 0);
    CHECK(components(curl_sm) == 2);
    CHECK(curl_sm.classical().empty());
}

TEST_CASE("mirror") {
    Diagram un = catalog("unknot");
    CHECK(emit_pd(mirror(un)) == emit_pd(un));
    Diagram tre = catalog("trefoil");
    CHECK(emit_pd(mirror(mirror(tre))) == emit_pd(tre));
    CHECK(writhe(mirror(tre)) == -3);
    CHECK(f_polynomial(mirror(tre)) == f_polynomial(tre).invert_a());
}

TEST_CASE("skein triples") {
    Diagram f8 = catalog("figure8");
    SkeinTriple t = skein_triples(f8, 0);
    CHECK(!t.relabeled);
    for (const Diagram* d : {&t.plus, &t.minus, &t.zero, &t.virt})
        CHECK(validate_diagram(*d).empty());
    CHECK(writhe(t.plus) == writhe(t.virt) + 1);
    CHECK(writhe(t.minus) == writhe(t.virt) - 1);
    int dc = components(t.zero) - components(t.plus);
    CHECK((dc == 1 || dc == -1));

    // selecting a negative crossing relabels the roles
    SkeinTriple tn = skein_triples(f8, 1);
    CHECK(tn.relabeled);
    CHECK(writhe(tn.plus) == writhe(tn.minus) + 2);
    CHECK_THROWS_AS(skein_triples(catalog("vtrefoil"), 2), std::invalid_argument);
}

TEST_CASE("skein outputs stay well-formed on random instances") {
    for (const auto& in : random_instances(1717, 20, {.allow_virtual_tokens = true})) {
        SkeinTriple t = skein_triples(in.diagram, in.crossing);
        for (const Diagram* d : {&t.plus, &t.minus, &t.zero, &t.virt})
            CHECK(validate_diagram(*d).empty());
        CHECK(writhe(t.plus) == writhe(t.virt) + 1);
        CHECK(writhe(t.minus) == writhe(t.virt) - 1);
        CHECK(components(t.virt) == components(t.plus));
    }
}
