#include <doctest.h>

#include <random>
#include <stdexcept>

#include "test_helpers.hpp"
#include "vlink/poly.hpp"

using namespace vlink;
using vlink::testing::ap;
using vlink::testing::d1_term;

namespace {

MultiPoly random_poly(std::mt19937_64& rng) {
    MultiPoly p;
    int terms = static_cast<int>(rng() % 5);
    for (int t = 0; t < terms; ++t) {
        std::map<int, int> d;
        if (rng() % 3 == 0) d[1 + static_cast<int>(rng() % 2)] = 1 + static_cast<int>(rng() % 2);
        p += MultiPoly::mono(static_cast<int>(rng() % 9) - 4, d,
                             static_cast<std::int64_t>(rng() % 7) - 3);
    }
    return p;
}

}  // namespace

TEST_CASE("monomial ring basics") {
    CHECK(MultiPoly::a_power(3) * MultiPoly::a_power(-3) == MultiPoly::one());
    CHECK((MultiPoly::loop_factor() * d1_term(0, 1) + (-MultiPoly::loop_factor()) * d1_term(0, 1))
              .is_zero());
    CHECK(MultiPoly::neg_a_cubed_pow(-3) == MultiPoly::a_power(-9, -1));
    CHECK(MultiPoly::neg_a_cubed_pow(2) == MultiPoly::a_power(6, 1));
}

TEST_CASE("published product identity") {
    // (A^6 - d1) X(D+) + (-A^-6 + d1) X(D-) expanded for the figure-eight triple.
    MultiPoly x_plus = ap({{8, 1}, {4, -1}, {0, 1}, {-4, -1}, {-8, 1}});
    MultiPoly lhs = (MultiPoly::a_power(6) - d1_term(0, 1)) * x_plus +
                    (MultiPoly::a_power(-6, -1) + d1_term(0, 1)) * MultiPoly::one();
    MultiPoly expect = ap({{14, 1}, {10, -1}, {6, 1}, {2, -1}, {-2, 1}, {-6, -1}}) +
                       d1_term(8, -1) + d1_term(4, 1) + d1_term(-4, 1) + d1_term(-8, -1);
    CHECK(lhs == expect);

    MultiPoly x_virt = ap({{8, 1}, {4, -1}, {0, 1}}) + d1_term(2, -1) + d1_term(-2, 1);
    MultiPoly rhs = (MultiPoly::a_power(6) - MultiPoly::a_power(-6)) * x_virt;
    CHECK(rhs == expect);
}

TEST_CASE("substitute_d_one") {
    MultiPoly p = ap({{8, 1}, {4, -1}, {0, 1}}) + d1_term(2, -1) + d1_term(-2, 1);
    CHECK(p.substitute_d_one() == ap({{8, 1}, {4, -1}, {0, 1}, {2, -1}, {-2, 1}}));
    MultiPoly q = ap({{3, 2}, {-1, 5}});
    CHECK(q.substitute_d_one() == q);
    CHECK((MultiPoly::mono(0, {{1, 1}, {2, 1}}, 1) - MultiPoly::one()).substitute_d_one().is_zero());
}

TEST_CASE("substitute_d_one is a ring homomorphism") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        MultiPoly p = random_poly(rng), q = random_poly(rng);
        CHECK((p * q).substitute_d_one() == p.substitute_d_one() * q.substitute_d_one());
        CHECK((p + q).substitute_d_one() == p.substitute_d_one() + q.substitute_d_one());
    }
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        MultiPoly p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("exponent sets") {
    MultiPoly p = ap({{8, 1}, {4, -1}, {0, 1}}) + d1_term(2, -1) + d1_term(-2, 1);
    CHECK(p.exp_set() == std::set<int>{8, 4, 0});
    CHECK(p.exp_set_d(1) == std::set<int>{2, -2});

    CHECK(MultiPoly::one().exp_set() == std::set<int>{0});
    CHECK(MultiPoly::one().exp_set_d(1).empty());

    MultiPoly q = MultiPoly::mono(1, {{1, 1}, {2, 1}}, 1);
    CHECK(q.exp_set().empty());
    CHECK(q.exp_set_d(1) == std::set<int>{1});
    CHECK(q.exp_set_d(2) == std::set<int>{1});
}

TEST_CASE("canonical text form is injective and stable") {
    MultiPoly a = ap({{2, 1}, {-2, 1}});
    MultiPoly b = MultiPoly::a_power(-2) + MultiPoly::a_power(2);
    CHECK(a.to_string() == b.to_string());
    CHECK(a.to_string() == "1*A^-2+1*A^2");
    CHECK(MultiPoly{}.to_string() == "0");
    CHECK(d1_term(3, -2).to_string() == "-2*A^3*d1^1");
    CHECK(ap({{0, 1}}).pretty() == "1");
    CHECK((-MultiPoly::a_power(3)).pretty() == "-A^3");
}

TEST_CASE("invert_a") {
    MultiPoly p = ap({{8, 1}, {-4, -1}}) + d1_term(2, 5);
    CHECK(p.invert_a() == ap({{-8, 1}, {4, -1}}) + d1_term(-2, 5));
    CHECK(p.invert_a().invert_a() == p);
}

TEST_CASE("coefficient overflow aborts") {
    MultiPoly big = MultiPoly::a_power(0, INT64_MAX);
    CHECK_THROWS_AS(big + MultiPoly::one(), std::overflow_error);
    CHECK_THROWS_AS(big * MultiPoly::a_power(0, 2), std::overflow_error);
}
