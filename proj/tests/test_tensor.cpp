#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sigmmd/errors.hpp"
#include "sigmmd/tensor.hpp"

using namespace sigmmd;

namespace {

GroupElement scalar_element(std::vector<double> values) {
    std::vector<std::vector<double>> levels;
    for (double v : values) levels.push_back({v});
    return GroupElement::from_levels(1, std::move(levels));
}

} // namespace

TEST_CASE("GroupElement construction enforces its invariants") {
    const auto u = GroupElement::unit(3, 2);
    CHECK(u.level(0).size() == 1);
    CHECK(u.level(1).size() == 3);
    CHECK(u.level(2).size() == 9);
    CHECK(u.level(0)[0] == 1.0);

    CHECK_THROWS_AS(GroupElement::from_levels(2, {{1.0}, {1.0}}), StructuralError);
    CHECK_THROWS_AS(GroupElement::from_levels(1, {{2.0}, {1.0}}), ArgumentError);
    CHECK_THROWS_AS(GroupElement::from_levels(1, {{1.0}, {NAN}}), ArgumentError);
    CHECK_THROWS_AS(GroupElement::unit(0, 2), ArgumentError);
}

TEST_CASE("chen_product") {
    SUBCASE("unit is the identity") {
        std::mt19937_64 gen(1);
        const auto t = oracle::random_group_element(gen, 2, 3);
        CHECK(oracle::max_rel_diff(chen_product(GroupElement::unit(2, 3), t, 3), t) == 0.0);
        CHECK(oracle::max_rel_diff(chen_product(t, GroupElement::unit(2, 3), 3), t) == 0.0);
    }
    SUBCASE("hand-expanded d=1 example") {
        const auto r = chen_product(scalar_element({1, 2, 0}), scalar_element({1, 3, 0}), 2);
        CHECK(r.level(1)[0] == 5.0);
        CHECK(r.level(2)[0] == 6.0);
    }
    SUBCASE("collinear increments add") {
        const double u = 0.7;
        const double v = -1.3;
        const double du[] = {u};
        const double dv[] = {v};
        const auto r = chen_product(segment_exp(du, 3, 3), segment_exp(dv, 3, 3), 3);
        double fact = 1.0;
        for (int m = 0; m <= 3; ++m) {
            if (m > 0) fact *= m;
            CHECK(r.level(m)[0] == doctest::Approx(std::pow(u + v, m) / fact).epsilon(1e-14));
        }
    }
    SUBCASE("truncation below the operand level") {
        const auto r = chen_product(scalar_element({1, 2, 0}), scalar_element({1, 3, 5}), 1);
        CHECK(r.max_level() == 1);
        CHECK(r.level(1)[0] == 5.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(chen_product(GroupElement::unit(2, 2), GroupElement::unit(3, 2), 2), StructuralError);
        CHECK_THROWS_AS(chen_product(GroupElement::unit(2, 2), GroupElement::unit(2, 3), 2), StructuralError);
        CHECK_THROWS_AS(chen_product(GroupElement::unit(2, 2), GroupElement::unit(2, 2), -1), ArgumentError);
        CHECK_THROWS_AS(chen_product(GroupElement::unit(2, 2), GroupElement::unit(2, 2), 3), ArgumentError);
    }
}

TEST_CASE("chen_product is associative") {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 1 + trial % 3;
        const int M = 1 + trial % 4;
        const auto a = oracle::random_group_element(gen, d, M);
        const auto b = oracle::random_group_element(gen, d, M);
        const auto c = oracle::random_group_element(gen, d, M);
        const auto lhs = chen_product(chen_product(a, b, M), c, M);
        const auto rhs = chen_product(a, chen_product(b, c, M), M);
        CHECK(oracle::max_rel_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("dilate") {
    const auto t = scalar_element({1, 2, 3});
    CHECK(oracle::max_rel_diff(dilate(t, 1.0), t) == 0.0);
    const auto z = dilate(t, 0.0);
    CHECK(z.level(1)[0] == 0.0);
    CHECK(z.level(2)[0] == 0.0);
    const auto s = dilate(t, 2.0);
    CHECK(s.level(1)[0] == 4.0);
    CHECK(s.level(2)[0] == 12.0);
    CHECK_THROWS_AS(dilate(t, -0.5), ArgumentError);
}

TEST_CASE("dilation is a homomorphism for the Chen product") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> ul(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 1 + trial % 3;
        const int M = 1 + trial % 4;
        const double lambda = ul(gen);
        const auto a = oracle::random_group_element(gen, d, M);
        const auto b = oracle::random_group_element(gen, d, M);
        const auto lhs = dilate(chen_product(a, b, M), lambda);
        const auto rhs = chen_product(dilate(a, lambda), dilate(b, lambda), M);
        CHECK(oracle::max_rel_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("dilation distance is bounded by the change in squared norm") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> ul(0.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto t = oracle::random_group_element(gen, 2, 3, 0.7);
        const auto s = dilate(t, ul(gen));
        const double lhs = std::pow(oracle::tensor_distance(s, t), 2);
        const double rhs = std::abs(oracle::tensor_norm_sq(s) - oracle::tensor_norm_sq(t));
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("level_norms_sq and inner_product_levels") {
    CHECK(level_norms_sq(GroupElement::unit(2, 2)).values == std::vector<double>{1, 0, 0});
    const auto t = GroupElement::from_levels(2, {{1.0}, {3.0, 4.0}});
    CHECK(level_norms_sq(t).values[1] == 25.0);
    CHECK(level_norms_sq(scalar_element({1, 2, 3})).values == std::vector<double>{1, 4, 9});

    const auto ip = inner_product_levels(scalar_element({1, 2, 0}), scalar_element({1, 3, 5}));
    CHECK(ip.values == std::vector<double>{1, 6, 0});

    std::mt19937_64 gen(5);
    const auto a = oracle::random_group_element(gen, 3, 3);
    const auto b = oracle::random_group_element(gen, 3, 3);
    CHECK(inner_product_levels(a, GroupElement::unit(3, 3)).values == std::vector<double>{1, 0, 0, 0});
    CHECK(inner_product_levels(a, a).values == level_norms_sq(a).values);
    const auto ab = inner_product_levels(a, b);
    const auto ba = inner_product_levels(b, a);
    const auto na = level_norms_sq(a);
    const auto nb = level_norms_sq(b);
    for (std::size_t m = 0; m < ab.size(); ++m) {
        CHECK(ab[m] == ba[m]);
        CHECK(ab[m] * ab[m] <= na[m] * nb[m] * (1 + 1e-12));
    }
    CHECK_THROWS_AS(inner_product_levels(a, GroupElement::unit(2, 3)), StructuralError);
}

TEST_CASE("segment_exp") {
    const double zero[] = {0.0, 0.0};
    CHECK(oracle::max_rel_diff(segment_exp(zero, 2, 3), GroupElement::unit(2, 3)) == 0.0);

    const double e1[] = {1.0, 0.0};
    const auto s = segment_exp(e1, 2, 2);
    CHECK(std::vector<double>(s.level(1).begin(), s.level(1).end()) == std::vector<double>{1, 0});
    CHECK(std::vector<double>(s.level(2).begin(), s.level(2).end()) == std::vector<double>{0.5, 0, 0, 0});

    const double v[] = {1.7};
    const auto lin = segment_exp(v, 4, 4);
    double fact = 1.0;
    for (int m = 1; m <= 4; ++m) {
        fact *= m;
        CHECK(lin.level(m)[0] == doctest::Approx(std::pow(1.7, m) / fact).epsilon(1e-15));
    }

    const auto euler = segment_exp(v, 2, 4);
    CHECK(euler.level(3)[0] == 0.0);
    CHECK(euler.level(4)[0] == 0.0);

    CHECK_THROWS_AS(segment_exp(v, 0, 2), ArgumentError);
    CHECK_THROWS_AS(segment_exp(v, 3, 2), ArgumentError);
}
