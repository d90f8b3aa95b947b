#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sigmmd/errors.hpp"
#include "sigmmd/signature.hpp"

using namespace sigmmd;

namespace {

PathSample scalar_path(std::vector<double> values) {
    RowMatrix pts(static_cast<Eigen::Index>(values.size()), 1);
    for (std::size_t i = 0; i < values.size(); ++i) pts(static_cast<Eigen::Index>(i), 0) = values[i];
    return PathSample(PathSample::uniform_times(values.size()), std::move(pts));
}

PathSample slice(const PathSample& p, std::size_t first, std::size_t last) {
    std::vector<double> t(p.times().begin() + static_cast<std::ptrdiff_t>(first),
                          p.times().begin() + static_cast<std::ptrdiff_t>(last) + 1);
    RowMatrix pts = p.points().middleRows(static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(last - first + 1));
    return PathSample(std::move(t), std::move(pts));
}

PathSample smooth_path(std::size_t n) {
    const auto times = PathSample::uniform_times(n);
    RowMatrix pts(static_cast<Eigen::Index>(n), 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = times[i];
        pts(static_cast<Eigen::Index>(i), 0) = 0.3 * std::sin(2.0 * std::numbers::pi * t);
        pts(static_cast<Eigen::Index>(i), 1) = 0.4 * t * t - 0.1 * t;
    }
    return PathSample(times, std::move(pts));
}

} // namespace

TEST_CASE("PathSample validation") {
    CHECK_THROWS_AS(PathSample({}, RowMatrix(0, 1)), ArgumentError);
    CHECK_THROWS_AS(PathSample({0.0, 0.5}, RowMatrix::Zero(3, 1)), StructuralError);
    CHECK_THROWS_AS(PathSample({0.0, 0.0}, RowMatrix::Zero(2, 1)), ArgumentError);
    CHECK_THROWS_AS(PathSample({0.0, 1.5}, RowMatrix::Zero(2, 1)), ArgumentError);
    CHECK_NOTHROW(PathSample({0.25}, RowMatrix::Zero(1, 3)));
}

TEST_CASE("sig_linear examples") {
    SUBCASE("single point") {
        const auto s = sig_linear(scalar_path({4.0}), 3, 2);
        CHECK(oracle::max_rel_diff(s, GroupElement::unit(1, 3)) == 0.0);
    }
    SUBCASE("straight line") {
        const double v = 1.3;
        const auto s = sig_linear(scalar_path({0.0, v}), 4, 4);
        double fact = 1.0;
        for (int m = 1; m <= 4; ++m) {
            fact *= m;
            CHECK(s.level(m)[0] == doctest::Approx(std::pow(v, m) / fact).epsilon(1e-15));
        }
    }
    SUBCASE("Euler level one on [0,1,3]") {
        const auto s = sig_linear(scalar_path({0.0, 1.0, 3.0}), 2, 1);
        CHECK(s.level(1)[0] == 3.0);
        CHECK(s.level(2)[0] == 2.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(sig_linear(scalar_path({0.0, 1.0}), 2, 0), ArgumentError);
        CHECK_THROWS_AS(sig_linear(scalar_path({0.0, 1.0}), 2, 3), ArgumentError);
    }
}

TEST_CASE("time_augment") {
    RowMatrix pts(3, 1);
    pts << 2.0, -1.0, 5.0;
    const PathSample p({0.0, 0.5, 1.0}, pts);
    const auto a = time_augment(p);
    CHECK(a.dim() == 2);
    CHECK(a.times() == p.times());
    CHECK(a.points()(0, 0) == 2.0);
    CHECK(a.points()(1, 1) == 0.5);
    CHECK(a.points()(2, 1) == 1.0);

    const auto constant = scalar_path({1.0, 1.0, 1.0});
    CHECK(oracle::max_rel_diff(sig_linear(constant, 2, 2), GroupElement::unit(1, 2)) == 0.0);
    CHECK(sig_linear(time_augment(constant), 2, 2).level(1)[1] == doctest::Approx(1.0));

    // Straight line t -> t v on a uniform grid is a single segment with increment (v, 1).
    const double v = -0.8;
    const auto line = time_augment(scalar_path({0.0, 0.25 * v, 0.5 * v, 0.75 * v, v}));
    const double inc[] = {v, 1.0};
    CHECK(oracle::max_rel_diff(sig_linear(line, 4, 4), segment_exp(inc, 4, 4)) < 1e-14);
}

TEST_CASE("add_lags follows the end-padding rule") {
    CHECK(add_lags(scalar_path({1, 2, 3}), 0) == scalar_path({1, 2, 3}));

    const auto l1 = add_lags(scalar_path({1, 2, 3}), 1);
    RowMatrix e1(3, 2);
    e1 << 1, 2, 2, 3, 3, 3;
    CHECK(l1.points() == e1);

    const auto l2 = add_lags(scalar_path({1, 2, 3, 4}), 2);
    RowMatrix e2(4, 3);
    e2 << 1, 2, 3, 2, 3, 4, 3, 4, 4, 4, 4, 4;
    CHECK(l2.points() == e2);
    CHECK(l2.times() == PathSample::uniform_times(4));

    CHECK_THROWS_AS(add_lags(scalar_path({1, 2}), -1), ArgumentError);
}

TEST_CASE("Chen identity over a split path") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 6);
        const auto p = oracle::random_path(gen, n, 1 + trial % 3);
        const int M = 2 + trial % 3;
        const std::size_t cut = 1 + static_cast<std::size_t>(trial) % (n - 2);
        const auto whole = sig_linear(p, M, M);
        const auto joined = chen_product(sig_linear(slice(p, 0, cut), M, M), sig_linear(slice(p, cut, n - 1), M, M), M);
        CHECK(oracle::max_rel_diff(joined, whole) < 1e-12);
    }
}

TEST_CASE("shuffle identity") {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = sig_linear(oracle::random_path(gen, 6, 2, 0.6), 4, 4);
        // Level one times level one.
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                const std::size_t wi[] = {i};
                const std::size_t wj[] = {j};
                const std::size_t ij[] = {i, j};
                const std::size_t ji[] = {j, i};
                CHECK(oracle::rel_diff(s.coeff(wi) * s.coeff(wj), s.coeff(ij) + s.coeff(ji)) < 1e-12);
            }
        }
        // Words of length 1 and 3, and 2 and 2.
        const std::vector<std::vector<std::size_t>> lhs = {{0}, {1, 0}, {0, 1}};
        const std::vector<std::vector<std::size_t>> rhs = {{1, 0, 1}, {1, 1}, {0, 1}};
        for (std::size_t k = 0; k < lhs.size(); ++k) {
            double sum = 0.0;
            for (const auto& w : oracle::shuffles(lhs[k], rhs[k])) sum += s.coeff(w);
            CHECK(oracle::rel_diff(s.coeff(lhs[k]) * s.coeff(rhs[k]), sum) < 1e-12);
        }
    }
}

TEST_CASE("reparameterization invariance") {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = oracle::random_path(gen, 5, 2);
        const auto base = sig_linear(p, 4, 4);

        // Collinear point inserted into segment 2.
        const double f = frac(gen);
        std::vector<double> t = PathSample::uniform_times(6);
        RowMatrix pts(6, 2);
        pts.topRows(3) = p.points().topRows(3);
        pts.row(3) = p.points().row(2) + f * (p.points().row(3) - p.points().row(2));
        pts.bottomRows(2) = p.points().bottomRows(2);
        CHECK(oracle::max_rel_diff(sig_linear(PathSample(t, pts), 4, 4), base) < 1e-12);

        // New time stamps, same points.
        const PathSample retimed({0.0, 0.1, 0.15, 0.6, 0.99}, p.points());
        CHECK(oracle::max_rel_diff(sig_linear(retimed, 4, 4), base) == 0.0);
    }
}

TEST_CASE("time augmentation breaks reparameterization invariance") {
    const PathSample straight({0.0, 1.0}, (RowMatrix(2, 1) << 0.0, 1.0).finished());
    const PathSample refined({0.0, 0.1, 1.0}, (RowMatrix(3, 1) << 0.0, 0.5, 1.0).finished());
    CHECK(oracle::max_rel_diff(sig_linear(refined, 3, 3), sig_linear(straight, 3, 3)) < 1e-12);
    const double diff =
        oracle::max_rel_diff(sig_linear(time_augment(refined), 3, 3), sig_linear(time_augment(straight), 3, 3));
    CHECK(diff > 1e-6);
}

TEST_CASE("discretization error bound for a smooth path") {
    const int M = 3;
    for (std::size_t n : {5u, 9u, 17u, 33u}) {
        const auto fine = smooth_path(10 * (n - 1) + 1);
        const auto coarse = smooth_path(n);
        const auto reference = sig_linear(fine, M, M);
        const double var = one_variation(fine);
        double mesh = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) mesh = std::max(mesh, one_variation(fine, 10 * i, 10 * (i + 1)));
        for (int N = 1; N <= M; ++N) {
            const double err = oracle::tensor_distance(sig_linear(coarse, M, N), reference);
            CHECK(err <= var * std::exp(var) * mesh + 1e-9);
        }
    }
}
