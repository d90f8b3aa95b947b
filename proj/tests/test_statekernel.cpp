#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sigmmd/errors.hpp"
#include "sigmmd/statekernel.hpp"

using namespace sigmmd;

TEST_CASE("kappa examples") {
    const StateKernelConfig euclid{StateKernelKind::euclidean, 1.0};
    const double u[] = {1.0, 2.0};
    const double v[] = {3.0, 4.0};
    CHECK(kappa(u, v, euclid) == 11.0);

    const StateKernelConfig rbf{StateKernelKind::rbf, 0.37};
    CHECK(kappa(u, u, rbf) == 1.0);

    const StateKernelConfig half{StateKernelKind::rbf, std::log(2.0)};
    const double a[] = {0.0, 1.0};
    const double b[] = {0.0, 0.0};
    CHECK(kappa(a, b, half) == doctest::Approx(0.5).epsilon(1e-15));

    const double w[] = {1.0};
    CHECK_THROWS_AS(kappa(u, w, euclid), StructuralError);
    CHECK_THROWS_AS((StateKernelConfig{StateKernelKind::rbf, 0.0}.validate()), ArgumentError);
}

TEST_CASE("kappa is symmetric and rbf Gram matrices are PSD") {
    std::mt19937_64 gen(31);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 19;
        const int d = 1 + trial % 4;
        RowMatrix pts(n, d);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < d; ++k) pts(i, k) = nd(gen);
        const StateKernelConfig rbf{StateKernelKind::rbf, 0.1 + 0.2 * (trial % 5)};
        const StateKernelConfig euclid{StateKernelKind::euclidean, 1.0};
        Eigen::MatrixXd g(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                std::span<const double> ri(pts.data() + i * d, static_cast<std::size_t>(d));
                std::span<const double> rj(pts.data() + j * d, static_cast<std::size_t>(d));
                g(i, j) = kappa(ri, rj, rbf);
                CHECK(kappa(ri, rj, rbf) == kappa(rj, ri, rbf));
                CHECK(kappa(ri, rj, euclid) == kappa(rj, ri, euclid));
            }
        }
        CHECK(oracle::min_eigenvalue(g) >= -1e-10);
    }
}

TEST_CASE("median_heuristic") {
    RowMatrix two(2, 2);
    two << 0, 0, 1, 1;
    CHECK(median_heuristic(two) == doctest::Approx(0.25));

    RowMatrix three(3, 1);
    three << 0, 1, 2;
    CHECK(median_heuristic(three) == doctest::Approx(0.5));
    CHECK(median_heuristic(three, BandwidthRule::inverse_median_sq) == doctest::Approx(1.0));
    CHECK(median_heuristic(three, BandwidthRule::half_inverse_sq_median) == doctest::Approx(0.5));

    // Four collinear points: squared distances {1,1,1,4,4,9}, median (1+4)/2; distances {1,1,1,2,2,3}, median 1.5.
    RowMatrix four(4, 1);
    four << 0, 1, 2, 3;
    CHECK(median_heuristic(four) == doctest::Approx(1.0 / 5.0));
    CHECK(median_heuristic(four, BandwidthRule::half_inverse_sq_median) == doctest::Approx(1.0 / (2 * 2.25)));

    RowMatrix same(4, 2);
    same.setConstant(3.0);
    CHECK_THROWS_AS(median_heuristic(same), ArgumentError);
    CHECK_THROWS_AS(median_heuristic(RowMatrix::Zero(1, 2)), ArgumentError);
}

TEST_CASE("median_heuristic is scale-equivariant") {
    std::mt19937_64 gen(32);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 20; ++trial) {
        RowMatrix pts(7 + trial, 3);
        for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = nd(gen);
        const double c = 0.1 + trial;
        RowMatrix scaled = c * pts;
        CHECK(median_heuristic(scaled) == doctest::Approx(median_heuristic(pts) / (c * c)).epsilon(1e-12));
    }
}
