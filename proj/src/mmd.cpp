#include "sigmmd/mmd.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sigmmd/errors.hpp"
#include "sigmmd/random.hpp"

namespace sigmmd {

namespace {

double off_diagonal_sum(const Eigen::MatrixXd& k) { return k.sum() - k.diagonal().sum(); }

} // namespace

double mmd2_unbiased(const Eigen::MatrixXd& kxx, const Eigen::MatrixXd& kxy, const Eigen::MatrixXd& kyy) {
    const auto m = kxx.rows();
    const auto n = kyy.rows();
    if (m < 2 || n < 2) throw ArgumentError("mmd2_unbiased: each group needs at least 2 samples");
    if (kxx.cols() != m || kyy.cols() != n || kxy.rows() != m || kxy.cols() != n) {
        throw StructuralError("mmd2_unbiased: block shapes do not match");
    }
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return off_diagonal_sum(kxx) / (md * (md - 1.0)) - 2.0 * kxy.sum() / (md * nd) +
           off_diagonal_sum(kyy) / (nd * (nd - 1.0));
}

double mmd2_unbiased_pooled(const Eigen::MatrixXd& pooled, std::span<const std::size_t> order, std::size_t m) {
    const std::size_t total = order.size();
    if (static_cast<std::size_t>(pooled.rows()) != total || static_cast<std::size_t>(pooled.cols()) != total) {
        throw StructuralError("mmd2_unbiased_pooled: matrix size does not match index count");
    }
    const std::size_t n = total - m;
    if (m < 2 || n < 2) throw ArgumentError("mmd2_unbiased_pooled: each group needs at least 2 samples");
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t a = 0; a < total; ++a) {
        const auto ia = static_cast<Eigen::Index>(order[a]);
        for (std::size_t b = a + 1; b < total; ++b) {
            const double v = pooled(ia, static_cast<Eigen::Index>(order[b]));
            if (b < m) {
                sxx += v;
            } else if (a >= m) {
                syy += v;
            } else {
                sxy += v;
            }
        }
    }
    // Upper triangle only: the within-group sums count each unordered pair once.
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return 2.0 * sxx / (md * (md - 1.0)) - 2.0 * sxy / (md * nd) + 2.0 * syy / (nd * (nd - 1.0));
}

ThresholdDecision threshold_test(double t_obs, long m, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("threshold_test: alpha must lie in (0, 1)");
    if (m < 1) throw ArgumentError("threshold_test: sample size must be >= 1");
    const double c = 4.0 * std::sqrt(-std::log(alpha) / static_cast<double>(m));
    return {c, t_obs > c};
}

TestResult permutation_test(const Eigen::MatrixXd& pooled, long m, long n, int n_perms, std::uint64_t seed,
                            double alpha) {
    if (m < 2 || n < 2) throw ArgumentError("permutation_test: each group needs at least 2 samples");
    if (pooled.rows() != m + n || pooled.cols() != m + n) {
        throw StructuralError("permutation_test: pooled matrix is " + std::to_string(pooled.rows()) + "x" +
                              std::to_string(pooled.cols()) + ", expected " + std::to_string(m + n) + " square");
    }
    if (n_perms < 1) throw ArgumentError("permutation_test: need at least one permutation");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("permutation_test: alpha must lie in (0, 1)");

    const auto total = static_cast<std::size_t>(m + n);
    std::vector<std::size_t> identity(total);
    std::iota(identity.begin(), identity.end(), std::size_t{0});

    TestResult out;
    out.seed = seed;
    out.t_obs = mmd2_unbiased_pooled(pooled, identity, static_cast<std::size_t>(m));
    out.perm_values.resize(static_cast<std::size_t>(n_perms));

    // One independently seeded stream per permutation.
    // Ties up to summation-order rounding count as exceedances.
    const double tie_floor = out.t_obs - 1e-12 * (1.0 + std::abs(out.t_obs));
    std::vector<std::size_t> order(total);
    std::size_t exceed = 0;
    for (int p = 0; p < n_perms; ++p) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(p)}));
        order = identity;
        for (std::size_t i = total - 1; i > 0; --i) {
            std::swap(order[i], order[static_cast<std::size_t>(rng.index(i + 1))]);
        }
        const double v = mmd2_unbiased_pooled(pooled, order, static_cast<std::size_t>(m));
        out.perm_values[static_cast<std::size_t>(p)] = v;
        if (v >= tie_floor) ++exceed;
    }
    out.p_value = (1.0 + static_cast<double>(exceed)) / (1.0 + static_cast<double>(n_perms));
    out.reject_permutation = out.p_value <= alpha;

    if (m == n) {
        const auto decision = threshold_test(out.t_obs, m, alpha);
        out.c_alpha = decision.c_alpha;
        out.reject_threshold = decision.reject;
    } else {
        out.c_alpha = std::numeric_limits<double>::quiet_NaN();
        out.reject_threshold = false;
    }
    return out;
}

} // namespace sigmmd
