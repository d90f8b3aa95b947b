#ifndef SIGMMD_MMD_HPP
#define SIGMMD_MMD_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sigmmd {

struct TestResult {
    double t_obs = 0.0;
    std::vector<double> perm_values;
    double p_value = 1.0;
    double c_alpha = 0.0;  // NaN when the group sizes differ
    bool reject_threshold = false;
    bool reject_permutation = false;
    std::uint64_t seed = 0;
};

struct ThresholdDecision {
    double c_alpha;
    bool reject;
};

/// Unbiased estimator of the squared MMD; may be negative.
double mmd2_unbiased(const Eigen::MatrixXd& kxx, const Eigen::MatrixXd& kxy, const Eigen::MatrixXd& kyy);

/// Same statistic for a pooled Gram matrix, with the first group given by
/// indices order[0..m) and the second by order[m..m+n).
double mmd2_unbiased_pooled(const Eigen::MatrixXd& pooled, std::span<const std::size_t> order, std::size_t m);

/// c_α = 4 sqrt(-log(α) / m); reject iff t_obs > c_α.
ThresholdDecision threshold_test(double t_obs, long m, double alpha);

/// Monte Carlo permutation test on a pooled (m+n)x(m+n) Gram matrix. Only
/// re-indexes the matrix; the p-value is (1 + #{T^π >= t_obs}) / (1 + n_perms).
TestResult permutation_test(const Eigen::MatrixXd& pooled, long m, long n, int n_perms, std::uint64_t seed,
                            double alpha = 0.05);

} // namespace sigmmd

#endif
