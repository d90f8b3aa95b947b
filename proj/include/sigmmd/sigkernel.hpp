#ifndef SIGMMD_SIGKERNEL_HPP
#define SIGMMD_SIGKERNEL_HPP

#include <vector>

#include <Eigen/Dense>

#include "sigmmd/normalize.hpp"
#include "sigmmd/signature.hpp"
#include "sigmmd/statekernel.hpp"

namespace sigmmd {

struct SigKernelConfig {
    int max_level = 4;
    StateKernelConfig state_kernel;
    int lags = 0;
    bool augment_time = false;
    NormalizationSpec normalization;
    bool normalize = true;

    void validate() const;
};

/// Lags first, then time, as configured.
PathSample apply_transforms(const PathSample& path, const SigKernelConfig& cfg);

/// (n-1) x (n'-1) matrix of feature-space increment inner products
/// ⟨φ(x_{i+1}) - φ(x_i), φ(y_{j+1}) - φ(y_j)⟩.
RowMatrix increment_gram(const PathSample& x, const PathSample& y, const StateKernelConfig& cfg);

/*
 * Level-resolved inner products of the level-1 Euler signatures from an
 * increment Gram matrix K:
 *
 *     values[m] = Σ_{i_1<...<i_m, j_1<...<j_m} K[i_1][j_1] ... K[i_m][j_m].
 *
 * Runs row by row keeping, per level, the column sums of all previous rows;
 * a running prefix along the row then gives the strict lower-left block sum
 * needed by the next level. O(rows * cols * M) time, O(cols * M) extra memory.
 */
LevelInnerProducts level_inner_products_from_gram(const RowMatrix& k, int max_level);

/// Operates on the sequences as given; transforms are the caller's job.
LevelInnerProducts level_inner_products(const PathSample& x, const PathSample& y,
                                        const SigKernelConfig& cfg);

/// The (optionally normalized) truncated signature kernel of two sequences.
double sig_kernel(const PathSample& x, const PathSample& y, const SigKernelConfig& cfg);

/// entry (i, j) = sig_kernel(xs[i], ys[j]). Per-path work (transforms,
/// self inner products, scales) is done once per path.
Eigen::MatrixXd gram_matrix(const std::vector<PathSample>& xs, const std::vector<PathSample>& ys,
                            const SigKernelConfig& cfg, int threads = 0);

/// Symmetric case; each unordered pair is evaluated once.
Eigen::MatrixXd gram_matrix(const std::vector<PathSample>& xs, const SigKernelConfig& cfg,
                            int threads = 0);

} // namespace sigmmd

#endif
