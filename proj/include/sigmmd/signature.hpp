#ifndef SIGMMD_SIGNATURE_HPP
#define SIGMMD_SIGNATURE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sigmmd/tensor.hpp"

namespace sigmmd {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/*
 * A discretely observed path: strictly increasing times in [0, 1] and one
 * point of R^d per time stamp (row i of `points` is observed at times[i]).
 */
class PathSample {
public:
    PathSample(std::vector<double> times, RowMatrix points);

    std::size_t size() const noexcept { return times_.size(); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.cols()); }
    const std::vector<double>& times() const noexcept { return times_; }
    const RowMatrix& points() const noexcept { return points_; }
    std::span<const double> point(std::size_t i) const {
        return {points_.data() + i * dim(), dim()};
    }

    /// Uniform grid t_i = i/(n-1) (t_0 = 0 when n == 1).
    static std::vector<double> uniform_times(std::size_t n);

    bool operator==(const PathSample& other) const;

private:
    std::vector<double> times_;
    RowMatrix points_;
};

/// Level-N Euler approximation of the level-M signature of the piecewise
/// linear interpolation; exact signature of that interpolation when N == M.
GroupElement sig_linear(const PathSample& path, int max_level, int euler_level);

/// Appends the time stamp as the last coordinate.
PathSample time_augment(const PathSample& path);

/// Row i becomes (x_i, x_{i+1}, ..., x_{i+l}), indices past the end clamped to the last point.
PathSample add_lags(const PathSample& path, int lags);

/// Sum of increment norms between consecutive points in [first, last].
double one_variation(const PathSample& path, std::size_t first, std::size_t last);
double one_variation(const PathSample& path);

} // namespace sigmmd

#endif
