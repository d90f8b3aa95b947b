#include "sigmmd/signature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sigmmd/errors.hpp"

namespace sigmmd {

PathSample::PathSample(std::vector<double> times, RowMatrix points)
    : times_(std::move(times)), points_(std::move(points)) {
    if (times_.empty()) throw ArgumentError("PathSample: at least one observation is required");
    if (static_cast<std::size_t>(points_.rows()) != times_.size()) {
        throw StructuralError("PathSample: " + std::to_string(points_.rows()) + " points for " +
                              std::to_string(times_.size()) + " time stamps");
    }
    if (points_.cols() < 1) throw StructuralError("PathSample: points must have dimension >= 1");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        const double t = times_[i];
        if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("PathSample: time stamps must lie in [0,1]");
        if (i > 0 && !(t > times_[i - 1])) {
            throw ArgumentError("PathSample: time stamps must be strictly increasing");
        }
    }
    if (!points_.allFinite()) throw ArgumentError("PathSample: non-finite point coordinate");
}

std::vector<double> PathSample::uniform_times(std::size_t n) {
    std::vector<double> t(n, 0.0);
    if (n < 2) return t;
    const double step = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / step;
    t.back() = 1.0;
    return t;
}

bool PathSample::operator==(const PathSample& other) const {
    return times_ == other.times_ && points_.rows() == other.points_.rows() &&
           points_.cols() == other.points_.cols() && points_ == other.points_;
}

GroupElement sig_linear(const PathSample& path, int max_level, int euler_level) {
    if (euler_level < 1 || euler_level > max_level) {
        throw ArgumentError("sig_linear: need 1 <= N <= M, got N=" + std::to_string(euler_level) +
                            ", M=" + std::to_string(max_level));
    }
    const std::size_t d = path.dim();
    auto acc = GroupElement::unit(d, max_level);
    std::vector<double> delta(d);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        for (std::size_t k = 0; k < d; ++k) delta[k] = path.points()(i + 1, k) - path.points()(i, k);
        acc = chen_product(acc, segment_exp(delta, euler_level, max_level), max_level);
    }
    return acc;
}

PathSample time_augment(const PathSample& path) {
    const auto n = static_cast<Eigen::Index>(path.size());
    const auto d = static_cast<Eigen::Index>(path.dim());
    RowMatrix out(n, d + 1);
    out.leftCols(d) = path.points();
    for (Eigen::Index i = 0; i < n; ++i) out(i, d) = path.times()[static_cast<std::size_t>(i)];
    return PathSample(path.times(), std::move(out));
}

PathSample add_lags(const PathSample& path, int lags) {
    if (lags < 0) throw ArgumentError("add_lags: number of lags must be >= 0");
    if (lags == 0) return path;
    const auto n = static_cast<Eigen::Index>(path.size());
    const auto d = static_cast<Eigen::Index>(path.dim());
    RowMatrix out(n, d * (lags + 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index l = 0; l <= lags; ++l) {
            const Eigen::Index src = std::min(i + l, n - 1);
            out.row(i).segment(l * d, d) = path.points().row(src);
        }
    }
    return PathSample(path.times(), std::move(out));
}

double one_variation(const PathSample& path, std::size_t first, std::size_t last) {
    if (first > last || last >= path.size()) throw ArgumentError("one_variation: bad index range");
    double total = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        total += (path.points().row(static_cast<Eigen::Index>(i + 1)) -
                  path.points().row(static_cast<Eigen::Index>(i)))
                     .norm();
    }
    return total;
}

double one_variation(const PathSample& path) { return one_variation(path, 0, path.size() - 1); }

} // namespace sigmmd
