#include "sigmmd/statekernel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sigmmd/errors.hpp"

namespace sigmmd {

void StateKernelConfig::validate() const {
    if (kind == StateKernelKind::rbf && !(gamma > 0.0 && std::isfinite(gamma))) {
        throw ArgumentError("StateKernelConfig: rbf gamma must be positive and finite");
    }
}

std::string to_string(StateKernelKind kind) {
    return kind == StateKernelKind::rbf ? "rbf" : "euclidean";
}

StateKernelKind state_kernel_kind_from_string(const std::string& name) {
    if (name == "euclidean") return StateKernelKind::euclidean;
    if (name == "rbf") return StateKernelKind::rbf;
    throw ArgumentError("unknown state kernel '" + name + "' (expected euclidean or rbf)");
}

double kappa(std::span<const double> u, std::span<const double> v, const StateKernelConfig& cfg) {
    if (u.size() != v.size()) throw StructuralError("kappa: vectors differ in dimension");
    if (cfg.kind == StateKernelKind::euclidean) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
        return s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double diff = u[i] - v[i];
        s += diff * diff;
    }
    return std::exp(-cfg.gamma * s);
}

double median_heuristic(const RowMatrix& samples, BandwidthRule rule) {
    const auto n = samples.rows();
    if (n < 2) throw ArgumentError("median_heuristic: need at least 2 samples");
    std::vector<double> dist_sq;
    dist_sq.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            dist_sq.push_back((samples.row(i) - samples.row(j)).squaredNorm());
        }
    }
    const std::size_t mid = dist_sq.size() / 2;
    std::nth_element(dist_sq.begin(), dist_sq.begin() + static_cast<std::ptrdiff_t>(mid), dist_sq.end());
    double med = dist_sq[mid];
    if (dist_sq.size() % 2 == 0) {
        const double lower = *std::max_element(dist_sq.begin(), dist_sq.begin() + static_cast<std::ptrdiff_t>(mid));
        med = 0.5 * (med + lower);
    }
    if (rule == BandwidthRule::half_inverse_sq_median) {
        // Median of distances: sqrt is monotone, so reuse the squared order statistics.
        med = dist_sq.size() % 2 == 0
                  ? std::pow(0.5 * (std::sqrt(dist_sq[mid]) +
                                    std::sqrt(*std::max_element(dist_sq.begin(),
                                                                dist_sq.begin() + static_cast<std::ptrdiff_t>(mid)))),
                             2)
                  : dist_sq[mid];
    }
    if (!(med > 0.0)) throw ArgumentError("median_heuristic: median pairwise distance is zero");
    return rule == BandwidthRule::inverse_median_sq ? 1.0 / med : 1.0 / (2.0 * med);
}

} // namespace sigmmd
