#ifndef SIGMMD_STATEKERNEL_HPP
#define SIGMMD_STATEKERNEL_HPP

#include <span>
#include <string>

#include "sigmmd/signature.hpp"

namespace sigmmd {

enum class StateKernelKind { euclidean, rbf };

struct StateKernelConfig {
    StateKernelKind kind = StateKernelKind::euclidean;
    double gamma = 1.0;  // rbf only

    void validate() const;
};

std::string to_string(StateKernelKind kind);
StateKernelKind state_kernel_kind_from_string(const std::string& name);

/// euclidean: ⟨u, v⟩; rbf: exp(-γ‖u - v‖²).
double kappa(std::span<const double> u, std::span<const double> v, const StateKernelConfig& cfg);

/// How the rbf coefficient γ is derived from the median of pairwise distances.
enum class BandwidthRule {
    half_inverse_median_sq,    // γ = 1 / (2 med ‖u - v‖²)
    inverse_median_sq,         // γ = 1 / med ‖u - v‖²
    half_inverse_sq_median,    // γ = 1 / (2 (med ‖u - v‖)²)
};

/// Median heuristic over the distinct unordered pairs of rows of `samples`.
/// Even pair counts use the mean of the two middle values.
double median_heuristic(const RowMatrix& samples,
                        BandwidthRule rule = BandwidthRule::half_inverse_median_sq);

} // namespace sigmmd

#endif
