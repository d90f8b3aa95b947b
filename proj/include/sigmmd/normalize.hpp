#ifndef SIGMMD_NORMALIZE_HPP
#define SIGMMD_NORMALIZE_HPP

#include "sigmmd/tensor.hpp"

namespace sigmmd {

/*
 * Parameters of the tensor normalization t -> δ_{λ(t)} t.
 *
 * The target squared norm is ψ(‖t‖), where with x = ‖t‖²
 *
 *     ψ(√x) = x                                  if x <= m_psi
 *           = m_psi + m_psi^{1+a} (m_psi^{-a} - x^{-a}) / a   otherwise,
 *
 * so every normalized tensor has squared norm below m_psi (1 + 1/a).
 */
struct NormalizationSpec {
    double m_psi = 4.0;
    double a = 1.0;
    double root_tol = 1e-12;
    int max_iter = 200;

    void validate() const;
    double sup_psi() const noexcept { return m_psi * (1.0 + 1.0 / a); }
};

struct NormalizationResult {
    double lambda = 1.0;
    double target = 1.0;            // ψ(‖t‖)
    double achieved_norm_sq = 1.0;  // ‖δ_λ t‖²
};

/// ψ(norm); requires norm >= 1.
double psi_of_norm(double norm, const NormalizationSpec& spec);

/// ψ expressed in the squared-norm variable x = norm²; requires x >= 1.
double psi_of_norm_sq(double norm_sq, const NormalizationSpec& spec);

/// Solves Σ_m λ^{2m} norms[m] = ψ(‖t‖) for the unique λ >= 0.
/// Returns λ = 1 when every level above 0 vanishes.
NormalizationResult solve_lambda(const LevelNorms& norms, const NormalizationSpec& spec);

GroupElement normalize_tensor(const GroupElement& t, const NormalizationSpec& spec);

/// ⟨Λ(s), Λ(t)⟩ from level-resolved quantities only.
double normalized_inner(const LevelInnerProducts& levels_xy, const LevelNorms& norms_x,
                        const LevelNorms& norms_y, const NormalizationSpec& spec);

/// Same, with precomputed scales.
double normalized_inner(const LevelInnerProducts& levels_xy, double lambda_x, double lambda_y);

} // namespace sigmmd

#endif
