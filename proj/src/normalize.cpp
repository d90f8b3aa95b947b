#include "sigmmd/normalize.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "sigmmd/errors.hpp"

namespace sigmmd {

namespace {

// P(λ) = Σ_m λ^{2m} norms[m] - target, Horner in μ = λ².
double eval_poly(const LevelNorms& norms, double target, double lambda) {
    const double mu = lambda * lambda;
    double acc = 0.0;
    for (std::size_t m = norms.size(); m-- > 0;) acc = acc * mu + norms.values[m];
    return acc - target;
}

double achieved(const LevelNorms& norms, double lambda) { return eval_poly(norms, 0.0, lambda); }

} // namespace

void NormalizationSpec::validate() const {
    if (!(m_psi >= 1.0)) throw ArgumentError("NormalizationSpec: m_psi must be >= 1");
    if (!(a > 0.0)) throw ArgumentError("NormalizationSpec: a must be > 0");
    if (!(root_tol > 0.0)) throw ArgumentError("NormalizationSpec: root_tol must be > 0");
    if (max_iter < 1) throw ArgumentError("NormalizationSpec: max_iter must be >= 1");
}

double psi_of_norm_sq(double x, const NormalizationSpec& spec) {
    if (!(x >= 1.0)) throw ArgumentError("psi: squared norm must be >= 1, got " + std::to_string(x));
    if (x <= spec.m_psi) return x;
    const double m = spec.m_psi;
    return m + std::pow(m, 1.0 + spec.a) * (std::pow(m, -spec.a) - std::pow(x, -spec.a)) / spec.a;
}

double psi_of_norm(double norm, const NormalizationSpec& spec) {
    if (!(norm >= 1.0)) throw ArgumentError("psi: norm must be >= 1, got " + std::to_string(norm));
    return psi_of_norm_sq(norm * norm, spec);
}

NormalizationResult solve_lambda(const LevelNorms& norms, const NormalizationSpec& spec) {
    spec.validate();
    if (norms.size() == 0 || norms.values[0] != 1.0) {
        throw ArgumentError("solve_lambda: level-0 norm must be exactly 1");
    }
    bool degenerate = true;
    for (std::size_t m = 1; m < norms.size(); ++m) {
        if (norms.values[m] < 0.0 || !std::isfinite(norms.values[m])) {
            throw ArgumentError("solve_lambda: level norms must be finite and non-negative");
        }
        if (norms.values[m] != 0.0) degenerate = false;
    }
    const double norm_sq = norms.total();
    const double target = psi_of_norm_sq(norm_sq, spec);
    if (degenerate) return {1.0, target, norm_sq};

    // P(0) = 1 - ψ <= 0 and P(1) = ‖t‖² - ψ >= 0 because ψ(x) <= x.
    const double p_hi = eval_poly(norms, target, 1.0);
    if (p_hi <= 0.0) return {1.0, target, achieved(norms, 1.0)};
    const double p_lo = eval_poly(norms, target, 0.0);
    if (p_lo >= 0.0) return {0.0, target, achieved(norms, 0.0)};

    auto f = [&](double lambda) { return eval_poly(norms, target, lambda); };
    auto converged = [](double lo, double hi) {
        return std::abs(hi - lo) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi);
    };
    std::uintmax_t iters = static_cast<std::uintmax_t>(spec.max_iter);
    const auto bracket = boost::math::tools::toms748_solve(f, 0.0, 1.0, p_lo, p_hi, converged, iters);
    const double r_lo = std::abs(f(bracket.first));
    const double r_hi = std::abs(f(bracket.second));
    const double lambda = r_lo <= r_hi ? bracket.first : bracket.second;
    if (iters >= static_cast<std::uintmax_t>(spec.max_iter) && std::min(r_lo, r_hi) > spec.root_tol) {
        throw NumericalError("solve_lambda: no convergence within " + std::to_string(spec.max_iter) +
                                 " iterations",
                             bracket.first, bracket.second);
    }
    return {lambda, target, achieved(norms, lambda)};
}

GroupElement normalize_tensor(const GroupElement& t, const NormalizationSpec& spec) {
    return dilate(t, solve_lambda(level_norms_sq(t), spec).lambda);
}

double normalized_inner(const LevelInnerProducts& levels_xy, double lambda_x, double lambda_y) {
    const double s = lambda_x * lambda_y;
    double acc = 0.0;
    for (std::size_t m = levels_xy.size(); m-- > 0;) acc = acc * s + levels_xy.values[m];
    return acc;
}

double normalized_inner(const LevelInnerProducts& levels_xy, const LevelNorms& norms_x,
                        const LevelNorms& norms_y, const NormalizationSpec& spec) {
    if (levels_xy.size() != norms_x.size() || levels_xy.size() != norms_y.size()) {
        throw StructuralError("normalized_inner: level sequences differ in length");
    }
    return normalized_inner(levels_xy, solve_lambda(norms_x, spec).lambda,
                            solve_lambda(norms_y, spec).lambda);
}

} // namespace sigmmd
