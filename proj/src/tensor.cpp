#include "sigmmd/tensor.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sigmmd/errors.hpp"

namespace sigmmd {

double LevelNorms::total() const noexcept {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

double LevelInnerProducts::total() const noexcept {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

std::size_t level_size(std::size_t dim, int m) {
    std::size_t n = 1;
    for (int k = 0; k < m; ++k) n *= dim;
    return n;
}

GroupElement GroupElement::unit(std::size_t dim, int max_level) {
    if (dim == 0) throw ArgumentError("GroupElement: dimension must be positive");
    if (max_level < 0) throw ArgumentError("GroupElement: max_level must be >= 0");
    std::vector<std::vector<double>> levels(static_cast<std::size_t>(max_level) + 1);
    for (int m = 0; m <= max_level; ++m) levels[m].assign(level_size(dim, m), 0.0);
    levels[0][0] = 1.0;
    return GroupElement(dim, std::move(levels));
}

GroupElement GroupElement::from_levels(std::size_t dim, std::vector<std::vector<double>> levels) {
    if (dim == 0) throw ArgumentError("GroupElement: dimension must be positive");
    if (levels.empty()) throw StructuralError("GroupElement: at least level 0 is required");
    for (std::size_t m = 0; m < levels.size(); ++m) {
        if (levels[m].size() != level_size(dim, static_cast<int>(m))) {
            throw StructuralError("GroupElement: level " + std::to_string(m) + " has " +
                                  std::to_string(levels[m].size()) + " entries, expected " +
                                  std::to_string(level_size(dim, static_cast<int>(m))));
        }
        for (double v : levels[m]) {
            if (!std::isfinite(v)) throw ArgumentError("GroupElement: non-finite coefficient");
        }
    }
    if (levels[0][0] != 1.0) throw ArgumentError("GroupElement: scalar part must be exactly 1");
    return GroupElement(dim, std::move(levels));
}

double GroupElement::coeff(std::span<const std::size_t> word) const {
    if (word.size() > static_cast<std::size_t>(max_level())) {
        throw ArgumentError("GroupElement::coeff: word longer than truncation level");
    }
    std::size_t offset = 0;
    for (std::size_t letter : word) {
        if (letter >= dim_) throw ArgumentError("GroupElement::coeff: letter out of range");
        offset = offset * dim_ + letter;
    }
    return levels_[word.size()][offset];
}

GroupElement chen_product(const GroupElement& a, const GroupElement& b, int max_level) {
    if (max_level < 0) throw ArgumentError("chen_product: max_level must be >= 0");
    if (a.dim_ != b.dim_) {
        throw StructuralError("chen_product: dimension mismatch (" + std::to_string(a.dim_) +
                              " vs " + std::to_string(b.dim_) + ")");
    }
    if (a.max_level() != b.max_level()) {
        throw StructuralError("chen_product: truncation level mismatch (" +
                              std::to_string(a.max_level()) + " vs " +
                              std::to_string(b.max_level()) + ")");
    }
    if (max_level > a.max_level()) {
        throw ArgumentError("chen_product: cannot promote operands of level " +
                            std::to_string(a.max_level()) + " to level " + std::to_string(max_level));
    }
    const std::size_t d = a.dim_;
    std::vector<std::vector<double>> out(static_cast<std::size_t>(max_level) + 1);
    for (int m = 0; m <= max_level; ++m) {
        auto& level = out[m];
        level.assign(level_size(d, m), 0.0);
        for (int k = 0; k <= m; ++k) {
            const int left = m - k;
            if (left > a.max_level() || k > b.max_level()) continue;
            const auto& lhs = a.levels_[left];
            const auto& rhs = b.levels_[k];
            const std::size_t rn = rhs.size();
            // Outer product lhs ⊗ rhs lands contiguously: word (u, v) -> u * d^k + v.
            for (std::size_t i = 0; i < lhs.size(); ++i) {
                const double li = lhs[i];
                if (li == 0.0) continue;
                double* dst = level.data() + i * rn;
                for (std::size_t j = 0; j < rn; ++j) dst[j] += li * rhs[j];
            }
        }
    }
    out[0][0] = 1.0;
    return GroupElement(d, std::move(out));
}

GroupElement dilate(const GroupElement& t, double lambda) {
    if (!(lambda >= 0.0)) throw ArgumentError("dilate: lambda must be non-negative");
    auto levels = t.levels_;
    double scale = 1.0;
    for (std::size_t m = 1; m < levels.size(); ++m) {
        scale *= lambda;
        for (double& v : levels[m]) v *= scale;
    }
    return GroupElement(t.dim_, std::move(levels));
}

LevelNorms level_norms_sq(const GroupElement& t) {
    LevelNorms out;
    out.values.reserve(static_cast<std::size_t>(t.max_level()) + 1);
    for (int m = 0; m <= t.max_level(); ++m) {
        double s = 0.0;
        for (double v : t.level(m)) s += v * v;
        out.values.push_back(s);
    }
    return out;
}

LevelInnerProducts inner_product_levels(const GroupElement& a, const GroupElement& b) {
    if (a.dim() != b.dim() || a.max_level() != b.max_level()) {
        throw StructuralError("inner_product_levels: operands differ in dimension or truncation level");
    }
    LevelInnerProducts out;
    out.values.reserve(static_cast<std::size_t>(a.max_level()) + 1);
    for (int m = 0; m <= a.max_level(); ++m) {
        const auto x = a.level(m);
        const auto y = b.level(m);
        out.values.push_back(std::inner_product(x.begin(), x.end(), y.begin(), 0.0));
    }
    return out;
}

GroupElement segment_exp(std::span<const double> delta, int euler_level, int max_level) {
    if (euler_level < 1 || euler_level > max_level) {
        throw ArgumentError("segment_exp: need 1 <= N <= M, got N=" + std::to_string(euler_level) +
                            ", M=" + std::to_string(max_level));
    }
    if (delta.empty()) throw ArgumentError("segment_exp: empty increment");
    const std::size_t d = delta.size();
    std::vector<std::vector<double>> levels(static_cast<std::size_t>(max_level) + 1);
    levels[0] = {1.0};
    for (int m = 1; m <= max_level; ++m) {
        levels[m].assign(level_size(d, m), 0.0);
        if (m > euler_level) continue;
        // delta^{⊗m}/m! = (delta^{⊗(m-1)}/(m-1)!) ⊗ delta / m
        const auto& prev = levels[m - 1];
        auto& cur = levels[m];
        const double inv_m = 1.0 / m;
        for (std::size_t i = 0; i < prev.size(); ++i) {
            const double p = prev[i] * inv_m;
            for (std::size_t j = 0; j < d; ++j) cur[i * d + j] = p * delta[j];
        }
    }
    return GroupElement(d, std::move(levels));
}

} // namespace sigmmd
