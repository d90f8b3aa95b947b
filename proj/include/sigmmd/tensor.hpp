#ifndef SIGMMD_TENSOR_HPP
#define SIGMMD_TENSOR_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace sigmmd {

/// Sequence of level-wise squared norms ‖t^m‖², m = 0..M.
struct LevelNorms {
    std::vector<double> values;

    double total() const noexcept;
    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t m) const { return values[m]; }
};

/// Sequence of level-wise inner products ⟨s^m, t^m⟩, m = 0..M.
struct LevelInnerProducts {
    std::vector<double> values;

    double total() const noexcept;
    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t m) const { return values[m]; }
};

/*
 * Element of the truncated tensor algebra T^M(R^d) with scalar part equal to one.
 *
 * Level m is stored densely as a row-major array of d^m coefficients, so the
 * coefficient of the word (i_1, ..., i_m) sits at offset
 * i_1 d^{m-1} + ... + i_m. Instances are immutable once built.
 */
class GroupElement {
public:
    /// The unit (1, 0, 0, ...).
    static GroupElement unit(std::size_t dim, int max_level);

    /// Validates shapes, finiteness, and the unit scalar part.
    static GroupElement from_levels(std::size_t dim, std::vector<std::vector<double>> levels);

    std::size_t dim() const noexcept { return dim_; }
    int max_level() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    std::span<const double> level(int m) const { return levels_.at(static_cast<std::size_t>(m)); }

    /// Coefficient of a word; the word length selects the level.
    double coeff(std::span<const std::size_t> word) const;

    friend GroupElement chen_product(const GroupElement& a, const GroupElement& b, int max_level);
    friend GroupElement dilate(const GroupElement& t, double lambda);
    friend GroupElement segment_exp(std::span<const double> delta, int euler_level, int max_level);

private:
    GroupElement(std::size_t dim, std::vector<std::vector<double>> levels)
        : dim_(dim), levels_(std::move(levels)) {}

    std::size_t dim_;
    std::vector<std::vector<double>> levels_;
};

/// Number of coefficients at level m, d^m.
std::size_t level_size(std::size_t dim, int m);

/// Truncated tensor product: level m is Σ_{k=0}^{m} a^{m-k} ⊗ b^{k}.
GroupElement chen_product(const GroupElement& a, const GroupElement& b, int max_level);

/// Scales level m by lambda^m.
GroupElement dilate(const GroupElement& t, double lambda);

LevelNorms level_norms_sq(const GroupElement& t);

LevelInnerProducts inner_product_levels(const GroupElement& a, const GroupElement& b);

/// Truncated exponential of a single increment: level m is delta^{⊗m}/m! for
/// m ≤ euler_level and zero above it, up to max_level.
GroupElement segment_exp(std::span<const double> delta, int euler_level, int max_level);

} // namespace sigmmd

#endif
