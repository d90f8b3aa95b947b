#include "sigmmd/sigkernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#ifdef SIGMMD_HAVE_OPENMP
#include <omp.h>
#endif

#include "sigmmd/errors.hpp"

namespace sigmmd {

namespace {

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Per-path state shared by every Gram cell the path takes part in.
struct Prepared {
    RowMatrix points;      // after transforms
    RowMatrix increments;  // euclidean only
    double lambda = 1.0;
};

void fill_increment_gram(const Prepared& x, const Prepared& y, const StateKernelConfig& cfg,
                         RowMatrix& out) {
    const Eigen::Index n = x.points.rows();
    const Eigen::Index p = y.points.rows();
    if (n < 2 || p < 2) {
        out.resize(std::max<Eigen::Index>(n - 1, 0), std::max<Eigen::Index>(p - 1, 0));
        return;
    }
    if (cfg.kind == StateKernelKind::euclidean) {
        out.noalias() = x.increments * y.increments.transpose();
        return;
    }
    const Eigen::Index d = x.points.cols();
    const RowMatrix yt = y.points.transpose();
    RowMatrix g = RowMatrix::Zero(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        double* gi = g.data() + i * p;
        for (Eigen::Index k = 0; k < d; ++k) {
            const double xk = x.points(i, k);
            const double* yk = yt.data() + k * p;
            for (Eigen::Index j = 0; j < p; ++j) {
                const double diff = xk - yk[j];
                gi[j] += diff * diff;
            }
        }
    }
    g *= -cfg.gamma;
    g.array() = g.array().exp();
    out = g.bottomRightCorner(n - 1, p - 1) - g.bottomLeftCorner(n - 1, p - 1) -
          g.topRightCorner(n - 1, p - 1) + g.topLeftCorner(n - 1, p - 1);
}

Prepared prepare(const PathSample& path, const SigKernelConfig& cfg) {
    Prepared out;
    out.points = apply_transforms(path, cfg).points();
    const Eigen::Index n = out.points.rows();
    if (cfg.state_kernel.kind == StateKernelKind::euclidean && n >= 2) {
        out.increments = out.points.bottomRows(n - 1) - out.points.topRows(n - 1);
    }
    if (cfg.normalize) {
        RowMatrix k;
        fill_increment_gram(out, out, cfg.state_kernel, k);
        const auto self = level_inner_products_from_gram(k, cfg.max_level);
        out.lambda = solve_lambda(LevelNorms{self.values}, cfg.normalization).lambda;
    }
    return out;
}

double cell(const Prepared& x, const Prepared& y, const SigKernelConfig& cfg, RowMatrix& scratch) {
    fill_increment_gram(x, y, cfg.state_kernel, scratch);
    const auto levels = level_inner_products_from_gram(scratch, cfg.max_level);
    return cfg.normalize ? normalized_inner(levels, x.lambda, y.lambda) : levels.total();
}

std::vector<Prepared> prepare_all(const std::vector<PathSample>& paths, const SigKernelConfig& cfg) {
    std::vector<Prepared> out(paths.size());
    const auto count = static_cast<long>(paths.size());
#ifdef SIGMMD_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = prepare(paths[static_cast<std::size_t>(i)], cfg);
    return out;
}

void set_threads([[maybe_unused]] int threads) {
#ifdef SIGMMD_HAVE_OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
}

} // namespace

void SigKernelConfig::validate() const {
    if (max_level < 1) throw ArgumentError("SigKernelConfig: truncation level must be >= 1");
    if (lags < 0) throw ArgumentError("SigKernelConfig: lags must be >= 0");
    state_kernel.validate();
    normalization.validate();
}

PathSample apply_transforms(const PathSample& path, const SigKernelConfig& cfg) {
    PathSample out = cfg.lags > 0 ? add_lags(path, cfg.lags) : path;
    return cfg.augment_time ? time_augment(out) : out;
}

RowMatrix increment_gram(const PathSample& x, const PathSample& y, const StateKernelConfig& cfg) {
    if (x.size() < 2 || y.size() < 2) {
        throw ArgumentError("increment_gram: both sequences need at least 2 points");
    }
    if (x.dim() != y.dim()) throw StructuralError("increment_gram: sequences differ in dimension");
    cfg.validate();
    Prepared px{x.points(), {}, 1.0};
    Prepared py{y.points(), {}, 1.0};
    if (cfg.kind == StateKernelKind::euclidean) {
        const auto n = px.points.rows();
        const auto p = py.points.rows();
        px.increments = px.points.bottomRows(n - 1) - px.points.topRows(n - 1);
        py.increments = py.points.bottomRows(p - 1) - py.points.topRows(p - 1);
    }
    RowMatrix k;
    fill_increment_gram(px, py, cfg, k);
    return k;
}

namespace {

// r[m] is the level-(m+1) term ending at (i, j); col[j][m] sums it over earlier rows;
// run[m] is the prefix of col[.][m] to the left of j.
template <int M>
void dp_rows_fixed(const double* k, std::size_t rows, std::size_t cols, double* col, Kahan* totals) {
    constexpr int L = M > 1 ? M - 1 : 1;
    for (std::size_t i = 0; i < rows; ++i) {
        const double* krow = k + i * cols;
        double run[L] = {};
        double rowsum[M] = {};
        for (std::size_t j = 0; j < cols; ++j) {
            const double kij = krow[j];
            double r[M];
            r[0] = kij;
            for (int m = 1; m < M; ++m) r[m] = kij * run[m - 1];
            double* c = col + j * L;
            for (int m = 0; m + 1 < M; ++m) {
                run[m] += c[m];
                c[m] += r[m];
            }
            for (int m = 0; m < M; ++m) rowsum[m] += r[m];
        }
        for (int m = 0; m < M; ++m) totals[m].add(rowsum[m]);
    }
}

void dp_rows_generic(const double* k, std::size_t rows, std::size_t cols, std::size_t M, double* col,
                     Kahan* totals) {
    std::vector<double> run(M, 0.0);
    std::vector<double> rowsum(M, 0.0);
    std::vector<double> r(M, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        const double* krow = k + i * cols;
        std::fill(run.begin(), run.end(), 0.0);
        std::fill(rowsum.begin(), rowsum.end(), 0.0);
        for (std::size_t j = 0; j < cols; ++j) {
            const double kij = krow[j];
            r[0] = kij;
            for (std::size_t m = 1; m < M; ++m) r[m] = kij * run[m - 1];
            for (std::size_t m = 0; m + 1 < M; ++m) {
                double& c = col[m * cols + j];
                run[m] += c;
                c += r[m];
            }
            for (std::size_t m = 0; m < M; ++m) rowsum[m] += r[m];
        }
        for (std::size_t m = 0; m < M; ++m) totals[m].add(rowsum[m]);
    }
}

} // namespace

LevelInnerProducts level_inner_products_from_gram(const RowMatrix& k, int max_level) {
    if (max_level < 1) throw ArgumentError("level_inner_products: truncation level must be >= 1");
    const auto M = static_cast<std::size_t>(max_level);
    const auto rows = static_cast<std::size_t>(k.rows());
    const auto cols = static_cast<std::size_t>(k.cols());

    LevelInnerProducts out;
    out.values.assign(M + 1, 0.0);
    out.values[0] = 1.0;
    if (rows == 0 || cols == 0) return out;

    std::vector<double> col((M - 1) * cols + 1, 0.0);
    std::vector<Kahan> totals(M);
    switch (max_level) {
    case 1: dp_rows_fixed<1>(k.data(), rows, cols, col.data(), totals.data()); break;
    case 2: dp_rows_fixed<2>(k.data(), rows, cols, col.data(), totals.data()); break;
    case 3: dp_rows_fixed<3>(k.data(), rows, cols, col.data(), totals.data()); break;
    case 4: dp_rows_fixed<4>(k.data(), rows, cols, col.data(), totals.data()); break;
    case 5: dp_rows_fixed<5>(k.data(), rows, cols, col.data(), totals.data()); break;
    case 6: dp_rows_fixed<6>(k.data(), rows, cols, col.data(), totals.data()); break;
    default: dp_rows_generic(k.data(), rows, cols, M, col.data(), totals.data()); break;
    }
    for (std::size_t m = 0; m < M; ++m) out.values[m + 1] = totals[m].sum;
    return out;
}

LevelInnerProducts level_inner_products(const PathSample& x, const PathSample& y, const SigKernelConfig& cfg) {
    cfg.validate();
    if (x.dim() != y.dim()) throw StructuralError("level_inner_products: sequences differ in dimension");
    if (x.size() < 2 || y.size() < 2) {
        LevelInnerProducts out;
        out.values.assign(static_cast<std::size_t>(cfg.max_level) + 1, 0.0);
        out.values[0] = 1.0;
        return out;
    }
    return level_inner_products_from_gram(increment_gram(x, y, cfg.state_kernel), cfg.max_level);
}

namespace {

bool canonically_before(const PathSample& a, const PathSample& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    const auto& ta = a.times();
    const auto& tb = b.times();
    if (ta != tb) return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end());
    const double* pa = a.points().data();
    const double* pb = b.points().data();
    const auto len = a.points().size();
    return std::lexicographical_compare(pa, pa + len, pb, pb + len);
}

} // namespace

double sig_kernel(const PathSample& x, const PathSample& y, const SigKernelConfig& cfg) {
    cfg.validate();
    // A fixed argument order makes k(x, y) and k(y, x) bit-identical.
    if (canonically_before(y, x)) return sig_kernel(y, x, cfg);
    const PathSample tx = apply_transforms(x, cfg);
    const PathSample ty = apply_transforms(y, cfg);
    const auto xy = level_inner_products(tx, ty, cfg);
    if (!cfg.normalize) return xy.total();
    const auto xx = level_inner_products(tx, tx, cfg);
    const auto yy = level_inner_products(ty, ty, cfg);
    return normalized_inner(xy, LevelNorms{xx.values}, LevelNorms{yy.values}, cfg.normalization);
}

Eigen::MatrixXd gram_matrix(const std::vector<PathSample>& xs, const std::vector<PathSample>& ys,
                            const SigKernelConfig& cfg, int threads) {
    cfg.validate();
    if (xs.empty() || ys.empty()) throw ArgumentError("gram_matrix: empty collection");
    const std::size_t dim = xs.front().dim();
    for (const auto& p : xs) {
        if (p.dim() != dim) throw StructuralError("gram_matrix: paths differ in dimension");
    }
    for (const auto& p : ys) {
        if (p.dim() != dim) throw StructuralError("gram_matrix: paths differ in dimension");
    }
    set_threads(threads);
    const auto px = prepare_all(xs, cfg);
    const auto py = prepare_all(ys, cfg);
    const auto nx = static_cast<long>(xs.size());
    const auto ny = static_cast<long>(ys.size());
    Eigen::MatrixXd out(nx, ny);
#ifdef SIGMMD_HAVE_OPENMP
#pragma omp parallel
#endif
    {
        RowMatrix scratch;
#ifdef SIGMMD_HAVE_OPENMP
#pragma omp for schedule(dynamic) collapse(2)
#endif
        for (long i = 0; i < nx; ++i) {
            for (long j = 0; j < ny; ++j) {
                out(i, j) = cell(px[static_cast<std::size_t>(i)], py[static_cast<std::size_t>(j)], cfg, scratch);
            }
        }
    }
    return out;
}

Eigen::MatrixXd gram_matrix(const std::vector<PathSample>& xs, const SigKernelConfig& cfg, int threads) {
    cfg.validate();
    if (xs.empty()) throw ArgumentError("gram_matrix: empty collection");
    const std::size_t dim = xs.front().dim();
    for (const auto& p : xs) {
        if (p.dim() != dim) throw StructuralError("gram_matrix: paths differ in dimension");
    }
    set_threads(threads);
    const auto prepared = prepare_all(xs, cfg);
    const auto n = static_cast<long>(xs.size());
    std::vector<std::pair<long, long>> pairs;
    pairs.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    for (long i = 0; i < n; ++i) {
        for (long j = i; j < n; ++j) pairs.emplace_back(i, j);
    }
    Eigen::MatrixXd out(n, n);
    const auto count = static_cast<long>(pairs.size());
#ifdef SIGMMD_HAVE_OPENMP
#pragma omp parallel
#endif
    {
        RowMatrix scratch;
#ifdef SIGMMD_HAVE_OPENMP
#pragma omp for schedule(dynamic)
#endif
        for (long c = 0; c < count; ++c) {
            const auto [i, j] = pairs[static_cast<std::size_t>(c)];
            const double v = cell(prepared[static_cast<std::size_t>(i)], prepared[static_cast<std::size_t>(j)], cfg, scratch);
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

} // namespace sigmmd
