#include "sigmmd/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sigmmd/errors.hpp"
#include "sigmmd/random.hpp"

namespace sigmmd {

namespace {

PathSample walk(const DatasetConfig& cfg, int w) {
    Rng rng(cfg.seed);
    const auto n = static_cast<Eigen::Index>(cfg.length);
    RowMatrix pts(n, 1);
    std::vector<int> inc(static_cast<std::size_t>(n), 0);
    pts(0, 0) = 0.0;
    for (Eigen::Index s = 1; s < n; ++s) {
        int step;
        if (w > 0 && s % w == 0) {
            step = 1;
            for (Eigen::Index k = s - w + 1; k < s; ++k) step *= inc[static_cast<std::size_t>(k)];
        } else {
            step = rng.sign();
        }
        inc[static_cast<std::size_t>(s)] = step;
        pts(s, 0) = pts(s - 1, 0) + step;
    }
    return PathSample(PathSample::uniform_times(static_cast<std::size_t>(n)), std::move(pts));
}

PathSample planar(const DatasetConfig& cfg, bool with_signal) {
    Rng rng(cfg.seed);
    const auto n = static_cast<Eigen::Index>(cfg.length);
    auto times = PathSample::uniform_times(static_cast<std::size_t>(n));
    RowMatrix pts(n, 2);
    double ox = 0.0;
    double oy = 0.0;
    if (with_signal) {
        ox = cfg.origin_std * rng.normal();
        oy = cfg.origin_std * rng.normal();
    }
    const double omega = 2.0 * std::numbers::pi * cfg.k_spins;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = rng.normal();
        const double eta = rng.normal();
        double fx = 0.0;
        double fy = 0.0;
        if (with_signal) {
            const double t = times[static_cast<std::size_t>(i)];
            fx = ox + cfg.r * std::cos(omega * t);
            fy = oy + cfg.r * std::sin(omega * t);
        }
        pts(i, 0) = fx + cfg.sigma * xi;
        pts(i, 1) = fy + cfg.sigma * eta;
    }
    return PathSample(std::move(times), std::move(pts));
}

void require_kind(const DatasetConfig& cfg, DatasetKind kind) {
    cfg.validate();
    if (cfg.kind != kind) {
        throw ArgumentError("generator for " + to_string(kind) + " called with kind " + to_string(cfg.kind));
    }
}

} // namespace

std::string to_string(DatasetKind kind) {
    switch (kind) {
    case DatasetKind::random_walk: return "random_walk";
    case DatasetKind::path_dependent_walk: return "path_dependent_walk";
    case DatasetKind::circle_signal: return "circle_signal";
    case DatasetKind::pure_noise: return "pure_noise";
    }
    return "unknown";
}

DatasetKind dataset_kind_from_string(const std::string& name) {
    for (auto kind : {DatasetKind::random_walk, DatasetKind::path_dependent_walk, DatasetKind::circle_signal,
                      DatasetKind::pure_noise}) {
        if (to_string(kind) == name) return kind;
    }
    throw ArgumentError("unknown dataset kind '" + name + "'");
}

void DatasetConfig::validate() const {
    if (length < 2) throw ArgumentError("DatasetConfig: length must be >= 2");
    if (w < 2) throw ArgumentError("DatasetConfig: w must be >= 2");
    // sigma == 0 is allowed for noiseless circle fixtures.
    if (!(r > 0.0) || !(sigma >= 0.0) || !(origin_std > 0.0)) {
        throw ArgumentError("DatasetConfig: r and origin_std must be positive, sigma non-negative");
    }
}

PathSample simple_random_walk(const DatasetConfig& cfg) {
    require_kind(cfg, DatasetKind::random_walk);
    return walk(cfg, 0);
}

PathSample path_dependent_walk(const DatasetConfig& cfg) {
    require_kind(cfg, DatasetKind::path_dependent_walk);
    return walk(cfg, cfg.w);
}

PathSample circle_signal(const DatasetConfig& cfg) {
    require_kind(cfg, DatasetKind::circle_signal);
    return planar(cfg, true);
}

PathSample pure_noise(const DatasetConfig& cfg) {
    require_kind(cfg, DatasetKind::pure_noise);
    return planar(cfg, false);
}

PathSample generate(const DatasetConfig& cfg) {
    switch (cfg.kind) {
    case DatasetKind::random_walk: return simple_random_walk(cfg);
    case DatasetKind::path_dependent_walk: return path_dependent_walk(cfg);
    case DatasetKind::circle_signal: return circle_signal(cfg);
    case DatasetKind::pure_noise: return pure_noise(cfg);
    }
    throw ArgumentError("generate: unknown dataset kind");
}

std::vector<PathSample> generate_many(const DatasetConfig& cfg, int count) {
    if (count < 0) throw ArgumentError("generate_many: negative count");
    std::vector<PathSample> out;
    out.reserve(static_cast<std::size_t>(count));
    DatasetConfig sub = cfg;
    for (int i = 0; i < count; ++i) {
        sub.seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(i)});
        out.push_back(generate(sub));
    }
    return out;
}

PathSample downsample(const PathSample& path, int keep_min, int keep_max, std::uint64_t seed) {
    const auto n = static_cast<int>(path.size());
    if (keep_min < 2 || keep_min > keep_max || keep_max > n) {
        throw ArgumentError("downsample: need 2 <= keep_min <= keep_max <= path length");
    }
    Rng rng(seed);
    const int keep = keep_min + static_cast<int>(rng.index(static_cast<std::uint64_t>(keep_max - keep_min + 1)));

    // Partial Fisher-Yates over the interior ticks 1..n-2.
    std::vector<int> interior(static_cast<std::size_t>(n - 2));
    std::iota(interior.begin(), interior.end(), 1);
    const auto want = static_cast<std::size_t>(keep - 2);
    for (std::size_t i = 0; i < want; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.index(interior.size() - i));
        std::swap(interior[i], interior[j]);
    }
    std::vector<int> idx(interior.begin(), interior.begin() + static_cast<std::ptrdiff_t>(want));
    idx.push_back(0);
    idx.push_back(n - 1);
    std::sort(idx.begin(), idx.end());

    std::vector<double> times;
    times.reserve(idx.size());
    RowMatrix pts(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(path.dim()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
        times.push_back(path.times()[static_cast<std::size_t>(idx[r])]);
        pts.row(static_cast<Eigen::Index>(r)) = path.points().row(idx[r]);
    }
    return PathSample(std::move(times), std::move(pts));
}

} // namespace sigmmd
