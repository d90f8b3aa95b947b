#ifndef SIGMMD_DATAGEN_HPP
#define SIGMMD_DATAGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sigmmd/signature.hpp"

namespace sigmmd {

enum class DatasetKind { random_walk, path_dependent_walk, circle_signal, pure_noise };

std::string to_string(DatasetKind kind);
DatasetKind dataset_kind_from_string(const std::string& name);

struct DatasetConfig {
    DatasetKind kind = DatasetKind::random_walk;
    int length = 101;        // number of observations on the uniform grid of [0, 1]
    int w = 3;               // every w-th increment of the path-dependent walk is determined
    int k_spins = 10;
    double r = 0.8;
    double sigma = 0.5;
    double origin_std = 5.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// X_0 = 0 with i.i.d. ±1 increments.
PathSample simple_random_walk(const DatasetConfig& cfg);

/// Like the simple walk, except that increment s (1-based) with s ≡ 0 mod w
/// is the product of the w-1 increments before it.
PathSample path_dependent_walk(const DatasetConfig& cfg);

/// O + r (cos 2πkt, sin 2πkt) + σ ξ_t with O ~ N(0, origin_std² I).
PathSample circle_signal(const DatasetConfig& cfg);

/// σ ξ_t.
PathSample pure_noise(const DatasetConfig& cfg);

/// Dispatches on cfg.kind.
PathSample generate(const DatasetConfig& cfg);

/// `count` samples; sample i uses the seed derived from (cfg.seed, i).
std::vector<PathSample> generate_many(const DatasetConfig& cfg, int count);

/// Keeps a uniformly drawn number of ticks in [keep_min, keep_max], always
/// including the first and last; the interior subset is uniform.
PathSample downsample(const PathSample& path, int keep_min, int keep_max, std::uint64_t seed);

} // namespace sigmmd

#endif
