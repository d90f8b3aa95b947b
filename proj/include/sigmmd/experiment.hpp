#ifndef SIGMMD_EXPERIMENT_HPP
#define SIGMMD_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "sigmmd/datagen.hpp"
#include "sigmmd/mmd.hpp"
#include "sigmmd/sigkernel.hpp"

namespace sigmmd {

inline constexpr int kResultSchemaVersion = 1;

enum class KernelPreset { sig_euclid, sig_rbf, flat_rbf };

std::string to_string(KernelPreset preset);
KernelPreset kernel_preset_from_string(const std::string& name);

/// Which distances feed the median heuristic of the signature-rbf kernel.
enum class MedianScope {
    state_points,  // all pairs of pooled (transformed) state points
    steps,         // consecutive state points within each path
};

std::string to_string(MedianScope scope);
MedianScope median_scope_from_string(const std::string& name);

/*
 * Kernel used for a two-sample experiment. For the signature presets `sig`
 * holds the full configuration; when `median_heuristic` is set, the rbf
 * coefficient is recomputed on every pooled sample (over the steps or the
 * state points of the transformed paths for sig-rbf, over flattened paths
 * for flat-rbf).
 */
struct KernelSpec {
    KernelPreset preset = KernelPreset::sig_rbf;
    SigKernelConfig sig;
    bool median_heuristic = true;
    double gamma = 1.0;                // used when median_heuristic is off
    BandwidthRule rule = BandwidthRule::half_inverse_median_sq;
    MedianScope scope = MedianScope::steps;  // sig-rbf only
    std::size_t median_max_points = 2000;  // state points fed to the heuristic, strided subsample

    static KernelSpec from_preset(KernelPreset preset);
    void validate() const;
};

/// Pooled Gram matrix for one experiment; reports the rbf coefficient used (0 for euclidean).
Eigen::MatrixXd pooled_gram(const std::vector<PathSample>& pooled, const KernelSpec& kernel, int threads = 0,
                            double* gamma_used = nullptr);

enum class PairKind { random_walk, signal };
enum class Hypothesis { H0, H1 };

std::string to_string(PairKind pair);
PairKind pair_kind_from_string(const std::string& name);
std::string to_string(Hypothesis h);

struct ExperimentConfig {
    PairKind pair = PairKind::random_walk;
    int m = 50;
    int repetitions = 1000;
    KernelSpec kernel;
    int n_perms = 250;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    DatasetConfig data;  // kind and seed are overridden per group
    std::optional<std::pair<int, int>> downsample;
    int threads = 0;

    void validate() const;
};

/// Group kinds for (pair, hypothesis): H0 draws both groups from the first law.
std::pair<DatasetKind, DatasetKind> group_kinds(PairKind pair, Hypothesis h);

/// The two samples of one repetition; deterministic in (seed, repetition, hypothesis).
std::pair<std::vector<PathSample>, std::vector<PathSample>> draw_groups(const ExperimentConfig& cfg, Hypothesis h,
                                                                        int repetition);

/// Full test on explicit samples: pooled Gram, unbiased statistic, threshold and permutation test.
TestResult two_sample_test(const std::vector<PathSample>& xs, const std::vector<PathSample>& ys,
                           const KernelSpec& kernel, int n_perms, double alpha, std::uint64_t seed, int threads = 0);

TestResult run_repetition(const ExperimentConfig& cfg, Hypothesis h, int repetition);

/// T_U² only, for histograms.
double repetition_statistic(const ExperimentConfig& cfg, Hypothesis h, int repetition);

struct HistogramRow {
    int repetition;
    Hypothesis hypothesis;
    double t_u2;
};

/// Rows (r, H0), (r, H1) for r = 0..repetitions-1.
std::vector<HistogramRow> run_histogram(const ExperimentConfig& cfg);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
nlohmann::json kernel_to_json(const KernelSpec& kernel);
nlohmann::json result_to_json(const TestResult& result, const nlohmann::json& config_echo, double wall_time_ms);

} // namespace sigmmd

#endif
