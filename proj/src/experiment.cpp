#include "sigmmd/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "sigmmd/errors.hpp"
#include "sigmmd/random.hpp"

namespace sigmmd {

namespace {

RowMatrix flatten_all(const std::vector<PathSample>& paths) {
    const std::size_t n = paths.front().size();
    const std::size_t d = paths.front().dim();
    RowMatrix out(static_cast<Eigen::Index>(paths.size()), static_cast<Eigen::Index>(n * d));
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].size() != n || paths[i].dim() != d) {
            throw StructuralError("flat kernel needs paths of identical length and dimension");
        }
        out.row(static_cast<Eigen::Index>(i)) =
            Eigen::Map<const Eigen::RowVectorXd>(paths[i].points().data(), static_cast<Eigen::Index>(n * d));
    }
    return out;
}

RowMatrix pooled_state_points(const std::vector<PathSample>& pooled, const SigKernelConfig& cfg,
                              std::size_t max_points) {
    std::vector<PathSample> transformed;
    transformed.reserve(pooled.size());
    std::size_t total = 0;
    for (const auto& p : pooled) {
        transformed.push_back(apply_transforms(p, cfg));
        total += p.size();
    }
    const std::size_t stride = max_points > 0 && total > max_points ? (total + max_points - 1) / max_points : 1;
    const auto d = static_cast<Eigen::Index>(transformed.front().dim());
    RowMatrix out((static_cast<Eigen::Index>(total) + static_cast<Eigen::Index>(stride) - 1) /
                      static_cast<Eigen::Index>(stride),
                  d);
    std::size_t global = 0;
    Eigen::Index row = 0;
    for (const auto& p : transformed) {
        for (std::size_t i = 0; i < p.size(); ++i, ++global) {
            if (global % stride == 0) out.row(row++) = p.points().row(static_cast<Eigen::Index>(i));
        }
    }
    out.conservativeResize(row, d);
    return out;
}

// Even counts average the two middle values.
double median_of(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double med = v[mid];
    if (v.size() % 2 == 0) med = 0.5 * (med + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
    return med;
}

double steps_median_gamma(const std::vector<PathSample>& pooled, const SigKernelConfig& cfg, BandwidthRule rule,
                          std::size_t max_points) {
    std::vector<double> sq;
    for (const auto& p : pooled) {
        const RowMatrix pts = apply_transforms(p, cfg).points();
        for (Eigen::Index i = 0; i + 1 < pts.rows(); ++i) sq.push_back((pts.row(i + 1) - pts.row(i)).squaredNorm());
    }
    const std::size_t stride = max_points > 0 && sq.size() > max_points ? (sq.size() + max_points - 1) / max_points : 1;
    std::vector<double> kept;
    for (std::size_t i = 0; i < sq.size(); i += stride) kept.push_back(sq[i]);
    if (kept.empty()) throw ArgumentError("median heuristic: paths need at least 2 points");
    if (rule == BandwidthRule::half_inverse_sq_median) {
        for (double& v : kept) v = std::sqrt(v);
        const double md = median_of(std::move(kept));
        if (!(md > 0.0)) throw ArgumentError("median heuristic: median step is zero");
        return 1.0 / (2.0 * md * md);
    }
    const double med = median_of(std::move(kept));
    if (!(med > 0.0)) throw ArgumentError("median heuristic: median step is zero");
    return rule == BandwidthRule::inverse_median_sq ? 1.0 / med : 1.0 / (2.0 * med);
}

std::uint64_t hyp_key(Hypothesis h) { return h == Hypothesis::H0 ? 0 : 1; }

} // namespace

std::string to_string(KernelPreset preset) {
    switch (preset) {
    case KernelPreset::sig_euclid: return "sig-euclid";
    case KernelPreset::sig_rbf: return "sig-rbf";
    case KernelPreset::flat_rbf: return "flat-rbf";
    }
    return "unknown";
}

KernelPreset kernel_preset_from_string(const std::string& name) {
    for (auto p : {KernelPreset::sig_euclid, KernelPreset::sig_rbf, KernelPreset::flat_rbf}) {
        if (to_string(p) == name) return p;
    }
    throw ArgumentError("unknown kernel preset '" + name + "' (expected sig-euclid, sig-rbf or flat-rbf)");
}

std::string to_string(MedianScope scope) { return scope == MedianScope::steps ? "steps" : "points"; }

MedianScope median_scope_from_string(const std::string& name) {
    if (name == "points") return MedianScope::state_points;
    if (name == "steps") return MedianScope::steps;
    throw ArgumentError("unknown median scope '" + name + "' (expected points or steps)");
}

KernelSpec KernelSpec::from_preset(KernelPreset preset) {
    KernelSpec k;
    k.preset = preset;
    k.sig.max_level = 4;
    k.sig.lags = 4;
    k.sig.augment_time = true;
    k.sig.normalize = true;
    k.sig.state_kernel.kind = preset == KernelPreset::sig_euclid ? StateKernelKind::euclidean : StateKernelKind::rbf;
    k.median_heuristic = preset != KernelPreset::sig_euclid;
    return k;
}

void KernelSpec::validate() const {
    if (preset != KernelPreset::flat_rbf) {
        SigKernelConfig probe = sig;
        if (probe.state_kernel.kind == StateKernelKind::rbf && median_heuristic) probe.state_kernel.gamma = 1.0;
        probe.validate();
    }
    if (!median_heuristic && preset != KernelPreset::sig_euclid && !(gamma > 0.0)) {
        throw ArgumentError("KernelSpec: gamma must be positive");
    }
}

Eigen::MatrixXd pooled_gram(const std::vector<PathSample>& pooled, const KernelSpec& kernel, int threads,
                            double* gamma_used) {
    kernel.validate();
    if (pooled.empty()) throw ArgumentError("pooled_gram: empty sample");
    if (kernel.preset == KernelPreset::flat_rbf) {
        const RowMatrix flat = flatten_all(pooled);
        const double gamma = kernel.median_heuristic ? median_heuristic(flat, kernel.rule) : kernel.gamma;
        if (gamma_used) *gamma_used = gamma;
        const auto n = flat.rows();
        Eigen::MatrixXd out(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            out(i, i) = 1.0;
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double v = std::exp(-gamma * (flat.row(i) - flat.row(j)).squaredNorm());
                out(i, j) = v;
                out(j, i) = v;
            }
        }
        return out;
    }
    SigKernelConfig cfg = kernel.sig;
    if (cfg.state_kernel.kind == StateKernelKind::rbf) {
        if (!kernel.median_heuristic) {
            cfg.state_kernel.gamma = kernel.gamma;
        } else if (kernel.scope == MedianScope::steps) {
            cfg.state_kernel.gamma = steps_median_gamma(pooled, cfg, kernel.rule, kernel.median_max_points);
        } else {
            cfg.state_kernel.gamma =
                median_heuristic(pooled_state_points(pooled, cfg, kernel.median_max_points), kernel.rule);
        }
    }
    if (gamma_used) *gamma_used = cfg.state_kernel.kind == StateKernelKind::rbf ? cfg.state_kernel.gamma : 0.0;
    return gram_matrix(pooled, cfg, threads);
}

std::string to_string(PairKind pair) { return pair == PairKind::signal ? "signal" : "random_walk"; }

PairKind pair_kind_from_string(const std::string& name) {
    if (name == "random_walk" || name == "rw") return PairKind::random_walk;
    if (name == "signal") return PairKind::signal;
    throw ArgumentError("unknown experiment pair '" + name + "' (expected random_walk or signal)");
}

std::string to_string(Hypothesis h) { return h == Hypothesis::H0 ? "H0" : "H1"; }

void ExperimentConfig::validate() const {
    if (m < 2) throw ArgumentError("ExperimentConfig: m must be >= 2");
    if (repetitions < 1) throw ArgumentError("ExperimentConfig: repetitions must be >= 1");
    if (n_perms < 1) throw ArgumentError("ExperimentConfig: n_perms must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("ExperimentConfig: alpha must lie in (0, 1)");
    data.validate();
    kernel.validate();
    if (downsample) {
        const auto [lo, hi] = *downsample;
        if (lo < 2 || lo > hi || hi > data.length) {
            throw ArgumentError("ExperimentConfig: downsample range must satisfy 2 <= min <= max <= length");
        }
        if (kernel.preset == KernelPreset::flat_rbf && lo != hi) {
            throw ArgumentError("ExperimentConfig: flat-rbf cannot compare paths of different lengths");
        }
    }
}

std::pair<DatasetKind, DatasetKind> group_kinds(PairKind pair, Hypothesis h) {
    if (pair == PairKind::random_walk) {
        return {DatasetKind::random_walk,
                h == Hypothesis::H0 ? DatasetKind::random_walk : DatasetKind::path_dependent_walk};
    }
    return {DatasetKind::circle_signal, h == Hypothesis::H0 ? DatasetKind::circle_signal : DatasetKind::pure_noise};
}

std::pair<std::vector<PathSample>, std::vector<PathSample>> draw_groups(const ExperimentConfig& cfg, Hypothesis h,
                                                                        int repetition) {
    const auto kinds = group_kinds(cfg.pair, h);
    const auto rep = static_cast<std::uint64_t>(repetition);
    std::vector<PathSample> groups[2];
    for (std::uint64_t g = 0; g < 2; ++g) {
        DatasetConfig dc = cfg.data;
        dc.kind = g == 0 ? kinds.first : kinds.second;
        dc.seed = derive_seed(cfg.seed, {rep, hyp_key(h), g});
        groups[g] = generate_many(dc, cfg.m);
        if (cfg.downsample) {
            for (std::size_t i = 0; i < groups[g].size(); ++i) {
                groups[g][i] = downsample(groups[g][i], cfg.downsample->first, cfg.downsample->second,
                                          derive_seed(dc.seed, {static_cast<std::uint64_t>(i), 0xD0'5A'3Bull}));
            }
        }
    }
    return {std::move(groups[0]), std::move(groups[1])};
}

TestResult two_sample_test(const std::vector<PathSample>& xs, const std::vector<PathSample>& ys,
                           const KernelSpec& kernel, int n_perms, double alpha, std::uint64_t seed, int threads) {
    std::vector<PathSample> pooled = xs;
    pooled.insert(pooled.end(), ys.begin(), ys.end());
    const auto gram = pooled_gram(pooled, kernel, threads);
    return permutation_test(gram, static_cast<long>(xs.size()), static_cast<long>(ys.size()), n_perms, seed, alpha);
}

TestResult run_repetition(const ExperimentConfig& cfg, Hypothesis h, int repetition) {
    cfg.validate();
    const auto [xs, ys] = draw_groups(cfg, h, repetition);
    const auto perm_seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(repetition), hyp_key(h), 2});
    return two_sample_test(xs, ys, cfg.kernel, cfg.n_perms, cfg.alpha, perm_seed, cfg.threads);
}

double repetition_statistic(const ExperimentConfig& cfg, Hypothesis h, int repetition) {
    cfg.validate();
    auto [xs, ys] = draw_groups(cfg, h, repetition);
    const auto m = static_cast<Eigen::Index>(xs.size());
    const auto n = static_cast<Eigen::Index>(ys.size());
    xs.insert(xs.end(), ys.begin(), ys.end());
    const auto gram = pooled_gram(xs, cfg.kernel, cfg.threads);
    return mmd2_unbiased(gram.topLeftCorner(m, m), gram.topRightCorner(m, n), gram.bottomRightCorner(n, n));
}

std::vector<HistogramRow> run_histogram(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<HistogramRow> rows;
    rows.reserve(static_cast<std::size_t>(cfg.repetitions) * 2);
    for (int r = 0; r < cfg.repetitions; ++r) {
        for (auto h : {Hypothesis::H0, Hypothesis::H1}) rows.push_back({r, h, repetition_statistic(cfg, h, r)});
    }
    return rows;
}

nlohmann::json kernel_to_json(const KernelSpec& kernel) {
    nlohmann::json j;
    j["preset"] = to_string(kernel.preset);
    j["median_heuristic"] = kernel.median_heuristic;
    if (!kernel.median_heuristic) j["gamma"] = kernel.gamma;
    if (kernel.median_heuristic && kernel.preset == KernelPreset::sig_rbf) j["median_scope"] = to_string(kernel.scope);
    if (kernel.preset != KernelPreset::flat_rbf) {
        j["level"] = kernel.sig.max_level;
        j["lags"] = kernel.sig.lags;
        j["augment_time"] = kernel.sig.augment_time;
        j["normalize"] = kernel.sig.normalize;
        j["state_kernel"] = to_string(kernel.sig.state_kernel.kind);
        j["m_psi"] = kernel.sig.normalization.m_psi;
        j["psi_a"] = kernel.sig.normalization.a;
    }
    return j;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["pair"] = to_string(cfg.pair);
    j["m"] = cfg.m;
    j["repetitions"] = cfg.repetitions;
    j["kernel"] = kernel_to_json(cfg.kernel);
    j["n_perms"] = cfg.n_perms;
    j["alpha"] = cfg.alpha;
    j["seed"] = cfg.seed;
    j["length"] = cfg.data.length;
    j["w"] = cfg.data.w;
    j["k_spins"] = cfg.data.k_spins;
    j["r"] = cfg.data.r;
    j["sigma"] = cfg.data.sigma;
    j["origin_std"] = cfg.data.origin_std;
    if (cfg.downsample) j["downsample"] = {cfg.downsample->first, cfg.downsample->second};
    return j;
}

nlohmann::json result_to_json(const TestResult& result, const nlohmann::json& config_echo, double wall_time_ms) {
    nlohmann::json j;
    j["schema_version"] = kResultSchemaVersion;
    j["config_echo"] = config_echo;
    j["t_obs"] = result.t_obs;
    // NaN (unequal group sizes) serializes as null.
    j["c_alpha"] = std::isnan(result.c_alpha) ? nlohmann::json(nullptr) : nlohmann::json(result.c_alpha);
    j["reject_threshold"] = result.reject_threshold;
    j["p_value"] = result.p_value;
    j["reject_permutation"] = result.reject_permutation;
    j["perm_values"] = result.perm_values;
    j["wall_time_ms"] = wall_time_ms;
    j["seed"] = result.seed;
    return j;
}

} // namespace sigmmd
