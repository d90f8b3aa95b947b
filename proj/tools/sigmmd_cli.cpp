// sigmmd: generate path datasets and run signature-kernel two-sample tests.
//
//   sigmmd gen        --kind random_walk --m 30 --seed 7 --out walks.csv
//   sigmmd test       --pair random_walk --hypothesis H1 --kernel sig-rbf --out result.json
//   sigmmd test       --x a.csv --y b.csv --kernel sig-euclid
//   sigmmd histogram  --pair signal --kernel sig-euclid --repetitions 1000 --out hist.csv
//
// Exit codes: 0 success, 2 configuration / input error, 3 numerical failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "sigmmd/errors.hpp"
#include "sigmmd/experiment.hpp"
#include "sigmmd/io.hpp"

namespace {

using namespace sigmmd;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct DataFlags {
    int length = 101;
    int w = 3;
    int k_spins = 10;
    double r = 0.8;
    double sigma = 0.5;
    double origin_std = 5.0;

    void add(CLI::App& app) {
        app.add_option("--length", length, "Observations per path")->capture_default_str();
        app.add_option("--w", w, "Period of the determined increment (path-dependent walk)")->capture_default_str();
        app.add_option("--k-spins", k_spins, "Revolutions of the circle signal")->capture_default_str();
        app.add_option("--r", r, "Circle radius")->capture_default_str();
        app.add_option("--sigma", sigma, "Noise volatility")->capture_default_str();
        app.add_option("--origin-std", origin_std, "Std of the random circle origin")->capture_default_str();
    }

    DatasetConfig to_config() const {
        DatasetConfig c;
        c.length = length;
        c.w = w;
        c.k_spins = k_spins;
        c.r = r;
        c.sigma = sigma;
        c.origin_std = origin_std;
        return c;
    }
};

struct KernelFlags {
    std::string preset = "sig-rbf";
    std::optional<int> level;
    std::optional<int> lags;
    bool no_time = false;
    bool no_normalize = false;
    std::optional<double> gamma;
    std::optional<std::string> median_over;
    double m_psi = 4.0;
    double psi_a = 1.0;

    void add(CLI::App& app) {
        app.add_option("--kernel", preset, "Kernel preset: sig-euclid, sig-rbf, flat-rbf")->capture_default_str();
        app.add_option("--level", level, "Truncation level (default 4)");
        app.add_option("--lags", lags, "Number of lags (default 4)");
        app.add_flag("--no-time", no_time, "Do not append time as a coordinate");
        app.add_flag("--no-normalize", no_normalize, "Skip tensor normalization");
        app.add_option("--gamma", gamma, "Fixed rbf coefficient (disables the median heuristic)");
        app.add_option("--median-over", median_over, "sig-rbf median heuristic over 'steps' (default) or 'points'");
        app.add_option("--m-psi", m_psi, "Plateau threshold of the normalization")->capture_default_str();
        app.add_option("--psi-a", psi_a, "Decay exponent of the normalization")->capture_default_str();
    }

    KernelSpec to_spec() const {
        auto k = KernelSpec::from_preset(kernel_preset_from_string(preset));
        if (level) k.sig.max_level = *level;
        if (lags) k.sig.lags = *lags;
        if (no_time) k.sig.augment_time = false;
        if (no_normalize) k.sig.normalize = false;
        if (median_over) k.scope = median_scope_from_string(*median_over);
        if (gamma) {
            k.median_heuristic = false;
            k.gamma = *gamma;
            k.sig.state_kernel.gamma = *gamma;
        }
        k.sig.normalization.m_psi = m_psi;
        k.sig.normalization.a = psi_a;
        return k;
    }
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SIGMMD_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ArgumentError(std::string("SIGMMD_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

std::optional<std::pair<int, int>> parse_range(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ArgumentError("--downsample expects MIN:MAX, got '" + s + "'");
    try {
        return std::make_pair(std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1)));
    } catch (const std::exception&) {
        throw ArgumentError("--downsample expects MIN:MAX, got '" + s + "'");
    }
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    fn(out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

Hypothesis hypothesis_from_string(const std::string& s) {
    if (s == "H0") return Hypothesis::H0;
    if (s == "H1") return Hypothesis::H1;
    throw ArgumentError("--hypothesis must be H0 or H1");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signature kernels and two-sample tests for laws of stochastic processes"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed_flag;
    int threads = 0;
    app.add_option("--threads", threads, "Cap on worker threads (0 = runtime default)");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset as CSV");
    std::string gen_kind = "random_walk";
    int gen_m = 50;
    std::string gen_out = "-";
    DataFlags gen_data;
    gen->add_option("--kind", gen_kind, "random_walk, path_dependent_walk, circle_signal, pure_noise")
        ->capture_default_str();
    gen->add_option("--m", gen_m, "Number of sample paths")->capture_default_str();
    gen->add_option("--seed", seed_flag, "Seed (default: $SIGMMD_SEED or 0)");
    gen->add_option("--out", gen_out, "Output CSV path ('-' for stdout)")->capture_default_str();
    gen_data.add(*gen);

    // test
    auto* test = app.add_subcommand("test", "Run one two-sample test and write the result JSON");
    std::string x_path;
    std::string y_path;
    std::string pair = "random_walk";
    std::string hypothesis = "H1";
    int repetition = 0;
    int test_m = 50;
    int n_perms = 250;
    double alpha = 0.05;
    std::string downsample_range;
    std::string test_out = "-";
    DataFlags test_data;
    KernelFlags test_kernel;
    test->add_option("--x", x_path, "First sample (dataset CSV)");
    test->add_option("--y", y_path, "Second sample (dataset CSV)");
    test->add_option("--pair", pair, "Generated experiment: random_walk or signal")->capture_default_str();
    test->add_option("--hypothesis", hypothesis, "H0 or H1 when generating")->capture_default_str();
    test->add_option("--repetition", repetition, "Repetition index when generating")->capture_default_str();
    test->add_option("--m", test_m, "Samples per group when generating")->capture_default_str();
    test->add_option("--n-perms", n_perms, "Permutations")->capture_default_str();
    test->add_option("--alpha", alpha, "Test level")->capture_default_str();
    test->add_option("--seed", seed_flag, "Seed (default: $SIGMMD_SEED or 0)");
    test->add_option("--downsample", downsample_range, "Keep MIN:MAX ticks per generated path");
    test->add_option("--out", test_out, "Output JSON path ('-' for stdout)")->capture_default_str();
    test_data.add(*test);
    test_kernel.add(*test);

    // histogram
    auto* hist = app.add_subcommand("histogram", "T_U^2 under H0 and H1 per repetition, as CSV");
    std::string hist_pair = "random_walk";
    int hist_reps = 1000;
    int hist_m = 50;
    std::string hist_downsample;
    std::string hist_out = "-";
    DataFlags hist_data;
    KernelFlags hist_kernel;
    hist->add_option("--pair", hist_pair, "random_walk or signal")->capture_default_str();
    hist->add_option("--repetitions", hist_reps, "Repetitions")->capture_default_str();
    hist->add_option("--m", hist_m, "Samples per group")->capture_default_str();
    hist->add_option("--seed", seed_flag, "Seed (default: $SIGMMD_SEED or 0)");
    hist->add_option("--downsample", hist_downsample, "Keep MIN:MAX ticks per path");
    hist->add_option("--out", hist_out, "Output CSV path ('-' for stdout)")->capture_default_str();
    hist_data.add(*hist);
    hist_kernel.add(*hist);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        const std::uint64_t seed = seed_flag ? *seed_flag : default_seed();

        if (*gen) {
            DatasetConfig dc = gen_data.to_config();
            dc.kind = dataset_kind_from_string(gen_kind);
            dc.seed = seed;
            if (gen_m < 1) throw ArgumentError("--m must be >= 1");
            const auto samples = generate_many(dc, gen_m);
            with_output(gen_out, [&](std::ostream& out) { write_dataset_csv(out, samples); });
            std::cerr << "kind=" << gen_kind << " m=" << gen_m << " length=" << dc.length << " seed=" << seed << '\n';
            return 0;
        }

        if (*test) {
            const auto start = std::chrono::steady_clock::now();
            ExperimentConfig cfg;
            cfg.pair = pair_kind_from_string(pair);
            cfg.m = test_m;
            cfg.kernel = test_kernel.to_spec();
            cfg.n_perms = n_perms;
            cfg.alpha = alpha;
            cfg.seed = seed;
            cfg.data = test_data.to_config();
            cfg.downsample = parse_range(downsample_range);
            cfg.threads = threads;
            cfg.repetitions = 1;

            TestResult result;
            nlohmann::json echo;
            if (!x_path.empty() || !y_path.empty()) {
                if (x_path.empty() || y_path.empty()) throw ArgumentError("--x and --y must be given together");
                const auto xs = read_dataset_csv(x_path);
                const auto ys = read_dataset_csv(y_path);
                cfg.kernel.validate();
                result = two_sample_test(xs, ys, cfg.kernel, n_perms, alpha, seed, threads);
                echo = {{"x", x_path}, {"y", y_path}, {"kernel", kernel_to_json(cfg.kernel)},
                        {"n_perms", n_perms}, {"alpha", alpha}, {"seed", seed}};
            } else {
                const auto h = hypothesis_from_string(hypothesis);
                result = run_repetition(cfg, h, repetition);
                echo = config_to_json(cfg);
                echo["hypothesis"] = hypothesis;
                echo["repetition"] = repetition;
            }
            const double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            const auto json = result_to_json(result, echo, ms);
            with_output(test_out, [&](std::ostream& out) { out << json.dump(2) << '\n'; });
            return 0;
        }

        if (*hist) {
            ExperimentConfig cfg;
            cfg.pair = pair_kind_from_string(hist_pair);
            cfg.m = hist_m;
            cfg.repetitions = hist_reps;
            cfg.kernel = hist_kernel.to_spec();
            cfg.seed = seed;
            cfg.data = hist_data.to_config();
            cfg.downsample = parse_range(hist_downsample);
            cfg.threads = threads;
            const auto rows = run_histogram(cfg);
            with_output(hist_out, [&](std::ostream& out) {
                out << "repetition_index,hypothesis,t_u2\n" << std::setprecision(17);
                for (const auto& r : rows) out << r.repetition << ',' << to_string(r.hypothesis) << ',' << r.t_u2 << '\n';
            });
            return 0;
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << " (bracket [" << e.bracket_lo() << ", " << e.bracket_hi()
                  << "])\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
