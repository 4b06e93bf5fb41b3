// bgbench: background-subtraction benchmarking CLI.
//
// Subcommands: run (one algorithm over one sequence -> density CSV),
// compare (density CSVs vs hand-counted ground truth), bench (timing,
// throughput and accuracy report over many sequences), synth (seeded
// synthetic traffic sequence with exact ground truth).
//
// Exit codes: 0 success, 1 domain/I-O error, 2 usage error. Diagnostics go
// to stderr; stdout carries data and tables only.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bgbench/bench.hpp"
#include "bgbench/pnm.hpp"
#include "bgbench/synth.hpp"

namespace {

struct UsageError {
    std::string message;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

int parse_int(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const long value = std::strtol(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size())
        throw UsageError{what + ": '" + text + "' is not an integer"};
    return static_cast<int>(value);
}

std::vector<int> parse_worker_list(const std::string& text) {
    std::vector<int> workers;
    for (const auto& part : split(text, ',')) {
        const int w = parse_int(part, "--workers");
        if (w < 1)
            throw UsageError{"--workers: counts must be positive"};
        workers.push_back(w);
    }
    std::sort(workers.begin(), workers.end());
    workers.erase(std::unique(workers.begin(), workers.end()), workers.end());
    return workers;
}

std::vector<bgbench::Algorithm> parse_algo_list(const std::string& text) {
    std::vector<bgbench::Algorithm> algorithms;
    for (const auto& part : split(text, ',')) {
        bgbench::Algorithm a;
        try {
            a = bgbench::algorithm_from_string(part);
        } catch (const bgbench::Error&) {
            throw UsageError{"--algos: unknown algorithm '" + part + "'"};
        }
        if (std::find(algorithms.begin(), algorithms.end(), a) == algorithms.end())
            algorithms.push_back(a);
    }
    if (algorithms.empty())
        throw UsageError{"--algos: need at least one algorithm"};
    return algorithms;
}

// "lo..hi" or a single count.
std::pair<int, int> parse_car_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int k = parse_int(text, "--cars");
        return {k, k};
    }
    const int lo = parse_int(text.substr(0, dots), "--cars");
    const int hi = parse_int(text.substr(dots + 2), "--cars");
    return {lo, hi};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    bgbench::write_file(path,
                        {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

void print_accuracy_table(const std::vector<bgbench::AccuracyReport>& reports) {
    std::printf("%-10s %8s %10s %10s %10s\n", "algorithm", "n", "pearson_r", "slope", "mae");
    for (const auto& r : reports)
        std::printf("%-10s %8d %10.3f %10.3f %10.3f\n", bgbench::to_string(r.algorithm),
                    r.n_matched, r.pearson_r, r.fit_slope, r.mae);
}

std::string accuracy_reports_json(const std::vector<bgbench::AccuracyReport>& reports) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : reports)
        doc.push_back({{"algorithm", bgbench::to_string(r.algorithm)},
                       {"n_matched", r.n_matched},
                       {"n_skipped", r.n_skipped},
                       {"pearson_r", r.pearson_r},
                       {"fit_slope", r.fit_slope},
                       {"fit_intercept", r.fit_intercept},
                       {"mae", r.mae}});
    return doc.dump(2) + "\n";
}

struct PipelineFlags {
    std::string algo = "mog";
    std::string params_path;
    double threshold = 25.0;
    std::size_t min_area = 50;
    int se_size = 3;
    double lambda = 4.0;
    std::string morph = "open";
};

void add_pipeline_flags(CLI::App* sub, PipelineFlags& flags, bool single_algo) {
    if (single_algo)
        sub->add_option("--algo", flags.algo, "Background model")
            ->check(CLI::IsMember({"framediff", "staticbg", "mog"}));
    sub->add_option("--params", flags.params_path, "MOG parameter JSON file");
    sub->add_option("--threshold", flags.threshold,
                    "Absolute-difference threshold (framediff/staticbg)");
    sub->add_option("--min-area", flags.min_area, "Minimum blob area in pixels");
    sub->add_option("--se-size", flags.se_size, "Structuring element size (odd)");
    sub->add_option("--lambda", flags.lambda, "Perspective weight of the top row");
    sub->add_option("--morph", flags.morph, "Morphological cleanup")
        ->check(CLI::IsMember({"open", "none"}));
}

bgbench::PipelineConfig pipeline_config(const PipelineFlags& flags) {
    bgbench::PipelineConfig config;
    config.morph_open = flags.morph == "open";
    config.se_size = flags.se_size;
    config.min_area = flags.min_area;
    config.lambda = flags.lambda;
    return config;
}

int cmd_run(const std::string& manifest_path, const PipelineFlags& flags,
            const std::string& reference_path, const std::string& out_path) {
    const auto manifest = bgbench::load_manifest(manifest_path);

    bgbench::ModelOptions options;
    options.algorithm = bgbench::algorithm_from_string(flags.algo);
    options.threshold = flags.threshold;
    if (!flags.params_path.empty())
        options.mog = bgbench::load_mog_params(flags.params_path);
    if (!reference_path.empty())
        options.reference = bgbench::load_pnm_file(reference_path);
    auto model = bgbench::make_model(options);

    const auto config = pipeline_config(flags);
    const auto weights = bgbench::build_weights(manifest.height, flags.lambda);

    std::vector<bgbench::DensityRecord> records;
    records.reserve(manifest.frames.size());
    for (std::size_t i = 0; i < manifest.frames.size(); ++i) {
        const bgbench::Frame frame = bgbench::load_frame(manifest, i);
        const auto result = bgbench::process_frame(*model, frame, config, weights);
        records.push_back(bgbench::DensityRecord{frame.id, options.algorithm, result.density,
                                                 result.elapsed_us});
    }

    const std::string csv = bgbench::density_csv(records);
    if (out_path.empty())
        std::fputs(csv.c_str(), stdout);
    else
        write_text(out_path, csv);
    return 0;
}

int cmd_compare(const std::vector<std::string>& csv_paths, const std::string& truth_path,
                const std::string& out_path) {
    const bgbench::GroundTruth truth = bgbench::load_ground_truth(truth_path);
    std::vector<bgbench::AccuracyReport> reports;
    for (const auto& path : csv_paths)
        reports.push_back(bgbench::evaluate(bgbench::load_density_csv(path), truth));

    print_accuracy_table(reports);
    if (!out_path.empty())
        write_text(out_path, accuracy_reports_json(reports));
    return 0;
}

int cmd_bench(const std::vector<std::string>& manifest_paths, const PipelineFlags& flags,
              const std::string& workers_text, int repeats, const std::string& algos_text,
              const std::string& truth_path, const std::string& out_path,
              std::string tsv_path) {
    bgbench::BenchConfig config;
    config.algorithms = parse_algo_list(algos_text);
    config.repeats = repeats;
    config.threshold = flags.threshold;
    if (!flags.params_path.empty())
        config.mog = bgbench::load_mog_params(flags.params_path);
    config.pipeline = pipeline_config(flags);

    std::string workers = workers_text;
    if (workers.empty()) {
        const char* env = std::getenv("BGBENCH_THREADS");
        workers = env && *env ? env : "1";
    }
    config.worker_counts = parse_worker_list(workers);

    std::optional<bgbench::GroundTruth> truth;
    if (!truth_path.empty())
        truth = bgbench::load_ground_truth(truth_path);

    std::vector<std::filesystem::path> manifests(manifest_paths.begin(), manifest_paths.end());
    const bgbench::BenchReport report =
        bgbench::run_bench(config, manifests, truth ? &*truth : nullptr);

    if (tsv_path.empty())
        tsv_path = std::filesystem::path(out_path).replace_extension(".tsv").string();
    bgbench::emit_report(report, out_path, tsv_path, truth ? &*truth : nullptr);

    std::printf("%-10s %12s %12s %12s %10s\n", "algorithm", "mean_us", "median_us", "p95_us",
                "fps_max");
    for (const auto& bench : report.algorithms) {
        double fps_max = 0.0;
        for (const auto& tp : bench.throughput)
            fps_max = std::max(fps_max, tp.fps);
        std::printf("%-10s %12.1f %12.1f %12.1f %10.1f\n", bgbench::to_string(bench.algorithm),
                    bench.timing.mean_us, bench.timing.median_us, bench.timing.p95_us, fps_max);
    }
    if (truth) {
        std::vector<bgbench::AccuracyReport> reports;
        for (const auto& bench : report.algorithms)
            if (bench.accuracy)
                reports.push_back(*bench.accuracy);
        std::printf("\n");
        print_accuracy_table(reports);
    }
    std::fprintf(stderr, "report written to %s (TSV: %s)\n", out_path.c_str(),
                 tsv_path.c_str());
    return 0;
}

int cmd_synth(const bgbench::SynthConfig& config, const std::string& outdir) {
    const bgbench::SynthResult result = bgbench::generate_sequence(config, outdir);
    std::printf("%s\n", result.manifest_path.string().c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Background-subtraction benchmarking toolkit"};
    app.require_subcommand(1);

    // run
    std::string run_manifest;
    PipelineFlags run_flags;
    std::string run_reference;
    std::string run_out;
    CLI::App* run = app.add_subcommand(
        "run", "Run one algorithm over a sequence and emit a density CSV");
    run->add_option("manifest", run_manifest, "Sequence manifest JSON")->required();
    add_pipeline_flags(run, run_flags, true);
    run->add_option("--reference", run_reference,
                    "Reference image for staticbg (default: first frame)");
    run->add_option("--out", run_out, "Output CSV path (default: stdout)");

    // compare
    std::vector<std::string> compare_csvs;
    std::string compare_truth;
    std::string compare_out;
    CLI::App* compare =
        app.add_subcommand("compare", "Score density CSVs against ground-truth counts");
    compare->add_option("csv", compare_csvs, "Density CSV files, one per algorithm")
        ->required()
        ->expected(-1);
    compare->add_option("--ground-truth", compare_truth, "Ground-truth count CSV")->required();
    compare->add_option("--out", compare_out, "Write accuracy reports as JSON");

    // bench
    std::vector<std::string> bench_manifests;
    PipelineFlags bench_flags;
    std::string bench_workers;
    int bench_repeats = 1;
    std::string bench_algos = "framediff,staticbg,mog";
    std::string bench_truth;
    std::string bench_out = "bench_report.json";
    std::string bench_tsv;
    CLI::App* bench = app.add_subcommand(
        "bench", "Time algorithms over sequences and sweep worker counts");
    bench->add_option("manifest", bench_manifests, "Sequence manifest JSON files")
        ->required()
        ->expected(-1);
    add_pipeline_flags(bench, bench_flags, false);
    bench->add_option("--workers", bench_workers,
                      "Comma-separated worker counts (default: $BGBENCH_THREADS or 1)");
    bench->add_option("--repeats", bench_repeats, "Timing passes; per-frame best is kept");
    bench->add_option("--algos", bench_algos, "Comma-separated algorithms to benchmark");
    bench->add_option("--ground-truth", bench_truth, "Ground-truth count CSV");
    bench->add_option("--out", bench_out, "Report JSON path");
    bench->add_option("--tsv", bench_tsv, "Plot TSV path (default: <out>.tsv)");

    // synth
    bgbench::SynthConfig synth_config;
    std::string synth_outdir;
    std::string synth_cars = "0..5";
    CLI::App* synth =
        app.add_subcommand("synth", "Generate a seeded synthetic traffic sequence");
    synth->add_option("--outdir", synth_outdir, "Output directory")->required();
    synth->add_option("--frames", synth_config.frames, "Frame count");
    synth->add_option("--cars", synth_cars, "Car count range, lo..hi");
    synth->add_option("--noise", synth_config.noise_sigma, "Gaussian pixel noise sigma");
    synth->add_option("--speed", synth_config.speed, "Car drift in pixels per frame");
    synth->add_option("--seed", synth_config.seed, "RNG seed");
    synth->add_option("--width", synth_config.width, "Frame width");
    synth->add_option("--height", synth_config.height, "Frame height");
    synth->add_option("--camera-id", synth_config.camera_id, "Manifest camera id");
    synth->add_option("--interval", synth_config.interval_seconds,
                      "Manifest seconds between frames");
    synth->add_option("--hold", synth_config.hold, "Frames between car-count redraws");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(run))
            return cmd_run(run_manifest, run_flags, run_reference, run_out);
        if (app.got_subcommand(compare))
            return cmd_compare(compare_csvs, compare_truth, compare_out);
        if (app.got_subcommand(bench))
            return cmd_bench(bench_manifests, bench_flags, bench_workers, bench_repeats,
                             bench_algos, bench_truth, bench_out, bench_tsv);
        if (app.got_subcommand(synth)) {
            std::tie(synth_config.cars_min, synth_config.cars_max) =
                parse_car_range(synth_cars);
            return cmd_synth(synth_config, synth_outdir);
        }
    } catch (const UsageError& e) {
        std::cerr << "bgbench: " << e.message << "\n";
        return 2;
    } catch (const bgbench::Error& e) {
        std::cerr << "bgbench: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "bgbench: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
