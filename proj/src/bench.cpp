#include "bgbench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "bgbench/pnm.hpp"

namespace bgbench {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_us(Clock::time_point start, Clock::time_point stop) {
    return std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();
}

// Workers pull whole sequences off a shared counter; per-sequence results go
// into preallocated slots, so the outcome does not depend on scheduling.
void parallel_over_sequences(int workers, std::size_t jobs,
                             const std::function<void(std::size_t)>& body) {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            threads.emplace_back(worker);
        for (auto& t : threads)
            t.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace

void BenchConfig::validate() const {
    if (algorithms.empty())
        throw Error(ErrorCode::InvalidParams, "benchmark needs at least one algorithm");
    if (repeats < 1)
        throw Error(ErrorCode::InvalidParams, "repeats must be >= 1");
    if (worker_counts.empty() || !std::is_sorted(worker_counts.begin(), worker_counts.end()) ||
        worker_counts.front() < 1)
        throw Error(ErrorCode::InvalidParams,
                    "worker counts must be a non-empty ascending list of positives");
    mog.validate();
}

LoadResult load_sequences(const std::vector<std::filesystem::path>& manifest_paths) {
    LoadResult result;
    for (const auto& path : manifest_paths) {
        LoadedSequence seq;
        seq.manifest = load_manifest(path);
        const auto start = Clock::now();
        for (std::size_t i = 0; i < seq.manifest.frames.size(); ++i)
            seq.frames.push_back(load_frame(seq.manifest, i));
        result.decode_us_total += elapsed_us(start, Clock::now());
        result.frame_count += static_cast<std::int64_t>(seq.frames.size());
        result.sequences.push_back(std::move(seq));
    }
    return result;
}

std::vector<DensityRecord> run_sequence(const LoadedSequence& sequence, Algorithm algorithm,
                                        const BenchConfig& config) {
    ModelOptions options;
    options.algorithm = algorithm;
    options.threshold = config.threshold;
    options.mog = config.mog;
    auto model = make_model(options);
    const PerspectiveWeights weights =
        build_weights(sequence.manifest.height, config.pipeline.lambda);

    std::vector<DensityRecord> records;
    records.reserve(sequence.frames.size());
    for (const auto& frame : sequence.frames) {
        const FrameResult r = process_frame(*model, frame, config.pipeline, weights);
        records.push_back(DensityRecord{frame.id, algorithm, r.density, r.elapsed_us});
    }
    return records;
}

std::vector<DensityRecord> time_algorithm(const std::vector<LoadedSequence>& sequences,
                                          Algorithm algorithm, const BenchConfig& config) {
    config.validate();
    std::vector<DensityRecord> best;
    for (int rep = 0; rep < config.repeats; ++rep) {
        std::vector<DensityRecord> pass;
        for (const auto& seq : sequences) {
            auto records = run_sequence(seq, algorithm, config);
            pass.insert(pass.end(), records.begin(), records.end());
        }
        if (rep == 0) {
            best = std::move(pass);
        } else {
            for (std::size_t i = 0; i < best.size(); ++i)
                best[i].elapsed_us = std::min(best[i].elapsed_us, pass[i].elapsed_us);
        }
    }
    return best;
}

std::vector<SweepPoint> scalability_sweep(const std::vector<LoadedSequence>& sequences,
                                          Algorithm algorithm, const BenchConfig& config) {
    config.validate();
    const int max_workers = *std::max_element(config.worker_counts.begin(),
                                              config.worker_counts.end());
    if (static_cast<std::size_t>(max_workers) > sequences.size())
        throw Error(ErrorCode::InsufficientSequences,
                    std::to_string(sequences.size()) + " sequence(s) for " +
                        std::to_string(max_workers) + " workers; parallelism is per sequence");

    std::int64_t total_frames = 0;
    for (const auto& seq : sequences)
        total_frames += static_cast<std::int64_t>(seq.frames.size());

    std::vector<SweepPoint> points;
    for (int workers : config.worker_counts) {
        std::vector<std::vector<DensityRecord>> slots(sequences.size());
        const auto start = Clock::now();
        parallel_over_sequences(workers, sequences.size(), [&](std::size_t i) {
            slots[i] = run_sequence(sequences[i], algorithm, config);
        });
        const std::int64_t us = std::max<std::int64_t>(1, elapsed_us(start, Clock::now()));

        std::vector<DensityRecord> all;
        for (auto& slot : slots)
            all.insert(all.end(), slot.begin(), slot.end());

        SweepPoint p;
        p.workers = workers;
        p.fps = static_cast<double>(total_frames) * 1e6 / static_cast<double>(us);
        p.density_csv = density_csv_untimed(all);
        points.push_back(std::move(p));
    }
    return points;
}

TimingStats timing_stats(const std::vector<DensityRecord>& records) {
    TimingStats stats;
    if (records.empty())
        return stats;
    std::vector<std::int64_t> us;
    us.reserve(records.size());
    double sum = 0.0;
    for (const auto& r : records) {
        us.push_back(r.elapsed_us);
        sum += static_cast<double>(r.elapsed_us);
    }
    std::sort(us.begin(), us.end());
    const std::size_t n = us.size();
    auto nearest_rank = [&](double q) {
        const std::size_t rank =
            static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
        return static_cast<double>(us[std::max<std::size_t>(rank, 1) - 1]);
    };
    stats.mean_us = sum / static_cast<double>(n);
    stats.median_us = nearest_rank(0.5);
    stats.p95_us = nearest_rank(0.95);
    return stats;
}

BenchReport run_bench(const BenchConfig& config,
                      const std::vector<std::filesystem::path>& manifest_paths,
                      const GroundTruth* truth) {
    config.validate();
    LoadResult loaded = load_sequences(manifest_paths);

    BenchReport report;
    report.environment.frame_width = loaded.sequences.front().manifest.width;
    report.environment.frame_height = loaded.sequences.front().manifest.height;
    report.environment.frame_count = loaded.frame_count;
    report.environment.sequence_count = static_cast<std::int64_t>(loaded.sequences.size());
    report.environment.decode_us_total = loaded.decode_us_total;

    for (Algorithm algorithm : config.algorithms) {
        AlgorithmBench bench;
        bench.algorithm = algorithm;
        bench.records = time_algorithm(loaded.sequences, algorithm, config);
        bench.timing = timing_stats(bench.records);
        for (const auto& point : scalability_sweep(loaded.sequences, algorithm, config))
            bench.throughput.push_back(ThroughputPoint{point.workers, point.fps});
        if (truth)
            bench.accuracy = evaluate(bench.records, *truth);
        report.algorithms.push_back(std::move(bench));
    }
    return report;
}

namespace {

nlohmann::ordered_json accuracy_to_json(const AccuracyReport& a) {
    nlohmann::ordered_json doc;
    doc["algorithm"] = to_string(a.algorithm);
    doc["n_matched"] = a.n_matched;
    doc["n_skipped"] = a.n_skipped;
    doc["pearson_r"] = a.pearson_r;
    doc["fit_slope"] = a.fit_slope;
    doc["fit_intercept"] = a.fit_intercept;
    doc["mae"] = a.mae;
    return doc;
}

AccuracyReport accuracy_from_json(const nlohmann::json& doc) {
    AccuracyReport a;
    a.algorithm = algorithm_from_string(doc.at("algorithm").get<std::string>());
    a.n_matched = doc.at("n_matched").get<int>();
    a.n_skipped = doc.at("n_skipped").get<int>();
    a.pearson_r = doc.at("pearson_r").get<double>();
    a.fit_slope = doc.at("fit_slope").get<double>();
    a.fit_intercept = doc.at("fit_intercept").get<double>();
    a.mae = doc.at("mae").get<double>();
    return a;
}

} // namespace

std::string report_to_json(const BenchReport& report) {
    nlohmann::ordered_json doc;
    doc["environment"] = {{"frame_width", report.environment.frame_width},
                          {"frame_height", report.environment.frame_height},
                          {"frame_count", report.environment.frame_count},
                          {"sequence_count", report.environment.sequence_count},
                          {"decode_us_total", report.environment.decode_us_total}};
    doc["algorithms"] = nlohmann::ordered_json::array();
    for (const auto& bench : report.algorithms) {
        nlohmann::ordered_json entry;
        entry["algorithm"] = to_string(bench.algorithm);
        entry["timing_us"] = {{"mean", bench.timing.mean_us},
                              {"median", bench.timing.median_us},
                              {"p95", bench.timing.p95_us}};
        entry["throughput"] = nlohmann::ordered_json::array();
        for (const auto& tp : bench.throughput)
            entry["throughput"].push_back({{"workers", tp.workers}, {"fps", tp.fps}});
        entry["accuracy"] = bench.accuracy ? accuracy_to_json(*bench.accuracy)
                                           : nlohmann::ordered_json(nullptr);
        entry["records"] = nlohmann::ordered_json::array();
        for (const auto& r : bench.records)
            entry["records"].push_back({{"image", r.frame_id},
                                        {"density", r.density},
                                        {"elapsed_us", r.elapsed_us}});
        doc["algorithms"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

BenchReport report_from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw Error(ErrorCode::ParseError, "report is not a JSON object");
    try {
        BenchReport report;
        const auto& env = doc.at("environment");
        report.environment.frame_width = env.at("frame_width").get<int>();
        report.environment.frame_height = env.at("frame_height").get<int>();
        report.environment.frame_count = env.at("frame_count").get<std::int64_t>();
        report.environment.sequence_count = env.at("sequence_count").get<std::int64_t>();
        report.environment.decode_us_total = env.at("decode_us_total").get<std::int64_t>();
        for (const auto& entry : doc.at("algorithms")) {
            AlgorithmBench bench;
            bench.algorithm = algorithm_from_string(entry.at("algorithm").get<std::string>());
            const auto& timing = entry.at("timing_us");
            bench.timing.mean_us = timing.at("mean").get<double>();
            bench.timing.median_us = timing.at("median").get<double>();
            bench.timing.p95_us = timing.at("p95").get<double>();
            for (const auto& tp : entry.at("throughput"))
                bench.throughput.push_back(ThroughputPoint{tp.at("workers").get<int>(),
                                                           tp.at("fps").get<double>()});
            if (!entry.at("accuracy").is_null())
                bench.accuracy = accuracy_from_json(entry.at("accuracy"));
            for (const auto& r : entry.at("records"))
                bench.records.push_back(DensityRecord{r.at("image").get<std::string>(),
                                                      bench.algorithm,
                                                      r.at("density").get<double>(),
                                                      r.at("elapsed_us").get<std::int64_t>()});
            report.algorithms.push_back(std::move(bench));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad report JSON: ") + e.what());
    }
}

std::string report_tsv(const BenchReport& report, const GroundTruth* truth) {
    std::string out = "algorithm\tmetric\tx\ty\n";
    char buf[128];
    for (const auto& bench : report.algorithms) {
        const char* name = to_string(bench.algorithm);
        for (std::size_t i = 0; i < bench.records.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s\tdensity\t%zu\t%.9f\n", name, i,
                          bench.records[i].density);
            out += buf;
        }
        for (std::size_t i = 0; i < bench.records.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s\tframe_time_us\t%zu\t%lld\n", name, i,
                          static_cast<long long>(bench.records[i].elapsed_us));
            out += buf;
        }
        for (const auto& tp : bench.throughput) {
            std::snprintf(buf, sizeof(buf), "%s\tfps\t%d\t%.3f\n", name, tp.workers, tp.fps);
            out += buf;
        }
        if (truth) {
            for (const auto& r : bench.records) {
                auto it = truth->entries.find(r.frame_id);
                if (it == truth->entries.end())
                    continue;
                std::snprintf(buf, sizeof(buf), "%s\tdensity_vs_count\t%d\t%.9f\n", name,
                              it->second, r.density);
                out += buf;
            }
        }
    }
    return out;
}

void emit_report(const BenchReport& report, const std::filesystem::path& json_path,
                 const std::filesystem::path& tsv_path, const GroundTruth* truth) {
    const std::string json_text = report_to_json(report);
    write_file(json_path,
               {reinterpret_cast<const std::uint8_t*>(json_text.data()), json_text.size()});
    const std::string tsv_text = report_tsv(report, truth);
    write_file(tsv_path,
               {reinterpret_cast<const std::uint8_t*>(tsv_text.data()), tsv_text.size()});
}

} // namespace bgbench
