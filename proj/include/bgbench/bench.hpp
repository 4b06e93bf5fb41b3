#pragma once

#include <optional>

#include "bgbench/eval.hpp"
#include "bgbench/manifest.hpp"
#include "bgbench/pipeline.hpp"

namespace bgbench {

struct BenchConfig {
    std::vector<Algorithm> algorithms = {Algorithm::framediff, Algorithm::staticbg,
                                         Algorithm::mog};
    int repeats = 1;
    std::vector<int> worker_counts = {1};
    double threshold = 25.0; // framediff / staticbg
    MogParams mog;
    PipelineConfig pipeline;

    void validate() const;
};

struct LoadedSequence {
    SequenceManifest manifest;
    std::vector<Frame> frames;
};

struct LoadResult {
    std::vector<LoadedSequence> sequences;
    std::int64_t decode_us_total = 0;
    std::int64_t frame_count = 0;
};

LoadResult load_sequences(const std::vector<std::filesystem::path>& manifest_paths);

// One sequential pass of one algorithm over one sequence, fresh model state.
std::vector<DensityRecord> run_sequence(const LoadedSequence& sequence, Algorithm algorithm,
                                        const BenchConfig& config);

// Per-frame pipeline timings across all sequences, sequential, best of
// `repeats` full passes per frame. Densities come from the first pass.
std::vector<DensityRecord> time_algorithm(const std::vector<LoadedSequence>& sequences,
                                          Algorithm algorithm, const BenchConfig& config);

struct SweepPoint {
    int workers = 1;
    double fps = 0.0;
    std::string density_csv; // untimed, canonical sequence-then-frame order

    friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

// Throughput at each worker count. Workers own whole sequences, so the
// density output is identical for every worker count.
std::vector<SweepPoint> scalability_sweep(const std::vector<LoadedSequence>& sequences,
                                          Algorithm algorithm, const BenchConfig& config);

struct TimingStats {
    double mean_us = 0.0;
    double median_us = 0.0;
    double p95_us = 0.0;

    friend bool operator==(const TimingStats&, const TimingStats&) = default;
};

TimingStats timing_stats(const std::vector<DensityRecord>& records);

struct ThroughputPoint {
    int workers = 1;
    double fps = 0.0;

    friend bool operator==(const ThroughputPoint&, const ThroughputPoint&) = default;
};

struct AlgorithmBench {
    Algorithm algorithm = Algorithm::mog;
    TimingStats timing;
    std::vector<ThroughputPoint> throughput;
    std::vector<DensityRecord> records;
    std::optional<AccuracyReport> accuracy;

    friend bool operator==(const AlgorithmBench&, const AlgorithmBench&) = default;
};

struct BenchEnvironment {
    int frame_width = 0;
    int frame_height = 0;
    std::int64_t frame_count = 0;
    std::int64_t sequence_count = 0;
    std::int64_t decode_us_total = 0;

    friend bool operator==(const BenchEnvironment&, const BenchEnvironment&) = default;
};

struct BenchReport {
    BenchEnvironment environment;
    std::vector<AlgorithmBench> algorithms;

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

BenchReport run_bench(const BenchConfig& config,
                      const std::vector<std::filesystem::path>& manifest_paths,
                      const GroundTruth* truth = nullptr);

std::string report_to_json(const BenchReport& report);
BenchReport report_from_json(const std::string& text);

// Plot-ready TSV, columns: algorithm, metric, x, y. Metrics: density and
// frame_time_us (x = record index), fps (x = workers) and, when ground truth
// is given, density_vs_count (x = true count).
std::string report_tsv(const BenchReport& report, const GroundTruth* truth = nullptr);

void emit_report(const BenchReport& report, const std::filesystem::path& json_path,
                 const std::filesystem::path& tsv_path, const GroundTruth* truth = nullptr);

} // namespace bgbench
