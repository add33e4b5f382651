#ifndef AMSOS_BENCH_HPP
#define AMSOS_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amsos/amsos.hpp"
#include "amsos/metrics.hpp"
#include "amsos/seeding.hpp"
#include "amsos/synthetic.hpp"

namespace amsos {

enum class Algorithm { amsos, kmeans };
enum class OutputFormat { json, csv, markdown };

/// One benchmark invocation: which data, which algorithm, how many repeats.
/// `k` is required for the fixed-k k-means baselines and forbidden for the
/// automatic algorithm.
struct RunSpec {
    std::string dataset;  // builtin mixture id or CSV path
    Algorithm algorithm = Algorithm::amsos;
    SeedMethod init = SeedMethod::spss;
    std::optional<int> k;
    std::uint64_t seed = 1;
    int repeats = 1;
    OutputFormat output = OutputFormat::markdown;
    std::optional<std::string> trace_path;
    LabelColumn label_column = LabelColumn::last();
    bool zscore = false;
};

struct RunRow {
    int run_index = 0;
    std::uint64_t run_seed = 0;
    int input_k = 0;
    MetricReport report;

    friend bool operator==(const RunRow&, const RunRow&) = default;
};

struct MetricVals {
    double ari = 0.0, ri = 0.0, hi = 0.0, sil = 0.0, db = 0.0, cs = 0.0, err = 0.0;

    friend bool operator==(const MetricVals&, const MetricVals&) = default;
};

/// Mean plus directional extrema over the repeated runs: "best" is the
/// highest ARI/RI/HI/SIL and the lowest DB/CS/err, "worst" the opposite.
struct Aggregate {
    MetricVals mean, best, worst;
    double mean_output_k = 0.0;

    friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

/// One row of the centroid-recovery table: an obtained centroid matched to a
/// reference mean, or either side alone when counts differ.
struct CentroidEntry {
    std::optional<Vec> obtained;
    std::optional<Vec> reference;
    std::optional<double> max_abs_deviation;

    bool paired() const noexcept { return obtained && reference; }
    friend bool operator==(const CentroidEntry&, const CentroidEntry&) = default;
};

struct CentroidTable {
    std::vector<CentroidEntry> rows;

    friend bool operator==(const CentroidTable&, const CentroidTable&) = default;
};

/// Greedy globally-closest matching: repeatedly pair the unused obtained
/// centroid and reference mean at minimum distance (ties by row index), each
/// reference used once. Unmatched rows on either side are kept and flagged.
CentroidTable pair_centroids(const Matrix& obtained, const std::vector<Vec>& reference_means);

struct BenchReport {
    std::string dataset;
    Algorithm algorithm = Algorithm::amsos;
    SeedMethod init = SeedMethod::spss;
    std::uint64_t seed = 0;
    int repeats = 1;
    bool zscore = false;
    std::vector<RunRow> runs;
    Aggregate aggregate;
    std::optional<bool> amsos_rows_identical;  // set (and asserted) for automatic runs
    std::optional<CentroidTable> centroids;    // automatic runs on builtin mixtures

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Executes the spec. Run r of a stochastic baseline uses
/// derive_seed(spec.seed, r); the automatic algorithm is deterministic, so
/// its repeats must agree and the report records that they did. Builtin
/// datasets are generated from spec.seed. Output is byte-stable: the same
/// spec always serializes to identical bytes.
BenchReport run(const RunSpec& spec);

std::string to_json(const BenchReport& report);
BenchReport bench_from_json(const std::string& text);

std::string to_csv(const BenchReport& report);
BenchReport bench_from_csv(const std::string& text);

std::string to_markdown(const BenchReport& report);

/// Serializes in the spec's requested format.
std::string render(const BenchReport& report, OutputFormat format);

}  // namespace amsos

#endif  // AMSOS_BENCH_HPP
