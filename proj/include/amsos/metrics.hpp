#ifndef AMSOS_METRICS_HPP
#define AMSOS_METRICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amsos/dataset.hpp"

namespace amsos {

/// Point-pair agreement counts between two labelings of the same points:
/// a = together in both, b = together only in the first, c = together only
/// in the second, d = apart in both. a+b+c+d = m(m-1)/2.
struct PairCounts {
    std::uint64_t a = 0, b = 0, c = 0, d = 0;
    std::uint64_t total() const noexcept { return a + b + c + d; }
};

/// Co-occurrence counts between predicted clusters and reference classes.
/// Labels are compacted in order of first appearance, so arbitrary
/// non-negative ids are accepted.
class ContingencyTable {
public:
    static ContingencyTable from_labels(std::span<const int> pred, std::span<const int> truth);

    const std::vector<std::vector<std::int64_t>>& counts() const noexcept { return counts_; }
    std::size_t pred_clusters() const noexcept { return counts_.size(); }
    std::size_t true_classes() const noexcept { return counts_.empty() ? 0 : counts_[0].size(); }
    std::uint64_t m() const noexcept { return m_; }

    PairCounts pair_counts() const;

private:
    std::vector<std::vector<std::int64_t>> counts_;
    std::uint64_t m_ = 0;
};

/// Rand index: fraction of point pairs the two labelings agree on.
double rand_index(std::span<const int> pred, std::span<const int> truth);

/// Hubert-Arabie adjusted Rand index (chance-corrected under fixed marginals).
double adjusted_rand(std::span<const int> pred, std::span<const int> truth);

/// Normalized Hubert statistic: (agreements - disagreements) / pairs = 2*RI - 1.
double hubert_index(std::span<const int> pred, std::span<const int> truth);

/// Misclassification percentage under the best one-to-one matching of
/// clusters to classes (exact assignment on the zero-padded square table).
double error_rate(std::span<const int> pred, std::span<const int> truth);

/// Mean silhouette width; singleton clusters score 0.
double silhouette(const Dataset& data, const Partition& partition);

/// Davies-Bouldin: mean over clusters of the worst scatter-to-separation
/// ratio. Lower is better. Coincident centroids are rejected.
double davies_bouldin(const Dataset& data, const Partition& partition);

/// CS measure: mean intra-cluster max distance over summed nearest-centroid
/// separations. Lower is better. Coincident centroids are rejected.
double cs_measure(const Dataset& data, const Partition& partition);

/// All seven quantities of a benchmark row, sharing one contingency table
/// and one pairwise-distance pass.
struct MetricReport {
    double ari = 0.0;
    double ri = 0.0;
    double hi = 0.0;
    double silhouette = 0.0;
    double db = 0.0;
    double cs = 0.0;
    double error_rate_percent = 0.0;
    int k = 0;

    /// Flat JSON object, keys in the fixed column order.
    std::string to_json() const;
    static MetricReport from_json(const std::string& text);

    /// "ari,ri,hi,sil,db,cs,err" at full precision.
    std::string to_csv_row() const;

    friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

MetricReport full_report(const Dataset& data, const Partition& partition,
                         std::span<const int> truth);

}  // namespace amsos

#endif  // AMSOS_METRICS_HPP
