#ifndef AMSOS_AMSOS_HPP
#define AMSOS_AMSOS_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "amsos/dataset.hpp"
#include "amsos/kmeans.hpp"

namespace amsos {

/// Configuration of the automatic-merging driver. The merge gate compares
/// the Rand index of candidate partitions against the dataset's reference
/// labels, so labeled data is required.
struct AmsosConfig {
    std::optional<int> kmax_override;  // default: floor(sqrt(m)), clamped to >= 2
    KmeansConfig kmeans;
};

/// Initial over-clustering count: floor(sqrt(m)) clamped below at 2, from
/// the 2..sqrt(m) plausible-cluster-count range.
int kmax_for(std::size_t m);

/// Fraction of all points that belong to a cluster of the given size.
double cluster_probability(std::size_t cluster_size, std::size_t m);

/// Average linkage: mean distance over all cross pairs of the two point sets.
double average_linkage(const Matrix& a, const Matrix& b);
double average_linkage(const Matrix& points, std::span<const std::size_t> a,
                       std::span<const std::size_t> b);

/// The cluster with the least average-linkage distance to `victim`
/// (ties to the lowest cluster id).
int closest_cluster(const Dataset& data, const Partition& partition, int victim);

/// Reassigns every victim point to `target`, recomputes the target centroid
/// as the mean of the union, and compacts cluster ids to [0, k-1).
Partition merge_clusters(const Dataset& data, const Partition& partition, int victim, int target);

struct MergeAttempt {
    int victim_cluster;
    int target_cluster;
    double ri_before;
    double ri_after;
    bool accepted;

    friend bool operator==(const MergeAttempt&, const MergeAttempt&) = default;
};

/// One merge pass: every cluster alive at pass start is attempted once,
/// least probable first.
struct AmsosPass {
    int k_before;
    std::vector<MergeAttempt> merges_attempted;
    int k_after;

    friend bool operator==(const AmsosPass&, const AmsosPass&) = default;
};

struct AmsosTrace {
    std::vector<AmsosPass> iterations;

    friend bool operator==(const AmsosTrace&, const AmsosTrace&) = default;
};

struct AmsosResult {
    Partition partition;
    int k_final;
    double rand_index;
    AmsosTrace trace;

    friend bool operator==(const AmsosResult&, const AmsosResult&) = default;
};

/// The full driver. Seeds with SPSS at k = kmax, runs Lloyd, then sweeps the
/// clusters in increasing probability order, merging each into its closest
/// cluster whenever that strictly improves the Rand index against the
/// reference labels. A sweep that changed k re-enters the clustering step
/// with the merged centroids as seeds (Lloyd refinement of the merged
/// structure); a sweep that changed nothing ends the run. Merges are never
/// attempted at k = 2. Fully deterministic.
AmsosResult amsos(const Dataset& data, const AmsosConfig& config = {});

/// One JSON object per pass, newline separated.
void write_trace_jsonl(const AmsosTrace& trace, std::ostream& out);

}  // namespace amsos

#endif  // AMSOS_AMSOS_HPP
