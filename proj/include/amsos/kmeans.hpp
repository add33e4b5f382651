#ifndef AMSOS_KMEANS_HPP
#define AMSOS_KMEANS_HPP

#include <vector>

#include "amsos/dataset.hpp"
#include "amsos/seeding.hpp"

namespace amsos {

/// What to do when an assignment pass leaves a cluster empty: hand it the
/// point farthest from its stale centroid, or drop it and decrement k.
enum class EmptyClusterPolicy { respawn_farthest, drop };

struct KmeansConfig {
    int max_iterations = 300;
    double tolerance = 1e-6;  // absolute threshold on the max centroid coordinate shift
    EmptyClusterPolicy empty_cluster_policy = EmptyClusterPolicy::respawn_farthest;
};

struct KmeansResult {
    Partition partition;
    int iterations_used = 0;
    bool converged = false;
    double sse = 0.0;
    std::vector<double> sse_history;  // one entry per iteration, non-increasing
};

/// Lloyd iteration: nearest-centroid assignment (ties to the lowest cluster
/// id) alternating with centroid recomputation, until the largest centroid
/// coordinate shift is <= tolerance or the iteration budget runs out.
/// Deterministic for fixed inputs.
KmeansResult lloyd(const Dataset& data, const Matrix& initial_centroids,
                   const KmeansConfig& config = {});

KmeansResult lloyd(const Dataset& data, const SeedSet& seeds, const KmeansConfig& config = {});

}  // namespace amsos

#endif  // AMSOS_KMEANS_HPP
