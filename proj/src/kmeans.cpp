#include "amsos/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "amsos/error.hpp"

namespace amsos {

namespace {

void validate_config(const KmeansConfig& config) {
    if (config.max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
    if (!(config.tolerance >= 0.0)) throw ValidationError("tolerance must be >= 0");
}

double sqdist(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

// Reassigns the point farthest from the empty cluster's stale centroid,
// skipping points whose cluster would go empty in turn.
void respawn_empty(const Matrix& points, const Matrix& centroids, std::vector<int>& assignments,
                   std::vector<std::size_t>& counts, std::size_t empty_cluster) {
    const auto stale = centroids.row(empty_cluster);
    std::size_t best = points.rows();
    double best_sq = -1.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        if (counts[static_cast<std::size_t>(assignments[i])] <= 1) continue;
        const double d = sqdist(points.row(i), stale);
        if (d > best_sq) {
            best_sq = d;
            best = i;
        }
    }
    // k <= m guarantees some cluster still holds two points.
    if (best == points.rows()) throw EmptyClusterError("no point available to respawn a cluster");
    --counts[static_cast<std::size_t>(assignments[best])];
    assignments[best] = static_cast<int>(empty_cluster);
    ++counts[empty_cluster];
}

}  // namespace

KmeansResult lloyd(const Dataset& data, const Matrix& initial_centroids,
                   const KmeansConfig& config) {
    validate_config(config);
    const std::size_t m = data.size();
    const std::size_t n = data.dimension();
    std::size_t k = initial_centroids.rows();
    if (k < 1) throw ValidationError("need at least one initial centroid");
    if (k > m) throw ValidationError("k=" + std::to_string(k) + " exceeds point count " +
                                     std::to_string(m));
    if (initial_centroids.cols() != n) throw DimensionError("centroid dimension mismatch");

    const Matrix& points = data.points();
    Matrix centroids = initial_centroids;
    std::vector<int> assignments(m, 0);
    std::vector<double> sse_history;
    int iterations = 0;
    bool converged = false;

    while (iterations < config.max_iterations) {
        ++iterations;

        // Assignment: nearest centroid, ties to the lowest cluster id.
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < m; ++i) {
            const auto row = points.row(i);
            int best = 0;
            double best_sq = sqdist(row, centroids.row(0));
            for (std::size_t j = 1; j < k; ++j) {
                const double d = sqdist(row, centroids.row(j));
                if (d < best_sq) {
                    best_sq = d;
                    best = static_cast<int>(j);
                }
            }
            assignments[i] = best;
            ++counts[static_cast<std::size_t>(best)];
        }

        bool structure_changed = false;
        if (config.empty_cluster_policy == EmptyClusterPolicy::respawn_farthest) {
            for (std::size_t j = 0; j < k; ++j) {
                if (counts[j] == 0) {
                    respawn_empty(points, centroids, assignments, counts, j);
                    structure_changed = true;
                }
            }
        } else {  // drop: compact away empty clusters
            std::vector<int> remap(k, -1);
            std::size_t live = 0;
            for (std::size_t j = 0; j < k; ++j) {
                if (counts[j] > 0) remap[j] = static_cast<int>(live++);
            }
            if (live < k) {
                structure_changed = true;
                Matrix kept(live, n);
                for (std::size_t j = 0; j < k; ++j) {
                    if (remap[j] >= 0) {
                        auto src = centroids.row(j);
                        std::copy(src.begin(), src.end(),
                                  kept.row(static_cast<std::size_t>(remap[j])).begin());
                    }
                }
                centroids = std::move(kept);
                for (auto& a : assignments) a = remap[static_cast<std::size_t>(a)];
                k = live;
            }
        }

        // Update step.
        Matrix updated = centroids_from_assignments(points, assignments, static_cast<int>(k));
        double shift = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t c = 0; c < n; ++c) {
                shift = std::max(shift, std::abs(updated(j, c) - centroids(j, c)));
            }
        }
        centroids = std::move(updated);
        sse_history.push_back(sse_of(points, assignments, centroids));

        if (!structure_changed && shift <= config.tolerance) {
            converged = true;
            break;
        }
    }

    const double sse = sse_history.back();
    return KmeansResult{Partition(std::move(assignments), static_cast<int>(k), std::move(centroids)),
                        iterations, converged, sse, std::move(sse_history)};
}

KmeansResult lloyd(const Dataset& data, const SeedSet& seeds, const KmeansConfig& config) {
    return lloyd(data, seeds.centroids, config);
}

}  // namespace amsos
