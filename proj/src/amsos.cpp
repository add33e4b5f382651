#include "amsos/amsos.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "amsos/error.hpp"
#include "amsos/metrics.hpp"
#include "amsos/seeding.hpp"

namespace amsos {

int kmax_for(std::size_t m) {
    if (m < 4) throw ValidationError("need at least 4 points, got " + std::to_string(m));
    std::size_t root = static_cast<std::size_t>(std::sqrt(static_cast<double>(m)));
    while (root * root > m) --root;          // guard against FP sqrt drift
    while ((root + 1) * (root + 1) <= m) ++root;
    return std::max<int>(2, static_cast<int>(root));
}

double cluster_probability(std::size_t cluster_size, std::size_t m) {
    if (cluster_size == 0) throw ValidationError("cluster probability of an empty cluster");
    if (cluster_size > m) throw ValidationError("cluster size exceeds dataset size");
    return static_cast<double>(cluster_size) / static_cast<double>(m);
}

double average_linkage(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0 || b.rows() == 0) throw EmptyClusterError("average linkage of an empty cluster");
    if (a.cols() != b.cols()) throw DimensionError("cluster dimensions differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            sum += euclidean_distance(a.row(i), b.row(j));
        }
    }
    return sum / (static_cast<double>(a.rows()) * static_cast<double>(b.rows()));
}

double average_linkage(const Matrix& points, std::span<const std::size_t> a,
                       std::span<const std::size_t> b) {
    if (a.empty() || b.empty()) throw EmptyClusterError("average linkage of an empty cluster");
    double sum = 0.0;
    for (std::size_t i : a) {
        const auto row = points.row(i);
        for (std::size_t j : b) {
            sum += euclidean_distance(row, points.row(j));
        }
    }
    return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

int closest_cluster(const Dataset& data, const Partition& partition, int victim) {
    if (partition.k() < 2) throw ValidationError("closest cluster requires k >= 2");
    if (victim < 0 || victim >= partition.k()) throw ValidationError("victim cluster out of range");
    const auto members = partition.members();
    int best = -1;
    double best_dist = 0.0;
    for (int j = 0; j < partition.k(); ++j) {
        if (j == victim) continue;
        const double d = average_linkage(data.points(), members[static_cast<std::size_t>(victim)],
                                         members[static_cast<std::size_t>(j)]);
        if (best < 0 || d < best_dist) {
            best = j;
            best_dist = d;
        }
    }
    return best;
}

Partition merge_clusters(const Dataset& data, const Partition& partition, int victim, int target) {
    const int k = partition.k();
    if (victim < 0 || victim >= k || target < 0 || target >= k || victim == target) {
        throw ValidationError("invalid merge of cluster " + std::to_string(victim) + " into " +
                              std::to_string(target));
    }

    // Victim points move to the target; ids above the victim shift down.
    auto relabel = [victim, target](int id) {
        if (id == victim) id = target;
        return id > victim ? id - 1 : id;
    };
    std::vector<int> assignments(partition.assignments().size());
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        assignments[i] = relabel(partition.assignments()[i]);
    }

    const int new_target = relabel(target);
    Matrix centroids(static_cast<std::size_t>(k - 1), partition.centroids().cols());
    for (int j = 0; j < k; ++j) {
        if (j == victim) continue;
        const auto src = partition.centroids().row(static_cast<std::size_t>(j));
        auto dst = centroids.row(static_cast<std::size_t>(relabel(j)));
        std::copy(src.begin(), src.end(), dst.begin());
    }
    std::vector<std::size_t> merged_members;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] == new_target) merged_members.push_back(i);
    }
    const Vec mean = centroid_of(data.points(), merged_members);
    std::copy(mean.begin(), mean.end(), centroids.row(static_cast<std::size_t>(new_target)).begin());

    return Partition(std::move(assignments), k - 1, std::move(centroids));
}

AmsosResult amsos(const Dataset& data, const AmsosConfig& config) {
    const std::vector<int>& truth = data.labels();  // fails fast when unlabeled
    const std::size_t m = data.size();

    int k = config.kmax_override ? *config.kmax_override : kmax_for(m);
    if (k < 2 || static_cast<std::size_t>(k) > m) {
        throw ValidationError("kmax " + std::to_string(k) + " out of range [2, " +
                              std::to_string(m) + "]");
    }

    AmsosTrace trace;
    std::optional<Partition> current;
    double ri = 0.0;

    for (;;) {
        // First entry seeds with SPSS at kmax; later entries re-run Lloyd
        // from the merged centroids, refining the structure the merge pass
        // produced instead of discarding it.
        const Matrix seeds = current ? current->centroids() : spss_seeds(data, k).centroids;
        KmeansResult km = lloyd(data, seeds, config.kmeans);
        current = std::move(km.partition);
        ri = rand_index(current->assignments(), truth);

        AmsosPass pass;
        pass.k_before = current->k();

        // Sweep the clusters alive at pass start, least probable first
        // (falling back to the lowest id). current_id tracks each one
        // through the compactions committed merges cause.
        const auto start_sizes = current->cluster_sizes();
        std::vector<int> order(start_sizes.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&start_sizes](int a, int b) {
            return start_sizes[static_cast<std::size_t>(a)] < start_sizes[static_cast<std::size_t>(b)];
        });
        std::vector<int> current_id(start_sizes.size());
        for (std::size_t i = 0; i < current_id.size(); ++i) current_id[i] = static_cast<int>(i);

        int accepted_count = 0;
        for (int snapshot : order) {
            if (current->k() <= 2) break;  // never merge below two clusters
            const int victim = current_id[static_cast<std::size_t>(snapshot)];
            const int target = closest_cluster(data, *current, victim);
            Partition merged = merge_clusters(data, *current, victim, target);
            const double ri_after = rand_index(merged.assignments(), truth);
            const bool accepted = ri_after > ri;
            pass.merges_attempted.push_back({victim, target, ri, ri_after, accepted});
            if (accepted) {
                current = std::move(merged);
                ri = ri_after;
                ++accepted_count;
                for (auto& id : current_id) {
                    if (id == victim) id = -1;  // consumed; never revisited
                    else if (id > victim) --id;
                }
            }
        }

        pass.k_after = current->k();
        trace.iterations.push_back(std::move(pass));

        if (accepted_count == 0) break;  // k unchanged by the sweep: done
    }

    const int k_final = current->k();
    return AmsosResult{std::move(*current), k_final, ri, std::move(trace)};
}

void write_trace_jsonl(const AmsosTrace& trace, std::ostream& out) {
    for (const auto& pass : trace.iterations) {
        nlohmann::ordered_json j;
        j["k_before"] = pass.k_before;
        auto& merges = j["merges_attempted"] = nlohmann::ordered_json::array();
        for (const auto& attempt : pass.merges_attempted) {
            merges.push_back({{"victim_cluster", attempt.victim_cluster},
                              {"target_cluster", attempt.target_cluster},
                              {"ri_before", attempt.ri_before},
                              {"ri_after", attempt.ri_after},
                              {"accepted", attempt.accepted}});
        }
        j["k_after"] = pass.k_after;
        out << j.dump() << '\n';
    }
}

}  // namespace amsos
