#include "amsos/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "amsos/assignment.hpp"
#include "amsos/error.hpp"

namespace amsos {

namespace {

void validate_labelings(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size()) {
        throw DimensionError("labelings of length " + std::to_string(pred.size()) + " and " +
                             std::to_string(truth.size()));
    }
    if (pred.size() < 2) throw ValidationError("pair-counting needs at least 2 points");
}

// First-appearance compaction of arbitrary non-negative ids.
std::vector<int> compacted(std::span<const int> labels, std::size_t& num_ids) {
    int max_id = 0;
    for (int v : labels) {
        if (v < 0) throw ValidationError("negative label id");
        max_id = std::max(max_id, v);
    }
    std::vector<int> map(static_cast<std::size_t>(max_id) + 1, -1);
    std::vector<int> out(labels.size());
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        int& slot = map[static_cast<std::size_t>(labels[i])];
        if (slot < 0) slot = next++;
        out[i] = slot;
    }
    num_ids = static_cast<std::size_t>(next);
    return out;
}

std::uint64_t choose2(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace

ContingencyTable ContingencyTable::from_labels(std::span<const int> pred,
                                               std::span<const int> truth) {
    validate_labelings(pred, truth);
    std::size_t kp = 0, kt = 0;
    const auto p = compacted(pred, kp);
    const auto t = compacted(truth, kt);
    ContingencyTable table;
    table.m_ = pred.size();
    table.counts_.assign(kp, std::vector<std::int64_t>(kt, 0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        ++table.counts_[static_cast<std::size_t>(p[i])][static_cast<std::size_t>(t[i])];
    }
    return table;
}

PairCounts ContingencyTable::pair_counts() const {
    std::uint64_t same_both = 0, same_pred = 0, same_true = 0;
    std::vector<std::uint64_t> col_sums(true_classes(), 0);
    for (const auto& row : counts_) {
        std::uint64_t row_sum = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const auto n = static_cast<std::uint64_t>(row[j]);
            same_both += choose2(n);
            row_sum += n;
            col_sums[j] += n;
        }
        same_pred += choose2(row_sum);
    }
    for (std::uint64_t s : col_sums) same_true += choose2(s);

    PairCounts pc;
    pc.a = same_both;
    pc.b = same_pred - same_both;
    pc.c = same_true - same_both;
    pc.d = choose2(m_) - pc.a - pc.b - pc.c;
    return pc;
}

namespace {

double ri_from(const PairCounts& pc) {
    return static_cast<double>(pc.a + pc.d) / static_cast<double>(pc.total());
}

double hi_from(const PairCounts& pc) {
    return (static_cast<double>(pc.a + pc.d) - static_cast<double>(pc.b + pc.c)) /
           static_cast<double>(pc.total());
}

double ari_from(const PairCounts& pc) {
    const double index = static_cast<double>(pc.a);
    const double sum_pred = static_cast<double>(pc.a + pc.b);
    const double sum_true = static_cast<double>(pc.a + pc.c);
    const double total = static_cast<double>(pc.total());
    const double expected = sum_pred * sum_true / total;
    const double denom = 0.5 * (sum_pred + sum_true) - expected;
    if (denom == 0.0) {
        // Both partitions trivial; they agree iff the marginal pair sums match.
        return sum_pred == sum_true ? 1.0 : 0.0;
    }
    return (index - expected) / denom;
}

double error_rate_from(const ContingencyTable& table) {
    const std::size_t side = std::max(table.pred_clusters(), table.true_classes());
    std::vector<std::vector<std::int64_t>> weight(side, std::vector<std::int64_t>(side, 0));
    for (std::size_t i = 0; i < table.pred_clusters(); ++i) {
        for (std::size_t j = 0; j < table.true_classes(); ++j) {
            weight[i][j] = table.counts()[i][j];
        }
    }
    const std::int64_t matched = max_weight_assignment(weight);
    const auto misclassified = static_cast<double>(static_cast<std::int64_t>(table.m()) - matched);
    return 100.0 * misclassified / static_cast<double>(table.m());
}

}  // namespace

double rand_index(std::span<const int> pred, std::span<const int> truth) {
    return ri_from(ContingencyTable::from_labels(pred, truth).pair_counts());
}

double adjusted_rand(std::span<const int> pred, std::span<const int> truth) {
    return ari_from(ContingencyTable::from_labels(pred, truth).pair_counts());
}

double hubert_index(std::span<const int> pred, std::span<const int> truth) {
    return hi_from(ContingencyTable::from_labels(pred, truth).pair_counts());
}

double error_rate(std::span<const int> pred, std::span<const int> truth) {
    return error_rate_from(ContingencyTable::from_labels(pred, truth));
}

namespace detail {

// Pairwise point distances, computed once and shared by the indices.
struct DistanceMatrix {
    explicit DistanceMatrix(const Matrix& points) : m(points.rows()), values(m * m, 0.0) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                const double d = euclidean_distance(points.row(i), points.row(j));
                values[i * m + j] = d;
                values[j * m + i] = d;
            }
        }
    }
    double operator()(std::size_t i, std::size_t j) const { return values[i * m + j]; }
    std::size_t m;
    std::vector<double> values;
};

double silhouette_impl(const Partition& partition, const DistanceMatrix& dist) {
    if (partition.k() < 2) throw ValidationError("silhouette requires k >= 2");
    const auto& assign = partition.assignments();
    const auto sizes = partition.cluster_sizes();
    const std::size_t m = assign.size();
    const auto k = static_cast<std::size_t>(partition.k());

    // Per-point sums of distances into each cluster.
    std::vector<double> sums(m * k, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double d = dist(i, j);
            sums[i * k + static_cast<std::size_t>(assign[j])] += d;
            sums[j * k + static_cast<std::size_t>(assign[i])] += d;
        }
    }

    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto own = static_cast<std::size_t>(assign[i]);
        if (sizes[own] == 1) continue;  // singleton scores 0 by convention
        const double a = sums[i * k + own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k; ++j) {
            if (j != own) b = std::min(b, sums[i * k + j] / static_cast<double>(sizes[j]));
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(m);
}

void reject_coincident_centroids(const Matrix& centroids) {
    for (std::size_t i = 0; i < centroids.rows(); ++i) {
        for (std::size_t j = i + 1; j < centroids.rows(); ++j) {
            if (euclidean_distance(centroids.row(i), centroids.row(j)) == 0.0) {
                throw DegeneratePartitionError("clusters " + std::to_string(i) + " and " +
                                               std::to_string(j) + " have coincident centroids");
            }
        }
    }
}

double davies_bouldin_impl(const Dataset& data, const Partition& partition) {
    if (partition.k() < 2) throw ValidationError("Davies-Bouldin requires k >= 2");
    const Matrix& centroids = partition.centroids();
    reject_coincident_centroids(centroids);

    const auto k = static_cast<std::size_t>(partition.k());
    const auto sizes = partition.cluster_sizes();
    std::vector<double> scatter(k, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto j = static_cast<std::size_t>(partition.assignments()[i]);
        scatter[j] += euclidean_distance(data.points().row(i), centroids.row(j));
    }
    for (std::size_t j = 0; j < k; ++j) scatter[j] /= static_cast<double>(sizes[j]);

    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            const double sep = euclidean_distance(centroids.row(i), centroids.row(j));
            worst = std::max(worst, (scatter[i] + scatter[j]) / sep);
        }
        total += worst;
    }
    return total / static_cast<double>(k);
}

double cs_measure_impl(const Partition& partition, const DistanceMatrix& dist) {
    if (partition.k() < 2) throw ValidationError("CS measure requires k >= 2");
    const Matrix& centroids = partition.centroids();
    reject_coincident_centroids(centroids);

    const auto members = partition.members();
    double numerator = 0.0;
    for (const auto& cluster : members) {
        double sum_of_max = 0.0;
        for (std::size_t x : cluster) {
            double far = 0.0;
            for (std::size_t y : cluster) far = std::max(far, dist(x, y));
            sum_of_max += far;
        }
        numerator += sum_of_max / static_cast<double>(cluster.size());
    }

    double denominator = 0.0;
    for (std::size_t i = 0; i < centroids.rows(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < centroids.rows(); ++j) {
            if (j != i) {
                nearest = std::min(nearest, euclidean_distance(centroids.row(i), centroids.row(j)));
            }
        }
        denominator += nearest;
    }
    return numerator / denominator;
}

}  // namespace detail

double silhouette(const Dataset& data, const Partition& partition) {
    return detail::silhouette_impl(partition, detail::DistanceMatrix(data.points()));
}

double davies_bouldin(const Dataset& data, const Partition& partition) {
    return detail::davies_bouldin_impl(data, partition);
}

double cs_measure(const Dataset& data, const Partition& partition) {
    return detail::cs_measure_impl(partition, detail::DistanceMatrix(data.points()));
}

MetricReport full_report(const Dataset& data, const Partition& partition,
                         std::span<const int> truth) {
    const auto table = ContingencyTable::from_labels(partition.assignments(), truth);
    const auto pc = table.pair_counts();
    const detail::DistanceMatrix dist(data.points());

    MetricReport report;
    report.k = partition.k();
    report.ri = ri_from(pc);
    report.hi = hi_from(pc);
    report.ari = ari_from(pc);
    report.error_rate_percent = error_rate_from(table);
    report.silhouette = detail::silhouette_impl(partition, dist);
    report.db = detail::davies_bouldin_impl(data, partition);
    report.cs = detail::cs_measure_impl(partition, dist);
    return report;
}

std::string MetricReport::to_json() const {
    nlohmann::ordered_json j;
    j["k"] = k;
    j["ari"] = ari;
    j["ri"] = ri;
    j["hi"] = hi;
    j["sil"] = silhouette;
    j["db"] = db;
    j["cs"] = cs;
    j["err"] = error_rate_percent;
    return j.dump();
}

MetricReport MetricReport::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    MetricReport report;
    report.k = j.at("k").get<int>();
    report.ari = j.at("ari").get<double>();
    report.ri = j.at("ri").get<double>();
    report.hi = j.at("hi").get<double>();
    report.silhouette = j.at("sil").get<double>();
    report.db = j.at("db").get<double>();
    report.cs = j.at("cs").get<double>();
    report.error_rate_percent = j.at("err").get<double>();
    return report;
}

std::string MetricReport::to_csv_row() const {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", ari, ri, hi,
                  silhouette, db, cs, error_rate_percent);
    return buf;
}

}  // namespace amsos
