#ifndef AMSOS_DATASET_HPP
#define AMSOS_DATASET_HPP

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "amsos/matrix.hpp"

namespace amsos {

/// Euclidean distance between two equal-length vectors.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Coordinate-wise mean of the selected rows. Throws EmptyClusterError on an
/// empty selection.
Vec centroid_of(const Matrix& points, std::span<const std::size_t> members);

/// Immutable labeled point set: m points of n features plus optional
/// reference class ids (contiguous, 0-based).
class Dataset {
public:
    explicit Dataset(Matrix points,
                     std::optional<std::vector<int>> labels = std::nullopt,
                     std::string name = "");

    const Matrix& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.rows(); }
    std::size_t dimension() const noexcept { return points_.cols(); }
    const std::string& name() const noexcept { return name_; }

    bool has_labels() const noexcept { return labels_.has_value(); }

    /// Reference labels; throws MissingReferenceError when the dataset is unlabeled.
    const std::vector<int>& labels() const;

    /// Number of reference classes (0 when unlabeled).
    int num_classes() const noexcept { return num_classes_; }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    Matrix points_;
    std::optional<std::vector<int>> labels_;
    std::string name_;
    int num_classes_ = 0;
};

/// A clustering of a dataset: per-point cluster ids in [0,k) and the k
/// centroids, each the mean of its members. No cluster may be empty.
class Partition {
public:
    Partition(std::vector<int> assignments, int k, Matrix centroids);

    /// Convenience: recomputes centroids from the assignments.
    static Partition from_assignments(const Matrix& points, std::vector<int> assignments, int k);

    const std::vector<int>& assignments() const noexcept { return assignments_; }
    int k() const noexcept { return k_; }
    const Matrix& centroids() const noexcept { return centroids_; }

    std::vector<std::size_t> cluster_sizes() const;
    std::vector<std::vector<std::size_t>> members() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> assignments_;
    int k_ = 0;
    Matrix centroids_;
};

/// Mean of the selected rows, one row per cluster. Throws EmptyClusterError
/// if any cluster id in [0,k) has no members.
Matrix centroids_from_assignments(const Matrix& points, const std::vector<int>& assignments, int k);

/// Within-cluster sum of squared distances.
double sse_of(const Matrix& points, const std::vector<int>& assignments, const Matrix& centroids);
double sse_of(const Dataset& data, const Partition& partition);

/// Which CSV column, if any, holds class labels.
struct LabelColumn {
    static LabelColumn none() { return LabelColumn{Kind::None, 0}; }
    static LabelColumn last() { return LabelColumn{Kind::Last, 0}; }
    static LabelColumn index(std::size_t i) { return LabelColumn{Kind::Index, i}; }

    enum class Kind { None, Last, Index };
    Kind kind = Kind::None;
    std::size_t idx = 0;
};

/// Loads a comma-separated file. A header row is auto-detected: the first row
/// is skipped when any cell outside the label column fails to parse as a
/// number. Label cells may be arbitrary strings; they are re-indexed to
/// contiguous ids 0..C-1 in order of first appearance.
Dataset load_csv(const std::string& path, LabelColumn label_column = LabelColumn::none());

/// Writes features (17 significant digits, so reload is bit-exact) with
/// labels, when present, in an extra last column.
void save_csv(const Dataset& data, const std::string& path);

/// Feature-wise standardization (zero mean, unit variance; constant columns
/// map to zero). Off by default everywhere; opt-in via the CLI flag.
Dataset zscored(const Dataset& data);

}  // namespace amsos

#endif  // AMSOS_DATASET_HPP
