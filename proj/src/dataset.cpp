#include "amsos/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace amsos {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("distance between vectors of length " + std::to_string(a.size()) +
                             " and " + std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

Vec centroid_of(const Matrix& points, std::span<const std::size_t> members) {
    if (members.empty()) throw EmptyClusterError("centroid of an empty point set");
    Vec mean(points.cols(), 0.0);
    for (std::size_t idx : members) {
        auto row = points.row(idx);
        for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += row[c];
    }
    for (double& v : mean) v /= static_cast<double>(members.size());
    return mean;
}

Dataset::Dataset(Matrix points, std::optional<std::vector<int>> labels, std::string name)
    : points_(std::move(points)), labels_(std::move(labels)), name_(std::move(name)) {
    if (points_.rows() < 2) throw ValidationError("dataset needs at least 2 points");
    if (points_.cols() < 1) throw ValidationError("dataset needs at least 1 feature");
    for (std::size_t r = 0; r < points_.rows(); ++r) {
        for (std::size_t c = 0; c < points_.cols(); ++c) {
            if (!std::isfinite(points_(r, c))) {
                throw ValidationError("non-finite feature at row " + std::to_string(r) +
                                      ", column " + std::to_string(c));
            }
        }
    }
    if (labels_) {
        if (labels_->size() != points_.rows()) {
            throw ValidationError("label count " + std::to_string(labels_->size()) +
                                  " does not match point count " + std::to_string(points_.rows()));
        }
        const int max_id = *std::max_element(labels_->begin(), labels_->end());
        const int min_id = *std::min_element(labels_->begin(), labels_->end());
        if (min_id < 0) throw ValidationError("negative class id");
        std::vector<bool> used(static_cast<std::size_t>(max_id) + 1, false);
        for (int id : *labels_) used[static_cast<std::size_t>(id)] = true;
        if (std::find(used.begin(), used.end(), false) != used.end()) {
            throw ValidationError("class ids must be contiguous from 0");
        }
        num_classes_ = max_id + 1;
    }
}

const std::vector<int>& Dataset::labels() const {
    if (!labels_) {
        throw MissingReferenceError("dataset '" + name_ + "' carries no reference labels");
    }
    return *labels_;
}

Matrix centroids_from_assignments(const Matrix& points, const std::vector<int>& assignments, int k) {
    Matrix centroids(static_cast<std::size_t>(k), points.cols(), 0.0);
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        const auto j = static_cast<std::size_t>(assignments[i]);
        ++counts[j];
        auto row = points.row(i);
        for (std::size_t c = 0; c < points.cols(); ++c) centroids(j, c) += row[c];
    }
    for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) {
        if (counts[j] == 0) throw EmptyClusterError("cluster " + std::to_string(j) + " has no members");
        for (std::size_t c = 0; c < points.cols(); ++c) centroids(j, c) /= static_cast<double>(counts[j]);
    }
    return centroids;
}

Partition::Partition(std::vector<int> assignments, int k, Matrix centroids)
    : assignments_(std::move(assignments)), k_(k), centroids_(std::move(centroids)) {
    if (k_ < 1) throw ValidationError("partition needs at least one cluster");
    if (centroids_.rows() != static_cast<std::size_t>(k_)) {
        throw DimensionError("centroid count does not match k");
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(k_), 0);
    for (int a : assignments_) {
        if (a < 0 || a >= k_) throw ValidationError("cluster id " + std::to_string(a) + " out of [0,k)");
        ++counts[static_cast<std::size_t>(a)];
    }
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] == 0) throw EmptyClusterError("cluster " + std::to_string(j) + " has no members");
    }
}

Partition Partition::from_assignments(const Matrix& points, std::vector<int> assignments, int k) {
    Matrix centroids = centroids_from_assignments(points, assignments, k);
    return Partition(std::move(assignments), k, std::move(centroids));
}

std::vector<std::size_t> Partition::cluster_sizes() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(k_), 0);
    for (int a : assignments_) ++counts[static_cast<std::size_t>(a)];
    return counts;
}

std::vector<std::vector<std::size_t>> Partition::members() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k_));
    for (std::size_t i = 0; i < assignments_.size(); ++i) {
        out[static_cast<std::size_t>(assignments_[i])].push_back(i);
    }
    return out;
}

double sse_of(const Matrix& points, const std::vector<int>& assignments, const Matrix& centroids) {
    double total = 0.0;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        auto p = points.row(i);
        auto c = centroids.row(static_cast<std::size_t>(assignments[i]));
        double sum = 0.0;
        for (std::size_t f = 0; f < p.size(); ++f) {
            const double d = p[f] - c[f];
            sum += d * d;
        }
        total += sum;
    }
    return total;
}

double sse_of(const Dataset& data, const Partition& partition) {
    return sse_of(data.points(), partition.assignments(), partition.centroids());
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& cell, double& out) {
    const std::string t = trimmed(cell);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

std::size_t resolve_label_index(const LabelColumn& sel, std::size_t arity) {
    if (sel.kind == LabelColumn::Kind::Last) return arity - 1;
    if (sel.idx >= arity) {
        throw IngestionError("label column " + std::to_string(sel.idx) +
                             " out of range for " + std::to_string(arity) + " columns");
    }
    return sel.idx;
}

}  // namespace

Dataset load_csv(const std::string& path, LabelColumn label_column) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open '" + path + "'");

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!trimmed(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw IngestionError("'" + path + "' is empty");

    const bool has_label = label_column.kind != LabelColumn::Kind::None;
    const std::size_t arity = split_commas(lines.front()).size();
    if (arity == 0 || (has_label && arity < 2)) {
        throw IngestionError("'" + path + "' has too few columns", 1);
    }
    const std::size_t label_idx = has_label ? resolve_label_index(label_column, arity) : arity;

    // Header detection: skip the first row iff a non-label cell is non-numeric.
    std::size_t first_data = 0;
    {
        const auto cells = split_commas(lines.front());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v;
            if (c != label_idx && !parse_double(cells[c], v)) {
                first_data = 1;
                break;
            }
        }
    }
    if (first_data >= lines.size()) throw IngestionError("'" + path + "' has a header but no data rows");

    Matrix points;
    std::vector<int> labels;
    std::vector<std::string> label_names;  // first-appearance order
    std::map<std::string, int> label_ids;

    for (std::size_t r = first_data; r < lines.size(); ++r) {
        const std::size_t file_row = r + 1;
        const auto cells = split_commas(lines[r]);
        if (cells.size() != arity) {
            throw IngestionError("row " + std::to_string(file_row) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(arity),
                                 file_row);
        }
        Vec features;
        features.reserve(arity - (has_label ? 1 : 0));
        for (std::size_t c = 0; c < arity; ++c) {
            if (c == label_idx) continue;
            double v;
            if (!parse_double(cells[c], v)) {
                throw IngestionError("row " + std::to_string(file_row) + ", column " +
                                         std::to_string(c + 1) + ": cannot parse '" +
                                         trimmed(cells[c]) + "' as a number",
                                     file_row, c + 1);
            }
            features.push_back(v);
        }
        points.append_row(features);
        if (has_label) {
            const std::string key = trimmed(cells[label_idx]);
            auto [it, inserted] = label_ids.try_emplace(key, static_cast<int>(label_names.size()));
            if (inserted) label_names.push_back(key);
            labels.push_back(it->second);
        }
    }

    if (points.rows() < 2) throw IngestionError("'" + path + "' has fewer than 2 data rows");

    std::string name = path;
    if (const auto slash = name.find_last_of("/\\"); slash != std::string::npos) {
        name = name.substr(slash + 1);
    }
    try {
        return Dataset(std::move(points),
                       has_label ? std::optional(std::move(labels)) : std::nullopt, name);
    } catch (const ValidationError& e) {
        throw IngestionError(std::string("'") + path + "': " + e.what());
    }
}

void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write '" + path + "'");
    char buf[64];
    for (std::size_t r = 0; r < data.size(); ++r) {
        auto row = data.points().row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[c]);
            if (c) out << ',';
            out << buf;
        }
        if (data.has_labels()) out << ',' << data.labels()[r];
        out << '\n';
    }
}

Dataset zscored(const Dataset& data) {
    const auto m = data.size();
    const auto n = data.dimension();
    Vec mean(n, 0.0), var(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        auto row = data.points().row(r);
        for (std::size_t c = 0; c < n; ++c) mean[c] += row[c];
    }
    for (double& v : mean) v /= static_cast<double>(m);
    for (std::size_t r = 0; r < m; ++r) {
        auto row = data.points().row(r);
        for (std::size_t c = 0; c < n; ++c) {
            const double d = row[c] - mean[c];
            var[c] += d * d;
        }
    }
    for (double& v : var) v /= static_cast<double>(m);

    Matrix out(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        auto row = data.points().row(r);
        for (std::size_t c = 0; c < n; ++c) {
            out(r, c) = var[c] > 0.0 ? (row[c] - mean[c]) / std::sqrt(var[c]) : 0.0;
        }
    }
    return Dataset(std::move(out),
                   data.has_labels() ? std::optional(data.labels()) : std::nullopt,
                   data.name());
}

}  // namespace amsos
