#include "amsos/seeding.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "amsos/error.hpp"

namespace amsos {

namespace {

void validate_k(int k, std::size_t m) {
    if (k < 1 || static_cast<std::size_t>(k) > m) {
        throw ValidationError("seed count k=" + std::to_string(k) + " out of range [1, " +
                              std::to_string(m) + "]");
    }
}

double sqdist(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

SeedSet finish(const Dataset& data, SeedMethod method, std::vector<std::size_t> chosen) {
    Matrix centroids;
    for (std::size_t idx : chosen) centroids.append_row(data.points().row_copy(idx));
    return SeedSet{std::move(centroids), method, std::move(chosen)};
}

// Greedy farthest-point continuation shared by SPSS; also updates min
// squared distances in place.
std::size_t farthest_row(const std::vector<double>& min_sq) {
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < min_sq.size(); ++i) {
        if (min_sq[i] > best_val) {
            best_val = min_sq[i];
            best = i;
        }
    }
    if (best_val <= 0.0) {
        throw DegenerateSeedError("fewer distinct rows than requested seeds");
    }
    return best;
}

void relax_min_sq(const Dataset& data, std::size_t new_seed, std::vector<double>& min_sq) {
    const auto seed_row = data.points().row(new_seed);
    for (std::size_t i = 0; i < min_sq.size(); ++i) {
        min_sq[i] = std::min(min_sq[i], sqdist(data.points().row(i), seed_row));
    }
}

}  // namespace

SeedSet spss_seeds(const Dataset& data, int k) {
    const std::size_t m = data.size();
    validate_k(k, m);

    // Highest-density point: least total distance to all other rows.
    std::vector<double> total(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const auto row_i = data.points().row(i);
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            sum += euclidean_distance(row_i, data.points().row(j));
        }
        total[i] = sum;
    }
    std::size_t first = 0;
    for (std::size_t i = 1; i < m; ++i) {
        if (total[i] < total[first]) first = i;
    }

    std::vector<std::size_t> chosen{first};
    std::vector<double> min_sq(m, std::numeric_limits<double>::infinity());
    relax_min_sq(data, first, min_sq);
    while (chosen.size() < static_cast<std::size_t>(k)) {
        const std::size_t next = farthest_row(min_sq);
        chosen.push_back(next);
        relax_min_sq(data, next, min_sq);
    }
    return finish(data, SeedMethod::spss, std::move(chosen));
}

SeedSet kmeanspp_seeds(const Dataset& data, int k, Rng& rng) {
    const std::size_t m = data.size();
    validate_k(k, m);

    std::vector<std::size_t> chosen{rng.uniform_below(m)};
    std::vector<double> min_sq(m, std::numeric_limits<double>::infinity());
    relax_min_sq(data, chosen.front(), min_sq);

    while (chosen.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (double w : min_sq) total += w;
        if (total <= 0.0) {
            throw DegenerateSeedError("fewer distinct rows than requested seeds");
        }
        const double u = rng.uniform01() * total;
        double cum = 0.0;
        std::size_t next = m;
        for (std::size_t i = 0; i < m; ++i) {
            cum += min_sq[i];
            if (u < cum) {
                next = i;
                break;
            }
        }
        if (next == m) {  // FP slack: take the last row with positive weight
            for (std::size_t i = m; i-- > 0;) {
                if (min_sq[i] > 0.0) {
                    next = i;
                    break;
                }
            }
        }
        chosen.push_back(next);
        relax_min_sq(data, next, min_sq);
    }
    return finish(data, SeedMethod::kmeanspp, std::move(chosen));
}

SeedSet random_seeds(const Dataset& data, int k, Rng& rng) {
    const std::size_t m = data.size();
    validate_k(k, m);

    std::vector<std::size_t> indices(m);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
        std::swap(indices[i], indices[i + rng.uniform_below(m - i)]);
    }
    indices.resize(static_cast<std::size_t>(k));
    return finish(data, SeedMethod::random, std::move(indices));
}

}  // namespace amsos
