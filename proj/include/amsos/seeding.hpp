#ifndef AMSOS_SEEDING_HPP
#define AMSOS_SEEDING_HPP

#include <vector>

#include "amsos/dataset.hpp"
#include "amsos/rng.hpp"

namespace amsos {

enum class SeedMethod { spss, kmeanspp, random };

/// k initial centroids, each an exact copy of a distinct dataset row.
struct SeedSet {
    Matrix centroids;
    SeedMethod method;
    std::vector<std::size_t> source_indices;

    int k() const noexcept { return static_cast<int>(source_indices.size()); }
    friend bool operator==(const SeedSet&, const SeedSet&) = default;
};

/// Single Pass Seed Selection: fully deterministic, no randomness anywhere.
/// The first seed is the highest-density point, i.e. the row with the least
/// total distance to all other rows. Each later seed is the row maximizing
/// the squared distance to its nearest already-chosen seed (the deterministic
/// limit of the k-means++ D^2 sampling rule). All ties break to the lowest
/// row index. Throws DegenerateSeedError when fewer than k distinct rows exist.
SeedSet spss_seeds(const Dataset& data, int k);

/// k-means++: first seed uniform, later seeds sampled with probability
/// proportional to the squared distance to the nearest chosen seed.
SeedSet kmeanspp_seeds(const Dataset& data, int k, Rng& rng);

/// Uniform sample of k distinct rows.
SeedSet random_seeds(const Dataset& data, int k, Rng& rng);

}  // namespace amsos

#endif  // AMSOS_SEEDING_HPP
