#ifndef AMSOS_SYNTHETIC_HPP
#define AMSOS_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "amsos/dataset.hpp"
#include "amsos/rng.hpp"

namespace amsos {

/// One multivariate-normal mixture component: N(mean, covariance), sampled
/// `count` times.
struct GaussianComponent {
    Vec mean;
    Matrix covariance;  // symmetric positive definite
    std::size_t count = 0;
};

/// An ordered list of components defining a benchmark mixture.
struct MixtureSpec {
    std::string id;
    std::vector<GaussianComponent> components;
    std::size_t total = 0;      // sum of component counts
    std::size_t dimension = 0;  // shared feature count
};

/// Lower Cholesky factor of a symmetric positive-definite matrix. Throws
/// FactorizationError when the matrix is asymmetric (beyond 1e-12) or not
/// positive definite.
Matrix cholesky_lower(const Matrix& cov);

/// Draws component.count rows x = mean + L*z with z standard normal and
/// L the lower Cholesky factor. Deterministic for a given stream state.
Matrix sample_mvn(const GaussianComponent& component, Rng& rng);

/// The four built-in mixtures: ids "synthetic1" .. "synthetic4".
/// Totals 350/400/300/800; per-component counts split as evenly as the total
/// allows (earlier components take the remainder).
MixtureSpec builtin_mixture(std::string_view id);

bool is_builtin_mixture(std::string_view id);

/// Realizes the mixture: rows grouped by component in draw order, labels set
/// to the component index. Identical (spec, seed) pairs produce bit-identical
/// datasets.
Dataset generate(const MixtureSpec& spec, std::uint64_t seed);

}  // namespace amsos

#endif  // AMSOS_SYNTHETIC_HPP
