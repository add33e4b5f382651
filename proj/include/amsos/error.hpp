#ifndef AMSOS_ERROR_HPP
#define AMSOS_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amsos {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix dimensions.
struct DimensionError final : Error {
    using Error::Error;
};

/// A CSV file could not be ingested. Carries the 1-based row and column
/// of the offending cell when known (0 = unknown).
struct IngestionError final : Error {
    IngestionError(const std::string& what, std::size_t row = 0, std::size_t col = 0)
        : Error(what), row_(row), col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

/// Asked for the centroid of an empty point set, or a cluster lost all members.
struct EmptyClusterError final : Error {
    using Error::Error;
};

/// Seeding could not produce k distinct seed points.
struct DegenerateSeedError final : Error {
    using Error::Error;
};

/// An operation needed reference labels and the dataset has none.
struct MissingReferenceError final : Error {
    using Error::Error;
};

/// A validity index is undefined on this partition (e.g. coincident centroids).
struct DegeneratePartitionError final : Error {
    using Error::Error;
};

/// Cholesky factorization failed; the matrix is not positive definite.
struct FactorizationError final : Error {
    using Error::Error;
};

/// An argument or run configuration violates its contract.
struct ValidationError final : Error {
    using Error::Error;
};

}  // namespace amsos

#endif  // AMSOS_ERROR_HPP
