#include "amsos/synthetic.hpp"

#include <cmath>

#include "amsos/error.hpp"

namespace amsos {

Matrix cholesky_lower(const Matrix& cov) {
    const std::size_t n = cov.rows();
    if (n == 0 || cov.cols() != n) throw FactorizationError("covariance must be square");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(cov(i, j) - cov(j, i)) > 1e-12) {
                throw FactorizationError("covariance is not symmetric at (" + std::to_string(i) +
                                         "," + std::to_string(j) + ")");
            }
        }
    }
    Matrix lower(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = cov(i, j);
            for (std::size_t p = 0; p < j; ++p) sum -= lower(i, p) * lower(j, p);
            if (i == j) {
                if (sum <= 0.0) {
                    throw FactorizationError("covariance is not positive definite (pivot " +
                                             std::to_string(i) + ")");
                }
                lower(i, i) = std::sqrt(sum);
            } else {
                lower(i, j) = sum / lower(j, j);
            }
        }
    }
    return lower;
}

namespace {

void validate_component(const GaussianComponent& component) {
    if (component.count < 1) throw ValidationError("component count must be >= 1");
    if (component.mean.size() != component.covariance.rows()) {
        throw DimensionError("mean dimension does not match covariance");
    }
}

}  // namespace

Matrix sample_mvn(const GaussianComponent& component, Rng& rng) {
    validate_component(component);
    const Matrix lower = cholesky_lower(component.covariance);
    const std::size_t n = component.mean.size();
    Matrix out(component.count, n);
    Vec z(n);
    for (std::size_t r = 0; r < component.count; ++r) {
        for (std::size_t c = 0; c < n; ++c) z[c] = rng.gaussian();
        for (std::size_t c = 0; c < n; ++c) {
            double v = component.mean[c];
            for (std::size_t p = 0; p <= c; ++p) v += lower(c, p) * z[p];
            out(r, c) = v;
        }
    }
    return out;
}

namespace {

MixtureSpec make_mixture(std::string id, std::size_t total,
                         std::vector<Vec> means, std::vector<Matrix> covariances) {
    MixtureSpec spec;
    spec.id = std::move(id);
    spec.total = total;
    spec.dimension = means.front().size();
    const std::size_t k = means.size();
    const std::size_t base = total / k;
    const std::size_t extra = total % k;  // earlier components absorb the remainder
    for (std::size_t i = 0; i < k; ++i) {
        spec.components.push_back(GaussianComponent{
            std::move(means[i]), std::move(covariances[i]), base + (i < extra ? 1 : 0)});
    }
    return spec;
}

Matrix scaled_identity(std::size_t n, double s) {
    Matrix out(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = s;
    return out;
}

}  // namespace

MixtureSpec builtin_mixture(std::string_view id) {
    if (id == "synthetic1") {
        return make_mixture("synthetic1", 350,
                            {{2, 3, 4}, {7, 6, 9}},
                            {Matrix::from_rows({{1, 0.50, 0.3333},
                                                {0.50, 1, 0.6667},
                                                {0.3333, 0.6667, 1}}),
                             Matrix::from_rows({{1, 1, 1}, {1, 2, 2}, {1, 2, 3}})});
    }
    if (id == "synthetic2") {
        return make_mixture("synthetic2", 400,
                            {{-1, -1}, {2, 2}, {-3, 3}, {-6, 4}},
                            {scaled_identity(2, 0.65),
                             Matrix::from_rows({{1, 0.7}, {0.7, 1}}),
                             scaled_identity(2, 0.78),
                             scaled_identity(2, 0.5)});
    }
    if (id == "synthetic3") {
        return make_mixture("synthetic3", 300,
                            {{-1, -1}, {2, 2}, {-3, 3}},
                            {scaled_identity(2, 1.0),
                             scaled_identity(2, 1.0),
                             scaled_identity(2, 0.7)});
    }
    if (id == "synthetic4") {
        return make_mixture("synthetic4", 800,
                            {{-1, -1}, {-8, -6}, {-3, 6}, {-8, 14}, {10, 12}, {14, -14}},
                            {scaled_identity(2, 0.65),
                             Matrix::from_rows({{1, 0.7}, {0.7, 1}}),
                             scaled_identity(2, 0.2),
                             scaled_identity(2, 0.5),
                             scaled_identity(2, 0.3),
                             scaled_identity(2, 0.1)});
    }
    throw ValidationError("unknown mixture id '" + std::string(id) + "'");
}

bool is_builtin_mixture(std::string_view id) {
    return id == "synthetic1" || id == "synthetic2" || id == "synthetic3" || id == "synthetic4";
}

Dataset generate(const MixtureSpec& spec, std::uint64_t seed) {
    if (spec.components.empty()) throw ValidationError("mixture has no components");
    std::size_t total = 0;
    for (const auto& comp : spec.components) {
        validate_component(comp);
        if (comp.mean.size() != spec.dimension) {
            throw DimensionError("component dimension differs from mixture dimension");
        }
        total += comp.count;
    }
    if (total != spec.total) throw ValidationError("component counts do not sum to the total");

    Rng rng(seed);
    Matrix points;
    std::vector<int> labels;
    labels.reserve(total);
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const Matrix rows = sample_mvn(spec.components[i], rng);
        for (std::size_t r = 0; r < rows.rows(); ++r) {
            points.append_row(rows.row_copy(r));
            labels.push_back(static_cast<int>(i));
        }
    }
    return Dataset(std::move(points), std::move(labels), spec.id);
}

}  // namespace amsos
