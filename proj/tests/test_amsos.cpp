#include <doctest.h>

#include <sstream>

#include "amsos/amsos.hpp"
#include "amsos/metrics.hpp"
#include "amsos/synthetic.hpp"

using namespace amsos;

TEST_CASE("kmax is the floored square root, clamped at 2") {
    CHECK(kmax_for(150) == 12);
    CHECK(kmax_for(800) == 28);
    CHECK(kmax_for(4) == 2);
    CHECK(kmax_for(400) == 20);
    CHECK(kmax_for(399) == 19);
    CHECK(kmax_for(350) == 18);
    CHECK_THROWS_AS(kmax_for(3), ValidationError);
}

TEST_CASE("cluster probability is the size fraction") {
    CHECK(cluster_probability(50, 150) == doctest::Approx(1.0 / 3.0));
    CHECK(cluster_probability(20, 20) == 1.0);
    CHECK(cluster_probability(5, 20) == 0.25);
    CHECK_THROWS_AS(cluster_probability(0, 20), ValidationError);
}

TEST_CASE("average linkage over point sets") {
    CHECK(average_linkage(Matrix::from_rows({{0, 0}}), Matrix::from_rows({{3, 4}})) == 5.0);
    CHECK(average_linkage(Matrix::from_rows({{0, 0}, {0, 2}}), Matrix::from_rows({{4, 0}})) ==
          doctest::Approx(4.2360680).epsilon(1e-7));
    CHECK_THROWS_AS(average_linkage(Matrix::from_rows({{0, 0}}), Matrix()), EmptyClusterError);

    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a(3, 2), b(4, 2);
        for (std::size_t r = 0; r < 3; ++r) {
            a(r, 0) = rng.uniform01();
            a(r, 1) = rng.uniform01();
        }
        for (std::size_t r = 0; r < 4; ++r) {
            b(r, 0) = rng.uniform01();
            b(r, 1) = rng.uniform01();
        }
        CHECK(average_linkage(a, b) == doctest::Approx(average_linkage(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("index-based average linkage matches the matrix form") {
    const Matrix pts = Matrix::from_rows({{0, 0}, {0, 2}, {4, 0}, {5, 5}});
    const std::vector<std::size_t> left{0, 1}, right{2};
    CHECK(average_linkage(pts, left, right) ==
          average_linkage(Matrix::from_rows({{0, 0}, {0, 2}}), Matrix::from_rows({{4, 0}})));
}

TEST_CASE("closest cluster by average linkage") {
    const Matrix pts = Matrix::from_rows({{0.0}, {1.0}, {10.0}});
    const Dataset data(pts);
    const Partition p = Partition::from_assignments(pts, {0, 1, 2}, 3);
    CHECK(closest_cluster(data, p, 1) == 0);  // 1 vs 9
    CHECK(closest_cluster(data, p, 0) == 1);
    CHECK(closest_cluster(data, p, 2) == 1);

    const Matrix two = Matrix::from_rows({{0.0}, {10.0}});
    const Dataset data2(two);
    const Partition forced = Partition::from_assignments(two, {0, 1}, 2);
    CHECK(closest_cluster(data2, forced, 0) == 1);
    CHECK_THROWS_AS(closest_cluster(data2, Partition::from_assignments(two, {0, 0}, 1), 0),
                    ValidationError);

    // Equidistant neighbors: the lower id wins.
    const Matrix tie_pts = Matrix::from_rows({{-5.0}, {0.0}, {5.0}});
    const Dataset tie_data(tie_pts);
    const Partition tie = Partition::from_assignments(tie_pts, {0, 1, 2}, 3);
    CHECK(closest_cluster(tie_data, tie, 1) == 0);
}

TEST_CASE("merging clusters reassigns, recomputes and compacts") {
    const Matrix pts = Matrix::from_rows({{0, 0}, {2, 2}, {9, 9}});
    const Dataset data(pts);
    const Partition p = Partition::from_assignments(pts, {0, 1, 2}, 3);

    const Partition merged = merge_clusters(data, p, 0, 1);
    CHECK(merged.k() == 2);
    CHECK(merged.assignments() == std::vector<int>{0, 0, 1});
    CHECK(merged.centroids().row_copy(0) == Vec{1, 1});
    CHECK(merged.centroids().row_copy(1) == Vec{9, 9});

    // Merging into a lower id: the victim's slot vanishes, ids above shift.
    const Partition merged2 = merge_clusters(data, p, 2, 0);
    CHECK(merged2.k() == 2);
    CHECK(merged2.assignments() == std::vector<int>{0, 1, 0});
    CHECK(merged2.centroids().row_copy(0) == Vec{4.5, 4.5});

    CHECK_THROWS_AS(merge_clusters(data, p, 1, 1), ValidationError);
    CHECK_THROWS_AS(merge_clusters(data, p, 3, 0), ValidationError);
}

TEST_CASE("merging conserves points and never lowers sse") {
    Rng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        Matrix pts(24, 2);
        for (std::size_t r = 0; r < 24; ++r) {
            pts(r, 0) = rng.uniform01() * 8;
            pts(r, 1) = rng.uniform01() * 8;
        }
        std::vector<int> assign(24);
        for (auto& a : assign) a = static_cast<int>(rng.uniform_below(4));
        for (int j = 0; j < 4; ++j) assign[static_cast<std::size_t>(j)] = j;  // keep all live
        const Dataset data(pts);
        const Partition p = Partition::from_assignments(pts, assign, 4);
        const int victim = static_cast<int>(rng.uniform_below(4));
        int target = static_cast<int>(rng.uniform_below(4));
        if (target == victim) target = (target + 1) % 4;

        const Partition merged = merge_clusters(data, p, victim, target);
        CHECK(merged.assignments().size() == 24);
        CHECK(sse_of(data, merged) >= sse_of(data, p) - 1e-9);
    }
}

TEST_CASE("amsos requires labels and enough points") {
    const Dataset unlabeled(Matrix::from_rows({{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
    CHECK_THROWS_AS(amsos::amsos(unlabeled), MissingReferenceError);

    const Dataset tiny(Matrix::from_rows({{0, 0}, {1, 1}, {9, 9}}), std::vector<int>{0, 0, 1});
    CHECK_THROWS_AS(amsos::amsos(tiny), ValidationError);
}

TEST_CASE("perfect kmax-cluster structure stops after one pass") {
    // 16 points, kmax = 4, and the labels are exactly the 4 tight blobs:
    // no merge can improve a Rand index that is already 1.
    Matrix pts;
    std::vector<int> labels;
    const double centers[4][2] = {{0, 0}, {50, 0}, {0, 50}, {50, 50}};
    Rng rng(2);
    for (int blob = 0; blob < 4; ++blob) {
        for (int i = 0; i < 4; ++i) {
            pts.append_row({centers[blob][0] + rng.uniform01(), centers[blob][1] + rng.uniform01()});
            labels.push_back(blob);
        }
    }
    const Dataset data(std::move(pts), labels);
    const AmsosResult result = amsos::amsos(data);
    CHECK(result.k_final == 4);
    CHECK(result.rand_index == 1.0);
    CHECK(result.trace.iterations.size() == 1);
    for (const auto& attempt : result.trace.iterations.front().merges_attempted) {
        CHECK_FALSE(attempt.accepted);
    }
}

TEST_CASE("amsos recovers the synthetic1 structure") {
    const Dataset data = generate(builtin_mixture("synthetic1"), 42);
    const AmsosResult result = amsos::amsos(data);
    CHECK(result.k_final == 2);
    CHECK(result.rand_index == doctest::Approx(0.966).epsilon(0.03));
    CHECK(result.rand_index == rand_index(result.partition.assignments(), data.labels()));
    CHECK(result.partition.k() == result.k_final);
}

TEST_CASE("amsos recovers the synthetic4 structure") {
    const Dataset data = generate(builtin_mixture("synthetic4"), 42);
    const AmsosResult result = amsos::amsos(data);
    CHECK(result.k_final == 6);
    CHECK(error_rate(result.partition.assignments(), data.labels()) <= 1.0);
}

TEST_CASE("amsos is deterministic end to end") {
    const Dataset data = generate(builtin_mixture("synthetic3"), 7);
    const AmsosResult a = amsos::amsos(data);
    const AmsosResult b = amsos::amsos(data);
    CHECK(a == b);
}

TEST_CASE("trace invariants hold on a real run") {
    const Dataset data = generate(builtin_mixture("synthetic2"), 11);
    const AmsosResult result = amsos::amsos(data);
    CHECK(result.k_final >= 2);
    CHECK(result.k_final <= kmax_for(data.size()));
    for (const auto& pass : result.trace.iterations) {
        int accepted = 0;
        double last_committed_ri = -1.0;
        for (const auto& attempt : pass.merges_attempted) {
            if (attempt.accepted) {
                CHECK(attempt.ri_after > attempt.ri_before);
                CHECK(attempt.ri_after >= last_committed_ri);
                last_committed_ri = attempt.ri_after;
                ++accepted;
            }
        }
        CHECK(pass.k_after == pass.k_before - accepted);
    }
    // Final pass commits nothing; earlier passes all commit at least one merge.
    for (std::size_t i = 0; i + 1 < result.trace.iterations.size(); ++i) {
        CHECK(result.trace.iterations[i].k_after < result.trace.iterations[i].k_before);
    }
    CHECK(result.trace.iterations.back().k_after == result.trace.iterations.back().k_before);
}

TEST_CASE("kmax override is honored and validated") {
    const Dataset data = generate(builtin_mixture("synthetic3"), 7);
    AmsosConfig config;
    config.kmax_override = 5;
    const AmsosResult result = amsos::amsos(data, config);
    CHECK(result.trace.iterations.front().k_before <= 5);

    config.kmax_override = 1;
    CHECK_THROWS_AS(amsos::amsos(data, config), ValidationError);
}

TEST_CASE("trace serializes to one json object per pass") {
    const Dataset data = generate(builtin_mixture("synthetic3"), 7);
    const AmsosResult result = amsos::amsos(data);
    std::ostringstream out;
    write_trace_jsonl(result.trace, out);
    const std::string text = out.str();
    std::size_t lines = 0;
    for (char ch : text) lines += ch == '\n';
    CHECK(lines == result.trace.iterations.size());
    CHECK(text.find("\"k_before\":") != std::string::npos);
    CHECK(text.find("\"ri_after\":") != std::string::npos);
}
