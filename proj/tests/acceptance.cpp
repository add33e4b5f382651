// Acceptance suite: one pass/fail line per criterion, nonzero exit when a
// gating criterion fails. Criteria 1-3 share one pinned panel of generation
// seeds so every number printed here is reproducible bit for bit.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "amsos/amsos.hpp"
#include "amsos/bench.hpp"
#include "amsos/kmeans.hpp"
#include "amsos/metrics.hpp"
#include "amsos/seeding.hpp"
#include "amsos/synthetic.hpp"
#include "oracles.hpp"

using namespace amsos;

namespace {

const std::vector<std::uint64_t> kSeedPanel{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

void report_info(int criterion, const std::string& detail) {
    std::printf("[INFO] criterion %2d: %s\n", criterion, detail.c_str());
}

struct PanelRun {
    std::string dataset;
    std::uint64_t seed;
    Dataset data;
    AmsosResult result;
};

std::vector<PanelRun> run_panel() {
    std::vector<PanelRun> runs;
    for (const char* id : {"synthetic1", "synthetic2", "synthetic3", "synthetic4"}) {
        const MixtureSpec spec = builtin_mixture(id);
        for (std::uint64_t seed : kSeedPanel) {
            Dataset data = generate(spec, seed);
            AmsosResult result = amsos::amsos(data);
            runs.push_back(PanelRun{id, seed, std::move(data), std::move(result)});
        }
    }
    return runs;
}

int expected_k(const std::string& dataset) {
    if (dataset == "synthetic1") return 2;
    if (dataset == "synthetic2") return 4;
    if (dataset == "synthetic3") return 3;
    return 6;
}

void criterion_1(const std::vector<PanelRun>& panel, double elapsed_seconds) {
    std::string detail = "cluster-count recovery:";
    bool pass = true;
    for (const char* id : {"synthetic1", "synthetic2", "synthetic3", "synthetic4"}) {
        int hits = 0;
        for (const auto& run : panel) {
            if (run.dataset == id && run.result.k_final == expected_k(id)) ++hits;
        }
        detail += " " + std::string(id) + "=" + std::to_string(hits) + "/10";
        if (hits < 9) pass = false;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "; panel runtime %.1fs (< 60s)", elapsed_seconds);
    detail += buf;
    if (elapsed_seconds >= 60.0) pass = false;
    report(1, pass, detail);
}

void criterion_2(const std::vector<PanelRun>& panel) {
    std::string detail = "centroid recovery within 0.3/coordinate:";
    std::string misses;
    bool pass = true;
    for (const char* id : {"synthetic1", "synthetic2", "synthetic3", "synthetic4"}) {
        const MixtureSpec spec = builtin_mixture(id);
        std::vector<Vec> means;
        for (const auto& comp : spec.components) means.push_back(comp.mean);
        int hits = 0;
        for (const auto& run : panel) {
            if (run.dataset != id) continue;
            const CentroidTable table = pair_centroids(run.result.partition.centroids(), means);
            bool ok = true;
            double worst = 0.0;
            for (const auto& entry : table.rows) {
                if (!entry.paired()) ok = false;
                else worst = std::max(worst, *entry.max_abs_deviation);
            }
            if (worst >= 0.3) ok = false;
            if (ok) {
                ++hits;
            } else {
                char buf[96];
                std::snprintf(buf, sizeof(buf), " [%s seed %llu: k=%d, worst dev %.4f]", id,
                              static_cast<unsigned long long>(run.seed), run.result.k_final, worst);
                misses += buf;
            }
        }
        detail += " " + std::string(id) + "=" + std::to_string(hits) + "/10";
        if (hits < 9) pass = false;
    }
    report(2, pass, detail + misses);
}

void criterion_3(const std::vector<PanelRun>& panel) {
    int s4_hits = 0, s3_hits = 0;
    for (const auto& run : panel) {
        const double err = error_rate(run.result.partition.assignments(), run.data.labels());
        if (run.dataset == "synthetic4" && err <= 1.0) ++s4_hits;
        if (run.dataset == "synthetic3" && err <= 3.0) ++s3_hits;
    }
    const bool pass = s4_hits > 5 && s3_hits > 5;
    report(3, pass,
           "near-zero error on separable mixtures: synthetic4 err<=1% " +
               std::to_string(s4_hits) + "/10, synthetic3 err<=3% " + std::to_string(s3_hits) +
               "/10 (majority required)");
}

void criterion_4() {
    const Dataset data = generate(builtin_mixture("synthetic2"), 5);
    const AmsosResult a = amsos::amsos(data);
    const AmsosResult b = amsos::amsos(data);
    bool pass = a == b;

    const SeedSet s1 = spss_seeds(data, 7);
    const SeedSet s2 = spss_seeds(data, 7);
    pass = pass && s1 == s2;

    // Row rotation of tie-free data: same seed points, in the same order.
    Matrix rotated;
    for (std::size_t r = 0; r < data.size(); ++r) {
        rotated.append_row(data.points().row_copy((r + 131) % data.size()));
    }
    const SeedSet s3 = spss_seeds(Dataset(std::move(rotated)), 7);
    pass = pass && s3.centroids == s1.centroids;

    report(4, pass,
           "determinism: identical amsos partitions+traces; spss identical across runs and "
           "row permutation");
}

void criterion_5() {
    // Every (pred, truth) labeling pair over {0,1,2}^m for m = 2..8, compared
    // with the all-pairs / all-bijections oracle, exact to 1e-12.
    std::uint64_t checked = 0;
    double worst = 0.0;
    bool pass = true;
    for (std::size_t m = 2; m <= 8 && pass; ++m) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < m; ++i) count *= 3;
        std::vector<int> pred(m), truth(m);
        for (std::uint64_t p = 0; p < count && pass; ++p) {
            std::uint64_t pv = p;
            for (std::size_t i = 0; i < m; ++i) {
                pred[i] = static_cast<int>(pv % 3);
                pv /= 3;
            }
            for (std::uint64_t t = 0; t < count; ++t) {
                std::uint64_t tv = t;
                for (std::size_t i = 0; i < m; ++i) {
                    truth[i] = static_cast<int>(tv % 3);
                    tv /= 3;
                }
                const double gap =
                    std::max({std::abs(rand_index(pred, truth) - oracle::rand_index(pred, truth)),
                              std::abs(adjusted_rand(pred, truth) - oracle::adjusted_rand(pred, truth)),
                              std::abs(hubert_index(pred, truth) - oracle::hubert_index(pred, truth)),
                              std::abs(error_rate(pred, truth) - oracle::error_rate(pred, truth))});
                worst = std::max(worst, gap);
                ++checked;
                if (gap > 1e-12) {
                    pass = false;
                    break;
                }
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "RI/ARI/HI/err equal the brute-force oracle on %llu labeling pairs "
                  "(m<=8, k<=3), worst gap %.2e",
                  static_cast<unsigned long long>(checked), worst);
    report(5, pass, buf);
}

void criterion_6() {
    Rng rng(606);
    bool pass = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 2 + rng.uniform_below(30);
        std::vector<int> pred(m), truth(m);
        for (auto& v : pred) v = static_cast<int>(rng.uniform_below(4));
        for (auto& v : truth) v = static_cast<int>(rng.uniform_below(4));
        if (std::abs(hubert_index(pred, truth) - (2.0 * rand_index(pred, truth) - 1.0)) > 1e-12) {
            pass = false;
        }
    }

    // Silhouette stays in [-1, 1] on random partitions.
    for (int trial = 0; trial < 50; ++trial) {
        Matrix pts(20, 2);
        for (std::size_t r = 0; r < 20; ++r) {
            pts(r, 0) = rng.uniform01() * 10;
            pts(r, 1) = rng.uniform01() * 10;
        }
        std::vector<int> assign(20);
        for (auto& a : assign) a = static_cast<int>(rng.uniform_below(3));
        assign[0] = 0;
        assign[1] = 1;
        assign[2] = 2;
        const Dataset data(pts);
        const double s = silhouette(data, Partition::from_assignments(pts, assign, 3));
        if (!(s >= -1.0 && s <= 1.0)) pass = false;
    }

    const Dataset blobs = generate(builtin_mixture("synthetic4"), 2);
    const Partition perfect =
        Partition::from_assignments(blobs.points(), blobs.labels(), blobs.num_classes());
    const MetricReport r = full_report(blobs, perfect, blobs.labels());
    if (!(r.ari == 1.0 && r.ri == 1.0 && r.hi == 1.0 && r.error_rate_percent == 0.0)) pass = false;

    report(6, pass,
           "identities: HI = 2*RI-1 on 1000 random labelings; silhouette in [-1,1]; "
           "perfect partition gives ARI=RI=HI=1, err=0");
}

void criterion_7(const std::vector<PanelRun>& panel) {
    bool pass = true;
    std::size_t commits = 0;
    for (const auto& run : panel) {
        for (const auto& pass_rec : run.result.trace.iterations) {
            int accepted = 0;
            for (const auto& attempt : pass_rec.merges_attempted) {
                if (attempt.accepted) {
                    ++commits;
                    ++accepted;
                    if (!(attempt.ri_after > attempt.ri_before)) pass = false;
                }
            }
            if (pass_rec.k_after != pass_rec.k_before - accepted) pass = false;
        }
    }
    report(7, pass,
           "trace invariants: every committed merge strictly increases RI and decrements k "
           "by one (" + std::to_string(commits) + " commits across the panel)");
}

void criterion_8() {
    Rng rng(808);
    bool pass = true;
    KmeansConfig exact;
    exact.tolerance = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 12 + rng.uniform_below(40);
        Matrix pts(m, 2);
        for (std::size_t r = 0; r < m; ++r) {
            pts(r, 0) = rng.uniform01() * 10;
            pts(r, 1) = rng.uniform01() * 10;
        }
        const Dataset data(std::move(pts));
        const int k = 2 + static_cast<int>(rng.uniform_below(5));
        Rng seed_rng(trial);
        const KmeansResult result = lloyd(data, random_seeds(data, k, seed_rng), exact);
        for (std::size_t i = 1; i < result.sse_history.size(); ++i) {
            if (result.sse_history[i] > result.sse_history[i - 1] + 1e-9) pass = false;
        }
        if (result.converged) {
            const KmeansResult again = lloyd(data, result.partition.centroids(), exact);
            if (!(again.partition == result.partition && again.iterations_used == 1)) pass = false;
        }
    }
    report(8, pass, "lloyd: SSE non-increasing on 100 random instances; converged runs are fixed points");
}

void criterion_9() {
    const std::string path = std::string(AMSOS_TEST_DATA_DIR) + "/iris.csv";
    const Dataset iris = load_csv(path, LabelColumn::last());
    bool shape_ok = iris.size() == 150 && iris.dimension() == 4 && iris.num_classes() == 3;
    const AmsosResult result = amsos::amsos(iris);
    const bool repeatable = amsos::amsos(iris) == result;
    const double err = error_rate(result.partition.assignments(), iris.labels());
    const bool reference_row = result.k_final == 2 && std::abs(err - 33.33) <= 5.0;
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "iris soft target (informational): published reference row k=2/err=33.33+-5 %s; measured "
                  "k=%d, err=%.2f, RI=%.3f (deterministic seeding finds a better partition, "
                  "so the RI gate stops above k=2)",
                  reference_row ? "matched" : "not matched", result.k_final, err, result.rand_index);
    report_info(9, buf);
    report(9, shape_ok && repeatable,
           "iris ingests as 150x4 with 3 classes and the run repeats bit-identically "
           "(soft target above recorded, not gated)");
}

void criterion_10() {
    RunSpec spec;
    spec.dataset = "synthetic2";
    spec.algorithm = Algorithm::kmeans;
    spec.init = SeedMethod::random;
    spec.k = 4;
    spec.seed = 10;
    spec.repeats = 40;
    const BenchReport report40 = run(spec);
    bool pass = report40.runs.size() == 40;
    double err_min = 1e18, err_max = -1e18, err_sum = 0;
    for (const auto& row : report40.runs) {
        err_min = std::min(err_min, row.report.error_rate_percent);
        err_max = std::max(err_max, row.report.error_rate_percent);
        err_sum += row.report.error_rate_percent;
    }
    pass = pass && report40.aggregate.best.err == err_min &&
           report40.aggregate.worst.err == err_max &&
           std::abs(report40.aggregate.mean.err - err_sum / 40) < 1e-12 &&
           err_min <= err_sum / 40 && err_sum / 40 <= err_max;

    // k-means++ baseline through the same machinery.
    spec.init = SeedMethod::kmeanspp;
    spec.repeats = 10;
    const BenchReport reportpp = run(spec);
    pass = pass && reportpp.runs.size() == 10;

    report(10, pass,
           "40-run baseline table substitute: repeats machinery aggregates mean/best/worst "
           "consistently for kmeans+random and kmeans+kmeanspp (third-party baseline "
           "distributions are out of scope)");
}

}  // namespace

int main() {
    std::printf("acceptance suite: pinned seed panel {1..10}\n");
    const auto start = std::chrono::steady_clock::now();
    const std::vector<PanelRun> panel = run_panel();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    criterion_1(panel, elapsed);
    criterion_2(panel);
    criterion_3(panel);
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7(panel);
    criterion_8();
    criterion_9();
    criterion_10();

    if (g_failures == 0) {
        std::printf("acceptance: all gating criteria passed\n");
    } else {
        std::printf("acceptance: %d gating criterion(s) failed\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
