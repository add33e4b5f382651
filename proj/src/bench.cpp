#include "amsos/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "amsos/error.hpp"

namespace amsos {

namespace {

const char* algorithm_name(Algorithm a) { return a == Algorithm::amsos ? "amsos" : "kmeans"; }

const char* init_name(SeedMethod s) {
    switch (s) {
        case SeedMethod::spss: return "spss";
        case SeedMethod::kmeanspp: return "kmeanspp";
        default: return "random";
    }
}

Algorithm algorithm_from(const std::string& s) {
    if (s == "amsos") return Algorithm::amsos;
    if (s == "kmeans") return Algorithm::kmeans;
    throw ValidationError("unknown algorithm '" + s + "'");
}

SeedMethod init_from(const std::string& s) {
    if (s == "spss") return SeedMethod::spss;
    if (s == "kmeanspp") return SeedMethod::kmeanspp;
    if (s == "random") return SeedMethod::random;
    throw ValidationError("unknown init '" + s + "'");
}

void validate(const RunSpec& spec) {
    if (spec.repeats < 1) throw ValidationError("repeats must be >= 1");
    if (spec.algorithm == Algorithm::amsos) {
        if (spec.k) throw ValidationError("--k is forbidden for amsos; the cluster count is automatic");
        if (spec.init != SeedMethod::spss) {
            throw ValidationError("amsos always seeds with spss; --init cannot be overridden");
        }
    } else {
        if (!spec.k) throw ValidationError("--k is required for the kmeans baseline");
        if (*spec.k < 2) throw ValidationError("kmeans baseline needs k >= 2");
        if (spec.trace_path) throw ValidationError("--trace is only available for amsos");
    }
}

MetricVals vals_of(const MetricReport& r) {
    return {r.ari, r.ri, r.hi, r.silhouette, r.db, r.cs, r.error_rate_percent};
}

Aggregate aggregate_rows(const std::vector<RunRow>& rows) {
    Aggregate agg;
    auto acc = [](MetricVals& into, const MetricVals& v, auto op) {
        into.ari = op(into.ari, v.ari);
        into.ri = op(into.ri, v.ri);
        into.hi = op(into.hi, v.hi);
        into.sil = op(into.sil, v.sil);
        into.db = op(into.db, v.db);
        into.cs = op(into.cs, v.cs);
        into.err = op(into.err, v.err);
    };
    const MetricVals first = vals_of(rows.front().report);
    agg.mean = MetricVals{};
    agg.best = first;
    agg.worst = first;
    for (const auto& row : rows) {
        const MetricVals v = vals_of(row.report);
        acc(agg.mean, v, [](double a, double b) { return a + b; });
        agg.mean_output_k += row.report.k;
    }
    const auto n = static_cast<double>(rows.size());
    acc(agg.mean, MetricVals{n, n, n, n, n, n, n}, [](double a, double b) { return a / b; });
    agg.mean_output_k /= n;
    for (const auto& row : rows) {
        const MetricVals v = vals_of(row.report);
        // Higher is better for ARI/RI/HI/SIL, lower for DB/CS/err.
        agg.best.ari = std::max(agg.best.ari, v.ari);
        agg.best.ri = std::max(agg.best.ri, v.ri);
        agg.best.hi = std::max(agg.best.hi, v.hi);
        agg.best.sil = std::max(agg.best.sil, v.sil);
        agg.best.db = std::min(agg.best.db, v.db);
        agg.best.cs = std::min(agg.best.cs, v.cs);
        agg.best.err = std::min(agg.best.err, v.err);
        agg.worst.ari = std::min(agg.worst.ari, v.ari);
        agg.worst.ri = std::min(agg.worst.ri, v.ri);
        agg.worst.hi = std::min(agg.worst.hi, v.hi);
        agg.worst.sil = std::min(agg.worst.sil, v.sil);
        agg.worst.db = std::max(agg.worst.db, v.db);
        agg.worst.cs = std::max(agg.worst.cs, v.cs);
        agg.worst.err = std::max(agg.worst.err, v.err);
    }
    return agg;
}

}  // namespace

CentroidTable pair_centroids(const Matrix& obtained, const std::vector<Vec>& reference_means) {
    struct Cand {
        double dist;
        std::size_t i, j;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < obtained.rows(); ++i) {
        for (std::size_t j = 0; j < reference_means.size(); ++j) {
            cands.push_back({euclidean_distance(obtained.row(i), reference_means[j]), i, j});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    std::vector<int> match(obtained.rows(), -1);
    std::vector<bool> ref_used(reference_means.size(), false);
    for (const auto& c : cands) {
        if (match[c.i] < 0 && !ref_used[c.j]) {
            match[c.i] = static_cast<int>(c.j);
            ref_used[c.j] = true;
        }
    }

    CentroidTable table;
    for (std::size_t i = 0; i < obtained.rows(); ++i) {
        CentroidEntry entry;
        entry.obtained = obtained.row_copy(i);
        if (match[i] >= 0) {
            const Vec& ref = reference_means[static_cast<std::size_t>(match[i])];
            entry.reference = ref;
            double dev = 0.0;
            for (std::size_t c = 0; c < ref.size(); ++c) {
                dev = std::max(dev, std::abs((*entry.obtained)[c] - ref[c]));
            }
            entry.max_abs_deviation = dev;
        }
        table.rows.push_back(std::move(entry));
    }
    for (std::size_t j = 0; j < reference_means.size(); ++j) {
        if (!ref_used[j]) {
            table.rows.push_back(CentroidEntry{std::nullopt, reference_means[j], std::nullopt});
        }
    }
    return table;
}

BenchReport run(const RunSpec& spec) {
    validate(spec);

    std::optional<MixtureSpec> mixture;
    std::optional<Dataset> data;
    if (is_builtin_mixture(spec.dataset)) {
        mixture = builtin_mixture(spec.dataset);
        data = generate(*mixture, spec.seed);
    } else {
        data = load_csv(spec.dataset, spec.label_column);
    }
    if (spec.zscore) data = zscored(*data);
    const std::vector<int>& truth = data->labels();  // all reports need a reference

    BenchReport report;
    report.dataset = spec.dataset;
    report.algorithm = spec.algorithm;
    report.init = spec.algorithm == Algorithm::amsos ? SeedMethod::spss : spec.init;
    report.seed = spec.seed;
    report.repeats = spec.repeats;
    report.zscore = spec.zscore;

    std::optional<AmsosResult> first_result;
    for (int r = 0; r < spec.repeats; ++r) {
        RunRow row;
        row.run_index = r;
        if (spec.algorithm == Algorithm::amsos) {
            AmsosResult result = amsos(*data);
            row.run_seed = spec.seed;  // the algorithm has no stochastic state
            row.input_k = kmax_for(data->size());
            row.report = full_report(*data, result.partition, truth);
            if (r == 0) {
                first_result = std::move(result);
            } else if (!(result == *first_result)) {
                throw Error("amsos produced different results across repeats");
            }
        } else {
            const std::uint64_t run_seed = derive_seed(spec.seed, static_cast<std::uint64_t>(r));
            Rng rng(run_seed);
            const int k = *spec.k;
            SeedSet seeds = spec.init == SeedMethod::spss      ? spss_seeds(*data, k)
                            : spec.init == SeedMethod::kmeanspp ? kmeanspp_seeds(*data, k, rng)
                                                                : random_seeds(*data, k, rng);
            const KmeansResult km = lloyd(*data, seeds);
            row.run_seed = run_seed;
            row.input_k = k;
            row.report = full_report(*data, km.partition, truth);
        }
        report.runs.push_back(std::move(row));
    }

    report.aggregate = aggregate_rows(report.runs);
    if (spec.algorithm == Algorithm::amsos) {
        report.amsos_rows_identical = true;  // verified above, run against run 0
        if (mixture) {
            std::vector<Vec> means;
            for (const auto& comp : mixture->components) means.push_back(comp.mean);
            report.centroids = pair_centroids(first_result->partition.centroids(), means);
        }
        if (spec.trace_path) {
            std::ofstream out(*spec.trace_path);
            if (!out) throw IngestionError("cannot write trace file '" + *spec.trace_path + "'");
            write_trace_jsonl(first_result->trace, out);
        }
    }
    return report;
}

namespace {

nlohmann::ordered_json vals_json(const MetricVals& v) {
    return {{"ari", v.ari}, {"ri", v.ri},   {"hi", v.hi}, {"sil", v.sil},
            {"db", v.db},   {"cs", v.cs}, {"err", v.err}};
}

MetricVals vals_from_json(const nlohmann::json& j) {
    return {j.at("ari"), j.at("ri"), j.at("hi"), j.at("sil"), j.at("db"), j.at("cs"), j.at("err")};
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_coords(const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += fmt17(v[i]);
    }
    return out;
}

Vec parse_coords(const std::string& cell) {
    Vec out;
    std::stringstream ss(cell);
    std::string part;
    while (std::getline(ss, part, ';')) out.push_back(std::strtod(part.c_str(), nullptr));
    return out;
}

}  // namespace

std::string to_json(const BenchReport& report) {
    nlohmann::ordered_json j;
    j["dataset"] = report.dataset;
    j["algorithm"] = algorithm_name(report.algorithm);
    j["init"] = init_name(report.init);
    j["seed"] = report.seed;
    j["repeats"] = report.repeats;
    j["zscore"] = report.zscore;
    auto& runs = j["runs"] = nlohmann::ordered_json::array();
    for (const auto& row : report.runs) {
        nlohmann::ordered_json r;
        r["run"] = row.run_index;
        r["run_seed"] = row.run_seed;
        r["input_k"] = row.input_k;
        r["k"] = row.report.k;
        r["ari"] = row.report.ari;
        r["ri"] = row.report.ri;
        r["hi"] = row.report.hi;
        r["sil"] = row.report.silhouette;
        r["db"] = row.report.db;
        r["cs"] = row.report.cs;
        r["err"] = row.report.error_rate_percent;
        runs.push_back(std::move(r));
    }
    j["aggregate"] = {{"mean", vals_json(report.aggregate.mean)},
                      {"best", vals_json(report.aggregate.best)},
                      {"worst", vals_json(report.aggregate.worst)},
                      {"mean_k", report.aggregate.mean_output_k}};
    if (report.amsos_rows_identical) j["amsos_identical"] = *report.amsos_rows_identical;
    if (report.centroids) {
        auto& rows = j["centroids"] = nlohmann::ordered_json::array();
        for (const auto& entry : report.centroids->rows) {
            nlohmann::ordered_json e;
            e["obtained"] = entry.obtained ? nlohmann::ordered_json(*entry.obtained)
                                           : nlohmann::ordered_json(nullptr);
            e["reference"] = entry.reference ? nlohmann::ordered_json(*entry.reference)
                                             : nlohmann::ordered_json(nullptr);
            e["max_abs_deviation"] = entry.max_abs_deviation
                                         ? nlohmann::ordered_json(*entry.max_abs_deviation)
                                         : nlohmann::ordered_json(nullptr);
            rows.push_back(std::move(e));
        }
    }
    return j.dump(2) + "\n";
}

BenchReport bench_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    BenchReport report;
    report.dataset = j.at("dataset").get<std::string>();
    report.algorithm = algorithm_from(j.at("algorithm").get<std::string>());
    report.init = init_from(j.at("init").get<std::string>());
    report.seed = j.at("seed").get<std::uint64_t>();
    report.repeats = j.at("repeats").get<int>();
    report.zscore = j.at("zscore").get<bool>();
    for (const auto& r : j.at("runs")) {
        RunRow row;
        row.run_index = r.at("run").get<int>();
        row.run_seed = r.at("run_seed").get<std::uint64_t>();
        row.input_k = r.at("input_k").get<int>();
        row.report.k = r.at("k").get<int>();
        row.report.ari = r.at("ari").get<double>();
        row.report.ri = r.at("ri").get<double>();
        row.report.hi = r.at("hi").get<double>();
        row.report.silhouette = r.at("sil").get<double>();
        row.report.db = r.at("db").get<double>();
        row.report.cs = r.at("cs").get<double>();
        row.report.error_rate_percent = r.at("err").get<double>();
        report.runs.push_back(std::move(row));
    }
    const auto& agg = j.at("aggregate");
    report.aggregate.mean = vals_from_json(agg.at("mean"));
    report.aggregate.best = vals_from_json(agg.at("best"));
    report.aggregate.worst = vals_from_json(agg.at("worst"));
    report.aggregate.mean_output_k = agg.at("mean_k").get<double>();
    if (j.contains("amsos_identical")) report.amsos_rows_identical = j.at("amsos_identical").get<bool>();
    if (j.contains("centroids")) {
        CentroidTable table;
        for (const auto& e : j.at("centroids")) {
            CentroidEntry entry;
            if (!e.at("obtained").is_null()) entry.obtained = e.at("obtained").get<Vec>();
            if (!e.at("reference").is_null()) entry.reference = e.at("reference").get<Vec>();
            if (!e.at("max_abs_deviation").is_null()) {
                entry.max_abs_deviation = e.at("max_abs_deviation").get<double>();
            }
            table.rows.push_back(std::move(entry));
        }
        report.centroids = std::move(table);
    }
    return report;
}

std::string to_csv(const BenchReport& report) {
    std::string out;
    out += "meta," + report.dataset + ',' + algorithm_name(report.algorithm) + ',' +
           init_name(report.init) + ',' + std::to_string(report.seed) + ',' +
           std::to_string(report.repeats) + ',' + (report.zscore ? "1" : "0") + '\n';
    for (const auto& row : report.runs) {
        out += "run," + std::to_string(row.run_index) + ',' + std::to_string(row.run_seed) + ',' +
               std::to_string(row.input_k) + ',' + std::to_string(row.report.k) + ',' +
               row.report.to_csv_row() + '\n';
    }
    auto vals_row = [](const MetricVals& v) {
        return fmt17(v.ari) + ',' + fmt17(v.ri) + ',' + fmt17(v.hi) + ',' + fmt17(v.sil) + ',' +
               fmt17(v.db) + ',' + fmt17(v.cs) + ',' + fmt17(v.err);
    };
    out += "agg,mean," + fmt17(report.aggregate.mean_output_k) + ',' +
           vals_row(report.aggregate.mean) + '\n';
    out += "agg,best,," + vals_row(report.aggregate.best) + '\n';
    out += "agg,worst,," + vals_row(report.aggregate.worst) + '\n';
    if (report.amsos_rows_identical) {
        out += std::string("flag,amsos_identical,") + (*report.amsos_rows_identical ? "1" : "0") +
               '\n';
    }
    if (report.centroids) {
        for (const auto& entry : report.centroids->rows) {
            out += "centroid,";
            out += entry.obtained ? join_coords(*entry.obtained) : "";
            out += ',';
            out += entry.reference ? join_coords(*entry.reference) : "";
            out += ',';
            out += entry.max_abs_deviation ? fmt17(*entry.max_abs_deviation) : "";
            out += '\n';
        }
    }
    return out;
}

BenchReport bench_from_csv(const std::string& text) {
    BenchReport report;
    std::stringstream lines(text);
    std::string line;
    bool saw_centroids = false;
    CentroidTable table;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();

        if (cells[0] == "meta") {
            report.dataset = cells.at(1);
            report.algorithm = algorithm_from(cells.at(2));
            report.init = init_from(cells.at(3));
            report.seed = std::stoull(cells.at(4));
            report.repeats = std::stoi(cells.at(5));
            report.zscore = cells.at(6) == "1";
        } else if (cells[0] == "run") {
            RunRow row;
            row.run_index = std::stoi(cells.at(1));
            row.run_seed = std::stoull(cells.at(2));
            row.input_k = std::stoi(cells.at(3));
            row.report.k = std::stoi(cells.at(4));
            row.report.ari = std::strtod(cells.at(5).c_str(), nullptr);
            row.report.ri = std::strtod(cells.at(6).c_str(), nullptr);
            row.report.hi = std::strtod(cells.at(7).c_str(), nullptr);
            row.report.silhouette = std::strtod(cells.at(8).c_str(), nullptr);
            row.report.db = std::strtod(cells.at(9).c_str(), nullptr);
            row.report.cs = std::strtod(cells.at(10).c_str(), nullptr);
            row.report.error_rate_percent = std::strtod(cells.at(11).c_str(), nullptr);
            report.runs.push_back(std::move(row));
        } else if (cells[0] == "agg") {
            MetricVals v{std::strtod(cells.at(3).c_str(), nullptr),
                         std::strtod(cells.at(4).c_str(), nullptr),
                         std::strtod(cells.at(5).c_str(), nullptr),
                         std::strtod(cells.at(6).c_str(), nullptr),
                         std::strtod(cells.at(7).c_str(), nullptr),
                         std::strtod(cells.at(8).c_str(), nullptr),
                         std::strtod(cells.at(9).c_str(), nullptr)};
            if (cells.at(1) == "mean") {
                report.aggregate.mean = v;
                report.aggregate.mean_output_k = std::strtod(cells.at(2).c_str(), nullptr);
            } else if (cells.at(1) == "best") {
                report.aggregate.best = v;
            } else {
                report.aggregate.worst = v;
            }
        } else if (cells[0] == "flag" && cells.at(1) == "amsos_identical") {
            report.amsos_rows_identical = cells.at(2) == "1";
        } else if (cells[0] == "centroid") {
            saw_centroids = true;
            CentroidEntry entry;
            if (!cells.at(1).empty()) entry.obtained = parse_coords(cells.at(1));
            if (!cells.at(2).empty()) entry.reference = parse_coords(cells.at(2));
            if (!cells.at(3).empty()) {
                entry.max_abs_deviation = std::strtod(cells.at(3).c_str(), nullptr);
            }
            table.rows.push_back(std::move(entry));
        } else {
            throw ValidationError("unknown CSV row type '" + cells[0] + "'");
        }
    }
    if (saw_centroids) report.centroids = std::move(table);
    return report;
}

std::string to_markdown(const BenchReport& report) {
    auto fmt3 = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.3f", v);
        return std::string(buf);
    };
    std::string out;
    out += "### " + report.dataset + " / " + algorithm_name(report.algorithm);
    if (report.algorithm == Algorithm::kmeans) out += std::string("+") + init_name(report.init);
    out += " (seed " + std::to_string(report.seed) + ", repeats " +
           std::to_string(report.repeats) + (report.zscore ? ", z-scored" : "") + ")\n\n";
    out += "| run | i/p k | o/p k | ARI | RI | HI | SIL | DB | CS | err |\n";
    out += "|----:|------:|------:|----:|---:|---:|----:|---:|---:|----:|\n";
    for (const auto& row : report.runs) {
        const auto& m = row.report;
        out += "| " + std::to_string(row.run_index) + " | " + std::to_string(row.input_k) + " | " +
               std::to_string(m.k) + " | " + fmt3(m.ari) + " | " + fmt3(m.ri) + " | " +
               fmt3(m.hi) + " | " + fmt3(m.silhouette) + " | " + fmt3(m.db) + " | " + fmt3(m.cs) +
               " | " + fmt3(m.error_rate_percent) + " |\n";
    }
    auto agg_row = [&](const char* tag, const MetricVals& v, const std::string& k_cell) {
        out += std::string("| ") + tag + " | | " + k_cell + " | " + fmt3(v.ari) + " | " +
               fmt3(v.ri) + " | " + fmt3(v.hi) + " | " + fmt3(v.sil) + " | " + fmt3(v.db) + " | " +
               fmt3(v.cs) + " | " + fmt3(v.err) + " |\n";
    };
    agg_row("mean", report.aggregate.mean, fmt3(report.aggregate.mean_output_k));
    agg_row("best", report.aggregate.best, "");
    agg_row("worst", report.aggregate.worst, "");
    if (report.amsos_rows_identical) {
        out += "\nAll repeats produced identical partitions: ";
        out += *report.amsos_rows_identical ? "yes" : "NO";
        out += "\n";
    }
    if (report.centroids) {
        auto fmt_vec = [](const Vec& v) {
            std::string s;
            char buf[40];
            for (std::size_t i = 0; i < v.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.4f", v[i]);
                if (i) s += ' ';
                s += buf;
            }
            return s;
        };
        out += "\n| obtained centroid | reference mean | max coord deviation |\n";
        out += "|------------------:|---------------:|--------------------:|\n";
        for (const auto& entry : report.centroids->rows) {
            out += "| " + (entry.obtained ? fmt_vec(*entry.obtained) : std::string("(unpaired)")) +
                   " | " +
                   (entry.reference ? fmt_vec(*entry.reference) : std::string("(unpaired)")) +
                   " | " + (entry.max_abs_deviation ? fmt3(*entry.max_abs_deviation) : std::string("-")) +
                   " |\n";
        }
    }
    return out;
}

std::string render(const BenchReport& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::json: return to_json(report);
        case OutputFormat::csv: return to_csv(report);
        default: return to_markdown(report);
    }
}

}  // namespace amsos
