#include "amsos/assignment.hpp"

#include <algorithm>
#include <limits>

#include "amsos/error.hpp"

namespace amsos {

std::int64_t min_cost_assignment(const std::vector<std::vector<std::int64_t>>& cost,
                                 std::vector<int>* match) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) throw ValidationError("empty cost matrix");
    for (const auto& row : cost) {
        if (static_cast<int>(row.size()) != n) throw DimensionError("cost matrix must be square");
    }

    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

    // Row/column potentials with shortest augmenting paths; 1-based with a
    // virtual column 0.
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> minv(n + 1, kInf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = p[j0];
            std::int64_t delta = kInf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    std::int64_t total = 0;
    if (match) match->assign(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (p[j] == 0) continue;
        total += cost[p[j] - 1][j - 1];
        if (match) (*match)[p[j] - 1] = j - 1;
    }
    return total;
}

std::int64_t max_weight_assignment(const std::vector<std::vector<std::int64_t>>& weight,
                                   std::vector<int>* match) {
    std::int64_t top = 0;
    for (const auto& row : weight) {
        for (std::int64_t w : row) top = std::max(top, w);
    }
    std::vector<std::vector<std::int64_t>> cost(weight.size());
    for (std::size_t i = 0; i < weight.size(); ++i) {
        cost[i].reserve(weight[i].size());
        for (std::int64_t w : weight[i]) cost[i].push_back(top - w);
    }
    const std::int64_t min_total = min_cost_assignment(cost, match);
    return static_cast<std::int64_t>(weight.size()) * top - min_total;
}

}  // namespace amsos
