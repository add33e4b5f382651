#ifndef AMSOS_ASSIGNMENT_HPP
#define AMSOS_ASSIGNMENT_HPP

#include <cstdint>
#include <vector>

namespace amsos {

/// Exact minimum-cost perfect assignment on a square cost matrix
/// (Hungarian algorithm with potentials, O(n^3)). Returns the total cost;
/// `match`, when given, receives the column chosen for each row.
std::int64_t min_cost_assignment(const std::vector<std::vector<std::int64_t>>& cost,
                                 std::vector<int>* match = nullptr);

/// Maximum-weight counterpart, used to match predicted clusters to classes.
std::int64_t max_weight_assignment(const std::vector<std::vector<std::int64_t>>& weight,
                                   std::vector<int>* match = nullptr);

}  // namespace amsos

#endif  // AMSOS_ASSIGNMENT_HPP
