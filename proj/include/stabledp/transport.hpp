#pragma once

#include <vector>

namespace stabledp {

// Min-cost transportation: ship supply[i] to demand[j] at cost[i][j] per
// unit. Supplies and demands must have equal totals. Integral inputs give an
// integral optimal plan, so with Mass = long long the result is exact.
template <typename Mass>
double min_cost_transport(const std::vector<std::vector<double>>& cost,
                          const std::vector<Mass>& supply,
                          const std::vector<Mass>& demand);

extern template double min_cost_transport<double>(const std::vector<std::vector<double>>&,
                                                  const std::vector<double>&,
                                                  const std::vector<double>&);
extern template double min_cost_transport<long long>(const std::vector<std::vector<double>>&,
                                                     const std::vector<long long>&,
                                                     const std::vector<long long>&);

}  // namespace stabledp
