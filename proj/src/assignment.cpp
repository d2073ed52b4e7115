#include "gaf/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace gaf {

std::vector<std::size_t> min_cost_assignment(std::span<const double> cost, std::size_t n) {
  if (cost.size() != n * n) {
    throw std::invalid_argument("min_cost_assignment: cost matrix is not n x n");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based rows/columns; column 0 is the virtual start
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> min_v(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) {
          continue;
        }
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < min_v[j]) {
          min_v[j] = cur;
          way[j] = j0;
        }
        if (min_v[j] < delta) {
          delta = min_v[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_v[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> out(n);
  for (std::size_t j = 1; j <= n; ++j) {
    out[match[j] - 1] = j - 1;
  }
  return out;
}

double matching_distance(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("matching_distance: point sets differ in size");
  }
  const std::size_t n = a.size();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i * n + j] = std::abs(a[i] - b[j]);
    }
  }
  const std::vector<std::size_t> sigma = min_cost_assignment(cost, n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += cost[i * n + sigma[i]];
  }
  return total;
}

}  // namespace gaf
