#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gaf {

/// Minimum-cost perfect matching on a square cost matrix (row-major, n x n) by the
/// Hungarian method with potentials, O(n^3). Returns the column assigned to each row.
std::vector<std::size_t> min_cost_assignment(std::span<const double> cost, std::size_t n);

/// min over bijections sigma of sum |a_i - b_sigma(i)|; sizes must agree.
double matching_distance(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b);

}  // namespace gaf
