#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace scatterlab {

// 1-based ranks; ties receive the average of their positions.
std::vector<double> average_ranks(std::span<const double> x);

// Pearson correlation; 0 when either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

double spearman(std::span<const double> x, std::span<const double> y);

struct AxisAssignment {
  std::size_t parameter;
  std::size_t axis;
  double abs_rho;
};

// Greedy matching on descending |ρ|: each parameter (row) gets a distinct axis
// (column). Ties break toward the lower parameter, then the lower axis.
// Result is indexed by parameter.
std::vector<AxisAssignment> greedy_axis_assignment(const Eigen::MatrixXd& abs_rho);

}  // namespace scatterlab
