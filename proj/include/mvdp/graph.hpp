#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <string>

#include "mvdp/errors.hpp"

namespace mvdp {

template <typename Scalar>
using DistanceMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using DistanceMatrixi = DistanceMatrix<int>;

/// Throws InvalidMatrix unless `distance` is square with a zero diagonal and
/// non-negative entries.
template <typename Derived>
void check_distance_matrix(const Eigen::MatrixBase<Derived>& distance) {
  using Scalar = typename Derived::Scalar;
  if (distance.rows() != distance.cols()) {
    throw InvalidMatrix("distance matrix is " + std::to_string(distance.rows()) + "x" +
                        std::to_string(distance.cols()) + ", expected square");
  }
  for (Eigen::Index i = 0; i < distance.rows(); ++i) {
    for (Eigen::Index j = 0; j < distance.cols(); ++j) {
      if (distance(i, j) < Scalar(0)) {
        throw InvalidMatrix("negative distance at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
      }
    }
    if (distance(i, i) != Scalar(0)) {
      throw InvalidMatrix("non-zero diagonal at " + std::to_string(i));
    }
  }
}

/// All-pairs shortest paths (Floyd-Warshall). The result is elementwise no
/// larger than the input and satisfies the triangle inequality.
template <typename Derived>
typename Derived::PlainObject shortest_path_closure(const Eigen::MatrixBase<Derived>& distance) {
  check_distance_matrix(distance);
  typename Derived::PlainObject closed = distance;
  const Eigen::Index n = closed.rows();
  for (Eigen::Index via = 0; via < n; ++via) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto to_via = closed(i, via);
      for (Eigen::Index j = 0; j < n; ++j) {
        closed(i, j) = std::min(closed(i, j), to_via + closed(via, j));
      }
    }
  }
  return closed;
}

/// Mean over all I*I entries, diagonal included.
template <typename Derived>
double mean_distance(const Eigen::MatrixBase<Derived>& distance) {
  if (distance.size() == 0) return 0.0;
  return distance.template cast<double>().mean();
}

template <typename Derived>
bool satisfies_triangle_inequality(const Eigen::MatrixBase<Derived>& distance) {
  const Eigen::Index n = distance.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index u = 0; u < n; ++u)
      for (Eigen::Index j = 0; j < n; ++j)
        if (distance(i, j) > distance(i, u) + distance(u, j)) return false;
  return true;
}

/// Fully connected station graph with integer travel times in time slices.
struct StationGraph {
  DistanceMatrixi distance;

  int station_count() const { return static_cast<int>(distance.rows()); }
  int operator()(int from, int to) const { return distance(from, to); }
  bool operator==(const StationGraph& other) const {
    return distance.rows() == other.distance.rows() && distance.cols() == other.distance.cols() &&
           distance == other.distance;
  }
};

}  // namespace mvdp
