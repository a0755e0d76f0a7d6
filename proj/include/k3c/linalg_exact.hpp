#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "k3c/rat.hpp"

namespace k3c {

using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> rref_in_place(RatMatrix& m);

int rank_of(RatMatrix m);

/// Basis of the right kernel {x : m x = 0}, as matrix columns.
RatMatrix kernel_basis(const RatMatrix& m);

Rat det_of(RatMatrix m);

/// Incremental sparse Gaussian elimination over Q. Rows are sparse maps
/// column -> coefficient; the pivot of each stored row is its smallest
/// column index. Exact throughout.
class SparseReducer {
 public:
  using Row = std::map<int, Rat>;

  /// Reduce the row against the current table; if a nonzero remainder is
  /// left, add it as a new pivot row. Returns true if the rank grew.
  bool add_row(Row r);

  /// Reduce without inserting; true iff the row lies in the current span.
  bool in_span(Row r) const;

  int rank() const { return static_cast<int>(pivots_.size()); }

 private:
  void reduce(Row& r) const;
  std::map<int, Row> pivots_;  // pivot column -> row (normalized, pivot coeff 1)
};

}  // namespace k3c
