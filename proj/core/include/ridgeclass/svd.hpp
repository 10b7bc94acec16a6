#pragma once

#include <cstddef>
#include <vector>

#include "ridgeclass/matrix.hpp"

namespace ridgeclass {

/// All min(R, C) singular values of a matrix, zeros included, descending.
struct SingularSpectrum {
  std::vector<double> values;
  std::size_t source_rows = 0;
  std::size_t source_cols = 0;
  /// Jacobi sweeps performed; not part of the value.
  int sweeps = 0;
};

struct JacobiOptions {
  /// A column pair counts as orthogonal once |<a_p, a_q>| <= tolerance * |a_p| |a_q|.
  double tolerance = 1e-12;
  int max_sweeps = 60;
};

/// One-sided (Hestenes) Jacobi: plane rotations are applied to column pairs
/// of the taller orientation until all pairs are orthogonal, then the column
/// norms are the singular values. U and V are not accumulated.
SingularSpectrum singular_values(const Matrix& matrix, const JacobiOptions& options = {});

}  // namespace ridgeclass
