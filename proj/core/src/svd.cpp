#include "ridgeclass/svd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ridgeclass/error.hpp"

namespace ridgeclass {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SingularSpectrum singular_values(const Matrix& matrix, const JacobiOptions& options) {
  if (matrix.empty()) throw Error(ErrorCode::EmptyMatrix, "singular values of an empty matrix");
  for (const double x : matrix.values()) {
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteInput, "matrix has non-finite entries");
  }

  const std::size_t rows = matrix.rows();
  const std::size_t cols = matrix.cols();
  // Work on n = min(R, C) vectors of length m = max(R, C), each contiguous.
  const bool use_columns = rows >= cols;
  const std::size_t n = use_columns ? cols : rows;
  const std::size_t m = use_columns ? rows : cols;
  std::vector<double> work(n * m);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t vec = use_columns ? c : r;
      const std::size_t pos = use_columns ? r : c;
      work[vec * m + pos] = matrix(r, c);
    }
  }
  auto column = [&](std::size_t j) { return work.data() + j * m; };

  std::vector<double> norm2(n);
  int sweep = 0;
  for (; sweep < options.max_sweeps; ++sweep) {
    // Fresh norms each sweep; the in-sweep updates drift slowly.
    for (std::size_t j = 0; j < n; ++j) norm2[j] = dot(column(j), column(j), m);

    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = norm2[p];
        const double beta = norm2[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        double* wp = column(p);
        double* wq = column(q);
        const double gamma = dot(wp, wq, m);
        if (std::abs(gamma) <= options.tolerance * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double x = wp[i];
          const double y = wq[i];
          wp[i] = c * x - s * y;
          wq[i] = s * x + c * y;
        }
        norm2[p] = alpha - t * gamma;
        norm2[q] = beta + t * gamma;
      }
    }
    if (!rotated) break;
  }

  SingularSpectrum spectrum;
  spectrum.source_rows = rows;
  spectrum.source_cols = cols;
  spectrum.sweeps = sweep;
  spectrum.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) spectrum.values[j] = std::sqrt(dot(column(j), column(j), m));
  std::sort(spectrum.values.begin(), spectrum.values.end(), std::greater<>());
  return spectrum;
}

}  // namespace ridgeclass
