#include "ridgeclass/dwt.hpp"

#include <cmath>
#include <numbers>

#include "ridgeclass/error.hpp"

namespace ridgeclass {

namespace {

std::vector<double> quadrature_mirror(const std::vector<double>& low) {
  std::vector<double> high(low.size());
  const std::size_t n = low.size();
  for (std::size_t t = 0; t < n; ++t) {
    const double sign = (t % 2 == 0) ? 1.0 : -1.0;
    high[t] = sign * low[n - 1 - t];
  }
  return high;
}

std::size_t extend_index(std::ptrdiff_t idx, std::size_t n, Boundary boundary) {
  const auto len = static_cast<std::ptrdiff_t>(n);
  if (boundary == Boundary::Periodic) {
    const auto m = idx % len;
    return static_cast<std::size_t>(m < 0 ? m + len : m);
  }
  while (idx < 0 || idx >= len) {
    idx = idx < 0 ? -idx - 1 : 2 * len - 1 - idx;
  }
  return static_cast<std::size_t>(idx);
}

// Filters and decimates along columns of `in` (i.e. vertically), writing
// ceil(R/2) rows into low and high.
void analyze_vertical(const Matrix& in, const DwtOptions& opt, Matrix& low, Matrix& high) {
  const std::size_t rows = in.rows();
  const std::size_t cols = in.cols();
  const std::size_t out_rows = (rows + 1) / 2;
  low = Matrix(out_rows, cols);
  high = Matrix(out_rows, cols);
  const auto& h = opt.wavelet.lowpass;
  const auto& g = opt.wavelet.highpass;
  for (std::size_t i = 0; i < out_rows; ++i) {
    auto lo = low.row(i);
    auto hi = high.row(i);
    for (std::size_t t = 0; t < h.size(); ++t) {
      const auto src =
          in.row(extend_index(static_cast<std::ptrdiff_t>(2 * i + t), rows, opt.boundary));
      const double ht = h[t];
      const double gt = g[t];
      for (std::size_t c = 0; c < cols; ++c) {
        lo[c] += ht * src[c];
        hi[c] += gt * src[c];
      }
    }
  }
}

void analyze_horizontal(const Matrix& in, const DwtOptions& opt, Matrix& low, Matrix& high) {
  const std::size_t rows = in.rows();
  const std::size_t cols = in.cols();
  const std::size_t out_cols = (cols + 1) / 2;
  low = Matrix(rows, out_cols);
  high = Matrix(rows, out_cols);
  const auto& h = opt.wavelet.lowpass;
  const auto& g = opt.wavelet.highpass;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto src = in.row(r);
    auto lo = low.row(r);
    auto hi = high.row(r);
    for (std::size_t j = 0; j < out_cols; ++j) {
      double acc_lo = 0.0;
      double acc_hi = 0.0;
      for (std::size_t t = 0; t < h.size(); ++t) {
        const double x =
            src[extend_index(static_cast<std::ptrdiff_t>(2 * j + t), cols, opt.boundary)];
        acc_lo += h[t] * x;
        acc_hi += g[t] * x;
      }
      lo[j] = acc_lo;
      hi[j] = acc_hi;
    }
  }
}

}  // namespace

Wavelet Wavelet::haar() {
  const double s = 1.0 / std::numbers::sqrt2;
  std::vector<double> low{s, s};
  // Detail channel is (x0 - x1) / sqrt(2).
  return {"haar", low, quadrature_mirror(low)};
}

Wavelet Wavelet::db2() {
  const double r3 = std::sqrt(3.0);
  const double d = 4.0 * std::numbers::sqrt2;
  std::vector<double> low{(1 + r3) / d, (3 + r3) / d, (3 - r3) / d, (1 - r3) / d};
  return {"db2", low, quadrature_mirror(low)};
}

Wavelet Wavelet::by_name(std::string_view name) {
  if (name == "haar" || name == "db1") return haar();
  if (name == "db2") return db2();
  throw Error(ErrorCode::InvalidArgument, "unknown wavelet '" + std::string(name) + "'");
}

std::string_view to_string(Boundary b) noexcept {
  return b == Boundary::Symmetric ? "symmetric" : "periodic";
}

Boundary parse_boundary(std::string_view name) {
  if (name == "symmetric") return Boundary::Symmetric;
  if (name == "periodic") return Boundary::Periodic;
  throw Error(ErrorCode::InvalidArgument, "unknown boundary '" + std::string(name) + "'");
}

std::string_view to_string(SubbandKind k) noexcept {
  switch (k) {
    case SubbandKind::LL: return "LL";
    case SubbandKind::LH: return "LH";
    case SubbandKind::HL: return "HL";
    case SubbandKind::HH: return "HH";
  }
  return "";
}

SingleLevelBands dwt2_single_level(const Matrix& input, const DwtOptions& options) {
  if (input.empty()) throw Error(ErrorCode::EmptyMatrix, "dwt2 of an empty matrix");
  Matrix row_low;
  Matrix row_high;
  analyze_horizontal(input, options, row_low, row_high);
  SingleLevelBands bands;
  analyze_vertical(row_low, options, bands.ll, bands.hl);
  analyze_vertical(row_high, options, bands.lh, bands.hh);
  return bands;
}

int max_levels(std::size_t rows, std::size_t cols) noexcept {
  int k = 0;
  while (rows >= 2 && cols >= 2) {
    rows = (rows + 1) / 2;
    cols = (cols + 1) / 2;
    ++k;
  }
  return k;
}

SubbandPyramid decompose(const Matrix& input, int levels, const DwtOptions& options) {
  if (levels < 1) throw Error(ErrorCode::InvalidArgument, "decomposition level must be >= 1");
  if (input.empty()) throw Error(ErrorCode::EmptyMatrix, "decompose of an empty matrix");
  const int admissible = max_levels(input.rows(), input.cols());
  if (levels > admissible) {
    throw Error(ErrorCode::TooManyLevels,
                std::to_string(input.rows()) + "x" + std::to_string(input.cols()) +
                    " admits at most " + std::to_string(admissible) + " level(s), asked for " +
                    std::to_string(levels));
  }

  // details[level - 1] holds LH, HL, HH for that level.
  std::vector<SingleLevelBands> per_level;
  per_level.reserve(static_cast<std::size_t>(levels));
  Matrix current = input;
  for (int level = 1; level <= levels; ++level) {
    per_level.push_back(dwt2_single_level(current, options));
    current = per_level.back().ll;
  }

  SubbandPyramid pyramid;
  pyramid.levels = levels;
  pyramid.subbands.reserve(energy_vector_length(levels));
  pyramid.subbands.push_back({SubbandKind::LL, levels, std::move(current)});
  for (int level = levels; level >= 1; --level) {
    auto& b = per_level[static_cast<std::size_t>(level - 1)];
    pyramid.subbands.push_back({SubbandKind::LH, level, std::move(b.lh)});
    pyramid.subbands.push_back({SubbandKind::HL, level, std::move(b.hl)});
    pyramid.subbands.push_back({SubbandKind::HH, level, std::move(b.hh)});
  }
  return pyramid;
}

SubbandPyramid decompose(const GrayImage& image, int levels, const DwtOptions& options) {
  return decompose(image.to_matrix(), levels, options);
}

double subband_energy(const Matrix& band) {
  if (band.empty()) throw Error(ErrorCode::EmptyMatrix, "energy of an empty sub-band");
  double sum = 0.0;
  for (const double x : band.values()) sum += std::abs(x);
  return sum / static_cast<double>(band.size());
}

EnergyVector energy_vector(const SubbandPyramid& pyramid) {
  EnergyVector ev;
  ev.levels = pyramid.levels;
  ev.energies.reserve(pyramid.subbands.size());
  for (const auto& band : pyramid.subbands) ev.energies.push_back(subband_energy(band.coeffs));
  return ev;
}

}  // namespace ridgeclass
