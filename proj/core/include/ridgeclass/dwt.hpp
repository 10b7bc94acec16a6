#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ridgeclass/image_io.hpp"
#include "ridgeclass/matrix.hpp"

namespace ridgeclass {

/// Orthonormal two-channel analysis filter bank. highpass is the quadrature
/// mirror of lowpass, so it annihilates constants.
struct Wavelet {
  std::string name;
  std::vector<double> lowpass;
  std::vector<double> highpass;

  static Wavelet haar();
  /// Daubechies, 4 taps.
  static Wavelet db2();
  /// "haar" (alias "db1") or "db2"; InvalidArgument otherwise.
  static Wavelet by_name(std::string_view name);
};

enum class Boundary {
  Symmetric,  // half-sample: x[-1] = x[0], x[N] = x[N-1]
  Periodic,
};

std::string_view to_string(Boundary b) noexcept;
Boundary parse_boundary(std::string_view name);

struct DwtOptions {
  Wavelet wavelet = Wavelet::haar();
  Boundary boundary = Boundary::Symmetric;
};

enum class SubbandKind { LL, LH, HL, HH };

std::string_view to_string(SubbandKind k) noexcept;

/// LH carries horizontal (along-row) detail, HL vertical detail.
struct Subband {
  SubbandKind kind;
  int level;
  Matrix coeffs;
};

/// Canonical order: LL at the deepest level first, then LH, HL, HH for
/// level = k down to 1. Always 3k + 1 bands.
struct SubbandPyramid {
  int levels = 0;
  std::vector<Subband> subbands;
};

struct EnergyVector {
  int levels = 0;
  std::vector<double> energies;
};

struct SingleLevelBands {
  Matrix ll;
  Matrix lh;
  Matrix hl;
  Matrix hh;
};

/// Separable analysis: every row is filtered and decimated 2:1, then every
/// column of the two results. Outputs are ceil(R/2) x ceil(C/2).
SingleLevelBands dwt2_single_level(const Matrix& input, const DwtOptions& options = {});

/// Dyadic decomposition, repeating on LL only. Each level needs an input of
/// at least 2x2; otherwise TooManyLevels.
SubbandPyramid decompose(const Matrix& input, int levels, const DwtOptions& options = {});
SubbandPyramid decompose(const GrayImage& image, int levels, const DwtOptions& options = {});

/// Largest k for which decompose(rows x cols, k) succeeds.
int max_levels(std::size_t rows, std::size_t cols) noexcept;

/// Mean absolute coefficient: (1 / RC) * sum |x(i, j)|.
double subband_energy(const Matrix& band);

EnergyVector energy_vector(const SubbandPyramid& pyramid);

constexpr std::size_t energy_vector_length(int levels) noexcept {
  return 3 * static_cast<std::size_t>(levels) + 1;
}

}  // namespace ridgeclass
