#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace anisoflow {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Periodic sampling grid: `n` points per axis on a torus of period `length`
/// in each of `dim` directions. The mesh is the same along every axis; the
/// anisotropy of the function spaces lives in the exponents, not the mesh.
struct Grid {
  int dim = 0;
  int n = 0;
  double length = 0.0;

  double spacing() const { return length / n; }
  double cell_volume() const;
  std::size_t total() const;

  /// Physical frequency of integer mode 1, i.e. 2*pi/length. Integer mode k
  /// sits at frequency xi = k * xi_unit().
  double xi_unit() const { return 2.0 * kPi / length; }

  /// Integer mode stored at index i along one axis (spectral layout):
  /// i for i < n/2, i - n otherwise, so modes run over [-n/2, n/2).
  int mode_of(int i) const { return i < n / 2 ? i : i - n; }
  int index_of_mode(int k) const { return k >= 0 ? k : k + n; }

  bool operator==(const Grid&) const = default;
};

/// Builds a validated grid. Throws std::invalid_argument unless
/// d in {1,2,3}, n even and >= 8, length > 0.
Grid make_grid(int dim, int n, double length);

enum class Rep : std::uint8_t { physical = 0, spectral = 1 };

/// One complex-valued sample array over a Grid, tagged with its
/// representation. Samples are row-major with axis 0 fastest and axis dim-1
/// slowest. Fields are immutable after construction; all operations on them
/// are pure functions returning new values.
class Field {
 public:
  Field() = default;
  Field(Grid grid, Rep rep, std::vector<Complex> samples);

  static Field zeros(const Grid& grid, Rep rep);

  const Grid& grid() const { return grid_; }
  Rep rep() const { return rep_; }
  bool is_physical() const { return rep_ == Rep::physical; }
  bool is_spectral() const { return rep_ == Rep::spectral; }

  std::span<const Complex> samples() const { return samples_; }
  const Complex& operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }

 private:
  Grid grid_{};
  Rep rep_ = Rep::physical;
  std::vector<Complex> samples_;
};

/// Per-axis indices of a flat sample index (axis 0 fastest). Unused axes are 0.
std::array<int, 3> decode_index(const Grid& g, std::size_t flat);

/// Integer mode vector of a flat spectral index.
std::array<int, 3> mode_vector(const Grid& g, std::size_t flat);

/// Physical frequency vector xi of a flat spectral index.
std::array<double, 3> frequency(const Grid& g, std::size_t flat);

/// |xi|^2 of a flat spectral index.
double frequency_sq(const Grid& g, std::size_t flat);

/// Physical coordinates of a flat physical index.
std::array<double, 3> coordinates(const Grid& g, std::size_t flat);

/// Discrete Fourier transform, normalized so spectral samples are the Fourier
/// series coefficients of the periodic function:
///   c_k = (1/N) sum_j f(x_j) exp(-i xi_k . x_j),
///   f(x_j) = sum_k c_k exp(+i xi_k . x_j).
/// Throws std::invalid_argument on a wrong representation tag.
Field forward_transform(const Field& f);
Field inverse_transform(const Field& f);

/// Idempotent conversions.
Field to_physical(const Field& f);
Field to_spectral(const Field& f);

/// Zeroes every spectral mode with any |k_i| > n/3 (the 2/3 rule), so that
/// physical-space products of band-limited fields are alias-exact on the
/// retained band. Accepts either representation, returns spectral.
Field dealias(const Field& f);

/// True when all spectral content outside the 2/3 band is below
/// tol * max|coefficient|.
bool within_dealias_band(const Field& f, double tol = 1e-12);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& f);
Field operator*(Complex s, const Field& f);

double max_abs(const Field& f);

/// d Fields sharing one grid and one representation tag.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<Field> components);

  static VectorField zeros(const Grid& grid, Rep rep);

  const Grid& grid() const { return components_.front().grid(); }
  Rep rep() const { return components_.front().rep(); }
  int dim() const { return static_cast<int>(components_.size()); }

  const Field& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
  const std::vector<Field>& components() const { return components_; }

 private:
  std::vector<Field> components_;
};

VectorField to_physical(const VectorField& u);
VectorField to_spectral(const VectorField& u);
VectorField dealias(const VectorField& u);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& u);
double max_abs(const VectorField& u);

}  // namespace anisoflow
