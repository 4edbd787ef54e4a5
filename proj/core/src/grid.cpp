#include "anisoflow/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace anisoflow {

double Grid::cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim; ++i) v *= spacing();
  return v;
}

std::size_t Grid::total() const {
  std::size_t t = 1;
  for (int i = 0; i < dim; ++i) t *= static_cast<std::size_t>(n);
  return t;
}

Grid make_grid(int dim, int n, double length) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("make_grid: d must be 1, 2 or 3");
  if (n % 2 != 0) throw std::invalid_argument("make_grid: n must be even");
  if (n < 8) throw std::invalid_argument("make_grid: n must be >= 8");
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("make_grid: L must be positive");
  return Grid{dim, n, length};
}

Field::Field(Grid grid, Rep rep, std::vector<Complex> samples)
    : grid_(grid), rep_(rep), samples_(std::move(samples)) {
  if (samples_.size() != grid_.total())
    throw std::invalid_argument("Field: sample count does not match grid");
}

Field Field::zeros(const Grid& grid, Rep rep) {
  return Field(grid, rep, std::vector<Complex>(grid.total()));
}

std::array<int, 3> decode_index(const Grid& g, std::size_t flat) {
  std::array<int, 3> idx{0, 0, 0};
  auto n = static_cast<std::size_t>(g.n);
  for (int ax = 0; ax < g.dim; ++ax) {
    idx[static_cast<std::size_t>(ax)] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

std::array<int, 3> mode_vector(const Grid& g, std::size_t flat) {
  auto idx = decode_index(g, flat);
  std::array<int, 3> k{0, 0, 0};
  for (int ax = 0; ax < g.dim; ++ax)
    k[static_cast<std::size_t>(ax)] = g.mode_of(idx[static_cast<std::size_t>(ax)]);
  return k;
}

std::array<double, 3> frequency(const Grid& g, std::size_t flat) {
  auto k = mode_vector(g, flat);
  const double u = g.xi_unit();
  return {u * k[0], u * k[1], u * k[2]};
}

double frequency_sq(const Grid& g, std::size_t flat) {
  auto xi = frequency(g, flat);
  return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
}

std::array<double, 3> coordinates(const Grid& g, std::size_t flat) {
  auto idx = decode_index(g, flat);
  const double h = g.spacing();
  return {h * idx[0], h * idx[1], h * idx[2]};
}

Field to_physical(const Field& f) {
  return f.is_physical() ? f : inverse_transform(f);
}

Field to_spectral(const Field& f) {
  return f.is_spectral() ? f : forward_transform(f);
}

Field dealias(const Field& f) {
  Field g = to_spectral(f);
  std::vector<Complex> out(g.samples().begin(), g.samples().end());
  const Grid& grid = g.grid();
  const int band = grid.n;  // keep 3|k_i| <= n
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto k = mode_vector(grid, i);
    for (int ax = 0; ax < grid.dim; ++ax) {
      if (3 * std::abs(k[static_cast<std::size_t>(ax)]) > band) {
        out[i] = Complex(0.0, 0.0);
        break;
      }
    }
  }
  return Field(grid, Rep::spectral, std::move(out));
}

bool within_dealias_band(const Field& f, double tol) {
  Field g = to_spectral(f);
  const Grid& grid = g.grid();
  double peak = 0.0;
  for (const auto& c : g.samples()) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto k = mode_vector(grid, i);
    for (int ax = 0; ax < grid.dim; ++ax) {
      if (3 * std::abs(k[static_cast<std::size_t>(ax)]) > grid.n && std::abs(g[i]) > tol * peak)
        return false;
    }
  }
  return true;
}

namespace {
void require_compatible(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid()) || a.rep() != b.rep())
    throw std::invalid_argument("field arithmetic: mismatched grid or representation");
}
}  // namespace

Field operator+(const Field& a, const Field& b) {
  require_compatible(a, b);
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return Field(a.grid(), a.rep(), std::move(out));
}

Field operator-(const Field& a, const Field& b) {
  require_compatible(a, b);
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return Field(a.grid(), a.rep(), std::move(out));
}

Field operator*(double s, const Field& f) { return Complex(s, 0.0) * f; }

Field operator*(Complex s, const Field& f) {
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * f[i];
  return Field(f.grid(), f.rep(), std::move(out));
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (const auto& c : f.samples()) m = std::max(m, std::abs(c));
  return m;
}

VectorField::VectorField(std::vector<Field> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("VectorField: no components");
  const Grid& g = components_.front().grid();
  if (static_cast<int>(components_.size()) != g.dim)
    throw std::invalid_argument("VectorField: component count must equal grid dimension");
  for (const auto& c : components_) {
    if (!(c.grid() == g) || c.rep() != components_.front().rep())
      throw std::invalid_argument("VectorField: components must share grid and representation");
  }
}

VectorField VectorField::zeros(const Grid& grid, Rep rep) {
  std::vector<Field> comps;
  comps.reserve(static_cast<std::size_t>(grid.dim));
  for (int i = 0; i < grid.dim; ++i) comps.push_back(Field::zeros(grid, rep));
  return VectorField(std::move(comps));
}

namespace {
VectorField map_components(const VectorField& u, Field (*fn)(const Field&)) {
  std::vector<Field> comps;
  comps.reserve(u.components().size());
  for (const auto& c : u.components()) comps.push_back(fn(c));
  return VectorField(std::move(comps));
}
}  // namespace

VectorField to_physical(const VectorField& u) { return map_components(u, &to_physical); }
VectorField to_spectral(const VectorField& u) { return map_components(u, &to_spectral); }
VectorField dealias(const VectorField& u) { return map_components(u, &dealias); }

VectorField operator+(const VectorField& a, const VectorField& b) {
  std::vector<Field> comps;
  for (int i = 0; i < a.dim(); ++i) comps.push_back(a[i] + b[i]);
  return VectorField(std::move(comps));
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  std::vector<Field> comps;
  for (int i = 0; i < a.dim(); ++i) comps.push_back(a[i] - b[i]);
  return VectorField(std::move(comps));
}

VectorField operator*(double s, const VectorField& u) {
  std::vector<Field> comps;
  for (const auto& c : u.components()) comps.push_back(s * c);
  return VectorField(std::move(comps));
}

double max_abs(const VectorField& u) {
  double m = 0.0;
  for (const auto& c : u.components()) m = std::max(m, max_abs(c));
  return m;
}

}  // namespace anisoflow
