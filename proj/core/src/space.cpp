#include "anisoflow/space.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace anisoflow {

double sum_inverse(std::span<const double> q) {
  double s = 0.0;
  for (double v : q) s += 1.0 / v;
  return s;
}

double morrey_weight(std::span<const double> q, std::span<const double> lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += lambda[i] / q[i];
  return s;
}

double smoothing_gap(std::span<const double> q, std::span<const double> lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += (1.0 - lambda[i]) / q[i];
  return s;
}

double fourier_gap(std::span<const double> q, std::span<const double> lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += 1.0 - (1.0 - lambda[i]) / q[i];
  return s;
}

double SpaceParams::morrey_weight() const { return anisoflow::morrey_weight(q, lambda); }
double SpaceParams::smoothing_gap() const { return anisoflow::smoothing_gap(q, lambda); }
double SpaceParams::fourier_gap() const { return anisoflow::fourier_gap(q, lambda); }

double SpaceParams::critical_regularity() const {
  return flavor == SpaceFlavor::physical_besov ? -1.0 + smoothing_gap()
                                               : -1.0 + fourier_gap();
}

bool SpaceParams::solver_admissible(double tol) const {
  const double gap =
      flavor == SpaceFlavor::physical_besov ? smoothing_gap() : fourier_gap();
  return gap > tol && std::abs(regularity - (-1.0 + gap)) <= tol;
}

void SpaceParams::validate(int dim) const {
  if (static_cast<int>(q.size()) != dim || static_cast<int>(lambda.size()) != dim)
    throw std::invalid_argument("SpaceParams: component counts must equal grid dimension");
  for (double v : q)
    if (!(v >= 1.0) || std::isinf(v))
      throw std::invalid_argument("SpaceParams: q_i must lie in [1, inf)");
  for (double v : lambda)
    if (!(v >= 0.0) || !(v < 1.0))
      throw std::invalid_argument("SpaceParams: lambda_i must lie in [0, 1)");
  if (!(r >= 1.0)) throw std::invalid_argument("SpaceParams: r must lie in [1, inf]");
  if (!std::isfinite(regularity))
    throw std::invalid_argument("SpaceParams: regularity must be finite");
}

SpaceParams SpaceParams::physical(std::vector<double> q, std::vector<double> lambda,
                                  double r, double sigma) {
  return SpaceParams{std::move(q), std::move(lambda), r, sigma, SpaceFlavor::physical_besov};
}

SpaceParams SpaceParams::fourier(std::vector<double> q, std::vector<double> lambda,
                                 double r, double s) {
  return SpaceParams{std::move(q), std::move(lambda), r, s, SpaceFlavor::fourier_besov};
}

SpaceParams SpaceParams::critical(SpaceFlavor flavor, std::vector<double> q,
                                  std::vector<double> lambda, double r) {
  SpaceParams p{std::move(q), std::move(lambda), r, 0.0, flavor};
  p.regularity = p.critical_regularity();
  return p;
}

SpaceParams SpaceParams::shifted(double delta) const {
  SpaceParams p = *this;
  p.regularity += delta;
  return p;
}

std::string SpaceParams::describe() const {
  std::ostringstream os;
  os << (flavor == SpaceFlavor::physical_besov ? "N" : "FN") << "^" << regularity << "_{q=(";
  for (std::size_t i = 0; i < q.size(); ++i) os << (i ? "," : "") << q[i];
  os << "),lambda=(";
  for (std::size_t i = 0; i < lambda.size(); ++i) os << (i ? "," : "") << lambda[i];
  os << "),r=";
  if (std::isinf(r))
    os << "inf";
  else
    os << r;
  os << "}";
  return os.str();
}

}  // namespace anisoflow
