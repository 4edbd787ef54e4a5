#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "anisoflow/grid.hpp"

// FFTW backs the transform contract. Plans are cached per (dim, n, sign) and
// created with FFTW_UNALIGNED so they can execute on arbitrary user buffers;
// the planner itself is not thread-safe, hence the mutex. Execution via
// fftw_execute_dft on distinct buffers is safe concurrently.

namespace anisoflow {
namespace {

std::mutex planner_mutex;

fftw_plan plan_for(const Grid& g, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto key = std::make_tuple(g.dim, g.n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<fftw_complex> in(g.total()), out(g.total());
  int dims[3] = {g.n, g.n, g.n};
  // FFTW uses row-major with the *first* dimension slowest; our axis 0 is
  // fastest, so axis dim-1 maps to FFTW's first dimension. With equal sizes
  // per axis the dims array is symmetric anyway.
  fftw_plan p = fftw_plan_dft(g.dim, dims, in.data(), out.data(), sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fftw_plan_dft failed");
  cache.emplace(key, p);
  return p;
}

}  // namespace

Field forward_transform(const Field& f) {
  if (!f.is_physical())
    throw std::invalid_argument("forward_transform: field is not in physical representation");
  const Grid& g = f.grid();
  std::vector<Complex> in(f.samples().begin(), f.samples().end());
  std::vector<Complex> out(g.total());
  fftw_plan p = plan_for(g, FFTW_FORWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(g.total());
  for (auto& c : out) c *= scale;
  return Field(g, Rep::spectral, std::move(out));
}

Field inverse_transform(const Field& f) {
  if (!f.is_spectral())
    throw std::invalid_argument("inverse_transform: field is not in spectral representation");
  const Grid& g = f.grid();
  std::vector<Complex> in(f.samples().begin(), f.samples().end());
  std::vector<Complex> out(g.total());
  fftw_plan p = plan_for(g, FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return Field(g, Rep::physical, std::move(out));
}

}  // namespace anisoflow
