#include "anisoflow/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace anisoflow {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u8(std::ostream& os, std::uint8_t v) {
  os.write(reinterpret_cast<const char*>(&v), 1);
}

void put_f64(std::ostream& os, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFF);
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("field file truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint8_t get_u8(std::istream& is) {
  char c;
  if (!is.read(&c, 1)) throw std::runtime_error("field file truncated");
  return static_cast<std::uint8_t>(c);
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("field file truncated");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

void put_samples(std::ostream& os, const Field& f) {
  for (const auto& c : f.samples()) {
    put_f64(os, c.real());
    put_f64(os, c.imag());
  }
}

std::vector<Complex> get_samples(std::istream& is, std::size_t count) {
  std::vector<Complex> s(count);
  for (auto& c : s) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    c = Complex(re, im);
  }
  return s;
}

struct Header {
  Grid grid;
  Rep rep;
};

void put_header(std::ostream& os, const char* magic, const Grid& g, Rep rep) {
  os.write(magic, 4);
  put_u32(os, static_cast<std::uint32_t>(g.dim));
  for (int i = 0; i < g.dim; ++i) put_u32(os, static_cast<std::uint32_t>(g.n));
  put_f64(os, g.length);
  put_u8(os, static_cast<std::uint8_t>(rep));
}

Header get_header(std::istream& is, const char* magic) {
  char m[4];
  if (!is.read(m, 4) || std::memcmp(m, magic, 4) != 0)
    throw std::runtime_error("bad magic bytes in field file");
  const auto d = get_u32(is);
  if (d < 1 || d > 3) throw std::runtime_error("field file: dimension out of range");
  std::uint32_t n = 0;
  for (std::uint32_t i = 0; i < d; ++i) {
    const auto ni = get_u32(is);
    if (i == 0)
      n = ni;
    else if (ni != n)
      throw std::runtime_error("field file: per-axis sizes must match");
  }
  const double length = get_f64(is);
  const auto tag = get_u8(is);
  if (tag > 1) throw std::runtime_error("field file: bad representation tag");
  Grid g = make_grid(static_cast<int>(d), static_cast<int>(n), length);
  return Header{g, static_cast<Rep>(tag)};
}

}  // namespace

void write_field(std::ostream& os, const Field& f) {
  put_header(os, "ANF1", f.grid(), f.rep());
  put_samples(os, f);
}

void write_field(const std::string& path, const Field& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_field(os, f);
  if (!os) throw std::runtime_error("write failed: " + path);
}

Field read_field(std::istream& is) {
  const Header h = get_header(is, "ANF1");
  return Field(h.grid, h.rep, get_samples(is, h.grid.total()));
}

Field read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_field(is);
}

void write_trajectory(const std::string& path, const Trajectory& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  const Grid& g = t.grid();
  put_header(os, "ANT1", g, Rep::spectral);
  put_u32(os, static_cast<std::uint32_t>(g.dim));
  put_u32(os, static_cast<std::uint32_t>(t.states().size()));
  put_f64(os, t.horizon());
  for (const auto& state : t.states())
    for (const auto& comp : state.components()) put_samples(os, comp);
  if (!os) throw std::runtime_error("write failed: " + path);
}

Trajectory read_trajectory(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  const Header h = get_header(is, "ANT1");
  const auto ncomp = get_u32(is);
  const auto nstates = get_u32(is);
  const double horizon = get_f64(is);
  if (ncomp != static_cast<std::uint32_t>(h.grid.dim))
    throw std::runtime_error("trajectory file: component count mismatch");
  if (nstates < 2) throw std::runtime_error("trajectory file: need at least 2 states");
  std::vector<VectorField> states;
  states.reserve(nstates);
  for (std::uint32_t m = 0; m < nstates; ++m) {
    std::vector<Field> comps;
    comps.reserve(ncomp);
    for (std::uint32_t c = 0; c < ncomp; ++c)
      comps.emplace_back(h.grid, Rep::spectral, get_samples(is, h.grid.total()));
    states.emplace_back(std::move(comps));
  }
  return Trajectory(horizon, std::move(states));
}

}  // namespace anisoflow
