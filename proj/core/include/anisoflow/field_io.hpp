#pragma once

#include <iosfwd>
#include <string>

#include "anisoflow/grid.hpp"
#include "anisoflow/trajectory.hpp"

namespace anisoflow {

/// Binary field file, layout normative for fixtures:
///   magic "ANF1", u32 d, u32 n per axis (d values), f64 L, u8 tag,
///   then prod(n_i) complex samples as little-endian f64 (re, im) pairs in
///   row-major order with axis d slowest (= this library's storage order).
/// All integers and floats little-endian.
void write_field(std::ostream& os, const Field& f);
void write_field(const std::string& path, const Field& f);
Field read_field(std::istream& is);
Field read_field(const std::string& path);

/// Trajectory container: magic "ANT1", u32 d, u32 n per axis, f64 L, u8 tag,
/// u32 component count, u32 state count, f64 horizon, then per-time
/// concatenated component sample blocks (same sample encoding as fields).
void write_trajectory(const std::string& path, const Trajectory& t);
Trajectory read_trajectory(const std::string& path);

}  // namespace anisoflow
