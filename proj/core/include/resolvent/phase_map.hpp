#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace resolvent {

/// Periodic unit cell sampled on a regular grid of 2 or 3 axes.
/// Cells are stored row-major (last axis fastest).
class GridSpec {
public:
  GridSpec() = default;
  explicit GridSpec(std::vector<int> dims);

  const std::vector<int>& dims() const noexcept { return dims_; }
  int dimension() const noexcept { return static_cast<int>(dims_.size()); }
  std::size_t cells() const noexcept { return cells_; }

  /// Integer frequency of index i along an axis of n cells, in [-n/2, n/2 - 1].
  static int frequency(int i, int n) noexcept { return i < (n + 1) / 2 ? i : i - n; }

  /// Grid coordinates of a flat cell index.
  std::vector<int> unflatten(std::size_t cell) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
  std::vector<int> dims_;
  std::size_t cells_ = 0;
};

/// Indicator of phase 1 on each cell.
struct PhaseMap {
  GridSpec grid;
  std::vector<std::uint8_t> chi;

  double volume_fraction() const;
};

/// Rows of '0'/'1'; 3D maps separate slabs with blank lines. The first axis
/// runs over slabs (3D) or rows (2D).
PhaseMap parse_phase_map(std::istream& in);
PhaseMap load_phase_map(const std::filesystem::path& path);
std::string format_phase_map(const PhaseMap& map);

/// Layers normal to `axis`: chi = 1 on the first round(f * n_axis) planes.
PhaseMap make_laminate(const GridSpec& grid, double fraction, int axis = 0);

/// Centered disk/ball of radius r (unit cell side 1), tested at cell centers.
PhaseMap make_inclusion(const GridSpec& grid, double radius);

/// chi identically equal to `value`.
PhaseMap make_uniform(const GridSpec& grid, bool value);

}  // namespace resolvent
