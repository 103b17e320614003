#include "resolvent/phase_map.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace resolvent {

GridSpec::GridSpec(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.size() < 2 || dims_.size() > 3) throw std::invalid_argument("GridSpec: need 2 or 3 axes");
  cells_ = 1;
  for (int n : dims_) {
    if (n < 2) throw std::invalid_argument("GridSpec: each axis needs at least 2 cells");
    cells_ *= static_cast<std::size_t>(n);
  }
}

std::vector<int> GridSpec::unflatten(std::size_t cell) const {
  std::vector<int> idx(dims_.size());
  for (std::size_t a = dims_.size(); a-- > 0;) {
    const auto n = static_cast<std::size_t>(dims_[a]);
    idx[a] = static_cast<int>(cell % n);
    cell /= n;
  }
  return idx;
}

double PhaseMap::volume_fraction() const {
  if (chi.empty()) return 0.0;
  std::size_t ones = 0;
  for (auto c : chi) ones += c;
  return static_cast<double>(ones) / static_cast<double>(chi.size());
}

PhaseMap parse_phase_map(std::istream& in) {
  std::vector<std::vector<std::string>> slabs(1);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!slabs.back().empty()) slabs.emplace_back();
      continue;
    }
    for (char ch : line) {
      if (ch != '0' && ch != '1') {
        throw std::invalid_argument("phase map line " + std::to_string(line_no) + ": expected only '0' or '1'");
      }
    }
    slabs.back().push_back(line);
  }
  if (slabs.back().empty()) slabs.pop_back();
  if (slabs.empty()) throw std::invalid_argument("phase map is empty");

  const std::size_t rows = slabs.front().size();
  const std::size_t cols = slabs.front().front().size();
  for (const auto& slab : slabs) {
    if (slab.size() != rows) throw std::invalid_argument("phase map slabs differ in row count");
    for (const auto& row : slab) {
      if (row.size() != cols) throw std::invalid_argument("phase map rows differ in length");
    }
  }

  PhaseMap map;
  if (slabs.size() == 1) {
    map.grid = GridSpec({static_cast<int>(rows), static_cast<int>(cols)});
  } else {
    map.grid = GridSpec({static_cast<int>(slabs.size()), static_cast<int>(rows), static_cast<int>(cols)});
  }
  map.chi.reserve(map.grid.cells());
  for (const auto& slab : slabs) {
    for (const auto& row : slab) {
      for (char ch : row) map.chi.push_back(ch == '1' ? 1 : 0);
    }
  }
  return map;
}

PhaseMap load_phase_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open phase map '" + path.string() + "'");
  return parse_phase_map(in);
}

std::string format_phase_map(const PhaseMap& map) {
  const auto& dims = map.grid.dims();
  const std::size_t cols = static_cast<std::size_t>(dims.back());
  const std::size_t rows = static_cast<std::size_t>(dims[dims.size() - 2]);
  std::ostringstream out;
  for (std::size_t cell = 0; cell < map.chi.size(); ++cell) {
    out << (map.chi[cell] ? '1' : '0');
    if ((cell + 1) % cols == 0) out << '\n';
    if (dims.size() == 3 && (cell + 1) % (rows * cols) == 0 && cell + 1 < map.chi.size()) out << '\n';
  }
  return out.str();
}

PhaseMap make_laminate(const GridSpec& grid, double fraction, int axis) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("laminate fraction must lie in [0, 1]");
  if (axis < 0 || axis >= grid.dimension()) throw std::invalid_argument("laminate axis out of range");
  const int n = grid.dims()[static_cast<std::size_t>(axis)];
  const int filled = static_cast<int>(std::lround(fraction * n));
  PhaseMap map{grid, std::vector<std::uint8_t>(grid.cells())};
  for (std::size_t cell = 0; cell < grid.cells(); ++cell) {
    map.chi[cell] = grid.unflatten(cell)[static_cast<std::size_t>(axis)] < filled ? 1 : 0;
  }
  return map;
}

PhaseMap make_inclusion(const GridSpec& grid, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("inclusion radius must be >= 0");
  PhaseMap map{grid, std::vector<std::uint8_t>(grid.cells())};
  for (std::size_t cell = 0; cell < grid.cells(); ++cell) {
    const auto idx = grid.unflatten(cell);
    double r2 = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const double x = (idx[a] + 0.5) / grid.dims()[a] - 0.5;
      r2 += x * x;
    }
    map.chi[cell] = r2 <= radius * radius ? 1 : 0;
  }
  return map;
}

PhaseMap make_uniform(const GridSpec& grid, bool value) {
  return {grid, std::vector<std::uint8_t>(grid.cells(), value ? 1 : 0)};
}

}  // namespace resolvent
