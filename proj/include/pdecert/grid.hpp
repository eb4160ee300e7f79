#pragma once

// Uniform rectilinear grids in 1-3 dimensions and sampled fields on them.
// Storage is row-major with the last axis fastest, so a 2D field indexes
// as values[ix * ny + iy].

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdecert {

struct Grid {
  int dims = 1;
  std::array<int, 3> n{2, 1, 1};
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
  std::array<bool, 3> periodic{false, false, false};

  static Grid make(int dims, std::array<int, 3> n, std::array<double, 3> lo,
                   std::array<double, 3> hi, std::array<bool, 3> periodic = {false, false, false}) {
    Grid g{dims, n, lo, hi, periodic};
    g.validate();
    return g;
  }

  static Grid line(int nx, double a, double b, bool per = false) {
    return make(1, {nx, 1, 1}, {a, 0, 0}, {b, 1, 1}, {per, false, false});
  }
  static Grid square(int nx, double a, double b, bool per = false) {
    return make(2, {nx, nx, 1}, {a, a, 0}, {b, b, 1}, {per, per, false});
  }
  static Grid box(int nx, double a, double b, bool per = false) {
    return make(3, {nx, nx, nx}, {a, a, a}, {b, b, b}, {per, per, per});
  }

  void validate() const {
    if (dims < 1 || dims > 3) throw std::invalid_argument("Grid: dims must be 1..3");
    for (int ax = 0; ax < dims; ++ax) {
      if (n[static_cast<std::size_t>(ax)] < 2)
        throw std::invalid_argument("Grid: need at least 2 points per used axis");
      if (!(hi[static_cast<std::size_t>(ax)] > lo[static_cast<std::size_t>(ax)]))
        throw std::invalid_argument("Grid: hi must exceed lo");
    }
  }

  double spacing(int axis) const {
    auto a = static_cast<std::size_t>(axis);
    double len = hi[a] - lo[a];
    return periodic[a] ? len / n[a] : len / (n[a] - 1);
  }

  double coord(int axis, int i) const {
    return lo[static_cast<std::size_t>(axis)] + spacing(axis) * i;
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (int ax = 0; ax < dims; ++ax) s *= static_cast<std::size_t>(n[static_cast<std::size_t>(ax)]);
    return s;
  }

  std::size_t index(int i, int j = 0, int k = 0) const {
    if (dims == 1) return static_cast<std::size_t>(i);
    if (dims == 2) return static_cast<std::size_t>(i) * static_cast<std::size_t>(n[1]) + static_cast<std::size_t>(j);
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(n[1]) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(n[2]) +
           static_cast<std::size_t>(k);
  }

  // Decompose a flat index back into per-axis indices.
  std::array<int, 3> unravel(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    if (dims == 1) {
      idx[0] = static_cast<int>(flat);
    } else if (dims == 2) {
      idx[0] = static_cast<int>(flat / static_cast<std::size_t>(n[1]));
      idx[1] = static_cast<int>(flat % static_cast<std::size_t>(n[1]));
    } else {
      auto nz = static_cast<std::size_t>(n[2]);
      auto ny = static_cast<std::size_t>(n[1]);
      idx[2] = static_cast<int>(flat % nz);
      idx[1] = static_cast<int>((flat / nz) % ny);
      idx[0] = static_cast<int>(flat / (nz * ny));
    }
    return idx;
  }

  // Smallest spacing over the used axes; reported in residual summaries.
  double min_spacing() const {
    double h = spacing(0);
    for (int ax = 1; ax < dims; ++ax) h = std::min(h, spacing(ax));
    return h;
  }
};

struct ScalarField {
  Grid grid;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw std::invalid_argument("ScalarField: value count does not match grid");
  }
};

struct VectorField {
  Grid grid;
  std::vector<std::vector<double>> comps;

  VectorField() = default;
  VectorField(Grid g, std::vector<std::vector<double>> c) : grid(g), comps(std::move(c)) {
    if (comps.empty() || comps.size() > 3)
      throw std::invalid_argument("VectorField: component count must be 1..3");
    for (const auto& v : comps)
      if (v.size() != grid.size())
        throw std::invalid_argument("VectorField: value count does not match grid");
  }

  int m() const { return static_cast<int>(comps.size()); }
};

}  // namespace pdecert
