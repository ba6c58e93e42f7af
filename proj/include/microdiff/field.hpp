#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace microdiff {

// Real-valued scalar grid, 2D or 3D. Storage is x-fastest:
// index = x + nx*(y + ny*z); nz == 1 for 2D grids.
struct Field {
  int dims = 2;
  std::array<int, 3> shape{1, 1, 1};
  std::vector<double> v;

  Field() = default;
  Field(int dims_, std::array<int, 3> shape_, double fill = 0.0);

  std::size_t size() const { return v.size(); }
  bool same_shape(const Field& o) const {
    return dims == o.dims && shape == o.shape;
  }
  double& at(int x, int y, int z = 0) {
    return v[static_cast<std::size_t>(x) +
             static_cast<std::size_t>(shape[0]) * (y + static_cast<std::size_t>(shape[1]) * z)];
  }
  double at(int x, int y, int z = 0) const {
    return v[static_cast<std::size_t>(x) +
             static_cast<std::size_t>(shape[0]) * (y + static_cast<std::size_t>(shape[1]) * z)];
  }
};

Field zeros_like(const Field& f);
double dot(const Field& a, const Field& b);
double norm(const Field& a);

// Binary two-phase grid; phase value 1 is the phase of interest
// (inclusion), 0 the matrix.
struct Microstructure {
  int dims = 2;
  std::array<int, 3> shape{1, 1, 1};
  std::vector<std::uint8_t> phase;
  bool periodic = true;

  Microstructure() = default;
  Microstructure(int dims_, std::array<int, 3> shape_, bool periodic_ = true);

  std::size_t size() const { return phase.size(); }
  std::uint8_t& at(int x, int y, int z = 0) {
    return phase[static_cast<std::size_t>(x) +
                 static_cast<std::size_t>(shape[0]) * (y + static_cast<std::size_t>(shape[1]) * z)];
  }
  std::uint8_t at(int x, int y, int z = 0) const {
    return phase[static_cast<std::size_t>(x) +
                 static_cast<std::size_t>(shape[0]) * (y + static_cast<std::size_t>(shape[1]) * z)];
  }
};

// Model-space encoding of phases: 0 -> -1 (matrix), 1 -> +1 (inclusion).
Field to_field(const Microstructure& ms);

// Threshold at 0, the symmetric decision boundary for {-1,+1} encoded data.
Microstructure binarize(const Field& f, bool periodic);

inline std::size_t cell_count(const std::array<int, 3>& shape) {
  return static_cast<std::size_t>(shape[0]) * shape[1] * shape[2];
}

}  // namespace microdiff
