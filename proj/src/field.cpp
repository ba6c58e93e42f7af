#include "microdiff/field.hpp"

#include <cmath>
#include <stdexcept>

namespace microdiff {

namespace {
void check_extents(int dims, const std::array<int, 3>& shape) {
  if (dims != 2 && dims != 3) throw std::invalid_argument("dims must be 2 or 3");
  for (int a = 0; a < dims; ++a)
    if (shape[a] < 1) throw std::invalid_argument("shape extents must be >= 1");
  if (dims == 2 && shape[2] != 1) throw std::invalid_argument("2D grid requires nz == 1");
}
}  // namespace

Field::Field(int dims_, std::array<int, 3> shape_, double fill) : dims(dims_), shape(shape_) {
  if (dims == 2) shape[2] = 1;
  check_extents(dims, shape);
  v.assign(cell_count(shape), fill);
}

Field zeros_like(const Field& f) { return Field(f.dims, f.shape, 0.0); }

double dot(const Field& a, const Field& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("dot: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) s += a.v[i] * b.v[i];
  return s;
}

double norm(const Field& a) { return std::sqrt(dot(a, a)); }

Microstructure::Microstructure(int dims_, std::array<int, 3> shape_, bool periodic_)
    : dims(dims_), shape(shape_), periodic(periodic_) {
  if (dims == 2) shape[2] = 1;
  check_extents(dims, shape);
  phase.assign(cell_count(shape), 0);
}

Field to_field(const Microstructure& ms) {
  Field f(ms.dims, ms.shape);
  for (std::size_t i = 0; i < ms.phase.size(); ++i) f.v[i] = ms.phase[i] ? 1.0 : -1.0;
  return f;
}

Microstructure binarize(const Field& f, bool periodic) {
  Microstructure ms(f.dims, f.shape, periodic);
  for (std::size_t i = 0; i < f.v.size(); ++i) ms.phase[i] = f.v[i] > 0.0 ? 1 : 0;
  return ms;
}

}  // namespace microdiff
