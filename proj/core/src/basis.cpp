#include "molcav/basis.hpp"

#include <stdexcept>
#include <string>

namespace molcav {

std::vector<double> GridBasis1D::coordinates() const {
  std::vector<double> r(n_points);
  for (std::size_t i = 0; i < n_points; ++i) r[i] = coordinate(i);
  return r;
}

CompositeIndex::CompositeIndex(std::size_t n1, std::size_t n2, std::size_t nf) : n1_(n1), n2_(n2), nf_(nf) {
  if (n1 == 0 || n2 == 0 || nf == 0) throw std::invalid_argument("CompositeIndex: dimensions must be positive");
}

std::size_t CompositeIndex::flatten(std::size_t i1, std::size_t i2, std::size_t n) const {
  if (i1 >= n1_ || i2 >= n2_ || n >= nf_) {
    throw std::out_of_range("flatten: index (" + std::to_string(i1) + "," + std::to_string(i2) + "," +
                            std::to_string(n) + ") outside dims (" + std::to_string(n1_) + "," +
                            std::to_string(n2_) + "," + std::to_string(nf_) + ")");
  }
  return (i1 * n2_ + i2) * nf_ + n;
}

CompositeIndex::Tuple CompositeIndex::unflatten(std::size_t flat) const {
  if (flat >= size()) throw std::out_of_range("unflatten: flat index " + std::to_string(flat) + " out of range");
  Tuple t;
  t.n = flat % nf_;
  flat /= nf_;
  t.i2 = flat % n2_;
  t.i1 = flat / n2_;
  return t;
}

std::size_t flatten_index(std::size_t i1, std::size_t i2, std::size_t n, const CompositeIndex& dims) {
  return dims.flatten(i1, i2, n);
}

}  // namespace molcav
