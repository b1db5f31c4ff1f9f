#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace molcav {

/// Uniform 1D real-space grid. Sample i sits at origin + i * spacing (bohr).
struct GridBasis1D {
  std::size_t n_points = 150;
  double spacing = 0.1;
  double origin = 1.0;

  double coordinate(std::size_t i) const { return origin + spacing * static_cast<double>(i); }
  std::vector<double> coordinates() const;

  bool operator==(const GridBasis1D&) const = default;
};

/// Truncated Fock space of the single cavity mode.
struct FockBasis {
  std::size_t n_levels = 30;
  double omega = 0.0;  // hartree

  bool operator==(const FockBasis&) const = default;
};

/// Flat indexing of (molecule 1 grid, molecule 2 grid, photon) with the
/// photon index fastest.
class CompositeIndex {
 public:
  struct Tuple {
    std::size_t i1 = 0;
    std::size_t i2 = 0;
    std::size_t n = 0;
    bool operator==(const Tuple&) const = default;
  };

  CompositeIndex() = default;
  CompositeIndex(std::size_t n1, std::size_t n2, std::size_t nf);

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t nf() const { return nf_; }
  std::size_t size() const { return n1_ * n2_ * nf_; }
  std::array<std::size_t, 3> dims() const { return {n1_, n2_, nf_}; }

  /// Throws std::out_of_range when any component is outside its dimension.
  std::size_t flatten(std::size_t i1, std::size_t i2, std::size_t n) const;
  Tuple unflatten(std::size_t flat) const;

  bool operator==(const CompositeIndex&) const = default;

 private:
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::size_t nf_ = 0;
};

std::size_t flatten_index(std::size_t i1, std::size_t i2, std::size_t n, const CompositeIndex& dims);

}  // namespace molcav
