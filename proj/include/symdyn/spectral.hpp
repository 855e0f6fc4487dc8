#pragma once

#include <cstddef>
#include <vector>

namespace symdyn {

/// A closed interval known to contain a real quantity.
struct Enclosure {
  double lower = 0.0;
  double upper = 0.0;

  double midpoint() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
  bool contains(double x) const { return lower <= x && x <= upper; }
  /// Overlap after widening both intervals by `slack`.
  bool overlaps(const Enclosure& other, double slack = 1e-9) const {
    return lower - slack <= other.upper && other.lower - slack <= upper;
  }
};

/// Dense nonnegative square matrix, row-major.
class NonnegativeMatrix {
 public:
  explicit NonnegativeMatrix(std::size_t n = 0) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  NonnegativeMatrix transposed() const;
  NonnegativeMatrix submatrix(const std::vector<std::size_t>& rows) const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

struct PerronData {
  /// Collatz-Wielandt enclosure of the spectral radius.
  Enclosure radius;
  /// Positive right and left Perron vectors, each normalized to unit sum.
  std::vector<double> right;
  std::vector<double> left;
};

/// Perron root and vectors of an irreducible nonnegative matrix. The enclosure
/// comes from min/max of (Mx)_i / x_i for the computed positive vector x, so it
/// is valid regardless of how well the iteration converged.
PerronData perron(const NonnegativeMatrix& matrix);

/// Spectral radius enclosure of an arbitrary nonnegative matrix (maximum over
/// its irreducible diagonal blocks).
Enclosure spectral_radius(const NonnegativeMatrix& matrix);

/// Natural log of a positive enclosure, widened by a few units in the last
/// place so rounding in the matrix entries and in log stays inside.
Enclosure log_enclosure(const Enclosure& positive);

}  // namespace symdyn
