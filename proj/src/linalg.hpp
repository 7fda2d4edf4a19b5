#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace csmaa::detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

/// Orthogonal projector onto the null space of a set of row vectors
/// (the direction space of an affine subspace defined by equalities).
class Projector {
 public:
  Projector(std::size_t dim, const std::vector<std::vector<double>>& rows) : dim_(dim) {
    // Modified Gram-Schmidt; dependent rows are dropped.
    for (const auto& r : rows) {
      std::vector<double> v = r;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis_) {
          const double c = dot(v, q);
          for (std::size_t k = 0; k < dim_; ++k) v[k] -= c * q[k];
        }
      const double n = std::sqrt(dot(v, v));
      if (n > 1e-10 * std::max(1.0, std::sqrt(dot(r, r)))) {
        for (double& x : v) x /= n;
        basis_.push_back(std::move(v));
      }
    }
  }

  std::size_t dimension() const { return dim_ - basis_.size(); }

  void project(std::span<double> v) const {
    for (const auto& q : basis_) {
      const double c = dot(v, q);
      for (std::size_t k = 0; k < dim_; ++k) v[k] -= c * q[k];
    }
  }

  double projected_norm(std::span<const double> a) const {
    double n2 = dot(a, a);
    for (const auto& q : basis_) {
      const double c = dot(a, q);
      n2 -= c * c;
    }
    return std::sqrt(std::max(0.0, n2));
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> basis_;
};

}  // namespace csmaa::detail
