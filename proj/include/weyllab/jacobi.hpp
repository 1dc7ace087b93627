#pragma once

// Cyclic Jacobi eigenvalue iteration for complex Hermitian matrices, and
// singular values through the Hermitian dilation [[0, F], [F^*, 0]].

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "weyllab/error.hpp"

namespace weyllab {

/// Eigenvalues of a Hermitian matrix, sorted descending. Only the Hermitian part
/// of H is used.
inline std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& input, double tol = 1e-15,
                                                 int max_sweeps = 100) {
  if (input.rows() != input.cols()) throw DomainError("hermitian_eigenvalues: matrix is not square");
  const Eigen::Index n = input.rows();
  Eigen::MatrixXcd h = 0.5 * (input + input.adjoint());
  const double scale = std::max(h.norm(), std::numeric_limits<double>::min());

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < max_sweeps && off_norm() > tol * scale; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const std::complex<double> hpq = h(p, q);
        const double r = std::abs(hpq);
        if (r <= 1e-300) continue;
        // phase that makes h(p,q) real, then a real rotation
        const std::complex<double> d = std::conj(hpq) / r;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const std::complex<double> hkp = h(k, p);
          const std::complex<double> hkq = h(k, q) * d;
          h(k, p) = c * hkp - s * hkq;
          h(k, q) = s * hkp + c * hkq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const std::complex<double> hpk = h(p, k);
          const std::complex<double> hqk = std::conj(d) * h(q, k);
          h(p, k) = c * hpk - s * hqk;
          h(q, k) = s * hpk + c * hqk;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
      }
  }

  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = h(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

/// Singular values of a square matrix, sorted descending.
inline std::vector<double> singular_values(const Eigen::MatrixXcd& f) {
  if (f.rows() != f.cols()) throw DomainError("singular_values: matrix is not square");
  const Eigen::Index n = f.rows();
  Eigen::MatrixXcd dilation = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  dilation.topRightCorner(n, n) = f;
  dilation.bottomLeftCorner(n, n) = f.adjoint();
  std::vector<double> ev = hermitian_eigenvalues(dilation);
  // spectrum is {+s_i} U {-s_i}
  std::vector<double> sv(ev.begin(), ev.begin() + n);
  for (double& s : sv) s = std::abs(s);
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace weyllab
