#pragma once

// The projective representation rho(x, chi) phi(y) = chi(y) phi(x y), the Weyl
// transform W(f) = sum w f(x, chi) rho(x, chi), its inverse, and Schatten norms.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "weyllab/algebra.hpp"
#include "weyllab/error.hpp"
#include "weyllab/group.hpp"
#include "weyllab/jacobi.hpp"
#include "weyllab/phase_space.hpp"

namespace weyllab {

/// An operator on L^2(G; A) stored as an A-valued |G| x |G| array; acts by
/// (F phi)(y) = sum_z F[y][z] phi(z).
class WeylOperator {
 public:
  WeylOperator(GroupSpec group, AlgebraSpec algebra)
      : group_(std::move(group)), algebra_(std::move(algebra)),
        entries_(group_.cardinality() * group_.cardinality() * algebra_.dim()) {}

  const GroupSpec& group() const { return group_; }
  const AlgebraSpec& algebra() const { return algebra_; }
  std::size_t size() const { return group_.cardinality(); }
  std::size_t dim() const { return algebra_.dim(); }

  std::span<cplx> at(std::size_t y, std::size_t z) { return {entries_.data() + (y * size() + z) * dim(), dim()}; }
  std::span<const cplx> at(std::size_t y, std::size_t z) const {
    return {entries_.data() + (y * size() + z) * dim(), dim()};
  }
  std::span<cplx> coords() { return entries_; }
  std::span<const cplx> coords() const { return entries_; }

  bool same_space(const WeylOperator& o) const { return group_ == o.group_ && algebra_ == o.algebra_; }

  WeylOperator& operator+=(const WeylOperator& o) {
    require(o, "operator+=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  WeylOperator& operator*=(cplx s) {
    for (cplx& v : entries_) v *= s;
    return *this;
  }

  friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) {
    a.require(b, "operator*");
    const std::size_t n = a.size();
    WeylOperator out(a.group_, a.algebra_);
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        auto dst = out.at(y, z);
        for (std::size_t m = 0; m < n; ++m) a.algebra_.mul_add(a.at(y, m), b.at(m, z), dst);
      }
    return out;
  }

  /// Applies the operator to an A-valued function on G (|G| * dim coordinates).
  std::vector<cplx> apply(std::span<const cplx> phi) const {
    if (phi.size() != size() * dim()) throw DomainError("WeylOperator::apply: argument has the wrong size");
    std::vector<cplx> out(phi.size());
    for (std::size_t y = 0; y < size(); ++y)
      for (std::size_t z = 0; z < size(); ++z)
        algebra_.mul_add(at(y, z), phi.subspan(z * dim(), dim()), std::span<cplx>(out).subspan(y * dim(), dim()));
    return out;
  }

  void require(const WeylOperator& o, const char* what) const {
    if (!same_space(o)) throw SpecMismatch(std::string(what) + ": operators live over different groups or algebras");
  }

 private:
  GroupSpec group_;
  AlgebraSpec algebra_;
  std::vector<cplx> entries_;
};

inline WeylOperator identity_operator(const GroupSpec& g, const AlgebraSpec& a) {
  WeylOperator out(g, a);
  const AlgebraElement u = a.unit();
  for (std::size_t y = 0; y < g.cardinality(); ++y) std::copy(u.coords.begin(), u.coords.end(), out.at(y, y).begin());
  return out;
}

/// rho(x, chi): entries[y][x y] = chi(y) 1_A.
inline WeylOperator rho(PhasePoint p, const GroupSpec& g, const AlgebraSpec& a) {
  const std::size_t n = g.cardinality();
  if (p.x >= n || p.chi >= n) throw DomainError("rho: phase point is not in this group");
  WeylOperator out(g, a);
  const AlgebraElement u = a.unit();
  for (std::size_t y = 0; y < n; ++y) {
    auto e = out.at(y, g.add(p.x, y));
    const cplx c = g.pairing(y, p.chi);
    for (std::size_t k = 0; k < a.dim(); ++k) e[k] = c * u.coords[k];
  }
  return out;
}

/// W(f) = sum_{x, chi} w f(x, chi) rho(x, chi), i.e. W(f)[y][x y] = sum_chi w f(x, chi) chi(y).
inline WeylOperator weyl(const PhaseFunction& f) {
  detail::require_kind(f, ValueKind::primal, "weyl");
  const GroupSpec& g = f.group();
  const std::size_t n = g.cardinality();
  const double w = detail::phase_weight(g);
  WeylOperator out(g, f.algebra());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t chi = 0; chi < n; ++chi) {
      auto v = f.at(PhasePoint{x, chi});
      for (std::size_t y = 0; y < n; ++y) {
        auto e = out.at(y, g.add(x, y));
        const cplx c = w * g.pairing(y, chi);
        for (std::size_t k = 0; k < v.size(); ++k) e[k] += c * v[k];
      }
    }
  return out;
}

/// f(x, chi) = tr(rho(x, chi)^* F), using the Hilbert-Schmidt orthogonality of the rho's.
inline PhaseFunction weyl_inverse(const WeylOperator& F) {
  const GroupSpec& g = F.group();
  const std::size_t n = g.cardinality();
  PhaseFunction out(g, F.algebra());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t chi = 0; chi < n; ++chi) {
      auto dst = out.at(PhasePoint{x, chi});
      for (std::size_t y = 0; y < n; ++y) {
        const cplx c = std::conj(g.pairing(y, chi));
        auto e = F.at(y, g.add(x, y));
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += c * e[k];
      }
    }
  return out;
}

/// Scalar matrix of an operator over A = C.
inline Eigen::MatrixXcd to_matrix(const WeylOperator& F) {
  if (!F.algebra().is_scalar()) throw Unsupported("to_matrix: operator is not scalar-valued (algebra '" + F.algebra().name() + "')");
  const auto n = static_cast<Eigen::Index>(F.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index y = 0; y < n; ++y)
    for (Eigen::Index z = 0; z < n; ++z) m(y, z) = F.at(static_cast<std::size_t>(y), static_cast<std::size_t>(z))[0];
  return m;
}

inline std::vector<double> singular_values(const WeylOperator& F) { return singular_values(to_matrix(F)); }

/// l^p norm of the singular values (p = infinity: operator norm). Scalar algebras only.
inline double schatten(const WeylOperator& F, double p) {
  if (!(p >= 1.0)) throw DomainError("schatten: p must be >= 1 (or infinity)");
  const std::vector<double> sv = singular_values(F);
  if (std::isinf(p)) return sv.empty() ? 0.0 : sv.front();
  double acc = 0.0;
  for (double s : sv) acc += std::pow(s, p);
  return std::pow(acc, 1.0 / p);
}

inline double operator_norm(const WeylOperator& F) { return schatten(F, infinity); }

/// max_{y,z} ||F[y][z] - G[y][z]||_A divided by max(1, largest entry norm).
inline double operator_defect(const WeylOperator& a, const WeylOperator& b) {
  a.require(b, "operator_defect");
  const AlgebraSpec& alg = a.algebra();
  double diff = 0.0, scale = 1.0;
  std::vector<cplx> d(a.dim());
  for (std::size_t y = 0; y < a.size(); ++y)
    for (std::size_t z = 0; z < a.size(); ++z) {
      auto ea = a.at(y, z);
      auto eb = b.at(y, z);
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = ea[k] - eb[k];
      diff = std::max(diff, alg.norm(d));
      scale = std::max({scale, alg.norm(ea), alg.norm(eb)});
    }
  return diff / scale;
}

}  // namespace weyllab
