#pragma once

// A-valued (or A*-valued) functions on the phase space G x G^. Every sum over
// phase points carries the Haar weight 1/|G| and runs in the canonical order
// x-major, chi-minor, so results are bitwise reproducible.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "weyllab/algebra.hpp"
#include "weyllab/error.hpp"
#include "weyllab/group.hpp"

namespace weyllab {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// A point (x, chi) of G x G^, both given by their enumeration index.
struct PhasePoint {
  std::size_t x = 0;
  std::size_t chi = 0;
  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

enum class ValueKind { primal, dual };

/// Which twisted translation: T^t (right, f -> f x u) or L^t (left, f -> u x f).
enum class Side { T, L };

class PhaseFunction {
 public:
  PhaseFunction(GroupSpec group, AlgebraSpec algebra, ValueKind kind = ValueKind::primal)
      : group_(std::move(group)), algebra_(std::move(algebra)), kind_(kind),
        values_(group_.cardinality() * group_.cardinality() * algebra_.dim()) {}

  const GroupSpec& group() const { return group_; }
  const AlgebraSpec& algebra() const { return algebra_; }
  ValueKind kind() const { return kind_; }
  bool is_dual() const { return kind_ == ValueKind::dual; }

  std::size_t side() const { return group_.cardinality(); }
  std::size_t num_points() const { return side() * side(); }
  std::size_t dim() const { return algebra_.dim(); }

  std::size_t point_index(PhasePoint p) const { return p.x * side() + p.chi; }
  PhasePoint point(std::size_t idx) const { return {idx / side(), idx % side()}; }

  std::span<cplx> at(PhasePoint p) { return {values_.data() + point_index(p) * dim(), dim()}; }
  std::span<const cplx> at(PhasePoint p) const { return {values_.data() + point_index(p) * dim(), dim()}; }
  std::span<cplx> at(std::size_t idx) { return {values_.data() + idx * dim(), dim()}; }
  std::span<const cplx> at(std::size_t idx) const { return {values_.data() + idx * dim(), dim()}; }

  /// Flat coordinates, index (x * |G| + chi) * dim + k.
  std::span<cplx> coords() { return values_; }
  std::span<const cplx> coords() const { return values_; }

  PhaseFunction& operator+=(const PhaseFunction& o) {
    require_same(o, "operator+=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  PhaseFunction& operator-=(const PhaseFunction& o) {
    require_same(o, "operator-=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  PhaseFunction& operator*=(cplx s) {
    for (cplx& v : values_) v *= s;
    return *this;
  }
  friend PhaseFunction operator+(PhaseFunction a, const PhaseFunction& b) { return a += b; }
  friend PhaseFunction operator-(PhaseFunction a, const PhaseFunction& b) { return a -= b; }
  friend PhaseFunction operator*(cplx s, PhaseFunction a) { return a *= s; }

  bool same_space(const PhaseFunction& o) const { return group_ == o.group_ && algebra_ == o.algebra_; }

  void require_same(const PhaseFunction& o, const char* what) const {
    if (!same_space(o)) throw SpecMismatch(std::string(what) + ": operands live over different groups or algebras");
    if (kind_ != o.kind_) throw SpecMismatch(std::string(what) + ": mixing A-valued and A*-valued functions");
  }

 private:
  GroupSpec group_;
  AlgebraSpec algebra_;
  ValueKind kind_;
  std::vector<cplx> values_;
};

namespace detail {
inline void require_space(const PhaseFunction& a, const PhaseFunction& b, const char* what) {
  if (!a.same_space(b)) throw SpecMismatch(std::string(what) + ": operands live over different groups or algebras");
}
inline void require_kind(const PhaseFunction& f, ValueKind k, const char* what) {
  if (f.kind() != k)
    throw SpecMismatch(std::string(what) + (k == ValueKind::primal ? ": expected an A-valued function"
                                                                    : ": expected an A*-valued function"));
}
inline double phase_weight(const GroupSpec& g) { return haar_weights(g).phase(); }
}  // namespace detail

/// |G| * value at the point p: the delta u_p normalized so that ||u_p||_1 = ||value||.
inline PhaseFunction weighted_delta(const GroupSpec& g, const AlgebraSpec& a, PhasePoint p,
                                    const AlgebraElement& value, ValueKind kind = ValueKind::primal) {
  detail::check_dim(a, value.coords.size(), "weighted_delta");
  PhaseFunction f(g, a, kind);
  auto v = f.at(p);
  const double n = static_cast<double>(g.cardinality());
  for (std::size_t k = 0; k < a.dim(); ++k) v[k] = n * value.coords[k];
  return f;
}

inline PhaseFunction weighted_delta(const GroupSpec& g, const AlgebraSpec& a, PhasePoint p) {
  return weighted_delta(g, a, p, a.unit());
}

/// The convolution unit e = |G| * 1_A at (e, 1).
inline PhaseFunction convolution_identity(const GroupSpec& g, const AlgebraSpec& a) {
  return weighted_delta(g, a, PhasePoint{0, 0});
}

/// p' with 1/p + 1/p' = 1.
inline double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError("conjugate_exponent: p must be >= 1");
  if (p == 1.0) return infinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

/// Weighted L^p norm; values of dual-valued functions are measured in the dual norm.
inline double lp_norm(const PhaseFunction& f, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1 (or infinity)");
  const AlgebraSpec& a = f.algebra();
  const double w = detail::phase_weight(f.group());
  double acc = 0.0;
  for (std::size_t i = 0; i < f.num_points(); ++i) {
    const double v = f.is_dual() ? a.dual_norm(f.at(i)) : a.norm(f.at(i));
    if (std::isinf(p))
      acc = std::max(acc, v);
    else if (p == 1.0)
      acc += w * v;
    else
      acc += w * std::pow(v, p);
  }
  if (std::isinf(p) || p == 1.0) return acc;
  return std::pow(acc, 1.0 / p);
}

/// T-side:  (T^t_(x',chi') f)(x, chi) = f(x x'^-1, chi conj(chi')) chi'(x x'^-1)
/// L-side:  (L^t_(x',chi') f)(x, chi) = f(x x'^-1, chi conj(chi')) (chi conj(chi'))(x')
inline PhaseFunction twisted_translate(Side side, PhasePoint by, const PhaseFunction& f) {
  const GroupSpec& g = f.group();
  const std::size_t n = g.cardinality();
  if (by.x >= n || by.chi >= n) throw SpecMismatch("twisted_translate: phase point is not in this group");
  PhaseFunction out(g, f.algebra(), f.kind());
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t sx = g.sub(x, by.x);
    for (std::size_t chi = 0; chi < n; ++chi) {
      const std::size_t schi = g.sub(chi, by.chi);
      const cplx phase = side == Side::T ? g.pairing(sx, by.chi) : g.pairing(by.x, schi);
      auto src = f.at(PhasePoint{sx, schi});
      auto dst = out.at(PhasePoint{x, chi});
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = phase * src[k];
    }
  }
  return out;
}

/// f x g (x, chi) = sum_{x', chi'} w f(x x'^-1, chi conj(chi')) g(x', chi') chi'(x x'^-1)
inline PhaseFunction twisted_convolve(const PhaseFunction& f, const PhaseFunction& g) {
  detail::require_space(f, g, "twisted_convolve");
  detail::require_kind(f, ValueKind::primal, "twisted_convolve");
  detail::require_kind(g, ValueKind::primal, "twisted_convolve");
  const GroupSpec& grp = f.group();
  const AlgebraSpec& alg = f.algebra();
  const std::size_t n = grp.cardinality();
  const double w = detail::phase_weight(grp);
  PhaseFunction out(grp, alg);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t chi = 0; chi < n; ++chi) {
      auto dst = out.at(PhasePoint{x, chi});
      for (std::size_t xp = 0; xp < n; ++xp) {
        const std::size_t dx = grp.sub(x, xp);
        for (std::size_t chip = 0; chip < n; ++chip) {
          const cplx s = w * grp.pairing(dx, chip);
          alg.mul_add(s, f.at(PhasePoint{dx, grp.sub(chi, chip)}), g.at(PhasePoint{xp, chip}), dst);
        }
      }
    }
  return out;
}

/// The second integral form: sum_{x', chi'} w f(x', chi') g(x x'^-1, chi conj(chi')) (chi conj(chi'))(x').
inline PhaseFunction twisted_convolve_left_form(const PhaseFunction& f, const PhaseFunction& g) {
  detail::require_space(f, g, "twisted_convolve_left_form");
  detail::require_kind(f, ValueKind::primal, "twisted_convolve_left_form");
  detail::require_kind(g, ValueKind::primal, "twisted_convolve_left_form");
  const GroupSpec& grp = f.group();
  const AlgebraSpec& alg = f.algebra();
  const std::size_t n = grp.cardinality();
  const double w = detail::phase_weight(grp);
  PhaseFunction out(grp, alg);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t chi = 0; chi < n; ++chi) {
      auto dst = out.at(PhasePoint{x, chi});
      for (std::size_t xp = 0; xp < n; ++xp)
        for (std::size_t chip = 0; chip < n; ++chip) {
          const std::size_t dchi = grp.sub(chi, chip);
          const cplx s = w * grp.pairing(xp, dchi);
          alg.mul_add(s, f.at(PhasePoint{xp, chip}), g.at(PhasePoint{grp.sub(x, xp), dchi}), dst);
        }
    }
  return out;
}

/// (f a)(p) = f(p) a
inline PhaseFunction right_multiply(const PhaseFunction& f, const AlgebraElement& a) {
  detail::require_kind(f, ValueKind::primal, "right_multiply");
  detail::check_dim(f.algebra(), a.coords.size(), "right_multiply");
  PhaseFunction out(f.group(), f.algebra());
  for (std::size_t i = 0; i < f.num_points(); ++i) f.algebra().mul_add(f.at(i), a.coords, out.at(i));
  return out;
}

/// Lambda_a f = a f
inline PhaseFunction left_multiply(const AlgebraElement& a, const PhaseFunction& f) {
  detail::require_kind(f, ValueKind::primal, "left_multiply");
  detail::check_dim(f.algebra(), a.coords.size(), "left_multiply");
  PhaseFunction out(f.group(), f.algebra());
  for (std::size_t i = 0; i < f.num_points(); ++i) f.algebra().mul_add(a.coords, f.at(i), out.at(i));
  return out;
}

/// <f, h> = sum_p w <f(p), h(p)>, bilinear.
inline cplx pair(const PhaseFunction& f, const PhaseFunction& h) {
  detail::require_space(f, h, "pair");
  detail::require_kind(f, ValueKind::primal, "pair");
  detail::require_kind(h, ValueKind::dual, "pair");
  const double w = detail::phase_weight(f.group());
  cplx acc{};
  for (std::size_t i = 0; i < f.num_points(); ++i) acc += w * dual_pairing(f.at(i), h.at(i));
  return acc;
}

/// (f (+) h)(x', chi') = sum_{x, chi} w (L^t_(x',chi') f)(x, chi) . h(x, chi); satisfies
/// <f x g, h> = <f, g (+) h>.
inline PhaseFunction oplus(const PhaseFunction& f, const PhaseFunction& h) {
  detail::require_space(f, h, "oplus");
  detail::require_kind(f, ValueKind::primal, "oplus");
  detail::require_kind(h, ValueKind::dual, "oplus");
  const GroupSpec& grp = f.group();
  const AlgebraSpec& alg = f.algebra();
  const std::size_t n = grp.cardinality();
  const double w = detail::phase_weight(grp);
  PhaseFunction out(grp, alg, ValueKind::dual);
  for (std::size_t xp = 0; xp < n; ++xp)
    for (std::size_t chip = 0; chip < n; ++chip) {
      auto dst = out.at(PhasePoint{xp, chip});
      for (std::size_t x = 0; x < n; ++x) {
        const std::size_t dx = grp.sub(x, xp);
        for (std::size_t chi = 0; chi < n; ++chi) {
          const std::size_t dchi = grp.sub(chi, chip);
          const cplx s = w * grp.pairing(xp, dchi);
          alg.act_add(s, f.at(PhasePoint{dx, dchi}), h.at(PhasePoint{x, chi}), dst);
        }
      }
    }
  return out;
}

/// nu *~ f, defined by <nu *~ f, h> = <nu, f (+) h> for every A*-valued h. Solved
/// coordinate by coordinate against the dual basis {indicator(p) e*_j}.
inline PhaseFunction startimes(const PhaseFunction& nu, const PhaseFunction& f) {
  detail::require_space(nu, f, "startimes");
  detail::require_kind(nu, ValueKind::primal, "startimes");
  detail::require_kind(f, ValueKind::primal, "startimes");
  const double w = detail::phase_weight(f.group());
  PhaseFunction out(f.group(), f.algebra());
  PhaseFunction h(f.group(), f.algebra(), ValueKind::dual);
  for (std::size_t i = 0; i < f.num_points(); ++i)
    for (std::size_t j = 0; j < f.dim(); ++j) {
      h.at(i)[j] = 1.0;
      // <k, h> = w k(p)_j
      out.at(i)[j] = pair(nu, oplus(f, h)) / w;
      h.at(i)[j] = 0.0;
    }
  return out;
}

/// h~_(x,chi)(x', chi') = h(x' x, chi' chi) chi(x'); satisfies
/// (T^t_(x,chi) f) (+) h = f (+) h~_(x,chi).
inline PhaseFunction modulate_translate_dual(PhasePoint by, const PhaseFunction& h) {
  detail::require_kind(h, ValueKind::dual, "modulate_translate_dual");
  const GroupSpec& g = h.group();
  const std::size_t n = g.cardinality();
  if (by.x >= n || by.chi >= n) throw SpecMismatch("modulate_translate_dual: phase point is not in this group");
  PhaseFunction out(g, h.algebra(), ValueKind::dual);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t chi = 0; chi < n; ++chi) {
      const cplx phase = g.pairing(x, by.chi);
      auto src = h.at(PhasePoint{g.add(x, by.x), g.add(chi, by.chi)});
      auto dst = out.at(PhasePoint{x, chi});
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = phase * src[k];
    }
  return out;
}

/// An atomic A-valued measure: one mass per phase point.
struct AtomicMeasure {
  PhaseFunction masses;
};

/// Function f becomes the measure with mass w f(p) at p.
inline AtomicMeasure to_measure(const PhaseFunction& f) {
  detail::require_kind(f, ValueKind::primal, "to_measure");
  AtomicMeasure m{f};
  m.masses *= detail::phase_weight(f.group());
  return m;
}

/// Density of an atomic measure with respect to the Haar measure.
inline PhaseFunction density(const AtomicMeasure& m) {
  PhaseFunction f = m.masses;
  f *= 1.0 / detail::phase_weight(f.group());
  return f;
}

inline double total_variation(const AtomicMeasure& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.masses.num_points(); ++i) acc += m.masses.algebra().norm(m.masses.at(i));
  return acc;
}

/// mu x nu (phi) = sum sum phi(x x', chi chi') chi'(x) dmu(x, chi) dnu(x', chi')
inline AtomicMeasure measure_convolve(const AtomicMeasure& mu, const AtomicMeasure& nu) {
  detail::require_space(mu.masses, nu.masses, "measure_convolve");
  const GroupSpec& g = mu.masses.group();
  const AlgebraSpec& a = mu.masses.algebra();
  const std::size_t n = g.cardinality();
  AtomicMeasure out{PhaseFunction(g, a)};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t chi = 0; chi < n; ++chi) {
      auto m = mu.masses.at(PhasePoint{x, chi});
      for (std::size_t xp = 0; xp < n; ++xp)
        for (std::size_t chip = 0; chip < n; ++chip)
          a.mul_add(g.pairing(x, chip), m, nu.masses.at(PhasePoint{xp, chip}),
                    out.masses.at(PhasePoint{g.add(x, xp), g.add(chi, chip)}));
    }
  return out;
}

/// mu x f for an L^1 function f, returned as a function.
inline PhaseFunction measure_convolve(const AtomicMeasure& mu, const PhaseFunction& f) {
  return density(measure_convolve(mu, to_measure(f)));
}

}  // namespace weyllab
