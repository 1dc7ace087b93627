#pragma once

// Linear operators on L^1(G x G^; A) as dense matrices over the coordinate space,
// and the predicates, recoveries and equivalence chains for Weyl multipliers.
//
// Defects are measured on the weighted delta basis {u_p e_k}, which spans, so a
// basis-level pass is an all-inputs pass by linearity.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "weyllab/algebra.hpp"
#include "weyllab/error.hpp"
#include "weyllab/phase_space.hpp"
#include "weyllab/random.hpp"
#include "weyllab/weyl.hpp"

namespace weyllab {

enum class Provenance { from_measure, random, averaged, user };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::from_measure: return "from_measure";
    case Provenance::random: return "random";
    case Provenance::averaged: return "averaged";
    default: return "user";
  }
}

inline Provenance provenance_from_string(const std::string& s) {
  if (s == "from_measure") return Provenance::from_measure;
  if (s == "random") return Provenance::random;
  if (s == "averaged") return Provenance::averaged;
  if (s == "user") return Provenance::user;
  throw ParseError("unknown provenance '" + s + "'");
}

class OperatorOnL1 {
 public:
  OperatorOnL1(GroupSpec group, AlgebraSpec algebra, Eigen::MatrixXcd matrix, Provenance tag = Provenance::user)
      : group_(std::move(group)), algebra_(std::move(algebra)), matrix_(std::move(matrix)), tag_(tag) {
    const auto d = static_cast<Eigen::Index>(coord_dim());
    if (matrix_.rows() != d || matrix_.cols() != d)
      throw SpecMismatch("OperatorOnL1: matrix must be " + std::to_string(d) + " x " + std::to_string(d));
  }

  static OperatorOnL1 identity(const GroupSpec& g, const AlgebraSpec& a) {
    const auto d = static_cast<Eigen::Index>(g.cardinality() * g.cardinality() * a.dim());
    return OperatorOnL1(g, a, Eigen::MatrixXcd::Identity(d, d), Provenance::user);
  }

  /// Matrix of a linear map, column j being the image of the j-th coordinate indicator.
  static OperatorOnL1 from_linear_map(const GroupSpec& g, const AlgebraSpec& a,
                                      const std::function<PhaseFunction(const PhaseFunction&)>& map,
                                      Provenance tag = Provenance::user) {
    const std::size_t d = g.cardinality() * g.cardinality() * a.dim();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    PhaseFunction e(g, a);
    for (std::size_t j = 0; j < d; ++j) {
      e.coords()[j] = 1.0;
      const PhaseFunction image = map(e);
      e.coords()[j] = 0.0;
      image.require_same(e, "from_linear_map");
      for (std::size_t i = 0; i < d; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = image.coords()[i];
    }
    return OperatorOnL1(g, a, std::move(m), tag);
  }

  const GroupSpec& group() const { return group_; }
  const AlgebraSpec& algebra() const { return algebra_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Provenance provenance() const { return tag_; }
  std::size_t coord_dim() const { return group_.cardinality() * group_.cardinality() * algebra_.dim(); }

  PhaseFunction apply(const PhaseFunction& f) const {
    if (!(f.group() == group_ && f.algebra() == algebra_))
      throw SpecMismatch("OperatorOnL1::apply: function lives over a different group or algebra");
    detail::require_kind(f, ValueKind::primal, "OperatorOnL1::apply");
    const auto d = static_cast<Eigen::Index>(coord_dim());
    Eigen::Map<const Eigen::VectorXcd> in(f.coords().data(), d);
    PhaseFunction out(group_, algebra_);
    Eigen::Map<Eigen::VectorXcd>(out.coords().data(), d).noalias() = matrix_ * in;
    return out;
  }
  PhaseFunction operator()(const PhaseFunction& f) const { return apply(f); }

  void require(const OperatorOnL1& o, const char* what) const {
    if (!(group_ == o.group_ && algebra_ == o.algebra_))
      throw SpecMismatch(std::string(what) + ": operators live over different groups or algebras");
  }

 private:
  GroupSpec group_;
  AlgebraSpec algebra_;
  Eigen::MatrixXcd matrix_;
  Provenance tag_;
};

/// T f = nu x f.
inline OperatorOnL1 from_measure(const PhaseFunction& nu) {
  detail::require_kind(nu, ValueKind::primal, "from_measure");
  return OperatorOnL1::from_linear_map(
      nu.group(), nu.algebra(), [&](const PhaseFunction& f) { return twisted_convolve(nu, f); },
      Provenance::from_measure);
}

inline OperatorOnL1 translation_operator(Side side, PhasePoint by, const GroupSpec& g, const AlgebraSpec& a) {
  return OperatorOnL1::from_linear_map(g, a, [&](const PhaseFunction& f) { return twisted_translate(side, by, f); });
}

inline OperatorOnL1 random_operator(const GroupSpec& g, const AlgebraSpec& a, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(g.cardinality() * g.cardinality() * a.dim());
  Eigen::MatrixXcd m(d, d);
  // column-major fill in a fixed order
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = rng.complex();
  return OperatorOnL1(g, a, std::move(m), Provenance::random);
}

/// T + delta R for a fresh random R.
inline OperatorOnL1 perturb(const OperatorOnL1& t, double delta, Rng& rng) {
  const OperatorOnL1 r = random_operator(t.group(), t.algebra(), rng);
  return OperatorOnL1(t.group(), t.algebra(), t.matrix() + delta * r.matrix(), Provenance::user);
}

/// The weighted delta basis u_p e_k, ordered like the coordinates.
inline std::vector<PhaseFunction> weighted_delta_basis(const GroupSpec& g, const AlgebraSpec& a) {
  std::vector<PhaseFunction> basis;
  const std::size_t points = g.cardinality() * g.cardinality();
  basis.reserve(points * a.dim());
  for (std::size_t i = 0; i < points; ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      basis.push_back(weighted_delta(g, a, PhasePoint{i / g.cardinality(), i % g.cardinality()}, a.basis(k)));
  return basis;
}

struct PredicateResult {
  bool pass = true;
  double max_defect = 0.0;
  std::string witness;
};

namespace detail {

inline std::string describe_basis(const GroupSpec& g, const AlgebraSpec& a, std::size_t j) {
  const std::size_t p = j / a.dim();
  std::ostringstream os;
  os << "u(" << p / g.cardinality() << "," << p % g.cardinality() << ")e" << j % a.dim();
  return os.str();
}

inline std::string describe_point(PhasePoint p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.chi) + ")";
}

class DefectTracker {
 public:
  explicit DefectTracker(double tol) : tol_(tol) {}
  // Keeps the largest defect and a description of where it occurred.
  void record(double defect, const std::function<std::string()>& witness) {
    if (std::isnan(defect)) defect = infinity;
    if (defect > result_.max_defect) {
      result_.max_defect = defect;
      result_.witness = witness();
    }
  }
  PredicateResult finish() {
    result_.pass = result_.max_defect <= tol_;
    if (result_.pass) result_.witness.clear();
    return result_;
  }

 private:
  double tol_;
  PredicateResult result_;
};

inline void require_tol(double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
}

}  // namespace detail

/// max over phase points p and basis f of ||T(T^t_p f) - T^t_p(T f)||_1.
inline PredicateResult check_translation_commutation(const OperatorOnL1& t, double tol) {
  detail::require_tol(tol);
  const GroupSpec& g = t.group();
  const AlgebraSpec& a = t.algebra();
  const auto basis = weighted_delta_basis(g, a);
  detail::DefectTracker track(tol);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const PhaseFunction tf = t(basis[j]);
    for (std::size_t pi = 0; pi < g.cardinality() * g.cardinality(); ++pi) {
      const PhasePoint p{pi / g.cardinality(), pi % g.cardinality()};
      const PhaseFunction d = t(twisted_translate(Side::T, p, basis[j])) - twisted_translate(Side::T, p, tf);
      track.record(lp_norm(d, 1.0), [&] { return "f=" + detail::describe_basis(g, a, j) + " p=" + detail::describe_point(p); });
    }
  }
  return track.finish();
}

/// max over basis f and basis a of ||T(f a) - T(f) a||_1.
inline PredicateResult check_module_map(const OperatorOnL1& t, double tol) {
  detail::require_tol(tol);
  const GroupSpec& g = t.group();
  const AlgebraSpec& a = t.algebra();
  const auto basis = weighted_delta_basis(g, a);
  detail::DefectTracker track(tol);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const PhaseFunction tf = t(basis[j]);
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const AlgebraElement ek = a.basis(k);
      const PhaseFunction d = t(right_multiply(basis[j], ek)) - right_multiply(tf, ek);
      track.record(lp_norm(d, 1.0), [&] { return "f=" + detail::describe_basis(g, a, j) + " a=e" + std::to_string(k); });
    }
  }
  return track.finish();
}

namespace detail {
// T o S - S o T for S = (translate by p, then multiply by e_k on the given side).
inline PredicateResult check_twisted_module_commutation(const OperatorOnL1& t, double tol, bool left) {
  require_tol(tol);
  const GroupSpec& g = t.group();
  const AlgebraSpec& a = t.algebra();
  const auto basis = weighted_delta_basis(g, a);
  auto s = [&](const AlgebraElement& e, PhasePoint p, const PhaseFunction& f) {
    const PhaseFunction tr = twisted_translate(Side::T, p, f);
    return left ? left_multiply(e, tr) : right_multiply(tr, e);
  };
  DefectTracker track(tol);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const PhaseFunction tf = t(basis[j]);
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const AlgebraElement ek = a.basis(k);
      for (std::size_t pi = 0; pi < g.cardinality() * g.cardinality(); ++pi) {
        const PhasePoint p{pi / g.cardinality(), pi % g.cardinality()};
        const PhaseFunction d = t(s(ek, p, basis[j])) - s(ek, p, tf);
        track.record(lp_norm(d, 1.0), [&] {
          return "f=" + describe_basis(g, a, j) + " a=e" + std::to_string(k) + " p=" + describe_point(p);
        });
      }
    }
  }
  return track.finish();
}
}  // namespace detail

/// T (Lambda_a T^t_p) = (Lambda_a T^t_p) T with Lambda_a f = a f.
inline PredicateResult check_lambda_commutation(const OperatorOnL1& t, double tol) {
  return detail::check_twisted_module_commutation(t, tol, true);
}

/// T (M_a (x) T^t_p) = (M_a (x) T^t_p) T with M_a b = b a.
inline PredicateResult check_M_commutation(const OperatorOnL1& t, double tol) {
  return detail::check_twisted_module_commutation(t, tol, false);
}

/// T(f x g) = T f x g over all pairs of basis elements.
inline PredicateResult check_convolution_property(const OperatorOnL1& t, double tol) {
  detail::require_tol(tol);
  const GroupSpec& g = t.group();
  const AlgebraSpec& a = t.algebra();
  const auto basis = weighted_delta_basis(g, a);
  std::vector<PhaseFunction> images;
  images.reserve(basis.size());
  for (const auto& f : basis) images.push_back(t(f));
  detail::DefectTracker track(tol);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const PhaseFunction d = t(twisted_convolve(basis[i], basis[j])) - twisted_convolve(images[i], basis[j]);
      track.record(lp_norm(d, 1.0), [&] {
        return "f=" + detail::describe_basis(g, a, i) + " g=" + detail::describe_basis(g, a, j);
      });
    }
  return track.finish();
}

/// nu = T(e_x).
inline PhaseFunction recover_symbol(const OperatorOnL1& t) {
  return t(convolution_identity(t.group(), t.algebra()));
}

/// M = W(nu) with nu = T(e_x).
inline WeylOperator recover_operator_M(const OperatorOnL1& t) { return weyl(recover_symbol(t)); }

/// M averaged over phase points: (1/|Lambda|) sum_p W(T u_p) rho(p)^*.
inline WeylOperator recover_operator_M_averaged(const OperatorOnL1& t) {
  const GroupSpec& g = t.group();
  const AlgebraSpec& a = t.algebra();
  const std::size_t n = g.cardinality();
  WeylOperator acc(g, a);
  for (std::size_t pi = 0; pi < n * n; ++pi) {
    const PhasePoint p{pi / n, pi % n};
    const WeylOperator image = weyl(t(weighted_delta(g, a, p)));
    // rho(p)^* [x y][y] = conj(chi(y)) 1_A
    WeylOperator adj(g, a);
    const AlgebraElement u = a.unit();
    for (std::size_t y = 0; y < n; ++y) {
      auto e = adj.at(g.add(p.x, y), y);
      const cplx c = std::conj(g.pairing(y, p.chi));
      for (std::size_t k = 0; k < a.dim(); ++k) e[k] = c * u.coords[k];
    }
    acc += image * adj;
  }
  acc *= 1.0 / static_cast<double>(n * n);
  return acc;
}

/// T f = nu x f with nu = T(e_x), on the basis.
inline PredicateResult check_symbol_representation(const OperatorOnL1& t, double tol) {
  detail::require_tol(tol);
  const PhaseFunction nu = recover_symbol(t);
  const auto basis = weighted_delta_basis(t.group(), t.algebra());
  detail::DefectTracker track(tol);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const PhaseFunction d = t(basis[j]) - twisted_convolve(nu, basis[j]);
    track.record(lp_norm(d, 1.0), [&] { return "f=" + detail::describe_basis(t.group(), t.algebra(), j); });
  }
  return track.finish();
}

/// T f = nu *~ f with nu = T(e_x): the adjunction route.
inline PredicateResult check_startimes_representation(const OperatorOnL1& t, double tol) {
  detail::require_tol(tol);
  const PhaseFunction nu = recover_symbol(t);
  const auto basis = weighted_delta_basis(t.group(), t.algebra());
  detail::DefectTracker track(tol);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const PhaseFunction d = t(basis[j]) - startimes(nu, basis[j]);
    track.record(lp_norm(d, 1.0), [&] { return "f=" + detail::describe_basis(t.group(), t.algebra(), j); });
  }
  return track.finish();
}

/// W(T f) = M W(f) on the basis, for a given operator M.
inline PredicateResult check_weyl_representation(const OperatorOnL1& t, const WeylOperator& m, double tol) {
  detail::require_tol(tol);
  const auto basis = weighted_delta_basis(t.group(), t.algebra());
  detail::DefectTracker track(tol);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const double d = operator_defect(weyl(t(basis[j])), m * weyl(basis[j]));
    track.record(d, [&] { return "f=" + detail::describe_basis(t.group(), t.algebra(), j); });
  }
  return track.finish();
}

/// max_j ||T u_j||_1 / ||u_j||_1 over the weighted delta basis.
inline double l1_norm_on_basis(const OperatorOnL1& t) {
  double best = 0.0;
  for (const auto& f : weighted_delta_basis(t.group(), t.algebra()))
    best = std::max(best, lp_norm(t(f), 1.0) / lp_norm(f, 1.0));
  return best;
}

/// Sampled lower estimate of ||T||_{L^1 -> L^p}.
inline double lp_norm_sampled(const OperatorOnL1& t, double p, Rng& rng, int samples = 64) {
  double best = 0.0;
  for (const auto& f : weighted_delta_basis(t.group(), t.algebra())) best = std::max(best, lp_norm(t(f), p) / lp_norm(f, 1.0));
  for (int s = 0; s < samples; ++s) {
    const PhaseFunction f = random_function(t.group(), t.algebra(), rng);
    best = std::max(best, lp_norm(t(f), p) / lp_norm(f, 1.0));
  }
  return best;
}

/// (1/|Lambda|) sum_p (T^t_p)^{-1} T T^t_p. Scalar algebra only.
inline OperatorOnL1 average_to_multiplier(const OperatorOnL1& t) {
  if (!t.algebra().is_scalar())
    throw Unsupported("average_to_multiplier: only defined for the scalar algebra, got '" + t.algebra().name() + "'");
  const GroupSpec& g = t.group();
  const std::size_t n = g.cardinality();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(t.matrix().rows(), t.matrix().cols());
  for (std::size_t pi = 0; pi < n * n; ++pi) {
    const OperatorOnL1 s = translation_operator(Side::T, PhasePoint{pi / n, pi % n}, g, t.algebra());
    // twisted translations are unitary on the coordinate space
    acc.noalias() += s.matrix().adjoint() * t.matrix() * s.matrix();
  }
  acc /= static_cast<double>(n * n);
  return OperatorOnL1(g, t.algebra(), std::move(acc), Provenance::averaged);
}

struct ConditionRecord {
  std::string id;
  std::string statement;
  bool pass = false;
  double max_defect = 0.0;
  std::string witness;
};

struct EquivalenceReport {
  double p = 1.0;
  double tol = 0.0;
  std::vector<ConditionRecord> conditions;
  PhaseFunction symbol;
  WeylOperator operator_m;
  double symbol_lp_norm = 0.0;          // ||nu||_p
  double l1_norm_on_basis = 0.0;        // ||T||_{L^1 -> L^1} on the basis
  double averaged_m_discrepancy = 0.0;  // operator_defect(M, averaged M)
  double m_lambda_discrepancy = 0.0;    // |defect(ii.M) - defect(ii.Lambda)|
  std::optional<double> m_schatten;     // scalar A: ||M||_op for p = 1, ||M||_{p'} otherwise

  const ConditionRecord& condition(const std::string& id) const {
    for (const auto& c : conditions)
      if (c.id == id) return c;
    throw DomainError("EquivalenceReport: no condition '" + id + "'");
  }
  bool all_pass() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.pass; });
  }
  bool none_pass() const {
    return std::none_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.pass; });
  }
  double max_defect() const {
    double m = 0.0;
    for (const auto& c : conditions) m = std::max(m, c.max_defect);
    return m;
  }
  /// Identical verdicts over the given condition ids.
  bool coherent(const std::vector<std::string>& ids) const {
    std::optional<bool> v;
    for (const auto& id : ids) {
      const bool pass = condition(id).pass;
      if (v && *v != pass) return false;
      v = pass;
    }
    return true;
  }
};

/// Condition ids whose verdicts must agree for every operator.
inline const std::vector<std::string>& core_condition_ids() {
  static const std::vector<std::string> ids = {"i", "ii.M", "ii.Lambda", "iii", "iv.measure", "iv.startimes"};
  return ids;
}

/// Runs every predicate and recovery on T.
inline EquivalenceReport verify_equivalence_chain(const OperatorOnL1& t, double p, double tol) {
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("verify_equivalence_chain: p must lie in [1, inf)");
  detail::require_tol(tol);
  EquivalenceReport r{p, tol, {}, recover_symbol(t), recover_operator_M(t), 0.0, 0.0, 0.0, 0.0, std::nullopt};

  auto add = [&](std::string id, std::string statement, const PredicateResult& res) {
    r.conditions.push_back({std::move(id), std::move(statement), res.pass, res.max_defect, res.witness});
  };

  const PredicateResult translation = check_translation_commutation(t, tol);
  const PredicateResult module = check_module_map(t, tol);
  add("i.translation", "T commutes with every twisted translation T^t", translation);
  add("i.module", "T(f a) = T(f) a", module);
  PredicateResult multiplier{translation.pass && module.pass, std::max(translation.max_defect, module.max_defect),
                             translation.pass ? module.witness : translation.witness};
  add("i", "T is a Weyl multiplier", multiplier);
  const PredicateResult m_comm = check_M_commutation(t, tol);
  const PredicateResult l_comm = check_lambda_commutation(t, tol);
  add("ii.M", "T (M_a (x) T^t) = (M_a (x) T^t) T", m_comm);
  add("ii.Lambda", "T (Lambda_a T^t) = (Lambda_a T^t) T", l_comm);
  add("iii", "T(f x g) = T f x g", check_convolution_property(t, tol));
  add("iv.measure", "T f = nu x f", check_symbol_representation(t, tol));
  add("iv.startimes", "T f = nu *~ f", check_startimes_representation(t, tol));
  add("v", "W(T f) = W(nu) W(f)", check_weyl_representation(t, r.operator_m, tol));
  const WeylOperator averaged = recover_operator_M_averaged(t);
  add("vi", "W(T f) = M W(f)", check_weyl_representation(t, averaged, tol));

  r.symbol_lp_norm = lp_norm(r.symbol, p);
  r.l1_norm_on_basis = l1_norm_on_basis(t);
  r.averaged_m_discrepancy = operator_defect(r.operator_m, averaged);
  r.m_lambda_discrepancy = std::abs(m_comm.max_defect - l_comm.max_defect);
  if (t.algebra().is_scalar()) r.m_schatten = schatten(r.operator_m, conjugate_exponent(p));
  return r;
}

}  // namespace weyllab
