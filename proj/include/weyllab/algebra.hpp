#pragma once

// Finite-dimensional commutative unital algebras given by structure constants
//   e_i e_j = sum_k c[i][j][k] e_k,
// their duals (bilinear pairing <a, x*> = sum_i a_i x*_i), the module action
// of A on A*, and the Arens product on A** (identified with A).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weyllab/error.hpp"
#include "weyllab/group.hpp"

namespace weyllab {

enum class NormKind { sup, sum };

inline std::string to_string(NormKind k) { return k == NormKind::sup ? "sup" : "sum"; }

struct AlgebraElement {
  std::vector<cplx> coords;
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

struct DualFunctional {
  std::vector<cplx> coords;
  friend bool operator==(const DualFunctional&, const DualFunctional&) = default;
};

inline double coord_norm(NormKind kind, std::span<const cplx> v) {
  double r = 0.0;
  for (const cplx& z : v) r = kind == NormKind::sup ? std::max(r, std::abs(z)) : r + std::abs(z);
  return r;
}

class AlgebraSpec {
 public:
  struct Definition {
    std::string name;
    std::size_t dim = 0;
    std::vector<cplx> constants;  // flattened c[(i*dim + j)*dim + k]
    NormKind norm = NormKind::sup;
    std::vector<cplx> unit;
    double mult_constant = 1.0;   // declared C_A in ||ab|| <= C_A ||a|| ||b||
    double unit_norm_bound = 1.0;
  };

  /// Validates commutativity, associativity over basis triples and the unit.
  explicit AlgebraSpec(Definition def) {
    if (def.dim == 0) throw InvalidSpec("algebra: dimension must be positive");
    if (def.constants.size() != def.dim * def.dim * def.dim)
      throw InvalidSpec("algebra: expected dim^3 structure constants");
    if (def.unit.size() != def.dim) throw InvalidSpec("algebra: unit has the wrong length");
    if (!(def.mult_constant > 0.0)) throw InvalidSpec("algebra: multiplicativity constant must be positive");
    auto d = std::make_shared<Data>();
    d->def = std::move(def);
    const std::size_t n = d->def.dim;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const cplx c = d->def.constants[(i * n + j) * n + k];
          if (c != cplx{}) d->terms.push_back({i, j, k, c});
        }
    data_ = std::move(d);
    validate();
  }

  static AlgebraSpec scalar() {
    return AlgebraSpec(Definition{"c", 1, {cplx{1.0}}, NormKind::sup, {cplx{1.0}}});
  }

  /// C^n with the pointwise product and the sup norm.
  static AlgebraSpec pointwise(std::size_t n) {
    if (n == 0) throw InvalidSpec("algebra: cn:<n> needs n >= 1");
    Definition def{"cn:" + std::to_string(n), n, std::vector<cplx>(n * n * n), NormKind::sup,
                   std::vector<cplx>(n, cplx{1.0})};
    for (std::size_t i = 0; i < n; ++i) def.constants[(i * n + i) * n + i] = 1.0;
    return AlgebraSpec(std::move(def));
  }

  /// C[eps]/(eps^2) with basis {1, eps} and the sum norm.
  static AlgebraSpec dual_numbers() {
    Definition def{"dual", 2, std::vector<cplx>(8), NormKind::sum, {cplx{1.0}, cplx{0.0}}};
    def.constants[(0 * 2 + 0) * 2 + 0] = 1.0;
    def.constants[(0 * 2 + 1) * 2 + 1] = 1.0;
    def.constants[(1 * 2 + 0) * 2 + 1] = 1.0;
    return AlgebraSpec(std::move(def));
  }

  /// "c", "cn:<n>" or "dual".
  static AlgebraSpec from_name(std::string_view name) {
    if (name == "c") return scalar();
    if (name == "dual") return dual_numbers();
    if (name.starts_with("cn:")) {
      const std::string tail(name.substr(3));
      std::size_t used = 0;
      long n = 0;
      try {
        n = std::stol(tail, &used);
      } catch (const std::exception&) {
        throw InvalidSpec("algebra: cannot parse '" + std::string(name) + "'");
      }
      if (used != tail.size() || n < 1) throw InvalidSpec("algebra: cannot parse '" + std::string(name) + "'");
      return pointwise(static_cast<std::size_t>(n));
    }
    throw InvalidSpec("algebra: unknown algebra '" + std::string(name) + "'");
  }

  static bool is_preset_name(std::string_view name) {
    try {
      from_name(name);
      return true;
    } catch (const InvalidSpec&) {
      return false;
    }
  }

  const Definition& definition() const { return data_->def; }
  const std::string& name() const { return data_->def.name; }
  std::size_t dim() const { return data_->def.dim; }
  NormKind norm_kind() const { return data_->def.norm; }
  double mult_constant() const { return data_->def.mult_constant; }
  cplx constant(std::size_t i, std::size_t j, std::size_t k) const {
    return data_->def.constants[(i * dim() + j) * dim() + k];
  }
  AlgebraElement unit() const { return {data_->def.unit}; }
  AlgebraElement basis(std::size_t i) const {
    AlgebraElement e{std::vector<cplx>(dim())};
    e.coords.at(i) = 1.0;
    return e;
  }
  AlgebraElement zero() const { return {std::vector<cplx>(dim())}; }

  /// True for the complex field itself (dim 1, e_0 e_0 = e_0).
  bool is_scalar() const { return dim() == 1 && constant(0, 0, 0) == cplx{1.0}; }

  /// out += a b
  void mul_add(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) const {
    for (const Term& t : data_->terms) out[t.k] += t.c * a[t.i] * b[t.j];
  }
  /// out += s * a b
  void mul_add(cplx s, std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) const {
    for (const Term& t : data_->terms) out[t.k] += s * t.c * a[t.i] * b[t.j];
  }
  /// out += s * (a . f), where (a . f)(b) = f(b a)
  void act_add(cplx s, std::span<const cplx> a, std::span<const cplx> f, std::span<cplx> out) const {
    // (a . f)_i = f(e_i a) = sum_{j,k} a_j c[i][j][k] f_k
    for (const Term& t : data_->terms) out[t.i] += s * t.c * a[t.j] * f[t.k];
  }

  double norm(std::span<const cplx> a) const { return coord_norm(norm_kind(), a); }
  double dual_norm(std::span<const cplx> f) const {
    return coord_norm(norm_kind() == NormKind::sup ? NormKind::sum : NormKind::sup, f);
  }

  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
    if (a.data_ == b.data_) return true;
    const Definition& x = a.definition();
    const Definition& y = b.definition();
    return x.dim == y.dim && x.constants == y.constants && x.norm == y.norm && x.unit == y.unit;
  }

 private:
  struct Term {
    std::size_t i, j, k;
    cplx c;
  };
  struct Data {
    Definition def;
    std::vector<Term> terms;
  };

  void validate() const {
    const std::size_t n = dim();
    constexpr double tol = 1e-12;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (std::abs(constant(i, j, k) - constant(j, i, k)) > tol)
            throw InvalidSpec("algebra '" + name() + "': structure constants are not commutative");
    // (e_i e_j) e_k == e_i (e_j e_k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t m = 0; m < n; ++m) {
            cplx lhs{}, rhs{};
            for (std::size_t l = 0; l < n; ++l) {
              lhs += constant(i, j, l) * constant(l, k, m);
              rhs += constant(j, k, l) * constant(i, l, m);
            }
            if (std::abs(lhs - rhs) > tol)
              throw InvalidSpec("algebra '" + name() + "': structure constants are not associative");
          }
    const auto& u = data_->def.unit;
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<cplx> e(n), out(n);
      e[b] = 1.0;
      mul_add(u, e, out);
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(out[k] - e[k]) > tol) throw InvalidSpec("algebra '" + name() + "': unit does not act as identity");
    }
    if (norm(u) > data_->def.unit_norm_bound + tol)
      throw InvalidSpec("algebra '" + name() + "': unit norm exceeds its declared bound");
  }

  std::shared_ptr<const Data> data_;
};

namespace detail {
inline void check_dim(const AlgebraSpec& alg, std::size_t n, const char* what) {
  if (n != alg.dim()) throw DomainError(std::string(what) + ": dimension mismatch with algebra '" + alg.name() + "'");
}
}  // namespace detail

inline AlgebraElement alg_mul(const AlgebraSpec& alg, const AlgebraElement& a, const AlgebraElement& b) {
  detail::check_dim(alg, a.coords.size(), "alg_mul");
  detail::check_dim(alg, b.coords.size(), "alg_mul");
  AlgebraElement out = alg.zero();
  alg.mul_add(a.coords, b.coords, out.coords);
  return out;
}

/// a . f with (a . f)(b) = f(b a).
inline DualFunctional module_action(const AlgebraSpec& alg, const AlgebraElement& a, const DualFunctional& f) {
  detail::check_dim(alg, a.coords.size(), "module_action");
  detail::check_dim(alg, f.coords.size(), "module_action");
  DualFunctional out{std::vector<cplx>(alg.dim())};
  alg.act_add(1.0, a.coords, f.coords, out.coords);
  return out;
}

/// <a, f> = sum_i a_i f_i (bilinear, no conjugation).
inline cplx dual_pairing(std::span<const cplx> a, std::span<const cplx> f) {
  if (a.size() != f.size()) throw DomainError("dual_pairing: dimension mismatch");
  cplx acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * f[i];
  return acc;
}

/// f . F in A*, (f . F)(a) = F(a . f), with F in A** ~ A acting by F(g) = <F, g>.
inline DualFunctional functional_times_bidual(const AlgebraSpec& alg, const DualFunctional& f, const AlgebraElement& F) {
  detail::check_dim(alg, f.coords.size(), "arens");
  detail::check_dim(alg, F.coords.size(), "arens");
  DualFunctional out{std::vector<cplx>(alg.dim())};
  for (std::size_t k = 0; k < alg.dim(); ++k) {
    const DualFunctional ek_f = module_action(alg, alg.basis(k), f);
    out.coords[k] = dual_pairing(F.coords, ek_f.coords);
  }
  return out;
}

/// Arens product F . G on A** ~ A: (F . G)(f) = G(f . F), evaluated on the dual basis.
inline AlgebraElement arens_product(const AlgebraSpec& alg, const AlgebraElement& F, const AlgebraElement& G) {
  detail::check_dim(alg, F.coords.size(), "arens_product");
  detail::check_dim(alg, G.coords.size(), "arens_product");
  AlgebraElement out = alg.zero();
  for (std::size_t k = 0; k < alg.dim(); ++k) {
    DualFunctional delta{std::vector<cplx>(alg.dim())};
    delta.coords[k] = 1.0;
    out.coords[k] = dual_pairing(G.coords, functional_times_bidual(alg, delta, F).coords);
  }
  return out;
}

inline double norm(const AlgebraSpec& alg, const AlgebraElement& a) { return alg.norm(a.coords); }
inline double dual_norm(const AlgebraSpec& alg, const DualFunctional& f) { return alg.dual_norm(f.coords); }

}  // namespace weyllab
