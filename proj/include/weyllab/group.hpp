#pragma once

// Finite abelian groups G = Z_{n_1} x ... x Z_{n_k}, their duals and a plain
// Fourier transform.
//
// Elements are enumerated in mixed radix with the last coordinate fastest.
// The dual group is indexed by the same set: index k labels the character
//   chi_k(x) = exp(2 pi i sum_i k_i x_i / n_i).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weyllab/error.hpp"

namespace weyllab {

using cplx = std::complex<double>;

struct GroupElement {
  std::vector<int> coords;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct Character {
  std::vector<int> index;
  friend bool operator==(const Character&, const Character&) = default;
};

class GroupSpec {
 public:
  /// Throws InvalidSpec for an empty list or an order < 1.
  explicit GroupSpec(std::vector<int> orders) {
    if (orders.empty()) throw InvalidSpec("group: list of cyclic orders is empty");
    for (int n : orders) {
      if (n < 1) throw InvalidSpec("group: cyclic order " + std::to_string(n) + " is not positive");
    }
    auto t = std::make_shared<Tables>();
    t->orders = std::move(orders);
    t->card = 1;
    std::int64_t lcm = 1;
    for (int n : t->orders) {
      t->card *= static_cast<std::size_t>(n);
      lcm = std::lcm(lcm, static_cast<std::int64_t>(n));
    }
    t->lcm = lcm;
    build_tables(*t);
    tables_ = std::move(t);
  }

  /// Parses "2,3" style lists.
  static GroupSpec parse(std::string_view text) {
    std::vector<int> orders;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(item, &used);
      } catch (const std::exception&) {
        throw InvalidSpec("group: cannot parse order '" + item + "'");
      }
      if (used != item.size()) throw InvalidSpec("group: cannot parse order '" + item + "'");
      orders.push_back(value);
    }
    return GroupSpec(std::move(orders));
  }

  const std::vector<int>& orders() const { return tables_->orders; }
  std::size_t rank() const { return tables_->orders.size(); }
  std::size_t cardinality() const { return tables_->card; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (i) out += ',';
      out += std::to_string(orders()[i]);
    }
    return out;
  }

  GroupElement element(std::size_t idx) const { return {coords_of(idx)}; }
  Character character(std::size_t idx) const { return {coords_of(idx)}; }

  std::size_t index_of(const GroupElement& x) const { return index_of_coords(x.coords); }
  std::size_t index_of(const Character& chi) const { return index_of_coords(chi.index); }

  GroupElement identity() const { return element(0); }
  GroupElement compose(const GroupElement& x, const GroupElement& y) const {
    return element(add(index_of(x), index_of(y)));
  }
  GroupElement inverse(const GroupElement& x) const { return element(neg(index_of(x))); }

  // Index-level arithmetic; G and its dual share these tables.
  std::size_t add(std::size_t a, std::size_t b) const { return tables_->add[a * cardinality() + b]; }
  std::size_t neg(std::size_t a) const { return tables_->neg[a]; }
  std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

  /// chi(x) for element index x and character index chi.
  cplx pairing(std::size_t x, std::size_t chi) const { return tables_->pairing[x * cardinality() + chi]; }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.tables_ == b.tables_ || a.orders() == b.orders();
  }

 private:
  struct Tables {
    std::vector<int> orders;
    std::size_t card = 1;
    std::int64_t lcm = 1;
    std::vector<std::size_t> add;
    std::vector<std::size_t> neg;
    std::vector<cplx> pairing;
  };

  std::vector<int> coords_of(std::size_t idx, const Tables& t) const {
    std::vector<int> c(t.orders.size());
    if (idx >= t.card) throw DomainError("group: element index out of range");
    for (std::size_t i = t.orders.size(); i-- > 0;) {
      c[i] = static_cast<int>(idx % static_cast<std::size_t>(t.orders[i]));
      idx /= static_cast<std::size_t>(t.orders[i]);
    }
    return c;
  }
  std::vector<int> coords_of(std::size_t idx) const { return coords_of(idx, *tables_); }

  static std::size_t index_of_coords(const std::vector<int>& c, const Tables& t) {
    if (c.size() != t.orders.size()) throw DomainError("group: coordinate vector has the wrong rank");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || c[i] >= t.orders[i]) throw DomainError("group: coordinate out of range");
      idx = idx * static_cast<std::size_t>(t.orders[i]) + static_cast<std::size_t>(c[i]);
    }
    return idx;
  }
  std::size_t index_of_coords(const std::vector<int>& c) const { return index_of_coords(c, *tables_); }

  // exp(2 pi i m / L), exact at quarter turns.
  static cplx root_of_unity(std::int64_t m, std::int64_t L) {
    m %= L;
    if (m < 0) m += L;
    if ((4 * m) % L == 0) {
      switch ((4 * m) / L) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
      }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(L);
    return std::polar(1.0, angle);
  }

  void build_tables(Tables& t) const {
    const std::size_t n = t.card;
    std::vector<std::vector<int>> coords(n);
    for (std::size_t i = 0; i < n; ++i) coords[i] = coords_of(i, t);
    t.add.resize(n * n);
    t.neg.resize(n);
    t.pairing.resize(n * n);
    std::vector<int> tmp(t.orders.size());
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t r = 0; r < t.orders.size(); ++r) tmp[r] = (t.orders[r] - coords[a][r]) % t.orders[r];
      t.neg[a] = index_of_coords(tmp, t);
      for (std::size_t b = 0; b < n; ++b) {
        std::int64_t phase = 0;
        for (std::size_t r = 0; r < t.orders.size(); ++r) {
          tmp[r] = (coords[a][r] + coords[b][r]) % t.orders[r];
          const std::int64_t prod = (static_cast<std::int64_t>(coords[a][r]) * coords[b][r]) % t.orders[r];
          phase = (phase + prod * (t.lcm / t.orders[r])) % t.lcm;
        }
        t.add[a * n + b] = index_of_coords(tmp, t);
        t.pairing[a * n + b] = root_of_unity(phase, t.lcm);
      }
    }
  }

  std::shared_ptr<const Tables> tables_;
};

inline GroupSpec make_group(std::vector<int> orders) { return GroupSpec(std::move(orders)); }

/// chi(x). Throws DomainError when x or chi does not belong to the group.
inline cplx pairing(const GroupSpec& g, const GroupElement& x, const Character& chi) {
  return g.pairing(g.index_of(x), g.index_of(chi));
}

struct HaarWeights {
  double group = 1.0;  // mass of each point of G
  double dual = 1.0;   // mass of each point of the dual group
  double phase() const { return group * dual; }
};

/// Counting measure on G, normalized counting measure on the dual. With this
/// choice the Weyl transform is unitary from L^2 onto Hilbert-Schmidt operators.
inline HaarWeights haar_weights(const GroupSpec& g) {
  return {1.0, 1.0 / static_cast<double>(g.cardinality())};
}

/// phi_hat(chi) = sum_x phi(x) conj(chi(x)).
inline std::vector<cplx> fourier(const GroupSpec& g, std::span<const cplx> phi) {
  const std::size_t n = g.cardinality();
  if (phi.size() != n) throw DomainError("fourier: function size does not match the group");
  std::vector<cplx> out(n);
  for (std::size_t chi = 0; chi < n; ++chi) {
    cplx acc{};
    for (std::size_t x = 0; x < n; ++x) acc += phi[x] * std::conj(g.pairing(x, chi));
    out[chi] = acc;
  }
  return out;
}

/// phi(x) = (1/|G|) sum_chi phi_hat(chi) chi(x).
inline std::vector<cplx> inverse_fourier(const GroupSpec& g, std::span<const cplx> phi_hat) {
  const std::size_t n = g.cardinality();
  if (phi_hat.size() != n) throw DomainError("inverse_fourier: function size does not match the group");
  const double w = haar_weights(g).dual;
  std::vector<cplx> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    cplx acc{};
    for (std::size_t chi = 0; chi < n; ++chi) acc += phi_hat[chi] * g.pairing(x, chi);
    out[x] = w * acc;
  }
  return out;
}

}  // namespace weyllab
