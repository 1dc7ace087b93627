#pragma once

// Line-oriented text formats for algebras, phase functions and operators.
// Doubles are written with 17 significant digits and read back with strtod, so
// every round trip is exact. Lines starting with '#' and blank lines are ignored.
//
//   algebra 1                       phase_function 1
//   name <name>                     group 2,3
//   dim <d>                         algebra <preset> | algebra inline + block
//   norm sup|sum                    kind primal|dual
//   [mult_constant <C>]             points <|G|^2>
//   [unit_norm_bound <b>]           <x coords> <chi coords> re im ...
//   unit re im ...
//   const i j k re im               weyl_operator 1 / group / algebra / entries <|G|^2>
//   ...                             <y> <z> re im ...        (row-major)
//   end
//                                   l1_operator 1 / group / algebra / provenance <tag> / dim <D>
//                                   re im ... (one row per line, D complex entries)

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "weyllab/algebra.hpp"
#include "weyllab/error.hpp"
#include "weyllab/multiplier.hpp"
#include "weyllab/phase_space.hpp"
#include "weyllab/weyl.hpp"

namespace weyllab {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace io_detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-empty, non-comment line split into tokens; empty at end of input.
  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      std::vector<std::string> tokens{std::istream_iterator<std::string>(ss), std::istream_iterator<std::string>()};
      if (!tokens.empty()) return tokens;
    }
    return {};
  }

  std::vector<std::string> expect(const std::string& key, std::size_t min_args = 1) {
    auto t = next();
    if (t.empty()) fail("unexpected end of input, expected '" + key + "'");
    if (t[0] != key) fail("expected '" + key + "', found '" + t[0] + "'");
    if (t.size() < 1 + min_args) fail("'" + key + "' needs " + std::to_string(min_args) + " argument(s)");
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line_no_) + ": " + msg);
  }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

inline double parse_double(const LineReader& r, const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) r.fail("cannot parse number '" + s + "'");
  return v;
}

inline long parse_int(const LineReader& r, const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) r.fail("cannot parse integer '" + s + "'");
  return v;
}

inline std::vector<cplx> parse_complex_list(const LineReader& r, const std::vector<std::string>& t, std::size_t from,
                                            std::size_t count) {
  if (t.size() != from + 2 * count) r.fail("expected " + std::to_string(count) + " complex values");
  std::vector<cplx> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = {parse_double(r, t[from + 2 * i]), parse_double(r, t[from + 2 * i + 1])};
  return out;
}

inline void write_complex(std::ostream& os, cplx z) { os << ' ' << format_double(z.real()) << ' ' << format_double(z.imag()); }

inline std::string coords_string(const std::vector<int>& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s;
}

inline void check_header(LineReader& r, const std::string& magic) {
  const auto t = r.expect(magic);
  if (t[1] != "1") r.fail("unsupported " + magic + " format version '" + t[1] + "'");
}

AlgebraSpec read_algebra_block(LineReader& r);

inline GroupSpec read_group_line(LineReader& r) {
  const auto t = r.expect("group");
  try {
    return GroupSpec::parse(t[1]);
  } catch (const InvalidSpec& e) {
    r.fail(e.what());
  }
}

inline AlgebraSpec read_algebra_line(LineReader& r) {
  const auto t = r.expect("algebra");
  if (t[1] == "inline") return read_algebra_block(r);
  try {
    return AlgebraSpec::from_name(t[1]);
  } catch (const InvalidSpec& e) {
    r.fail(e.what());
  }
}

inline AlgebraSpec read_algebra_block(LineReader& r) {
  check_header(r, "algebra");
  AlgebraSpec::Definition def;
  def.name = r.expect("name")[1];
  const long dim = parse_int(r, r.expect("dim")[1]);
  if (dim < 1) r.fail("dim must be positive");
  def.dim = static_cast<std::size_t>(dim);
  def.constants.assign(def.dim * def.dim * def.dim, cplx{});
  const std::string norm = r.expect("norm")[1];
  if (norm == "sup")
    def.norm = NormKind::sup;
  else if (norm == "sum")
    def.norm = NormKind::sum;
  else
    r.fail("norm must be 'sup' or 'sum'");
  bool have_unit = false;
  for (;;) {
    const auto t = r.next();
    if (t.empty()) r.fail("unexpected end of input inside algebra block");
    if (t[0] == "end") break;
    if (t[0] == "mult_constant" && t.size() == 2) {
      def.mult_constant = parse_double(r, t[1]);
    } else if (t[0] == "unit_norm_bound" && t.size() == 2) {
      def.unit_norm_bound = parse_double(r, t[1]);
    } else if (t[0] == "unit") {
      def.unit = parse_complex_list(r, t, 1, def.dim);
      have_unit = true;
    } else if (t[0] == "const" && t.size() == 6) {
      const long i = parse_int(r, t[1]), j = parse_int(r, t[2]), k = parse_int(r, t[3]);
      const long d = static_cast<long>(def.dim);
      if (i < 0 || j < 0 || k < 0 || i >= d || j >= d || k >= d) r.fail("structure constant index out of range");
      def.constants[static_cast<std::size_t>((i * d + j) * d + k)] = {parse_double(r, t[4]), parse_double(r, t[5])};
    } else {
      r.fail("unexpected '" + t[0] + "' in algebra block");
    }
  }
  if (!have_unit) r.fail("algebra block has no unit");
  try {
    return AlgebraSpec(std::move(def));
  } catch (const InvalidSpec& e) {
    r.fail(e.what());
  }
}

inline void write_algebra_block(std::ostream& os, const AlgebraSpec& a) {
  const auto& d = a.definition();
  os << "algebra 1\n"
     << "name " << d.name << '\n'
     << "dim " << d.dim << '\n'
     << "norm " << to_string(d.norm) << '\n'
     << "mult_constant " << format_double(d.mult_constant) << '\n'
     << "unit_norm_bound " << format_double(d.unit_norm_bound) << '\n'
     << "unit";
  for (const cplx& z : d.unit) write_complex(os, z);
  os << '\n';
  for (std::size_t i = 0; i < d.dim; ++i)
    for (std::size_t j = 0; j < d.dim; ++j)
      for (std::size_t k = 0; k < d.dim; ++k) {
        const cplx c = a.constant(i, j, k);
        if (c == cplx{}) continue;
        os << "const " << i << ' ' << j << ' ' << k;
        write_complex(os, c);
        os << '\n';
      }
  os << "end\n";
}

inline void write_algebra_line(std::ostream& os, const AlgebraSpec& a) {
  if (AlgebraSpec::is_preset_name(a.name()) && AlgebraSpec::from_name(a.name()) == a) {
    os << "algebra " << a.name() << '\n';
  } else {
    os << "algebra inline\n";
    write_algebra_block(os, a);
  }
}

}  // namespace io_detail

inline AlgebraSpec read_algebra(std::istream& in) {
  io_detail::LineReader r(in);
  return io_detail::read_algebra_block(r);
}

inline void write_algebra(std::ostream& os, const AlgebraSpec& a) { io_detail::write_algebra_block(os, a); }

/// A preset name ("c", "cn:3", "dual") or "file:<path>" naming an algebra file.
inline AlgebraSpec resolve_algebra(const std::string& name) {
  if (name.starts_with("file:")) {
    std::ifstream in(name.substr(5));
    if (!in) throw InvalidSpec("algebra: cannot open '" + name.substr(5) + "'");
    try {
      return read_algebra(in);
    } catch (const ParseError& e) {
      throw InvalidSpec("algebra file '" + name.substr(5) + "': " + e.what());
    }
  }
  return AlgebraSpec::from_name(name);
}

inline void write_phase_function(std::ostream& os, const PhaseFunction& f) {
  const GroupSpec& g = f.group();
  os << "phase_function 1\n"
     << "group " << g.to_string() << '\n';
  io_detail::write_algebra_line(os, f.algebra());
  os << "kind " << (f.is_dual() ? "dual" : "primal") << '\n'
     << "points " << f.num_points() << '\n';
  for (std::size_t i = 0; i < f.num_points(); ++i) {
    const PhasePoint p = f.point(i);
    os << io_detail::coords_string(g.element(p.x).coords) << ' ' << io_detail::coords_string(g.character(p.chi).index);
    for (const cplx& z : f.at(i)) io_detail::write_complex(os, z);
    os << '\n';
  }
}

inline PhaseFunction read_phase_function(std::istream& in) {
  io_detail::LineReader r(in);
  io_detail::check_header(r, "phase_function");
  const GroupSpec g = io_detail::read_group_line(r);
  const AlgebraSpec a = io_detail::read_algebra_line(r);
  const std::string kind = r.expect("kind")[1];
  if (kind != "primal" && kind != "dual") r.fail("kind must be 'primal' or 'dual'");
  PhaseFunction f(g, a, kind == "dual" ? ValueKind::dual : ValueKind::primal);
  const long points = io_detail::parse_int(r, r.expect("points")[1]);
  if (points != static_cast<long>(f.num_points())) r.fail("point count does not match the group");
  for (std::size_t i = 0; i < f.num_points(); ++i) {
    const auto t = r.next();
    if (t.size() < 2) r.fail("expected a phase-point record");
    const PhasePoint p = f.point(i);
    if (t[0] != io_detail::coords_string(g.element(p.x).coords) ||
        t[1] != io_detail::coords_string(g.character(p.chi).index))
      r.fail("records must cover the phase points in canonical order");
    const auto v = io_detail::parse_complex_list(r, t, 2, a.dim());
    std::copy(v.begin(), v.end(), f.at(i).begin());
  }
  if (!r.next().empty()) r.fail("trailing content after the last record");
  return f;
}

inline void write_weyl_operator(std::ostream& os, const WeylOperator& F) {
  os << "weyl_operator 1\n"
     << "group " << F.group().to_string() << '\n';
  io_detail::write_algebra_line(os, F.algebra());
  os << "entries " << F.size() * F.size() << '\n';
  for (std::size_t y = 0; y < F.size(); ++y)
    for (std::size_t z = 0; z < F.size(); ++z) {
      os << y << ' ' << z;
      for (const cplx& v : F.at(y, z)) io_detail::write_complex(os, v);
      os << '\n';
    }
}

inline WeylOperator read_weyl_operator(std::istream& in) {
  io_detail::LineReader r(in);
  io_detail::check_header(r, "weyl_operator");
  const GroupSpec g = io_detail::read_group_line(r);
  const AlgebraSpec a = io_detail::read_algebra_line(r);
  WeylOperator F(g, a);
  const long entries = io_detail::parse_int(r, r.expect("entries")[1]);
  if (entries != static_cast<long>(F.size() * F.size())) r.fail("entry count does not match the group");
  for (std::size_t y = 0; y < F.size(); ++y)
    for (std::size_t z = 0; z < F.size(); ++z) {
      const auto t = r.next();
      if (t.size() < 2 || t[0] != std::to_string(y) || t[1] != std::to_string(z))
        r.fail("entries must be listed in row-major order");
      const auto v = io_detail::parse_complex_list(r, t, 2, a.dim());
      std::copy(v.begin(), v.end(), F.at(y, z).begin());
    }
  if (!r.next().empty()) r.fail("trailing content after the last entry");
  return F;
}

inline void write_l1_operator(std::ostream& os, const OperatorOnL1& t) {
  os << "l1_operator 1\n"
     << "group " << t.group().to_string() << '\n';
  io_detail::write_algebra_line(os, t.algebra());
  os << "provenance " << to_string(t.provenance()) << '\n'
     << "dim " << t.coord_dim() << '\n';
  const auto& m = t.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "row";
    for (Eigen::Index j = 0; j < m.cols(); ++j) io_detail::write_complex(os, m(i, j));
    os << '\n';
  }
}

inline OperatorOnL1 read_l1_operator(std::istream& in) {
  io_detail::LineReader r(in);
  io_detail::check_header(r, "l1_operator");
  const GroupSpec g = io_detail::read_group_line(r);
  const AlgebraSpec a = io_detail::read_algebra_line(r);
  Provenance tag = Provenance::user;
  try {
    tag = provenance_from_string(r.expect("provenance")[1]);
  } catch (const ParseError& e) {
    r.fail(e.what());
  }
  const auto d = static_cast<Eigen::Index>(g.cardinality() * g.cardinality() * a.dim());
  if (io_detail::parse_int(r, r.expect("dim")[1]) != d) r.fail("dim does not match group and algebra");
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto t = r.next();
    if (t.empty() || t[0] != "row") r.fail("expected 'row'");
    const auto v = io_detail::parse_complex_list(r, t, 1, static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = v[static_cast<std::size_t>(j)];
  }
  if (!r.next().empty()) r.fail("trailing content after the last row");
  return OperatorOnL1(g, a, std::move(m), tag);
}

}  // namespace weyllab
