#pragma once

// Seeded randomized verification suites and their reports.
//
// Trial i draws from Rng(trial_seed(seed, i)), so results do not depend on how
// trials are scheduled across threads. Each trial yields a fixed list of named
// checks; the trial defect is the largest of them.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "weyllab/algebra.hpp"
#include "weyllab/error.hpp"
#include "weyllab/group.hpp"
#include "weyllab/io.hpp"
#include "weyllab/multiplier.hpp"
#include "weyllab/phase_space.hpp"
#include "weyllab/random.hpp"
#include "weyllab/weyl.hpp"

namespace weyllab {

inline constexpr const char* version = "0.1.0";

struct SuiteConfig {
  std::string suite;
  std::string group = "2";
  std::string algebra = "c";
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::optional<double> p;
  std::string out;
  std::string defect_table;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Check {
  std::string name;
  double defect = 0.0;
};

struct TrialRecord {
  std::int64_t index = 0;
  std::uint64_t seed = 0;
  double defect = 0.0;
  bool pass = false;
  std::vector<Check> checks;
};

struct CheckSummary {
  std::string name;
  double max_defect = 0.0;
  std::int64_t failures = 0;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<TrialRecord> trials;
  std::vector<CheckSummary> checks;
  double max_defect = 0.0;
  double mean_defect = 0.0;
  std::int64_t failed_trials = 0;
  bool pass = false;
  double duration_seconds = 0.0;
};

struct TrialContext {
  const GroupSpec& group;
  const AlgebraSpec& algebra;
  std::optional<double> p;
  double tol;
  Rng& rng;
};

using TrialFn = std::function<std::vector<Check>(TrialContext&)>;

struct SuiteInfo {
  std::string name;
  std::string summary;
  bool scalar_only = false;
  TrialFn run;
};

namespace suite_detail {

inline double rel_l1(const PhaseFunction& a, const PhaseFunction& b) {
  return lp_norm(a - b, 1.0) / std::max(1.0, lp_norm(a, 1.0));
}

inline double rel_abs(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }
inline double rel_abs(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

/// Relative amount by which lhs <= rhs is violated; zero when it holds.
inline double violation(double lhs, double rhs) { return std::max(0.0, lhs - rhs) / std::max(1.0, rhs); }

inline std::string exponent_label(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os.precision(6);
  os << p;
  return os.str();
}

inline std::vector<double> exponents(const TrialContext& c, std::vector<double> defaults) {
  if (c.p) return {*c.p};
  return defaults;
}

inline double matrix_defect(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

inline std::vector<Check> plancherel(TrialContext& c) {
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const double n = static_cast<double>(c.group.cardinality());
  const PhaseFunction u = weighted_delta(c.group, c.algebra, random_point(c.group, c.rng));
  const double hs = schatten(weyl(f), 2.0);
  return {{"hilbert_schmidt_vs_l2", rel_abs(lp_norm(f, 2.0), hs)},
          {"delta_extremizer", std::max(rel_abs(std::sqrt(n), schatten(weyl(u), 2.0)), rel_abs(std::sqrt(n), lp_norm(u, 2.0)))}};
}

inline std::vector<Check> homomorphism(TrialContext& c) {
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction g = random_function(c.group, c.algebra, c.rng);
  return {{"weyl_of_product", operator_defect(weyl(twisted_convolve(f, g)), weyl(f) * weyl(g))}};
}

inline std::vector<Check> riemann_lebesgue(TrialContext& c) {
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction u = weighted_delta(c.group, c.algebra, random_point(c.group, c.rng));
  return {{"operator_norm_bound", violation(operator_norm(weyl(f)), lp_norm(f, 1.0))},
          {"delta_equality", std::max(rel_abs(1.0, operator_norm(weyl(u))), rel_abs(1.0, lp_norm(u, 1.0)))}};
}

inline std::vector<Check> hausdorff_young(TrialContext& c) {
  const auto ps = exponents(c, {4.0 / 3.0, 1.5, 9.0 / 5.0});
  for (double p : ps)
    if (!(p >= 1.0 && p <= 2.0)) throw DomainError("hausdorff-young: p must lie in [1, 2]");
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction u = weighted_delta(c.group, c.algebra, random_point(c.group, c.rng));
  const WeylOperator wf = weyl(f);
  const WeylOperator wu = weyl(u);
  const double n = static_cast<double>(c.group.cardinality());
  std::vector<Check> out;
  for (double p : ps) {
    const double q = conjugate_exponent(p);
    const double expected = std::isinf(q) ? 1.0 : std::pow(n, 1.0 / q);
    const std::string tag = "p=" + exponent_label(p);
    out.push_back({"schatten_bound " + tag, violation(schatten(wf, q), lp_norm(f, p))});
    out.push_back({"delta_equality " + tag, std::max(rel_abs(expected, schatten(wu, q)), rel_abs(expected, lp_norm(u, p)))});
  }
  return out;
}

inline std::vector<Check> covariance(TrialContext& c) {
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const WeylOperator wf = weyl(f);
  const std::size_t n = c.group.cardinality();
  double t_side = 0.0, l_side = 0.0;
  for (std::size_t pi = 0; pi < n * n; ++pi) {
    const PhasePoint p{pi / n, pi % n};
    const WeylOperator r = rho(p, c.group, c.algebra);
    t_side = std::max(t_side, operator_defect(weyl(twisted_translate(Side::T, p, f)), wf * r));
    l_side = std::max(l_side, operator_defect(weyl(twisted_translate(Side::L, p, f)), r * wf));
  }
  return {{"right_translation", t_side}, {"left_translation", l_side}};
}

inline std::vector<Check> translation_isometry(TrialContext& c) {
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const PhasePoint by = random_point(c.group, c.rng);
  const PhaseFunction tf = twisted_translate(Side::T, by, f);
  const PhaseFunction lf = twisted_translate(Side::L, by, f);
  std::vector<Check> out;
  for (double p : exponents(c, {1.0, 1.5, 2.0, infinity})) {
    const double base = lp_norm(f, p);
    out.push_back({"p=" + exponent_label(p), std::max(rel_abs(base, lp_norm(tf, p)), rel_abs(base, lp_norm(lf, p)))});
  }
  return out;
}

inline std::vector<Check> convolution_algebra(TrialContext& c) {
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction g = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction k = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction fg = twisted_convolve(f, g);
  const PhaseFunction e = convolution_identity(c.group, c.algebra);
  return {{"l1_submultiplicative",
           violation(lp_norm(fg, 1.0), c.algebra.mult_constant() * lp_norm(f, 1.0) * lp_norm(g, 1.0))},
          {"associativity", rel_l1(twisted_convolve(fg, k), twisted_convolve(f, twisted_convolve(g, k)))},
          {"integral_forms", rel_l1(fg, twisted_convolve_left_form(f, g))},
          {"unit", std::max(rel_l1(f, twisted_convolve(e, f)), rel_l1(f, twisted_convolve(f, e)))}};
}

inline std::vector<Check> interchange(TrialContext& c) {
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction g = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction fg = twisted_convolve(f, g);
  const std::size_t n = c.group.cardinality();
  double t_side = 0.0, l_side = 0.0;
  for (std::size_t pi = 0; pi < n * n; ++pi) {
    const PhasePoint p{pi / n, pi % n};
    t_side = std::max(t_side, rel_l1(twisted_translate(Side::T, p, fg), twisted_convolve(f, twisted_translate(Side::T, p, g))));
    l_side = std::max(l_side, rel_l1(twisted_translate(Side::L, p, fg), twisted_convolve(twisted_translate(Side::L, p, f), g)));
  }
  return {{"right_interchange", t_side}, {"left_interchange", l_side}};
}

inline std::vector<Check> adjunction(TrialContext& c) {
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction g = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction h = random_function(c.group, c.algebra, c.rng, ValueKind::dual);
  const PhasePoint by = random_point(c.group, c.rng);
  return {{"pairing_adjunction", rel_abs(pair(twisted_convolve(f, g), h), pair(f, oplus(g, h)))},
          {"oplus_covariance", rel_l1(oplus(twisted_translate(Side::T, by, f), h), oplus(f, modulate_translate_dual(by, h)))}};
}

inline std::vector<Check> young_oplus(TrialContext& c) {
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction h = random_function(c.group, c.algebra, c.rng, ValueKind::dual);
  const PhaseFunction fh = oplus(f, h);
  std::vector<Check> out;
  for (double p : exponents(c, {1.5, 2.0, 3.0}))
    out.push_back({"p=" + exponent_label(p),
                   violation(lp_norm(fh, p), c.algebra.mult_constant() * lp_norm(f, 1.0) * lp_norm(h, p))});
  return out;
}

inline std::vector<Check> arens(TrialContext& c) {
  const AlgebraSpec& a = c.algebra;
  const AlgebraElement x = random_element(a, c.rng);
  const AlgebraElement y = random_element(a, c.rng);
  const DualFunctional f = random_functional(a, c.rng);
  const AlgebraElement xy = alg_mul(a, x, y);
  const AlgebraElement ar = arens_product(a, x, y);
  double diff = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) diff = std::max(diff, std::abs(xy.coords[k] - ar.coords[k]));
  const cplx lhs = dual_pairing(alg_mul(a, y, x).coords, f.coords);
  const cplx rhs = dual_pairing(y.coords, module_action(a, x, f).coords);
  return {{"arens_equals_product", diff / std::max(1.0, norm(a, xy))},
          {"module_adjunction", rel_abs(lhs, rhs)},
          {"submultiplicative", violation(norm(a, xy), a.mult_constant() * norm(a, x) * norm(a, y))}};
}

inline std::vector<Check> measure_ideal(TrialContext& c) {
  const PhaseFunction mu = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction nu = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const AtomicMeasure m = to_measure(mu);
  const PhaseFunction mf = measure_convolve(m, f);
  const PhaseFunction mm = density(measure_convolve(m, to_measure(nu)));
  return {{"measure_vs_function", rel_l1(twisted_convolve(mu, f), mf)},
          {"measure_algebra", rel_l1(twisted_convolve(mu, nu), mm)},
          {"ideal_bound", violation(lp_norm(mf, 1.0), c.algebra.mult_constant() * total_variation(m) * lp_norm(f, 1.0))}};
}

inline std::vector<Check> multiplier_forward(TrialContext& c) {
  const PhaseFunction nu = random_function(c.group, c.algebra, c.rng);
  const OperatorOnL1 t = from_measure(nu);
  const PhaseFunction recovered = recover_symbol(t);
  double symbol = 0.0;
  for (std::size_t i = 0; i < nu.coords().size(); ++i) symbol = std::max(symbol, std::abs(nu.coords()[i] - recovered.coords()[i]));
  return {{"translation_commutation", check_translation_commutation(t, c.tol).max_defect},
          {"module_map", check_module_map(t, c.tol).max_defect},
          {"convolution_property", check_convolution_property(t, c.tol).max_defect},
          {"symbol_recovery", symbol},
          {"symbol_representation", check_symbol_representation(t, c.tol).max_defect},
          {"norm_transfer", violation(l1_norm_on_basis(t), c.algebra.mult_constant() * lp_norm(nu, 1.0))}};
}

inline std::vector<Check> chain_checks(const EquivalenceReport& r) {
  std::vector<Check> out;
  for (const auto& cond : r.conditions) out.push_back({"condition " + cond.id, cond.max_defect});
  return out;
}

inline std::vector<Check> multiplier_converse(TrialContext& c) {
  const OperatorOnL1 t = random_operator(c.group, c.algebra, c.rng);
  const OperatorOnL1 avg = average_to_multiplier(t);
  const EquivalenceReport r = verify_equivalence_chain(avg, c.p.value_or(1.0), c.tol);
  std::vector<Check> out = chain_checks(r);
  out.push_back({"from_measure_match", matrix_defect(avg.matrix(), from_measure(r.symbol).matrix())});
  out.push_back({"idempotence", matrix_defect(avg.matrix(), average_to_multiplier(avg).matrix())});
  return out;
}

inline std::vector<Check> equivalence_chain(TrialContext& c) {
  const OperatorOnL1 t = from_measure(random_function(c.group, c.algebra, c.rng));
  const EquivalenceReport r = verify_equivalence_chain(t, c.p.value_or(1.0), c.tol);
  std::vector<Check> out = chain_checks(r);
  out.push_back({"m_lambda_discrepancy", r.m_lambda_discrepancy});
  out.push_back({"averaged_m_discrepancy", r.averaged_m_discrepancy});
  return out;
}

inline std::vector<Check> startimes_consistency(TrialContext& c) {
  const PhaseFunction nu = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction f = random_function(c.group, c.algebra, c.rng);
  const PhaseFunction e = convolution_identity(c.group, c.algebra);
  return {{"startimes_vs_convolution", rel_l1(twisted_convolve(nu, f), startimes(nu, f))},
          {"startimes_unit", rel_l1(f, startimes(e, f))}};
}

}  // namespace suite_detail

inline const std::vector<SuiteInfo>& registered_suites() {
  using namespace suite_detail;
  static const std::vector<SuiteInfo> suites = {
      {"plancherel", "Hilbert-Schmidt norm of W(f) equals the L^2 norm of f", true, plancherel},
      {"homomorphism", "W(f x g) = W(f) W(g)", false, homomorphism},
      {"riemann-lebesgue", "operator norm of W(f) is at most the L^1 norm of f", true, riemann_lebesgue},
      {"hausdorff-young", "Schatten p' norm of W(f) is at most the L^p norm of f", true, hausdorff_young},
      {"covariance", "W(T^t f) = W(f) rho and W(L^t f) = rho W(f)", false, covariance},
      {"translation-isometry", "twisted translations preserve L^p norms", false, translation_isometry},
      {"convolution-algebra", "L^1 is a Banach algebra under twisted convolution", false, convolution_algebra},
      {"interchange", "translations pass through twisted convolution", false, interchange},
      {"adjunction", "<f x g, h> = <f, g (+) h> and the modulated dual translation", false, adjunction},
      {"young-oplus", "||f (+) h||_p <= ||f||_1 ||h||_p", false, young_oplus},
      {"arens", "Arens product equals the algebra product; module adjunction", false, arens},
      {"measure-ideal", "atomic measure convolution and the L^1 ideal bound", false, measure_ideal},
      {"multiplier-forward", "convolution operators are Weyl multipliers", false, multiplier_forward},
      {"multiplier-converse", "averaged operators are convolution operators", true, multiplier_converse},
      {"equivalence-chain", "all conditions of the characterization for convolution operators", false, equivalence_chain},
      {"startimes-consistency", "the adjunction product agrees with twisted convolution", false, startimes_consistency},
  };
  return suites;
}

inline const SuiteInfo& find_suite(const std::string& name) {
  for (const auto& s : registered_suites())
    if (s.name == name) return s;
  throw InvalidSpec("unknown suite '" + name + "'");
}

/// Throws InvalidSpec / Unsupported / DomainError for configurations that cannot run.
inline void validate(const SuiteConfig& cfg) {
  const SuiteInfo& info = find_suite(cfg.suite);
  if (cfg.trials < 1) throw InvalidSpec("trials must be >= 1");
  if (!(cfg.tol > 0.0) || std::isinf(cfg.tol)) throw InvalidSpec("tol must be a positive finite number");
  if (cfg.p && !(*cfg.p >= 1.0)) throw DomainError("p must be >= 1");
  GroupSpec::parse(cfg.group);
  const AlgebraSpec a = resolve_algebra(cfg.algebra);
  if (info.scalar_only && !a.is_scalar())
    throw Unsupported("suite '" + cfg.suite + "' is only defined for the scalar algebra c");
}

inline SuiteReport run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const SuiteInfo& info = find_suite(cfg.suite);
  const GroupSpec group = GroupSpec::parse(cfg.group);
  const AlgebraSpec algebra = resolve_algebra(cfg.algebra);

  SuiteReport report;
  report.config = cfg;
  report.trials.resize(static_cast<std::size_t>(cfg.trials));

  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= cfg.trials || failed) return;
      TrialRecord& rec = report.trials[static_cast<std::size_t>(i)];
      rec.index = i;
      rec.seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(i));
      Rng rng(rec.seed);
      TrialContext ctx{group, algebra, cfg.p, cfg.tol, rng};
      try {
        rec.checks = info.run(ctx);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
      for (const Check& c : rec.checks) rec.defect = std::max(rec.defect, std::isnan(c.defect) ? infinity : c.defect);
      rec.pass = rec.defect <= cfg.tol;
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, cfg.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  double sum = 0.0;
  for (const TrialRecord& rec : report.trials) {
    report.max_defect = std::max(report.max_defect, rec.defect);
    sum += rec.defect;
    if (!rec.pass) ++report.failed_trials;
    for (std::size_t k = 0; k < rec.checks.size(); ++k) {
      const Check& c = rec.checks[k];
      if (report.checks.size() <= k) report.checks.push_back({c.name});
      CheckSummary& s = report.checks[k];
      s.max_defect = std::max(s.max_defect, c.defect);
      if (!(c.defect <= cfg.tol)) ++s.failures;
    }
  }
  report.mean_defect = sum / static_cast<double>(cfg.trials);
  report.pass = report.max_defect <= cfg.tol;
  report.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Key-value report with a fixed field order. Timing is left out unless
/// requested, so that reruns are byte-identical.
inline void serialize_report(std::ostream& os, const SuiteReport& r, bool with_timing = false) {
  const SuiteConfig& c = r.config;
  os << "weyllab_report 1\n"
     << "version " << version << '\n'
     << "suite " << c.suite << '\n'
     << "group " << c.group << '\n'
     << "algebra " << c.algebra << '\n'
     << "trials " << c.trials << '\n'
     << "seed " << c.seed << '\n'
     << "tol " << format_double(c.tol) << '\n'
     << "p " << (c.p ? format_double(*c.p) : std::string("default")) << '\n'
     << "pass " << (r.pass ? "true" : "false") << '\n'
     << "max_defect " << format_double(r.max_defect) << '\n'
     << "mean_defect " << format_double(r.mean_defect) << '\n'
     << "failed_trials " << r.failed_trials << '\n';
  if (with_timing) os << "duration_seconds " << format_double(r.duration_seconds) << '\n';
  os << "checks " << r.checks.size() << '\n';
  for (const CheckSummary& s : r.checks)
    os << "check " << format_double(s.max_defect) << ' ' << s.failures << ' ' << s.name << '\n';
  os << "trial_records " << r.trials.size() << '\n';
  for (const TrialRecord& t : r.trials)
    os << "trial " << t.index << ' ' << t.seed << ' ' << format_double(t.defect) << ' ' << (t.pass ? "pass" : "fail")
       << '\n';
}

inline std::string serialize_report(const SuiteReport& r, bool with_timing = false) {
  std::ostringstream os;
  serialize_report(os, r, with_timing);
  return os.str();
}

/// CSV with header "trial,seed,defect,pass" and one row per trial.
inline void emit_defect_table(std::ostream& os, const SuiteReport& r) {
  os << "trial,seed,defect,pass\n";
  for (const TrialRecord& t : r.trials)
    os << t.index << ',' << t.seed << ',' << format_double(t.defect) << ',' << (t.pass ? 1 : 0) << '\n';
}

inline void emit_defect_table(const SuiteReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  emit_defect_table(out, r);
  if (!out.flush()) throw Error("failed writing '" + path + "'");
}

}  // namespace weyllab
