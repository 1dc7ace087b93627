#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace weyllab;

namespace {

struct Config {
  GroupSpec g;
  AlgebraSpec a;
};

std::vector<Config> configs(std::vector<std::vector<int>> groups, std::vector<std::string> algebras = oracle::preset_algebras()) {
  std::vector<Config> out;
  for (const auto& o : groups)
    for (const auto& name : algebras) out.push_back({GroupSpec(o), AlgebraSpec::from_name(name)});
  return out;
}

std::string label(const Config& c) { return c.g.to_string() + "/" + c.a.name(); }

double matrix_gap(const OperatorOnL1& a, const OperatorOnL1& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() / std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
}

// Swaps the two coordinates of every value (A = C^2).
OperatorOnL1 coordinate_swap(const GroupSpec& g, const AlgebraSpec& a) {
  return OperatorOnL1::from_linear_map(g, a, [](const PhaseFunction& f) {
    PhaseFunction out = f;
    for (std::size_t i = 0; i < f.num_points(); ++i) std::swap(out.at(i)[0], out.at(i)[1]);
    return out;
  });
}

// f -> W^{-1}(W(f)^T), an anti-homomorphism for twisted convolution.
OperatorOnL1 transpose_operator(const GroupSpec& g, const AlgebraSpec& a) {
  return OperatorOnL1::from_linear_map(g, a, [](const PhaseFunction& f) {
    const WeylOperator w = weyl(f);
    WeylOperator t(w.group(), w.algebra());
    for (std::size_t y = 0; y < w.size(); ++y)
      for (std::size_t z = 0; z < w.size(); ++z) std::copy(w.at(z, y).begin(), w.at(z, y).end(), t.at(y, z).begin());
    return weyl_inverse(t);
  });
}

}  // namespace

TEST(FromMeasure, UnitGivesIdentity) {
  for (const auto& c : configs({{2}, {3}})) {
    const OperatorOnL1 t = from_measure(convolution_identity(c.g, c.a));
    EXPECT_LT(matrix_gap(OperatorOnL1::identity(c.g, c.a), t), 1e-15) << label(c);
    EXPECT_EQ(t.provenance(), Provenance::from_measure);
  }
}

TEST(FromMeasure, DeltaSymbolFollowsCompositionLaw) {
  const GroupSpec g = make_group({3});
  const AlgebraSpec a = AlgebraSpec::scalar();
  for (std::size_t p = 0; p < 9; ++p) {
    const PhasePoint u{p / 3, p % 3};
    const OperatorOnL1 t = from_measure(weighted_delta(g, a, u));
    for (std::size_t q = 0; q < 9; ++q) {
      const PhasePoint v{q / 3, q % 3};
      PhaseFunction expected =
          weighted_delta(g, a, {oracle::add(g, u.x, v.x), oracle::add(g, u.chi, v.chi)});
      expected *= oracle::character(g, u.x, v.chi);
      EXPECT_LT(oracle::max_abs_diff(t(weighted_delta(g, a, v)).coords(), expected.coords()), 1e-13);
    }
  }
}

TEST(FromMeasure, ZeroSymbolGivesZero) {
  const GroupSpec g = make_group({2});
  const AlgebraSpec a = AlgebraSpec::dual_numbers();
  EXPECT_EQ(from_measure(PhaseFunction(g, a)).matrix().cwiseAbs().maxCoeff(), 0.0);
}

TEST(OperatorOnL1, ShapeAndMismatch) {
  const GroupSpec g = make_group({2});
  const AlgebraSpec a = AlgebraSpec::pointwise(2);
  EXPECT_EQ(weighted_delta_basis(g, a).size(), 8u);
  EXPECT_THROW(OperatorOnL1(g, a, Eigen::MatrixXcd::Identity(4, 4)), SpecMismatch);
  const OperatorOnL1 t = OperatorOnL1::identity(g, a);
  EXPECT_THROW(t(PhaseFunction(make_group({3}), a)), SpecMismatch);
  EXPECT_THROW(t(PhaseFunction(g, a, ValueKind::dual)), SpecMismatch);
  Rng rng(1);
  const PhaseFunction f = random_function(g, a, rng);
  EXPECT_EQ(oracle::max_abs_diff(t(f).coords(), f.coords()), 0.0);
}

TEST(TranslationCommutation, Examples) {
  Rng rng(2);
  for (const auto& c : configs({{2}, {3}})) {
    const auto r = check_translation_commutation(from_measure(random_function(c.g, c.a, rng)), 1e-10);
    EXPECT_TRUE(r.pass) << label(c);
    EXPECT_LT(r.max_defect, 1e-10);
  }
  const GroupSpec g = make_group({2});
  const AlgebraSpec a = AlgebraSpec::scalar();
  const auto id = check_translation_commutation(OperatorOnL1::identity(g, a), 1e-10);
  EXPECT_TRUE(id.pass);
  EXPECT_EQ(id.max_defect, 0.0);
  // T = T^t_(1, chi_0): phases chi(1) = -1 obstruct commutation with T^t_(x, chi_1)
  const auto tr = check_translation_commutation(translation_operator(Side::T, {1, 0}, g, a), 1e-10);
  EXPECT_FALSE(tr.pass);
  EXPECT_NEAR(tr.max_defect, 2.0, 1e-14);
  EXPECT_FALSE(tr.witness.empty());
}

TEST(TranslationCommutation, RejectsNonPositiveTolerance) {
  const OperatorOnL1 t = OperatorOnL1::identity(make_group({2}), AlgebraSpec::scalar());
  EXPECT_THROW(check_translation_commutation(t, 0.0), DomainError);
  EXPECT_THROW(check_convolution_property(t, -1.0), DomainError);
}

TEST(ModuleMap, ScalarAlwaysPasses) {
  Rng rng(3);
  const auto r = check_module_map(random_operator(make_group({2}), AlgebraSpec::scalar(), rng), 1e-10);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.max_defect, 1e-12);
}

TEST(ModuleMap, ConvolutionOperatorsAreModuleMaps) {
  Rng rng(4);
  const GroupSpec g = make_group({3});
  const AlgebraSpec a = AlgebraSpec::pointwise(2);
  EXPECT_TRUE(check_module_map(from_measure(random_function(g, a, rng)), 1e-10).pass);
}

TEST(ModuleMap, CoordinateSwapFails) {
  const GroupSpec g = make_group({2});
  const AlgebraSpec a = AlgebraSpec::pointwise(2);
  const auto r = check_module_map(coordinate_swap(g, a), 1e-10);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_defect, 0.5);
}

TEST(LambdaAndMCommutation, SameVerdictsAsTranslationCommutation) {
  Rng rng(5);
  for (const auto& c : configs({{2}, {3}})) {
    const OperatorOnL1 fm = from_measure(random_function(c.g, c.a, rng));
    for (auto check : {check_lambda_commutation, check_M_commutation}) {
      EXPECT_TRUE(check(fm, 1e-10).pass) << label(c);
      const auto id = check(OperatorOnL1::identity(c.g, c.a), 1e-10);
      EXPECT_TRUE(id.pass);
      EXPECT_EQ(id.max_defect, 0.0);
    }
  }
  const GroupSpec g = make_group({2});
  for (const auto& name : oracle::preset_algebras()) {
    const AlgebraSpec a = AlgebraSpec::from_name(name);
    const OperatorOnL1 tr = translation_operator(Side::T, {1, 0}, g, a);
    EXPECT_FALSE(check_lambda_commutation(tr, 1e-10).pass);
    EXPECT_FALSE(check_M_commutation(tr, 1e-10).pass);
    EXPECT_NEAR(check_M_commutation(tr, 1e-10).max_defect, check_lambda_commutation(tr, 1e-10).max_defect, 1e-14);
  }
  EXPECT_FALSE(check_lambda_commutation(coordinate_swap(g, AlgebraSpec::pointwise(2)), 1e-10).pass);
  EXPECT_FALSE(check_M_commutation(coordinate_swap(g, AlgebraSpec::pointwise(2)), 1e-10).pass);
}

TEST(LambdaCommutation, AgreesWithTranslationAndModuleConjunction) {
  Rng rng(6);
  for (const auto& c : configs({{2}})) {
    std::vector<OperatorOnL1> subjects = {from_measure(random_function(c.g, c.a, rng)), random_operator(c.g, c.a, rng),
                                          OperatorOnL1::identity(c.g, c.a), translation_operator(Side::L, {1, 1}, c.g, c.a)};
    if (c.a.dim() == 2) subjects.push_back(coordinate_swap(c.g, c.a));
    for (const auto& t : subjects) {
      const bool both = check_translation_commutation(t, 1e-10).pass && check_module_map(t, 1e-10).pass;
      EXPECT_EQ(check_lambda_commutation(t, 1e-10).pass, both) << label(c);
      EXPECT_EQ(check_M_commutation(t, 1e-10).pass, both) << label(c);
    }
  }
}

TEST(ConvolutionProperty, Examples) {
  Rng rng(7);
  for (const auto& c : configs({{2}, {3}})) EXPECT_TRUE(check_convolution_property(from_measure(random_function(c.g, c.a, rng)), 1e-10).pass);
  const GroupSpec g = make_group({2});
  const auto id = check_convolution_property(OperatorOnL1::identity(g, AlgebraSpec::scalar()), 1e-10);
  EXPECT_TRUE(id.pass);
  EXPECT_EQ(id.max_defect, 0.0);
  const auto tp = check_convolution_property(transpose_operator(g, AlgebraSpec::scalar()), 1e-10);
  EXPECT_FALSE(tp.pass);
  EXPECT_GT(tp.max_defect, 0.5);
}

TEST(RecoverSymbol, Examples) {
  Rng rng(8);
  for (const auto& c : configs({{2}, {3}})) {
    const PhaseFunction nu = random_function(c.g, c.a, rng);
    EXPECT_LT(oracle::max_abs_diff(recover_symbol(from_measure(nu)).coords(), nu.coords()), 1e-12) << label(c);
    EXPECT_EQ(oracle::max_abs_diff(recover_symbol(OperatorOnL1::identity(c.g, c.a)).coords(), convolution_identity(c.g, c.a).coords()), 0.0);
    const PhaseFunction u = weighted_delta(c.g, c.a, random_point(c.g, rng));
    EXPECT_LT(oracle::max_abs_diff(recover_symbol(from_measure(u)).coords(), u.coords()), 1e-13);
  }
}

TEST(RecoverSymbol, UniquenessOfSymbol) {
  Rng rng(9);
  const GroupSpec g = make_group({3});
  const AlgebraSpec a = AlgebraSpec::dual_numbers();
  const PhaseFunction nu1 = random_function(g, a, rng);
  PhaseFunction nu2 = nu1;
  EXPECT_EQ(matrix_gap(from_measure(nu1), from_measure(nu2)), 0.0);
  nu2.coords()[5] += 1e-3;
  EXPECT_GT(matrix_gap(from_measure(nu1), from_measure(nu2)), 1e-5);
  EXPECT_LT(oracle::max_abs_diff(recover_symbol(from_measure(nu2)).coords(), nu2.coords()), 1e-12);
}

TEST(RecoverOperatorM, Examples) {
  Rng rng(10);
  const GroupSpec g = make_group({3});
  for (const auto& name : oracle::preset_algebras()) {
    const AlgebraSpec a = AlgebraSpec::from_name(name);
    EXPECT_LT(operator_defect(recover_operator_M(OperatorOnL1::identity(g, a)), identity_operator(g, a)), 1e-15);
    const PhasePoint p = random_point(g, rng);
    EXPECT_LT(operator_defect(recover_operator_M(from_measure(weighted_delta(g, a, p))), rho(p, g, a)), 1e-13);
  }
  const AlgebraSpec a = AlgebraSpec::scalar();
  const OperatorOnL1 t = from_measure(random_function(g, a, rng));
  const WeylOperator m = recover_operator_M(t);
  for (int i = 0; i < 50; ++i) {
    const PhaseFunction f = random_function(g, a, rng);
    EXPECT_LT(operator_defect(weyl(t(f)), m * weyl(f)), 1e-10);
  }
  EXPECT_LT(operator_defect(m, recover_operator_M_averaged(t)), 1e-13);
}

TEST(StartimesRepresentation, Examples) {
  Rng rng(11);
  for (const auto& c : configs({{2}, {3}})) {
    const PhaseFunction nu = random_function(c.g, c.a, rng);
    const auto r = check_startimes_representation(from_measure(nu), 1e-10);
    EXPECT_TRUE(r.pass) << label(c);
    EXPECT_TRUE(check_startimes_representation(OperatorOnL1::identity(c.g, c.a), 1e-10).pass);
    const auto bad = check_startimes_representation(random_operator(c.g, c.a, rng), 1e-10);
    EXPECT_FALSE(bad.pass);
    EXPECT_GT(bad.max_defect, 1e-3);
  }
}

TEST(AverageToMultiplier, Examples) {
  Rng rng(12);
  const AlgebraSpec a = AlgebraSpec::scalar();
  for (const auto& o : std::vector<std::vector<int>>{{2}, {3}}) {
    const GroupSpec g(o);
    const OperatorOnL1 fm = from_measure(random_function(g, a, rng));
    EXPECT_LT(matrix_gap(fm, average_to_multiplier(fm)), 1e-13);
    const OperatorOnL1 avg = average_to_multiplier(random_operator(g, a, rng));
    EXPECT_EQ(avg.provenance(), Provenance::averaged);
    const auto comm = check_translation_commutation(avg, 1e-10);
    EXPECT_TRUE(comm.pass);
    EXPECT_LE(comm.max_defect, 1e-10);
    EXPECT_LT(matrix_gap(avg, from_measure(recover_symbol(avg))), 1e-10);
    EXPECT_LT(matrix_gap(avg, average_to_multiplier(avg)), 1e-13);
    const OperatorOnL1 zero(g, a, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(g.cardinality() * g.cardinality()),
                                                          static_cast<Eigen::Index>(g.cardinality() * g.cardinality())));
    EXPECT_EQ(average_to_multiplier(zero).matrix().cwiseAbs().maxCoeff(), 0.0);
  }
  EXPECT_THROW(average_to_multiplier(OperatorOnL1::identity(make_group({2}), AlgebraSpec::pointwise(2))), Unsupported);
}

TEST(EquivalenceChain, ForwardDirectionAllPass) {
  Rng rng(13);
  for (const auto& c : configs({{2}, {3}})) {
    const EquivalenceReport r = verify_equivalence_chain(from_measure(random_function(c.g, c.a, rng)), 1.0, 1e-10);
    EXPECT_TRUE(r.all_pass()) << label(c);
    EXPECT_LT(r.max_defect(), 1e-10);
    EXPECT_TRUE(r.coherent(core_condition_ids()));
    EXPECT_EQ(r.m_schatten.has_value(), c.a.is_scalar());
    EXPECT_LT(r.averaged_m_discrepancy, 1e-12);
    EXPECT_LT(r.m_lambda_discrepancy, 1e-12);
  }
}

TEST(EquivalenceChain, GenericOperatorsFailTogether) {
  Rng rng(14);
  for (const auto& c : configs({{2}, {3}})) {
    const EquivalenceReport r = verify_equivalence_chain(random_operator(c.g, c.a, rng), 1.0, 1e-10);
    EXPECT_TRUE(r.coherent(core_condition_ids()));
    // every linear map commutes with scalars, so only a non-scalar A can break the module law
    for (const auto& cond : r.conditions) {
      if (cond.id == "i.module") {
        EXPECT_EQ(cond.pass, c.a.is_scalar()) << label(c);
      } else {
        EXPECT_FALSE(cond.pass) << cond.id << " " << label(c);
        EXPECT_FALSE(cond.witness.empty()) << cond.id;
      }
    }
  }
}

TEST(EquivalenceChain, ConverseThroughAveraging) {
  Rng rng(15);
  for (const auto& o : std::vector<std::vector<int>>{{2}, {3}}) {
    const GroupSpec g(o);
    const EquivalenceReport r = verify_equivalence_chain(average_to_multiplier(random_operator(g, AlgebraSpec::scalar(), rng)), 2.0, 1e-9);
    EXPECT_TRUE(r.all_pass());
    ASSERT_TRUE(r.m_schatten.has_value());
    EXPECT_NEAR(*r.m_schatten, schatten(r.operator_m, 2.0), 1e-14);
  }
}

TEST(EquivalenceChain, ReportsPAndNorms) {
  Rng rng(16);
  const GroupSpec g = make_group({2});
  const PhaseFunction nu = random_function(g, AlgebraSpec::scalar(), rng);
  const EquivalenceReport r = verify_equivalence_chain(from_measure(nu), 1.0, 1e-10);
  ASSERT_TRUE(r.m_schatten.has_value());
  EXPECT_NEAR(*r.m_schatten, operator_norm(weyl(nu)), 1e-14);
  EXPECT_NEAR(r.symbol_lp_norm, lp_norm(nu, 1.0), 1e-14);
  EXPECT_LE(r.l1_norm_on_basis, lp_norm(nu, 1.0) * (1.0 + 1e-12));
  EXPECT_THROW(verify_equivalence_chain(from_measure(nu), infinity, 1e-10), DomainError);
  EXPECT_THROW(verify_equivalence_chain(from_measure(nu), 0.5, 1e-10), DomainError);
  EXPECT_THROW(r.condition("nonexistent"), DomainError);
}

TEST(MultiplierProperty, ForwardChainOnRandomSymbols) {
  Rng rng(17);
  for (const auto& c : configs({{2}, {3}})) {
    for (int i = 0; i < 10; ++i) {
      const PhaseFunction nu = random_function(c.g, c.a, rng);
      const EquivalenceReport r = verify_equivalence_chain(from_measure(nu), 1.0, 1e-9);
      EXPECT_TRUE(r.all_pass()) << label(c);
      EXPECT_LT(oracle::max_abs_diff(r.symbol.coords(), nu.coords()), 1e-12);
    }
  }
}

TEST(MultiplierProperty, CoherenceOnMixedOperators) {
  Rng rng(18);
  int counted = 0;
  for (const auto& c : configs({{2}})) {
    for (int i = 0; i < 20; ++i) {
      const OperatorOnL1 fm = from_measure(random_function(c.g, c.a, rng));
      std::vector<OperatorOnL1> subjects = {fm, perturb(fm, 1e-2, rng), perturb(fm, 1e-6, rng), random_operator(c.g, c.a, rng)};
      for (const auto& t : subjects) {
        const EquivalenceReport r = verify_equivalence_chain(t, 1.0, 1e-8);
        EXPECT_TRUE(r.coherent(core_condition_ids())) << label(c) << " subject " << counted;
        ++counted;
      }
    }
  }
}

TEST(MultiplierProperty, NormTransfer) {
  Rng rng(19);
  for (const auto& c : configs({{2}, {3}})) {
    const PhaseFunction nu = random_function(c.g, c.a, rng);
    EXPECT_LE(l1_norm_on_basis(from_measure(nu)), c.a.mult_constant() * lp_norm(nu, 1.0) * (1.0 + 1e-12)) << label(c);
  }
  const OperatorOnL1 id = OperatorOnL1::identity(make_group({3}), AlgebraSpec::scalar());
  EXPECT_NEAR(l1_norm_on_basis(id), 1.0, 1e-15);
  Rng r2(20);
  EXPECT_GE(lp_norm_sampled(id, 1.0, r2), 1.0 - 1e-15);
}
