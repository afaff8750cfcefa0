#include <gtest/gtest.h>

#include <discspace/corpus.hpp>
#include <discspace/operators.hpp>

#include "oracles.hpp"

using namespace discspace;

namespace {

const Func half_one_plus_z = polynomial({0.5, 0.5});

} // namespace

TEST(ApplySg, Examples) {
  const auto p = apply_Sg(constant(1.0), primitive_of(polynomial({3, 0, 1})));
  EXPECT_EQ(p.value_at_zero, complex(0.0));
  EXPECT_LE(std::abs(eval(p.derivative, complex(0.3, 0.2)) - 2.0 * complex(0.3, 0.2)), 1e-15);

  const auto q = apply_Sg(identity(), primitive_of(identity()));
  EXPECT_LE(std::abs(eval(q.derivative, complex(-0.4, 0.1)) - complex(-0.4, 0.1)), 1e-15);
}

TEST(ApplyTg, Examples) {
  const auto z = apply_Tg(constant(complex(2, 1)), polynomial({1, 2, 3}));
  EXPECT_EQ(eval(z.derivative, complex(0.5, 0.5)), complex(0.0));

  const auto one = apply_Tg(identity(), constant(1.0));
  EXPECT_EQ(one.value_at_zero, complex(0.0));
  EXPECT_LE(std::abs(eval(one.derivative, 0.7) - 1.0), 1e-15);

  const auto sq = apply_Tg(polynomial({0, 0, 1}), bergman_kernel_unit(0.0));
  EXPECT_NEAR(dirichlet_norm(sq, disc_rule()).value, std::sqrt(2.0), 1e-7);
}

TEST(ApplySgTg, SumIsMultiplicationOperator) {
  oracle::Lcg rng{31};
  const Func g = sum(mobius(complex(0.2, 0.3)), polynomial({1, complex(0, 1), 0.5}));
  const Func f = product(blaschke_from_zeros({0.4, complex(-0.1, 0.6)}), polynomial({2, -1}));
  const auto s = apply_Sg(g, primitive_of(f));
  const auto t = apply_Tg(g, f);
  EXPECT_EQ(s.value_at_zero + t.value_at_zero, complex(0.0));
  for (int i = 0; i < 200; ++i) {
    const complex z = rng.disc(0.95);
    const complex lhs = eval(s.derivative, z) + eval(t.derivative, z);
    const complex rhs = deriv_eval(product(f, g), z);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(OpNormExact, Sg) {
  EXPECT_NEAR(opnorm_exact_Sg(constant(complex(0, 3))).value, 3.0, 1e-15);
  const auto h = opnorm_exact_Sg(half_one_plus_z);
  EXPECT_NEAR(h.value, 1.0, 1e-8);
  EXPECT_LE(std::abs(h.argmax - 1.0), 1e-4);
  EXPECT_NEAR(opnorm_exact_Sg(mobius(complex(0.4, -0.3))).value, 1.0, 1e-12);
}

TEST(OpNormExact, Tg) {
  EXPECT_NEAR(opnorm_exact_Tg(polynomial({complex(1, 1), complex(0, -3)})).value, 3.0, 1e-14);
  EXPECT_NEAR(opnorm_exact_Tg(polynomial({0, 0, 1})).value, 2.0, 1e-12);
  EXPECT_NEAR(opnorm_exact_Tg(polynomial({0, 0, 0, 1})).value, 3.0, 1e-12);
  EXPECT_TRUE(opnorm_exact_Tg(polynomial({0, 0, 1})).warnings.empty());
}

TEST(OpNormExact, TgWarnsForZerosNearCircle) {
  const auto r = opnorm_exact_Tg(blaschke_from_zeros({0.5, 0.995}));
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("0.99"), std::string::npos);
}

TEST(OpNormExact, TgMatchesMobiusDerivativeClosedForm) {
  // sup |sigma_a'| on the circle = (1 + |a|)/(1 - |a|)
  const double a = 0.6;
  EXPECT_NEAR(opnorm_exact_Tg(mobius(a)).value, (1 + a) / (1 - a), 1e-9);
}

TEST(LowerBound, Dirichlet) {
  const auto rule = disc_rule();
  const auto c = sg_lower_bound_dirichlet(constant(complex(1, 2)), DiscPoint(0.3, 0.4), rule);
  EXPECT_NEAR(c.bound, std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(c.quadrature, std::sqrt(5.0), 1e-10);

  EXPECT_NEAR(sg_lower_bound_dirichlet(identity(), 0.9, rule).bound, 0.9, 1e-15);

  const auto h = sg_lower_bound_dirichlet(half_one_plus_z, 0.95, rule);
  EXPECT_NEAR(h.bound, 0.975, 1e-15);
  EXPECT_GE(h.quadrature, 0.975 - 1e-6);
  EXPECT_LE(h.quadrature, 1.0 + 1e-4);
}

TEST(LowerBound, Bmoa) {
  const DiscPoint a(0.3, -0.5);
  const Func g = polynomial({1, complex(0, 0.5)});
  const auto fa = primitive_of(test_bloch_family(a));
  EXPECT_NEAR(sg_lower_bound_bmoa(g, fa, a), std::abs(eval(g, a.value())), 1e-14);

  const auto fp = primitive_of(polynomial({0, 1, 2}));
  const DiscPoint b(0.4);
  EXPECT_NEAR(sg_lower_bound_bmoa(constant(3.0), fp, b), 0.84 * std::abs(eval(fp.derivative, 0.4)) * 3.0, 1e-14);
}

TEST(LowerBound, BmoaBelowQuadratureOnCorpus) {
  CorpusConfig cc;
  cc.size = 6;
  cc.norm = Normalization::h2;
  const auto corpus = polynomial_corpus(cc);
  const auto rule = log_disc_rule(48, 96);
  BmoaConfig bc;
  bc.search.tol = 1e-3;
  oracle::Lcg rng{32};
  for (const auto& f : corpus) {
    const auto fp = primitive_of(f);
    const DiscPoint a(rng.disc(0.9));
    const complex hint[] = {a.value()};
    const double norm = bmoa_norm(apply_Sg(half_one_plus_z, fp), rule, bc, hint).value;
    EXPECT_LE(sg_lower_bound_bmoa(half_one_plus_z, fp, a), norm + 1e-4);
  }
}

TEST(Estimate, SgDirichletRadialMarch) {
  std::vector<DiscPoint> pts;
  for (double r : {0.0, 0.5, 0.75, 0.9, 0.95}) pts.emplace_back(r);
  const auto e = estimate_Sg(half_one_plus_z, SgSpace::dirichlet, pts, disc_rule());
  EXPECT_NEAR(e.exact, 1.0, 1e-8);
  EXPECT_GE(e.lower, 0.975);
  EXPECT_LE(e.lower, e.exact + 1e-4);
  EXPECT_LE(std::abs(*e.witness_point - 0.95), 1e-15);
  EXPECT_NEAR(e.gap, e.exact - e.lower, 1e-15);
}

TEST(Estimate, SgConstantHasNoGap) {
  const DiscPoint pts[] = {0.0, 0.5, 0.9};
  for (auto space : {SgSpace::bloch, SgSpace::dirichlet}) {
    const auto e = estimate_Sg(constant(3.0), space, pts, disc_rule());
    EXPECT_NEAR(e.exact, 3.0, 1e-15);
    EXPECT_NEAR(e.lower, 3.0, 1e-6);
    EXPECT_NEAR(e.gap, 0.0, 1e-6);
  }
}

TEST(Estimate, TgKernelFamily) {
  const DiscPoint pts[] = {0.0, 0.5, 0.9};
  const auto e = estimate_Tg(polynomial({0, 0, 1}), pts, disc_rule());
  EXPECT_NEAR(e.exact, 2.0, 1e-12);
  EXPECT_GE(e.lower, 1.8 - 1e-6);
  EXPECT_LE(e.lower, e.exact + 1e-4);
}

TEST(Deficiency, ClosedForms) {
  const auto rule = disc_rule();
  EXPECT_NEAR(dirichlet_deficiency(identity(), primitive_of(identity()), rule), 0.5, 1e-7);
  EXPECT_NEAR(dirichlet_deficiency(identity(), primitive_of(polynomial({0, 0, 1.0 / std::sqrt(2.0)})), rule),
              1.0 / 3.0, 1e-7);
  EXPECT_NEAR(dirichlet_deficiency(constant(2.0), primitive_of(polynomial({0, 1, 0.5})), rule), 0.0, 1e-8);
}

TEST(Deficiency, NormalizesInternally) {
  const auto rule = disc_rule();
  EXPECT_NEAR(dirichlet_deficiency(identity(), primitive_of(polynomial({0, 3})), rule), 0.5, 1e-7);
}

TEST(Deficiency, PositiveForNonConstantG) {
  CorpusConfig cc;
  cc.size = 50;
  cc.norm = Normalization::dirichlet;
  const auto corpus = polynomial_corpus(cc);
  const auto rule = disc_rule();
  for (const Func& g : {identity(), half_one_plus_z, Func(mobius(0.5))}) {
    for (const auto& f : corpus) EXPECT_GT(dirichlet_deficiency(g, primitive_of(f), rule), 0.0);
  }
}

TEST(Contraction, BlochAndDirichletOnCorpus) {
  CorpusConfig cc;
  cc.size = 100;
  const auto corpus = polynomial_corpus(cc);
  const auto rule = disc_rule();
  for (const Func& g : {half_one_plus_z, Func(mobius(complex(0.3, 0.3))), polynomial({0, 0, 0.9})}) {
    const double s = opnorm_exact_Sg(g).value;
    for (const auto& f : corpus) {
      const auto fp = primitive_of(f);
      const auto sg = apply_Sg(g, fp);
      const auto sb = bloch_norm(sg);
      const complex hint[] = {*sb.witness};
      EXPECT_LE(sb.value, bloch_norm(fp, {}, hint).value * s + 1e-5);
      EXPECT_LE(dirichlet_norm(sg, rule).value, dirichlet_norm(fp, rule).value * s + 1e-5);
    }
  }
}

TEST(Extremal, ConstantGAttains) {
  const auto r = extremal_bloch(constant(complex(0, 2)), 3);
  EXPECT_TRUE(r.constant_g);
  EXPECT_NEAR(r.lower_bound, 2.0, 1e-6);
  EXPECT_NEAR(r.exact, 2.0, 1e-15);
}

TEST(Extremal, BlochSingleZeroAtNineTenths) {
  ExtremalConfig cfg;
  cfg.radii = {0.9};
  const auto r = extremal_bloch(identity(), 1, cfg);
  ASSERT_EQ(r.zeros.size(), 1u);
  EXPECT_NEAR(r.zeros[0].re(), 0.9, 1e-15);
  EXPECT_NEAR(r.diagnostics[0].density, 1.0, 1e-12);
  EXPECT_NEAR(r.norm_of_h, 1.0, 1e-6);
  EXPECT_GE(r.lower_bound, 0.9);
  EXPECT_LE(r.lower_bound, r.exact + 1e-4);
}

TEST(Extremal, DefaultMarchPointsAtBoundaryArgmax) {
  const auto r = extremal_bloch(identity(), 1);
  EXPECT_NEAR(std::abs(r.boundary_argmax), 1.0, 1e-15);
  EXPECT_LE(std::abs(r.zeros[0].value() - 0.5 * r.boundary_argmax), 1e-15);
}

TEST(Extremal, BlochConvergence) {
  std::vector<double> L;
  for (std::size_t n : {1, 2, 4, 8, 16, 20}) {
    const auto r = extremal_bloch(half_one_plus_z, n);
    EXPECT_GE(min_defect(r.zeros), 0.5);
    EXPECT_LE(r.lower_bound, r.exact + 1e-4);
    EXPECT_EQ(r.exhausted, r.zeros.size() < n);
    L.push_back(r.lower_bound);
  }
  for (std::size_t i = 1; i < L.size(); ++i) EXPECT_GE(L[i], L[0]);
  EXPECT_GE(L.back(), 0.95);
}

TEST(Extremal, PeaksAreLocalDensityMaxima) {
  const auto r = extremal_bloch(half_one_plus_z, 8);
  ASSERT_EQ(r.peaks.size(), r.zeros.size());
  for (std::size_t i = 0; i < r.peaks.size(); ++i) {
    EXPECT_GE(bloch_density(r.h, r.peaks[i].value()), r.diagnostics[i].density);
  }
}

TEST(Extremal, BmoaSingleZeroAnalyticBound) {
  ExtremalConfig cfg;
  cfg.radii = {0.9};
  const auto r = extremal_bmoa(identity(), 1, log_disc_rule(), cfg);
  EXPECT_NEAR(r.numerator, 0.9, 1e-12);
  EXPECT_LE(r.lower_bound, r.exact + 1e-4);
}

TEST(Extremal, BmoaConstantG) {
  const auto r = extremal_bmoa(constant(0.7), 1, log_disc_rule(48, 96));
  EXPECT_NEAR(r.lower_bound, 0.7, 1e-5);
}

TEST(Extremal, RejectsZeroN) { EXPECT_THROW(extremal_bloch(identity(), 0), invalid_parameter); }

TEST(WitnessCheck, AcceptsConstructedPeakSequence) {
  const auto r = extremal_bloch(half_one_plus_z, 20);
  const auto v = extremal_witness_check(half_one_plus_z, r.h_unit, r.peaks, 0.05);
  EXPECT_TRUE(v.accept) << v.reason;
  EXPECT_TRUE(v.norm_ok);
}

TEST(WitnessCheck, ZerosOfFiniteProductFallShortOfUnitDensity) {
  const auto r = extremal_bloch(half_one_plus_z, 20);
  const auto v = extremal_witness_check(half_one_plus_z, r.h_unit, r.zeros, 0.05);
  EXPECT_FALSE(v.accept);
  ASSERT_EQ(v.tail.size(), 1u);
  EXPECT_NEAR(v.tail[0].density, min_defect(r.zeros) > 0 ? thinness_defects(r.zeros).back() / r.norm_of_h : 0.0,
              1e-6);
}

TEST(WitnessCheck, PolynomialRejected) {
  const auto fp = primitive_of(identity());
  std::vector<DiscPoint> zs;
  for (int k = 1; k <= 20; ++k) zs.emplace_back(1.0 - std::ldexp(1.0, -k));
  const auto v = extremal_witness_check(identity(), fp, ZeroSequence(zs), 0.05);
  EXPECT_FALSE(v.accept);
  EXPECT_LT(v.tail.back().density, 1e-4);
}

TEST(WitnessCheck, InteriorSequenceRejected) {
  const DiscPoint a(0.5);
  const auto v = extremal_witness_check(identity(), primitive_of(test_bloch_family(a)), {a}, 0.05);
  EXPECT_FALSE(v.accept);
  EXPECT_TRUE(v.norm_ok);
  EXPECT_EQ(v.reason, "sequence does not approach the circle");
}

TEST(TgAttainment, AffineSymbolAttainsWithUnitWitness) {
  CorpusConfig cc;
  cc.size = 10;
  cc.norm = Normalization::bergman;
  const auto corpus = polynomial_corpus(cc);
  const DiscPoint kp[] = {0.0, 0.5, 0.9};
  const auto rep = tg_attainment_experiment(polynomial({3, 2}), corpus, disc_rule(), kp);
  EXPECT_TRUE(rep.affine);
  EXPECT_NEAR(rep.exact, 2.0, 1e-12);
  ASSERT_TRUE(rep.unit_witness_deficiency.has_value());
  EXPECT_LE(std::abs(*rep.unit_witness_deficiency), 1e-7);
  for (const auto& k : rep.kernel_family) EXPECT_NEAR(k.value, k.bound, 1e-6);
}

TEST(TgAttainment, QuadraticSymbolHasPositiveDeficiency) {
  CorpusConfig cc;
  cc.size = 40;
  cc.norm = Normalization::bergman;
  const auto corpus = polynomial_corpus(cc);
  const DiscPoint kp[] = {0.0, 0.5, 0.9};
  const auto rep = tg_attainment_experiment(polynomial({0, 0, 1}), corpus, disc_rule(), kp);
  EXPECT_FALSE(rep.affine);
  EXPECT_FALSE(rep.unit_witness_deficiency.has_value());
  EXPECT_GT(rep.min_deficiency, 0.0);
  for (const auto& k : rep.kernel_family) EXPECT_GE(k.value, k.bound - 1e-6);
}
