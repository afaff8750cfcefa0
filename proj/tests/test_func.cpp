#include <gtest/gtest.h>

#include <discspace/func.hpp>
#include <discspace/func_io.hpp>

#include "oracles.hpp"

using namespace discspace;
using nlohmann::json;

namespace {

Func random_tree(oracle::Lcg& rng, int depth) {
  const int kind = int(rng.next() * (depth > 0 ? 9 : 5));
  switch (kind) {
  case 0: return constant(rng.disc(2.0));
  case 1: return identity();
  case 2: {
    std::vector<complex> c(1 + int(rng.next() * 5));
    for (auto& a : c) a = rng.disc(1.0);
    return polynomial(c);
  }
  case 3: return mobius(DiscPoint(rng.disc(0.8)));
  case 4: {
    std::vector<DiscPoint> zs;
    const int n = 1 + int(rng.next() * 3);
    for (int i = 0; i < n; ++i) zs.emplace_back(rng.disc(0.8));
    return blaschke_from_zeros(ZeroSequence(zs));
  }
  case 5: return sum(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
  case 6: return product(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
  case 7: return scale(rng.disc(2.0), random_tree(rng, depth - 1));
  default: return shift(random_tree(rng, depth - 1), rng.disc(2.0));
  }
}

complex central_difference(const Func& f, complex z, double h = 1e-5) {
  return (eval(f, z + h) - eval(f, z - h)) / (2.0 * h);
}

} // namespace

TEST(Eval, Examples) {
  EXPECT_NEAR(std::abs(eval(polynomial({0, 0, 1}), 0.5) - 0.25), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eval(mobius(0.5), 0.0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eval(blaschke_from_zeros({0.5}), 0.0) - 0.5), 0.0, 1e-15);
}

TEST(DerivEval, Examples) {
  EXPECT_NEAR(std::abs(deriv_eval(polynomial({0, 0, 1}), 0.5) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(deriv_eval(mobius(0.5), 0.0) - (-0.75)), 0.0, 1e-15);
  const Func b = blaschke_from_zeros({0.5, -0.5});
  EXPECT_NEAR(0.75 * std::abs(deriv_eval(b, 0.5)), 0.8, 1e-12);
}

TEST(DerivEval, FiniteDifferenceOnRandomTrees) {
  oracle::Lcg rng{11};
  for (int i = 0; i < 500; ++i) {
    const Func f = random_tree(rng, 3);
    const complex z = rng.disc(0.9);
    const complex d = deriv_eval(f, z);
    const complex fd = central_difference(f, z);
    EXPECT_LE(std::abs(d - fd), 1e-6 * std::max(std::abs(d), 1.0)) << "sample " << i << " z=" << to_string(z);
  }
}

TEST(Differentiate, AgreesWithDerivEval) {
  oracle::Lcg rng{12};
  for (int i = 0; i < 300; ++i) {
    const Func f = random_tree(rng, 3);
    const Func df = differentiate(f);
    const complex z = rng.disc(0.9);
    const complex a = eval(df, z), b = deriv_eval(f, z);
    EXPECT_LE(std::abs(a - b), 1e-9 * std::max(std::abs(b), 1.0)) << "sample " << i;
  }
}

TEST(Differentiate, SecondDerivativeByFiniteDifference) {
  oracle::Lcg rng{13};
  for (int i = 0; i < 200; ++i) {
    const Func df = differentiate(random_tree(rng, 2));
    const complex z = rng.disc(0.9);
    const complex d2 = deriv_eval(df, z);
    EXPECT_LE(std::abs(d2 - central_difference(df, z)), 1e-6 * std::max(std::abs(d2), 1.0));
  }
}

TEST(Blaschke, OriginZeroIsIdentityFactor) {
  const Func b = blaschke_from_zeros({0.0});
  for (complex z : {complex(0.3, 0.1), complex(-0.7, 0.2)}) EXPECT_LE(std::abs(eval(b, z) - z), 1e-15);
}

TEST(Blaschke, UnimodularOnCircle) {
  const Func b = blaschke_from_zeros({0.5});
  for (int j = 0; j < 64; ++j) {
    EXPECT_NEAR(std::abs(eval(b, std::polar(1.0, 2.0 * std::numbers::pi * j / 64))), 1.0, 1e-12);
  }
}

TEST(Blaschke, VanishesAtZeros) {
  const Func b = blaschke_from_zeros({0.5, -0.5});
  EXPECT_LE(std::abs(eval(b, 0.5)), 1e-15);
  EXPECT_LE(std::abs(eval(b, -0.5)), 1e-15);
}

TEST(Blaschke, MatchesDirectProduct) {
  oracle::Lcg rng{14};
  for (int t = 0; t < 50; ++t) {
    std::vector<DiscPoint> zs;
    std::vector<oracle::cld> raw;
    for (int k = 0; k < 8; ++k) {
      const complex a = rng.disc(0.95);
      zs.emplace_back(a);
      raw.emplace_back(a.real(), a.imag());
    }
    const Func b = blaschke_from_zeros(ZeroSequence(zs));
    for (int s = 0; s < 10; ++s) {
      const complex z = rng.disc(0.99);
      const oracle::cld zl(z.real(), z.imag());
      const auto v = oracle::blaschke(raw, zl);
      const auto d = oracle::blaschke_deriv(raw, zl);
      EXPECT_LE(std::abs(eval(b, z) - complex(double(v.real()), double(v.imag()))), 1e-13);
      EXPECT_LE(std::abs(deriv_eval(b, z) - complex(double(d.real()), double(d.imag()))),
                1e-11 * std::max(1.0, double(std::abs(d))));
    }
  }
}

TEST(Blaschke, BoundedByOneInside) {
  oracle::Lcg rng{15};
  for (int t = 0; t < 50; ++t) {
    std::vector<DiscPoint> zs;
    for (int k = 0; k < 6; ++k) zs.emplace_back(rng.disc(0.95));
    const Func b = blaschke_from_zeros(ZeroSequence(zs));
    for (int s = 0; s < 40; ++s) {
      const complex z = rng.disc(0.999);
      EXPECT_LE(std::abs(eval(b, z)), 1.0 + 1e-12);
      EXPECT_LE(one_minus_abs2(z) * std::abs(deriv_eval(b, z)), 1.0 + 1e-12);
    }
    for (int j = 0; j < 32; ++j) {
      EXPECT_NEAR(std::abs(eval(b, std::polar(1.0, 0.2 * j))), 1.0, 1e-12);
    }
  }
}

TEST(Blaschke, ZeroDerivativeIdentity) {
  oracle::Lcg rng{16};
  for (int t = 0; t < 50; ++t) {
    std::vector<DiscPoint> zs;
    for (int k = 0; k < 10; ++k) zs.emplace_back(rng.disc(0.95));
    const ZeroSequence seq(zs);
    const Func b = blaschke_from_zeros(seq);
    const auto d = thinness_defects(seq);
    for (std::size_t n = 0; n < seq.size(); ++n) {
      EXPECT_NEAR(one_minus_abs2(seq[n].value()) * std::abs(deriv_eval(b, seq[n].value())), d[n], 1e-12);
    }
  }
}

TEST(Blaschke, DerivativeContinuousAcrossFallbackRadius) {
  const Func b = blaschke_from_zeros({0.3, complex(-0.2, 0.5), 0.9});
  const complex a(-0.2, 0.5);
  for (double eps : {1e-8, 1e-7, 5e-7, 1e-6, 2e-6, 1e-5}) {
    const complex z = a + eps * complex(0.6, 0.8);
    EXPECT_LE(std::abs(deriv_eval(b, z) - deriv_eval(b, a)), 1e-4);
  }
}

TEST(Families, TestBlochFamily) {
  EXPECT_LE(std::abs(eval(test_bloch_family(0.0), complex(0.3, 0.2)) + complex(0.3, 0.2)), 1e-15);
  const Func f = test_bloch_family(0.5);
  EXPECT_NEAR(std::abs(eval(f, 0.5) - (-0.5)), 0.0, 1e-15);
  EXPECT_NEAR(0.75 * std::abs(deriv_eval(f, 0.5)), 1.0, 1e-14);
  EXPECT_LE(std::abs(eval(f, 0.0)), 1e-15);
}

TEST(Families, BergmanKernel) {
  EXPECT_NEAR(std::abs(eval(bergman_kernel_unit(0.0), complex(0.4, 0.1)) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eval(bergman_kernel_unit(0.5), 0.0) - 0.75), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eval(bergman_kernel_unit(0.5), 0.5) - 4.0 / 3.0), 0.0, 1e-14);
  const DiscPoint a(0.3, -0.4);
  const complex z(-0.5, 0.2);
  const complex direct = one_minus_abs2(a.value()) / std::pow(1.0 - std::conj(a.value()) * z, 2);
  EXPECT_LE(std::abs(eval(bergman_kernel_unit(a), z) - direct), 1e-14);
}

TEST(Polynomial, CoefficientsOnlyForPolynomialTrees) {
  const auto c = polynomial_coefficients(sum(polynomial({1, 2}), scale(3.0, identity())));
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(std::abs((*c)[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs((*c)[1] - 5.0), 0.0, 1e-15);
  EXPECT_FALSE(polynomial_coefficients(mobius(0.5)).has_value());
}

TEST(BuildFunction, Examples) {
  const Func z = build_function(json::parse(R"({"poly":[0,1]})"));
  EXPECT_LE(std::abs(eval(z, complex(0.3, 0.4)) - complex(0.3, 0.4)), 1e-15);

  const Func s = build_function(json::parse(R"({"mobius":[0.5,0]})"));
  EXPECT_LE(std::abs(eval(s, 0.2) - mobius_eval(0.5, 0.2)), 1e-15);

  const Func fa = build_function(json::parse(R"({"sum":[{"mobius":[0.5,0]},{"const":[-0.5,0]}]})"));
  const Func ref = test_bloch_family(0.5);
  for (complex w : {complex(0.1, 0.2), complex(-0.6, 0.3)}) EXPECT_LE(std::abs(eval(fa, w) - eval(ref, w)), 1e-15);
}

TEST(BuildFunction, AllNodeKinds) {
  const json doc = json::parse(R"({"sum":[
      {"product":[{"scale":{"c":[0,2],"f":"identity"}},{"blaschke":[[0.2,0.1],[-0.3,0]]}]},
      {"shift":{"f":{"identity":true},"c":1.5}},
      {"poly":[1,[0,1],-2]}]})");
  const Func f = build_function(doc);
  const complex z(0.25, -0.4);
  const Func b = blaschke_from_zeros({complex(0.2, 0.1), -0.3});
  const complex want = complex(0, 2) * z * eval(b, z) + (z + 1.5) + (1.0 + complex(0, 1) * z - 2.0 * z * z);
  EXPECT_LE(std::abs(eval(f, z) - want), 1e-14);
}

TEST(BuildFunction, RoundTripsThroughJson) {
  oracle::Lcg rng{17};
  for (int i = 0; i < 100; ++i) {
    const Func f = random_tree(rng, 3);
    const Func g = build_function(to_json(f));
    const complex z = rng.disc(0.9);
    EXPECT_EQ(eval(f, z), eval(g, z));
  }
}

TEST(BuildFunction, ErrorsCarryPaths) {
  auto path_of = [](const char* text) -> std::string {
    try {
      build_function(json::parse(text));
    } catch (const parse_error& e) {
      return e.path();
    }
    return "<no parse_error>";
  };
  EXPECT_EQ(path_of(R"({"sum":["identity",{"mobus":[0.5,0]}]})"), "$.sum[1]");
  EXPECT_EQ(path_of(R"({"poly":[1,"x"]})"), "$.poly[1]");
  EXPECT_EQ(path_of(R"({"scale":{"f":"identity"}})"), "$.scale");
  EXPECT_EQ(path_of(R"({"shift":{"f":{"const":[1,2,3]},"c":1}})"), "$.shift.f.const");
  EXPECT_EQ(path_of(R"({"sum":[]})"), "$.sum");
  EXPECT_EQ(path_of(R"({"const":1,"poly":[1]})"), "$");
  EXPECT_EQ(path_of(R"("sine")"), "$");
}

TEST(BuildFunction, RejectsParametersOutsideDisc) {
  EXPECT_THROW(build_function(json::parse(R"({"mobius":[1.0,0]})")), invalid_parameter);
  EXPECT_THROW(build_function(json::parse(R"({"blaschke":[[0.5,0],[0,1.2]]})")), invalid_parameter);
  EXPECT_THROW(build_function(json::parse(R"({"blaschke":[[0.5,0],[0.5,0]]})")), degenerate_sequence);
}

TEST(PrimitivePair, OfFunction) {
  const auto p = primitive_of(polynomial({3, 0, 1}));
  EXPECT_EQ(p.value_at_zero, complex(3.0));
  EXPECT_LE(std::abs(eval(p.derivative, 0.5) - 1.0), 1e-15);
}
