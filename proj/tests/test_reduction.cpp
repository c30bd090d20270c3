#include <gtest/gtest.h>

#include "friezekit/reduction.hpp"
#include "friezekit/rng.hpp"
#include "support/oracles.hpp"

using namespace friezekit;

namespace {

using Mono = std::vector<std::pair<int, int>>;  // (vertex, exponent)

Rat monomial(const std::vector<Rat>& x, const Mono& m) {
  Rat r = 1;
  for (auto [v, e] : m) {
    for (int k = 0; k < e; ++k) r *= x[static_cast<std::size_t>(v)];
    for (int k = 0; k > e; --k) r /= x[static_cast<std::size_t>(v)];
  }
  return r;
}

std::vector<Rat> project_by_hand(const std::vector<Rat>& x, const std::vector<Mono>& rows) {
  std::vector<Rat> y;
  for (const auto& m : rows) y.push_back(monomial(x, m));
  return y;
}

// Reduced coordinates as monomials in the frieze labels.
std::vector<Mono> coordinates(const FamilySpec& f) {
  switch (f.family) {
    case Family::E6:
      return {{{0, 1}, {2, 1}}, {{1, 1}}, {{2, 1}, {4, 1}}, {{3, 1}}, {{2, 1}, {6, 1}}, {{5, 1}}};
    case Family::E7:
      return {{{0, 1}, {2, 1}}, {{1, 1}}, {{2, 1}, {4, 1}, {5, 1}}, {{3, 1}}, {{5, 1}, {7, 1}}, {{6, 1}}};
    case Family::E8:
      return {{{0, 1}, {2, 1}}, {{1, 1}}, {{2, 1}, {4, 1}}, {{3, 1}}, {{4, 1}, {6, 1}, {7, 1}}, {{5, 1}}, {{7, 1}}, {{8, 1}}};
    case Family::D: {
      if (f.N == 6) return {{{2, 1}}, {{0, 1}, {1, 1}, {3, 1}}, {{3, 1}, {5, 1}, {6, 1}}, {{4, 1}}};
      std::vector<Mono> out{{{0, 1}, {1, 1}}};
      for (int i = 2; i <= f.N - 2; ++i) out.push_back({{i, 1}});
      out.push_back({{f.N - 1, 1}, {f.N, 1}});
      return out;
    }
    case Family::A:
      break;
  }
  return {};
}

// Reduced maps as printed, 0-based.
std::vector<Rat> printed_map(const FamilySpec& f, const std::vector<Rat>& y) {
  std::vector<Rat> z(y.size());
  switch (f.family) {
    case Family::E6: {
      const Rat t = 1 + y[1] * y[3] * y[5];
      z[0] = (1 + y[1]) * t / y[0];
      z[2] = t * (1 + y[3]) / y[2];
      z[4] = t * (1 + y[5]) / y[4];
      break;
    }
    case Family::E7: {
      const Rat u = 1 + y[1] * y[3], w = 1 + y[3] * y[5];
      z[0] = (1 + y[1]) * u / y[0];
      z[2] = u * (1 + y[3]) * w / y[2];
      z[4] = w * (1 + y[5]) / y[4];
      break;
    }
    case Family::E8: {
      const Rat u = 1 + y[1] * y[3], w = 1 + y[3] * y[5], s = 1 + y[5] * y[7];
      z[0] = (1 + y[1]) * u / y[0];
      z[2] = u * w / y[2];
      z[4] = w * (1 + y[5]) * s / y[4];
      z[6] = s / y[6];
      break;
    }
    case Family::D: {
      // y = (X3, p, q, X5)
      z[0] = (1 + y[1]) / y[0];
      z[3] = (1 + y[2]) / y[3];
      const Rat cross = 1 + z[0] * z[3];
      z[1] = (1 + z[0]) * (1 + z[0]) * cross / y[1];
      z[2] = cross * (1 + z[3]) * (1 + z[3]) / y[2];
      return z;
    }
    case Family::A:
      break;
  }
  for (std::size_t k = 1; k < y.size(); k += 2) z[k] = (1 + z[k - 1]) / y[k];
  return z;
}

RatMatrix skew_blocks(std::size_t blocks) {
  RatMatrix c(2 * blocks, 2 * blocks);
  for (std::size_t k = 0; k < blocks; ++k) {
    c(2 * k, 2 * k + 1) = 1;
    c(2 * k + 1, 2 * k) = -1;
  }
  return c;
}

IntMatrix rows_to_matrix(const std::vector<Mono>& rows, int n) {
  IntMatrix m(rows.size(), static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (auto [v, e] : rows[r]) m(r, static_cast<std::size_t>(v)) = e;
  return m;
}

NamedFn coordinate(std::size_t i) {
  return {"y" + std::to_string(i + 1), [i](const std::vector<DualRat>& y) { return y[i]; }};
}

NamedFn mono_fn(std::vector<int> a, Rat scale = 1) {
  return {"mono", [a = std::move(a), scale](const std::vector<DualRat>& y) {
            DualRat r(scale);
            for (std::size_t i = 0; i < a.size(); ++i) {
              for (int k = 0; k < a[i]; ++k) r = r * y[i];
              for (int k = 0; k > a[i]; --k) r = r / y[i];
            }
            return r;
          }};
}

Rat mono_value(const std::vector<int>& a, const std::vector<Rat>& y) {
  Rat r = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int k = 0; k < a[i]; ++k) r *= y[i];
    for (int k = 0; k > a[i]; --k) r /= y[i];
  }
  return r;
}

std::vector<FamilySpec> supported() {
  return {FamilySpec::e6(), FamilySpec::e7(), FamilySpec::e8(), FamilySpec::d(5), FamilySpec::d(6), FamilySpec::d(7),
          FamilySpec::d(9)};
}

BatteryOptions quick(int trials = 4) {
  BatteryOptions o;
  o.trials = trials;
  o.threads = 1;
  return o;
}

}  // namespace

TEST(Reduction, SupportedFamilies) {
  for (const auto& f : supported()) EXPECT_TRUE(reduction_supported(f)) << f.name();
  for (const auto& f : {FamilySpec::d(4), FamilySpec::d(8), FamilySpec::a(1, 2)}) {
    EXPECT_FALSE(reduction_supported(f));
    EXPECT_THROW(build_reduction(build_affine_quiver(f)), Unsupported) << f.name();
  }
}

// The frieze step, projected, is a function of the projection only, and it is the printed map.
TEST(Reduction, PrintedMapDescribesTheFrieze) {
  for (const auto& f : supported()) {
    const ReducedSystem rs = build_reduction(build_affine_quiver(f));
    const auto rows = coordinates(f);
    for (std::uint64_t s = 0; s < 6; ++s) {
      const auto x = Rng(trial_seed(31, s)).rationals(static_cast<std::size_t>(rs.size()));
      const auto y = project_by_hand(x, rows);
      const auto y1 = project_by_hand(oracle::relation_step(f, x), rows);
      EXPECT_EQ(project(rs, x), y) << f.name();
      EXPECT_EQ(reduced_step(rs, y), y1) << f.name();
      EXPECT_EQ(reduced_step_generic(rs, y), y1) << f.name();
      if (f.family != Family::D || f.N == 6) EXPECT_EQ(printed_map(f, y), y1) << f.name();
    }
  }
}

TEST(Reduction, E6AllOnes) {
  const ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::e6()));
  const auto z = reduced_step(rs, std::vector<Rat>(6, Rat(1)));
  EXPECT_EQ(z[0], 4);
  EXPECT_EQ(z[1], 5);
  EXPECT_EQ(rs.ylabels, (std::vector<std::string>{"a*c", "b", "c*e", "d", "c*g", "f"}));
}

TEST(Reduction, DOddInteriorRelations) {
  // X3' = (1 + p X4)/X3 and p' = (1 + X3')^2 / p with p = X1 X2.
  for (int N : {5, 7, 9}) {
    const ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::d(N)));
    const auto y = Rng(static_cast<std::uint64_t>(N)).rationals(static_cast<std::size_t>(N - 1));
    const auto z = reduced_step(rs, y);
    EXPECT_EQ(z[1], (1 + y[0] * y[2]) / y[1]) << N;
    EXPECT_EQ(z[0], (1 + z[1]) * (1 + z[1]) / y[0]) << N;
  }
}

TEST(Reduction, ZeroComponentIsBadSpecialization) {
  const ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::e6()));
  std::vector<Rat> y(6, Rat(1));
  y[2] = 0;
  EXPECT_THROW(reduced_step(rs, y), BadSpecialization);
}

TEST(Reduction, PrintedCMatrices) {
  auto c_of = [](const FamilySpec& f) { return build_reduction(build_affine_quiver(f)).c; };
  EXPECT_EQ(c_of(FamilySpec::e6()), skew_blocks(3));
  EXPECT_EQ(c_of(FamilySpec::e7()), skew_blocks(3));
  EXPECT_EQ(c_of(FamilySpec::e8()), skew_blocks(4));
  RatMatrix d6(4, 4);
  d6(0, 1) = 1;
  d6(1, 0) = -1;
  d6(2, 3) = -1;
  d6(3, 2) = 1;
  EXPECT_EQ(c_of(FamilySpec::d(6)), d6);
  for (const auto& f : supported()) {
    const ReducedSystem rs = build_reduction(build_affine_quiver(f));
    EXPECT_TRUE(matches_printed_c(rs)) << f.name();
    EXPECT_TRUE(block_identity_holds(rs)) << f.name();
    EXPECT_EQ(rs.c * rs.bhat, RatMatrix::identity(static_cast<std::size_t>(rs.dim()))) << f.name();
    for (std::size_t i = 0; i < rs.c.rows(); ++i)
      for (std::size_t j = 0; j < rs.c.cols(); ++j) EXPECT_EQ(rs.c(i, j), -rs.c(j, i)) << f.name();
  }
}

TEST(Reduction, BlockFormHasZeroKernelBlock) {
  for (const auto& f : supported()) {
    const ReducedSystem rs = build_reduction(build_affine_quiver(f));
    const RatMatrix bf = block_form(rs);
    const std::size_t d = static_cast<std::size_t>(rs.dim()), n = static_cast<std::size_t>(rs.size());
    EXPECT_EQ(bf.block(0, 0, d, d), rs.bhat) << f.name();
    EXPECT_EQ(bf.block(d, 0, n - d, n), RatMatrix(n - d, n)) << f.name();
    EXPECT_EQ(bf.block(0, d, n, n - d), RatMatrix(n, n - d)) << f.name();
  }
}

TEST(Reduction, HermiteLatticesEqualThePrintedOnes) {
  for (const auto& f : supported()) {
    const Quiver q = build_affine_quiver(f);
    const KernelImage ki = integer_kernel_image(q.matrix);
    const IntMatrix printed_image = rows_to_matrix(coordinates(f), q.size());
    EXPECT_TRUE(same_lattice(ki.image, printed_image)) << f.name();
    // Kernel rows annihilate B and complete the image to a full-rank basis.
    const IntMatrix b = int_matrix(q.matrix.rows());
    const IntMatrix k = ki.kernel;
    EXPECT_EQ(k * b, IntMatrix(k.rows(), b.cols())) << f.name();
    EXPECT_EQ(k.rows() + printed_image.rows(), static_cast<std::size_t>(q.size()));
    const ReducedSystem rs = build_reduction(q);
    EXPECT_NE(determinant(rs.a), 0) << f.name();
    EXPECT_FALSE(rs.nonstandard_basis);
  }
}

TEST(Reduction, NonstandardBasisIsFlagged) {
  const Quiver q = build_affine_quiver(FamilySpec::e6());
  KernelImage ki = *printed_basis(q.family);
  for (std::size_t j = 0; j < ki.image.cols(); ++j) ki.image(0, j) += ki.image(1, j);
  const ReducedSystem rs = build_reduction(q, ki);
  EXPECT_TRUE(rs.nonstandard_basis);
  EXPECT_TRUE(block_identity_holds(rs));
  EXPECT_FALSE(matches_printed_c(rs));
}

TEST(Brackets, CoordinatesAreLogCanonical) {
  const ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::e7()));
  const auto y = Rng(2).rationals(6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      EXPECT_EQ(poisson_bracket(rs, coordinate(i), coordinate(j), y), rs.c(i, j) * y[i] * y[j]);
}

TEST(Brackets, AntisymmetryLeibnizJacobi) {
  const ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::e8()));
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const auto y = rng.rationals(8);
    std::vector<std::vector<int>> e(3, std::vector<int>(8));
    for (auto& v : e)
      for (auto& k : v) k = static_cast<int>(rng.uniform(-2, 2));
    const NamedFn f = mono_fn(e[0]), g = mono_fn(e[1]), h = mono_fn(e[2]);
    EXPECT_EQ(poisson_bracket(rs, f, g, y), -poisson_bracket(rs, g, f, y));
    std::vector<int> gh(8);
    for (std::size_t i = 0; i < 8; ++i) gh[i] = e[1][i] + e[2][i];
    EXPECT_EQ(poisson_bracket(rs, f, mono_fn(gh), y),
              poisson_bracket(rs, f, g, y) * mono_value(e[2], y) + mono_value(e[1], y) * poisson_bracket(rs, f, h, y));
    // {y^a, y^b} = k y^(a+b); Jacobi on the cyclic sum.
    auto inner = [&](const std::vector<int>& a, const std::vector<int>& b) -> NamedFn {
      std::vector<int> s(8);
      for (std::size_t i = 0; i < 8; ++i) s[i] = a[i] + b[i];
      const Rat k = poisson_bracket(rs, mono_fn(a), mono_fn(b), y) / mono_value(s, y);
      return mono_fn(s, k);
    };
    const Rat jac = poisson_bracket(rs, f, inner(e[1], e[2]), y) + poisson_bracket(rs, g, inner(e[2], e[0]), y) +
                    poisson_bracket(rs, h, inner(e[0], e[1]), y);
    EXPECT_EQ(jac, 0);
  }
}

TEST(Integrability, IntegralsAreFixedByThePrintedMap) {
  for (const auto& f : {FamilySpec::e6(), FamilySpec::e7(), FamilySpec::e8(), FamilySpec::d(6)}) {
    const ReducedSystem rs = build_reduction(build_affine_quiver(f));
    const auto ints = first_integrals(rs);
    EXPECT_EQ(static_cast<int>(ints.size()), rs.m()) << f.name();
    for (std::uint64_t s = 0; s < 4; ++s) {
      const auto y = Rng(trial_seed(9, s)).rationals(static_cast<std::size_t>(rs.dim()));
      const auto z = printed_map(f, y);
      for (const auto& fn : ints) EXPECT_EQ(evaluate(fn, z), evaluate(fn, y)) << f.name() << " " << fn.name;
    }
  }
}

TEST(Integrability, BatteryPassesOnEverySupportedFamily) {
  for (const auto& f : supported()) {
    const ReducedSystem rs = build_reduction(build_affine_quiver(f));
    for (const auto& r : integrability_battery(rs, quick())) EXPECT_EQ(r.verdict, Verdict::Pass) << r.id << " " << r.note;
    EXPECT_EQ(commuting_square_check(rs, quick()).verdict, Verdict::Pass) << f.name();
    EXPECT_EQ(generic_step_check(rs, quick()).verdict, Verdict::Pass) << f.name();
    for (const auto& r : bracket_checks(rs, quick())) EXPECT_EQ(r.verdict, Verdict::Pass) << r.id << " " << r.note;
    for (const auto& r : formula_checks(rs, quick())) EXPECT_EQ(r.verdict, Verdict::Pass) << r.id << " " << r.note;
    for (const auto& c : printed_scaling_claims(rs))
      EXPECT_EQ(scaling_invariance_check(rs, c, quick()).verdict, Verdict::Pass) << c.id;
  }
}

TEST(Integrability, DuplicatedIntegralFailsTheRankCheck) {
  const ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::e6()));
  auto ints = first_integrals(rs);
  ints.back() = ints.front();
  for (const auto& r : integrability_battery(rs, ints, quick())) {
    if (r.id.find("rank") != std::string::npos)
      EXPECT_EQ(r.verdict, Verdict::Fail);
    else
      EXPECT_EQ(r.verdict, Verdict::Pass) << r.id;
  }
}

TEST(Integrability, PerturbedBracketFailsTheSymplecticCheck) {
  ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::e6()));
  rs.c(0, 2) = 1;
  rs.c(2, 0) = -1;
  bool saw = false;
  for (const auto& r : integrability_battery(rs, first_integrals(build_reduction(build_affine_quiver(FamilySpec::e6()))), quick()))
    if (r.id.find("symplectic") != std::string::npos) {
      saw = true;
      EXPECT_EQ(r.verdict, Verdict::Fail);
      EXPECT_TRUE(r.witness_seed.has_value());
    }
  EXPECT_TRUE(saw);
}

TEST(Integrability, ZeroTrialsIsInconclusive) {
  const ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::d(5)));
  for (const auto& r : integrability_battery(rs, quick(0))) EXPECT_EQ(r.verdict, Verdict::Inconclusive) << r.id;
}

TEST(Presymplectic, BatteryOnAllFamilies) {
  for (const auto& f : {FamilySpec::d(4), FamilySpec::d(8), FamilySpec::e7(), FamilySpec::a(1, 3)})
    EXPECT_EQ(presymplectic_check(build_affine_quiver(f), quick(3)).verdict, Verdict::Pass) << f.name();
}
