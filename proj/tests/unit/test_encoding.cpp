#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mgg/encoding.hpp"
#include "support/fixtures.hpp"

using namespace mgg;
using fixtures::mat;

namespace {

ComplexTerm edge_term(const BoolMatrix& a, const BoolMatrix& b) { return ComplexTerm::from_edges(a, b); }

std::vector<ComplexTerm> all_terms(const UniversePtr& u, bool disjoint_only) {
  std::vector<ComplexTerm> out;
  const auto ms = fixtures::all_matrices(u);
  for (const auto& a : ms)
    for (const auto& b : ms)
      if (!disjoint_only || (a & b).none()) out.push_back(edge_term(a, b));
  return out;
}

}  // namespace

TEST(Dyadic, ParsesAndPrints) {
  const Dyadic d = Dyadic::parse("0.0110b");
  EXPECT_EQ(d.to_binary_string(), "0.011b");
  EXPECT_EQ(d.to_fraction_string(), "3/8");
  EXPECT_EQ(Dyadic().to_binary_string(), "0.0b");
  EXPECT_EQ(Dyadic().to_fraction_string(), "0");
  EXPECT_EQ(Dyadic::parse("0.1"), Dyadic::parse("0.1000b"));
  EXPECT_THROW(Dyadic::parse("1.1b"), Error);
  EXPECT_THROW(Dyadic::parse("0.12b"), Error);
}

TEST(Dyadic, OrdersNumerically) {
  EXPECT_LT(Dyadic::parse("0.011b"), Dyadic::parse("0.1b"));
  EXPECT_LT(Dyadic(), Dyadic::parse("0.0001b"));
  EXPECT_EQ(Dyadic::parse("0.1b") ^ Dyadic::parse("0.11b"), Dyadic::parse("0.01b"));
  EXPECT_EQ(Dyadic::parse("0.1b").shifted(2), Dyadic::parse("0.001b"));
}

TEST(Ell, ExampleTerm) {
  const auto u = make_universe(2);
  const DyadicComplex z = ell_complex(edge_term(mat(u, {{0, 1}, {1, 0}}), mat(u, {{1, 0}, {0, 0}})));
  EXPECT_EQ(z.re.to_ratio(), Ratio(3, 8));
  EXPECT_EQ(z.im.to_ratio(), Ratio(1, 2));
  EXPECT_EQ(z.re.to_binary_string(), "0.011b");
  EXPECT_TRUE(ell(BoolMatrix(u)).is_zero());
  EXPECT_EQ(ell_complex(ComplexTerm::zero(u)), (DyadicComplex{Dyadic(), Dyadic()}));
}

TEST(Ell, ReadsColumnsFirst) {
  const auto u = make_universe(2);
  // Bit 2 is row 2 of column 1, bit 3 is row 1 of column 2.
  EXPECT_EQ(ell(mat(u, {{0, 0}, {1, 0}})), Dyadic::parse("0.01b"));
  EXPECT_EQ(ell(mat(u, {{0, 1}, {0, 0}})), Dyadic::parse("0.001b"));
}

TEST(Ell, MatchesExplicitSum) {
  std::mt19937_64 rng(9);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto u = make_universe(n);
    for (int it = 0; it < 50; ++it) {
      BoolMatrix m(u);
      for (std::size_t c = 0; c < m.cell_count(); ++c) m.set(c, rng() & 1U);
      EXPECT_EQ(ell(m).to_ratio(), fixtures::ell_sum(m));
    }
  }
}

TEST(Ell, IsInjectiveOverAFixedUniverse) {
  const auto u = make_universe(2);
  std::set<DyadicComplex> seen;
  for (const auto& z : all_terms(u, false)) EXPECT_TRUE(seen.insert(ell_complex(z)).second);
}

TEST(Norm, Examples) {
  const auto u = make_universe(2);
  EXPECT_TRUE(norm(ComplexTerm::zero(u)).is_zero());
  const BoolMatrix a = mat(u, {{1, 1}, {0, 1}});
  EXPECT_TRUE(norm(edge_term(a, a)).is_zero());
  // The nil term over the full ambient: 1 - 2^-4.
  EXPECT_EQ(norm(edge_term(BoolMatrix(u), BoolMatrix::ones(u))).to_ratio(), Ratio(15, 16));
}

TEST(Norm, IsEllOfXor) {
  const auto u = make_universe(2);
  for (const auto& z : all_terms(u, false)) {
    EXPECT_EQ(norm(z), ell(z.cert_edges ^ z.nihil_edges));
    EXPECT_EQ(norm(conj(z)), norm(z));
  }
}

TEST(Norm, ZeroProductAndSumRulesExhaustive) {
  for (std::size_t n : {1U, 2U}) {
    const auto u = make_universe(n);
    const auto h = all_terms(u, true);
    const auto g = all_terms(u, false);
    for (const auto& z : h) EXPECT_EQ(norm(z).is_zero(), z.is_zero());
    for (const auto& y : h)
      for (const auto& z : h) EXPECT_EQ(norm(cmul(y, z)), norm(y) & norm(z));
    for (const auto& z1 : g)
      for (const auto& z2 : g) EXPECT_LE(norm(cadd(z1, z2)), norm(z1) | norm(z2));
  }
}

TEST(ConditionalNorm, Examples) {
  const auto u = make_universe(2);
  const ComplexTerm z = edge_term(mat(u, {{1, 0}, {0, 1}}), mat(u, {{0, 1}, {0, 0}}));
  EXPECT_EQ(conditional_norm(z, z), Ratio(1));
  EXPECT_EQ(conditional_norm(ComplexTerm::zero(u), z), Ratio(0));
  EXPECT_THROW(conditional_norm(z, ComplexTerm::zero(u)), DivisionByZero);
  // Not dyadic in general.
  const ComplexTerm y = edge_term(mat(u, {{0, 1}, {1, 0}}), mat(u, {{1, 0}, {0, 0}}));
  const ComplexTerm x = edge_term(mat(u, {{0, 1}, {1, 0}}), BoolMatrix(u));
  EXPECT_EQ(conditional_norm(x, y), Ratio(3, 7));
}

TEST(ConditionalNorm, IsOneExactlyForSubgraphs) {
  const auto u = make_universe(2);
  const auto h = all_terms(u, true);
  for (const auto& z : h) {
    for (const auto& y : h) {
      if (y.is_zero()) continue;
      const bool sub = contains(y.cert_edges | y.nihil_edges, z.cert_edges | z.nihil_edges);
      EXPECT_EQ(conditional_norm(z, y) == Ratio(1), sub);
      const Ratio closed = fixtures::ell_sum((z.cert_edges | z.nihil_edges) & (y.cert_edges | y.nihil_edges)) /
                           fixtures::ell_sum(y.cert_edges | y.nihil_edges);
      EXPECT_EQ(conditional_norm(z, y), closed);
    }
  }
}

TEST(Distance, Examples) {
  const auto u = make_universe(2);
  const ComplexTerm a1 = edge_term(mat(u, {{1, 0}, {0, 0}}), BoolMatrix(u));
  const ComplexTerm a2 = edge_term(mat(u, {{0, 0}, {0, 1}}), BoolMatrix(u));
  EXPECT_EQ(distance(a1, a2).to_ratio(), Ratio(9, 16));
  EXPECT_TRUE(distance(a1, a1).is_zero());
}

TEST(Distance, SeparatesTermsDifferingOnlyByPart) {
  const auto u = make_universe(1);
  const ComplexTerm x = edge_term(BoolMatrix::ones(u), BoolMatrix(u));
  const ComplexTerm y = edge_term(BoolMatrix(u), BoolMatrix::ones(u));
  EXPECT_FALSE(distance(x, y).is_zero());
}

TEST(Distance, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 1000; ++it) {
    const auto u = make_universe(1 + rng() % 3);
    auto random = [&] {
      BoolMatrix a(u), b(u);
      for (std::size_t c = 0; c < a.cell_count(); ++c) a.set(c, rng() & 1U), b.set(c, rng() & 1U);
      return edge_term(a, b);
    };
    const ComplexTerm x = random(), y = random(), z = random();
    const Ratio dxy = distance(x, y).to_ratio();
    EXPECT_GE(dxy, 0);
    EXPECT_EQ(distance(x, y).is_zero(), x == y);
    EXPECT_EQ(distance(x, y), distance(y, x));
    EXPECT_LE(distance(x, z).to_ratio(), dxy + distance(y, z).to_ratio());
  }
}

TEST(Gasket, SmallRasters) {
  const Bitmap b = gasket_raster(1);
  EXPECT_TRUE(b.at(0, 0));
  EXPECT_TRUE(b.at(0, 1));
  EXPECT_TRUE(b.at(1, 0));
  EXPECT_FALSE(b.at(1, 1));
  for (int bits = 1; bits <= 6; ++bits) {
    const Bitmap g = gasket_raster(bits);
    for (std::size_t k = 0; k < g.width(); ++k) EXPECT_TRUE(g.at(k, 0) && g.at(0, k));
  }
  EXPECT_EQ(gasket_raster(1).to_pbm(), "P1 2 2\n11\n10\n");
  EXPECT_THROW(gasket_raster(0), RangeError);
  EXPECT_THROW(gasket_raster(17), RangeError);
}

TEST(HPoints, OneNode) {
  const auto pts = h_points(1);
  ASSERT_EQ(pts.size(), 3U);
  const std::set<DyadicComplex> s(pts.begin(), pts.end());
  EXPECT_TRUE(s.count(DyadicComplex{Dyadic(), Dyadic()}));
  EXPECT_TRUE(s.count(DyadicComplex{Dyadic::parse("0.1b"), Dyadic()}));
  EXPECT_TRUE(s.count(DyadicComplex{Dyadic(), Dyadic::parse("0.1b")}));
}

TEST(HPoints, DistinctAndOnTheGasket) {
  for (std::size_t n : {1U, 2U}) {
    const auto pts = h_points(n);
    std::size_t expected = 1;
    for (std::size_t i = 0; i < n * n; ++i) expected *= 3;
    EXPECT_EQ(pts.size(), expected);
    EXPECT_EQ(std::set<DyadicComplex>(pts.begin(), pts.end()).size(), expected);
    for (const auto& p : pts) EXPECT_TRUE((p.re & p.im).is_zero());
  }
  EXPECT_THROW(h_points(4), RangeError);
}
