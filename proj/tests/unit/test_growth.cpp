#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "prodlab/error.hpp"
#include "prodlab/growth.hpp"

using namespace prodlab;

namespace {

// Gamma straight from its triple-sum definition.
Rational gamma_oracle(const Subset& a, const Subset& b) {
  const Group& g = a.group();
  Rational total = 0;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    const auto& cls = g.classes()[c];
    const auto& inv = g.classes()[cls.inverse_class].members;
    BigInt sa = 0, sb = 0;
    for (Element x : a.elements())
      for (Element y : a.elements())
        if (cls.members.test(g.multiply(g.inverse(x), y))) ++sa;
    for (Element x : b.elements())
      for (Element y : b.elements())
        if (inv.test(g.multiply(g.inverse(x), y))) ++sb;
    total += Rational(sa * sb, BigInt(cls.size));
  }
  return total / (BigInt(a.size()) * b.size());
}

std::size_t min_power_cover(const Subset& a) {
  Subset p = a;
  for (std::size_t k = 1; k <= 64; ++k) {
    if (p.size() == a.group().order()) return k;
    p = product_set(p, a);
  }
  return 0;
}

}  // namespace

TEST_CASE("gamma statistic matches its definition and forces a large skew product") {
  for (const char* name : {"An:5", "Sn:4", "PSL:2,7"}) {
    auto g = build_group(name);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto a = Subset::random(g, 3 + seed * 4, seed);
      const auto b = Subset::random(g, 5 + seed * 3, seed + 100);
      const Rational gamma = gamma_statistic(a, b);
      CHECK(gamma == gamma_oracle(a, b));
      const auto best = max_skew_product(a, b, Exhaustive{});
      CHECK(Rational(best.size) * gamma >= Rational(BigInt(a.size()) * b.size()));
    }
  }
  auto g = build_group("An:5");
  CHECK_THROWS_AS(gamma_statistic(Subset(g), Subset::full(g)), Error);
}

TEST_CASE("class concentration against brute force") {
  auto g = build_group("Sn:4");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto a = Subset::random(g, 6, seed);
    const auto c = class_concentration(a);
    std::size_t best = 0;
    for (Element x : a.elements())
      for (std::size_t k = 0; k < g->class_count(); ++k) {
        std::size_t n = 0;
        for (Element y : a.elements()) n += g->classes()[k].members.test(g->multiply(g->inverse(x), y));
        best = std::max(best, n);
      }
    CHECK(c.count == best);
    CHECK(a.contains(c.a));
  }
  // A subgroup is fully concentrated on the identity class from any point.
  const auto h = Subset::singleton(g, g->identity());
  CHECK(class_concentration(h).count == 1);
}

TEST_CASE("expected skew product inequality holds exactly") {
  for (const char* name : {"An:5", "Sn:4", "An:6"}) {
    auto g = build_group(name);
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const auto a = Subset::random(g, g->order() / 6, seed);
      const auto b = Subset::random(g, g->order() / 5, seed + 7);
      for (std::size_t k = 0; k < g->class_count(); ++k) {
        const auto r = expected_skew_product_check(a, b, k);
        BigInt sum = 0;
        for (Element s = 0; s < g->order(); ++s) sum += product_set(conjugate_subset(a, s), b).size();
        CHECK(r.lhs == Rational(sum, BigInt(g->order())));
        CHECK(r.holds);
      }
    }
  }
  auto big = build_group("An:7");
  CHECK_THROWS_AS(expected_skew_product_check(Subset::full(big), Subset::full(big), 0), Error);
}

TEST_CASE("globality of a umvirate") {
  auto g = build_group("An:5");
  const int pts[] = {0, 1};
  const auto u = umvirate_subset(g, pts, Permutation::identity(5));
  CHECK(u.size() == 3);
  const auto rep = globality_profile(u, 2);
  REQUIRE(rep.levels.size() == 3);
  CHECK(rep.levels[0].ratio == 1);
  CHECK(rep.levels[2].ratio == 20);
  CHECK(rep.levels[2].intersection == 3);
  CHECK(rep.levels[2].umvirate_size == 3);
  CHECK(rep.is_global(5));
  CHECK_FALSE(rep.is_global(4));
  // The full group is 1-global at every level.
  const auto full = globality_profile(Subset::full(g), 2);
  for (const auto& lv : full.levels) CHECK(lv.ratio == 1);
  CHECK_THROWS_AS(globality_profile(u, 3), Error);
  CHECK_THROWS_AS(globality_profile(Subset::full(build_group("Sn:5")), 1), Error);
}

TEST_CASE("umvirate triple cover factors every element of A6") {
  auto g = build_group("An:6");
  const std::vector<int> I{0, 1}, J{2, 3}, K{4, 5};
  std::size_t adjusted = 0;
  for (Element s = 0; s < g->order(); ++s) {
    const auto c = umvirate_triple_cover(*g, s, I, J, K);
    const auto fixes = [&](Element x, const std::vector<int>& pts) {
      for (int p : pts)
        if (g->form(x)[static_cast<std::size_t>(p)] != p) return false;
      return true;
    };
    CHECK(fixes(c.sigma_i, I));
    CHECK(fixes(c.sigma_j, J));
    CHECK(fixes(c.sigma_k, K));
    CHECK(g->multiply(g->multiply(c.sigma_i, c.sigma_j), c.sigma_k) == s);
    adjusted += c.parity_adjusted;
  }
  CHECK(adjusted > 0);
}

TEST_CASE("umvirate triple cover in larger alternating groups") {
  for (int n : {6, 7}) {
    auto g = build_group("An:" + std::to_string(n));
    Rng rng(n);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<int> pts(static_cast<std::size_t>(n));
      std::iota(pts.begin(), pts.end(), 0);
      for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.below(i)]);
      const std::vector<int> I{pts[0], pts[1]}, J{pts[2], pts[3]}, K{pts[4], pts[5]};
      const auto s = static_cast<Element>(rng.below(g->order()));
      const auto c = umvirate_triple_cover(*g, s, I, J, K);
      CHECK(g->multiply(g->multiply(c.sigma_i, c.sigma_j), c.sigma_k) == s);
    }
  }
  auto g = build_group("An:6");
  CHECK_THROWS_AS(umvirate_triple_cover(*g, 0, {0}, {2, 3}, {4, 5}), Error);
  CHECK_THROWS_AS(umvirate_triple_cover(*g, 0, {0, 1}, {1, 3}, {4, 5}), Error);
}

TEST_CASE("conjugate cover search") {
  auto g = build_group("An:5");
  std::size_t five = 0;
  for (std::size_t k = 0; k < g->class_count(); ++k)
    if (g->classes()[k].size == 12) {
      five = k;
      break;
    }
  const auto cls = Subset::conjugacy_class(g, five);
  const auto r = conjugate_cover_search(cls, 8, 1);
  REQUIRE(r.found);
  CHECK(r.m <= 4);
  // A normal set is its own conjugate, so the minimum is the covering power.
  CHECK(r.m == min_power_cover(cls));
  CHECK(verify_conjugate_cover(cls, r.conjugators));

  const auto rnd = Subset::random(g, 30, 11);
  const auto r2 = conjugate_cover_search(rnd, 10, 2);
  REQUIRE(r2.found);
  CHECK(r2.m <= 10);
  CHECK(verify_conjugate_cover(rnd, r2.conjugators));

  const auto full = conjugate_cover_search(Subset::full(g), 3, 0);
  CHECK(full.m == 1);
  CHECK(full.conjugators == std::vector<Element>{g->identity()});
  CHECK_FALSE(verify_conjugate_cover(Subset::singleton(g, 0), {0, 1}));
}

TEST_CASE("umvirate triple cover on raw permutations of degree 8") {
  Rng rng(8);
  std::size_t done = 0;
  while (done < 300) {
    std::vector<std::uint8_t> img(8);
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t i = img.size(); i > 1; --i) std::swap(img[i - 1], img[rng.below(i)]);
    const Permutation s(img);
    if (!s.even()) continue;
    const auto c = umvirate_triple_cover(s, {0, 1}, {2, 3}, {4, 5});
    CHECK(c.sigma_i * c.sigma_j * c.sigma_k == s);
    CHECK((c.sigma_i.even() && c.sigma_j.even() && c.sigma_k.even()));
    for (int p : {0, 1}) CHECK(c.sigma_i(p) == p);
    for (int p : {2, 3}) CHECK(c.sigma_j(p) == p);
    for (int p : {4, 5}) CHECK(c.sigma_k(p) == p);
    ++done;
  }
  CHECK_THROWS_AS(umvirate_triple_cover(Permutation::parse("(1 2)", 8), {0, 1}, {2, 3}, {4, 5}), Error);
}
