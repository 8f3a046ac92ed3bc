#include <cmath>

#include "doctest.h"
#include "prodlab/error.hpp"
#include "prodlab/fourier.hpp"

using namespace prodlab;

namespace {

double max_diff(const GroupFunction& a, const GroupFunction& b) {
  double d = 0;
  for (Element x = 0; x < a.size(); ++x) d = std::max(d, std::abs(a[x] - b[x]));
  return d;
}

Subset elems_coset(const GroupPtr& g, Element c, Element involution) {
  const Element xs[] = {c, g->multiply(c, involution)};
  return Subset::from_elements(g, xs);
}

}  // namespace

TEST_CASE("normalized indicators") {
  auto g = build_group("An:5");
  CHECK(max_diff(normalized_indicator(Subset::full(g)), GroupFunction::constant(g, 1)) == 0);
  const auto id = normalized_indicator(Subset::singleton(g, g->identity()));
  CHECK(id[g->identity()] == Complex(60));
  CHECK(id.mean() == Complex(1));
  CHECK(id.is_density());
  const auto half = normalized_indicator(Subset::random(g, 30, 1));
  for (Element x = 0; x < 60; ++x) CHECK((half[x] == Complex(2) || half[x] == Complex(0)));
  CHECK_THROWS_AS(normalized_indicator(Subset(g)), Error);
}

TEST_CASE("convolution") {
  auto g = build_group("Sn:4");
  const auto one = GroupFunction::constant(g, 1);
  CHECK(max_diff(convolve(one, one), one) < 1e-12);
  const auto f = GroupFunction::random(g, 3);
  const Element s = g->parse_element("(1 2 3)");
  const auto delta = normalized_indicator(Subset::singleton(g, s));
  const auto left = convolve(delta, f);
  for (Element x = 0; x < g->order(); ++x) CHECK(std::abs(left[x] - f[g->multiply(g->inverse(s), x)]) < 1e-12);
  // Densities convolve to densities.
  const auto a = normalized_indicator(Subset::random(g, 7, 1)), b = normalized_indicator(Subset::random(g, 5, 2));
  CHECK(convolve(a, b).is_density());
  CHECK(max_diff(convolve(a, b), convolve_indicator(a, Subset::random(g, 5, 2))) < 1e-12);
  // Class functions: f*g = sum_chi <f,chi><g,chi> chi / chi(1).
  const auto table = character_table(g);
  GroupFunction cf(g), cg(g);
  for (Element x = 0; x < g->order(); ++x) {
    cf[x] = Complex(static_cast<double>(g->class_of(x)) + 1, 0.5);
    cg[x] = Complex(1.0 / (1.0 + static_cast<double>(g->class_of(x))), -0.25 * static_cast<double>(g->class_of(x)));
  }
  GroupFunction expect(g);
  for (std::size_t chi = 0; chi < table.size(); ++chi) {
    const auto c = GroupFunction::character(table, chi);
    expect = expect + c.scaled(cf.inner(c) * cg.inner(c) / static_cast<double>(table[chi].degree));
  }
  CHECK(max_diff(convolve(cf, cg), expect) < 1e-10);
  // Young special case.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto x = GroupFunction::random(g, seed), y = GroupFunction::random(g, seed + 100);
    CHECK(convolve(x, y).linf() <= x.norm2() * y.norm2() + 1e-10);
  }
}

TEST_CASE("isotypic projections") {
  for (const char* spec : {"Sn:3", "An:4", "Sn:4", "An:5"}) {
    auto g = build_group(spec);
    const auto table = character_table(g);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto f = GroupFunction::random(g, seed);
      const auto parts = project_all(f, table);
      GroupFunction sum(g);
      double norms = 0;
      for (std::size_t chi = 0; chi < parts.size(); ++chi) {
        sum = sum + parts[chi];
        norms += parts[chi].norm2_sq();
        CHECK(max_diff(project(parts[chi], table, chi), parts[chi]) < 1e-9);
        CHECK(max_diff(project(f, table, chi), parts[chi]) < 1e-12);
      }
      CHECK(max_diff(sum, f) < 1e-9);
      CHECK(std::abs(norms - f.norm2_sq()) < 1e-9 * f.norm2_sq());
      CHECK(max_diff(parts[0], GroupFunction::constant(g, f.mean())) < 1e-10);
    }
    // A class function is killed by the projection onto any other character.
    const auto c1 = GroupFunction::character(table, 1);
    CHECK(project(c1, table, 0).linf() < 1e-10);
  }
  auto other = build_group("Sn:3");
  const auto table = character_table(build_group("Sn:3"));
  CHECK_THROWS_AS(project(GroupFunction::random(other, 1), table, 0), Error);
}

TEST_CASE("projection norms") {
  auto g = build_group("Sn:4");
  const auto table = character_table(g);
  for (std::size_t chi = 0; chi < table.size(); ++chi) {
    CHECK(std::abs(projection_norm_sq(Subset::full(g), table, chi) - (chi == 0 ? 1.0 : 0.0)) < 1e-10);
    const double d = table[chi].degree;
    CHECK(projection_norm_sq(Subset::singleton(g, 0), table, chi) == doctest::Approx(d * d));
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = Subset::random(g, 3 + seed, seed);
    const auto f = normalized_indicator(a);
    const auto parts = project_all(f, table);
    const auto tau = static_cast<Element>(seed * 5 % 24);
    const auto norms = projection_norms_sq(a, table);
    const auto shifted = projection_norms_sq(right_translate(a, tau), table);
    for (std::size_t chi = 0; chi < table.size(); ++chi) {
      CHECK(std::abs(norms[chi] - parts[chi].norm2_sq()) < 1e-8 * std::max(1.0, norms[chi]));
      CHECK(std::abs(norms[chi] - shifted[chi]) < 1e-8 * std::max(1.0, norms[chi]));
    }
  }
}

TEST_CASE("generalized frobenius formula") {
  auto s3 = build_group("Sn:3");
  const auto t3 = character_table(s3);
  const std::vector<Subset> ids{Subset::singleton(s3, 0), Subset::singleton(s3, 0)};
  // ||f^sigma * g||^2 = |G| for point masses, and sum_chi chi(1)^4 / chi(1)^2 = 6.
  CHECK(frobenius_rhs(ids, 1, t3) == doctest::Approx(6));
  CHECK(frobenius_lhs(ids, 1, Exhaustive{}).value == doctest::Approx(6));

  auto a5 = build_group("An:5");
  const auto t5 = character_table(a5);
  const std::vector<Subset> full{Subset::full(a5), Subset::full(a5), Subset::full(a5)};
  CHECK(frobenius_rhs(full, 2, t5) == doctest::Approx(1));
  const auto mc = frobenius_lhs(full, 2, Sampled{50, 1});
  CHECK(mc.value == doctest::Approx(1));
  CHECK(mc.std_error < 1e-9);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::vector<Subset> sets{Subset::random(a5, 12 + seed, seed), Subset::random(a5, 20, seed + 9)};
    const double rhs = frobenius_rhs(sets, 1, t5);
    const auto lhs = frobenius_lhs(sets, 1, Exhaustive{});
    CHECK(std::abs(lhs.value - rhs) <= 1e-6 * rhs);
    CHECK(lhs.std_error == 0);
  }
  auto s4 = build_group("Sn:4");
  const auto t4 = character_table(s4);
  const std::vector<Subset> triple{Subset::random(s4, 5, 1), Subset::random(s4, 8, 2), Subset::random(s4, 6, 3)};
  const auto est = frobenius_lhs(triple, 2, Sampled{20000, 7});
  CHECK(std::abs(est.value - frobenius_rhs(triple, 2, t4)) <= 5 * est.std_error);
  CHECK_THROWS_AS(frobenius_lhs(triple, 2, Exhaustive{}), Error);
}

TEST_CASE("linf mixing distance") {
  auto a5 = build_group("An:5");
  const std::vector<Subset> full{Subset::full(a5), Subset::full(a5)};
  const std::vector<Element> shifts{3, 7};
  CHECK(linf_mixing_distance(full, shifts) < 1e-12);
  const std::vector<Subset> one{Subset::singleton(a5, a5->identity())};
  const std::vector<Element> e{a5->identity()};
  CHECK(linf_mixing_distance(one, e) == doctest::Approx(59));
  // Half-density sets: whenever the distance is below 1/2 the translates cover.
  std::vector<Subset> sets;
  for (std::uint64_t i = 0; i < 4; ++i) sets.push_back(Subset::random(a5, 30, 40 + i));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    std::vector<Element> sh(4);
    for (auto& s : sh) s = static_cast<Element>(rng.below(60));
    const double d = linf_mixing_distance(sets, sh);
    if (d < 0.5) {
      const auto t = shifts_to_conjugators(*a5, sh);
      std::vector<Subset> conj;
      for (std::size_t i = 0; i < 4; ++i) conj.push_back(conjugate_subset(sets[i], t[i]));
      CHECK(product_set(conj).size() == 60);
    }
  }
}

TEST_CASE("criterion check") {
  auto a5 = build_group("An:5");
  const auto table = character_table(a5);
  const std::vector<Subset> full{Subset::full(a5)};
  auto rep = criterion_check(full, table, 0.5, 4, Sampled{16, 1});
  CHECK(rep.hypothesis);
  REQUIRE(rep.shifts);
  CHECK(rep.covered);
  CHECK(rep.tuples_tried == 1);
  CHECK(rep.margins.size() == 4 * 4);

  std::vector<Subset> big;
  for (std::uint64_t i = 0; i < 8; ++i) big.push_back(Subset::random(a5, 40, 70 + i));
  rep = criterion_check(big, table, 0.2, 8, Sampled{64, 3});
  REQUIRE(rep.shifts);
  CHECK(rep.covered);
  CHECK(rep.t == doctest::Approx(-0.2));
  CHECK_FALSE(rep.zeta_t);

  // A coset of a subgroup of order 2 concentrates on one character.
  const Element inv = a5->parse_element("(1 2)(3 4)");
  const Element c = a5->parse_element("(1 3 5)");
  const Subset coset = elems_coset(a5, c, inv);
  rep = criterion_check(std::vector<Subset>{coset}, table, 0.9, 2, Sampled{4, 1});
  CHECK_FALSE(rep.hypothesis);
  REQUIRE_FALSE(rep.violations.empty());
  bool saw_five = false;
  for (const auto& v : rep.violations) saw_five = saw_five || v.degree == 5;
  CHECK(saw_five);
}
