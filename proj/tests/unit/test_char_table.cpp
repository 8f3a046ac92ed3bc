#include <cmath>
#include <string>

#include "doctest.h"
#include "prodlab/char_table.hpp"
#include "prodlab/error.hpp"

using namespace prodlab;

namespace {

std::vector<int> degrees(const CharacterTable& t) {
  std::vector<int> d;
  for (const auto& c : t.irreducibles()) d.push_back(c.degree);
  return d;
}

void check_column_orthogonality(const CharacterTable& t) {
  const Group& g = t.group();
  const std::size_t k = g.class_count();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      Complex s = 0;
      for (const auto& c : t.irreducibles()) s += c.values[a] * std::conj(c.values[b]);
      const double expect = a == b ? static_cast<double>(g.order()) / static_cast<double>(g.classes()[a].size) : 0.0;
      CHECK(std::abs(s - expect) < 1e-8 * std::max(1.0, expect));
    }
}

}  // namespace

TEST_CASE("character degrees") {
  CHECK(degrees(character_table(build_group("Sn:3"))) == std::vector<int>{1, 1, 2});
  CHECK(degrees(character_table(build_group("An:5"))) == std::vector<int>{1, 3, 3, 4, 5});
  CHECK(degrees(character_table(build_group("PSL:2,7"))) == std::vector<int>{1, 3, 3, 6, 7, 8});
  CHECK(degrees(character_table(build_group("Sn:5"))) == std::vector<int>{1, 1, 4, 4, 5, 5, 6});
  auto z = abelian_group({3, 4});
  const auto t = character_table(z);
  CHECK(t.size() == 12);
  for (const auto& c : t.irreducibles()) CHECK(c.degree == 1);
}

TEST_CASE("column orthogonality on groups up to order 2520") {
  for (std::string spec : {"Sn:3", "Sn:4", "An:4", "An:5", "Sn:5", "PSL:2,7", "PSL:2,8", "An:6", "SL:2,5", "PSL:2,11", "Sn:6", "SL:3,2",
                           "PSL:2,13", "An:7"}) {
    CAPTURE(spec);
    const auto t = character_table(build_group(spec));
    CHECK(t.size() == t.group().class_count());
    check_column_orthogonality(t);
  }
}

TEST_CASE("larger groups near the cap") {
  for (std::string text : {"Sn:7", "PSL:2,31", "SL:3,3", "PSL:2,27"}) {
    CAPTURE(text);
    auto spec = GroupSpec::parse(text);
    spec.order_cap = GroupSpec::kHardOrderCap;
    const auto t = character_table(build_group(spec));
    long long s = 0;
    for (const auto& c : t.irreducibles()) s += static_cast<long long>(c.degree) * c.degree;
    CHECK(s == static_cast<long long>(t.group().order()));
  }
}

TEST_CASE("table is deterministic") {
  const auto g = build_group("An:5");
  const auto a = character_table(g), b = character_table(g);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].values.size(); ++j) CHECK(a[i].values[j] == b[i].values[j]);
}

TEST_CASE("witten zeta") {
  const auto t = character_table(build_group("An:5"));
  CHECK(witten_zeta(t, 2, true) == doctest::Approx(1.0 + 2.0 / 9 + 1.0 / 16 + 1.0 / 25).epsilon(1e-12));
  CHECK(witten_zeta(t, 2, true) == doctest::Approx(1.324722).epsilon(1e-6));
  CHECK(witten_zeta(t, 60, false) < 1e-20);
  double prev = witten_zeta(t, 0.1, true);
  for (double s = 0.2; s < 5; s += 0.1) {
    const double cur = witten_zeta(t, s, true);
    CHECK(cur < prev);
    prev = cur;
  }
  const auto ab = character_table(abelian_group({7}));
  CHECK(witten_zeta(ab, 1, true) == doctest::Approx(7));
  CHECK_THROWS(witten_zeta(t, 0, true));
  CharacterTableOptions bad;
  bad.tolerance = 1e-3;
  CHECK_THROWS(character_table(build_group("Sn:3"), bad));
}
