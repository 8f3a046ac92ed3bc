#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "prodlab/error.hpp"
#include "prodlab/subset.hpp"

using namespace prodlab;

namespace {

Subset elems(const GroupPtr& g, std::initializer_list<const char*> texts) {
  Subset s(g);
  for (const char* t : texts) s.insert(g->parse_element(t));
  return s;
}

// Number of S_n classes meeting A_n that split, computed from cycle types:
// a class of S_n inside A_n splits iff its parts are distinct and odd.
std::size_t alt_class_count_oracle(int n) {
  std::set<std::vector<int>> types;
  std::vector<std::uint8_t> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    const Permutation perm(p);
    if (!perm.even()) continue;
    types.insert(perm.cycle_type());
  } while (std::next_permutation(p.begin(), p.end()));
  for (const auto& t : types) {
    std::set<int> distinct(t.begin(), t.end());
    const bool all_odd = std::all_of(t.begin(), t.end(), [](int x) { return x % 2 == 1; });
    count += (distinct.size() == t.size() && all_odd) ? 2 : 1;
  }
  return count;
}

void check_invariants(const Group& g) {
  std::size_t total = 0;
  for (const auto& c : g.classes()) {
    CHECK(c.members.count() == c.size);
    CHECK(c.members.test(c.representative));
    CHECK(g.order() % c.size == 0);
    CHECK(g.classes()[c.inverse_class].inverse_class == g.class_of(c.representative));
    total += c.size;
  }
  CHECK(total == g.order());
  CHECK(g.classes()[0].size == 1);
  CHECK(g.classes()[0].representative == g.identity());
  for (Element x = 0; x < g.order(); ++x) {
    CHECK(g.multiply(g.identity(), x) == x);
    CHECK(g.multiply(x, g.inverse(x)) == g.identity());
  }
}

}  // namespace

TEST_CASE("build_group orders and class counts") {
  auto s3 = build_group("Sn:3");
  CHECK(s3->order() == 6);
  CHECK(s3->class_count() == 3);
  auto a5 = build_group("An:5");
  CHECK(a5->order() == 60);
  CHECK(a5->class_count() == 5);
  auto sl22 = build_group("SL:2,2");
  CHECK(sl22->order() == 6);
  for (const char* spec : {"Sn:1", "Sn:4", "An:4", "An:6", "SL:2,3", "PSL:2,7", "SL:2,4", "PSL:2,9", "SL:3,2"}) {
    auto g = build_group(spec);
    CHECK(BigInt(g->order()) == family_order(g->spec()));
    check_invariants(*g);
  }
  CHECK(build_group("An:6")->class_count() == alt_class_count_oracle(6));
  CHECK(build_group("An:7")->class_count() == alt_class_count_oracle(7));
  CHECK(build_group("Sn:5")->class_count() == 7);
  CHECK(build_group("PSL:2,7")->class_count() == 6);
}

TEST_CASE("element indices are canonical and stable") {
  auto a = build_group("PSL:2,5");
  auto b = build_group("PSL:2,5");
  REQUIRE(a->order() == b->order());
  for (Element x = 0; x < a->order(); ++x) CHECK(a->format(x) == b->format(x));
  auto s4 = build_group("Sn:4");
  for (Element x = 1; x < s4->order(); ++x) {
    const auto prev = s4->form(x - 1);
    const auto cur = s4->form(x);
    CHECK(std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()));
  }
  CHECK(s4->identity() == 0);
}

TEST_CASE("large groups work without a multiplication table") {
  auto a7 = build_group("An:7");
  CHECK(a7->order() == 2520);
  CHECK_FALSE(a7->has_table());
  check_invariants(*a7);
  CHECK(build_group("An:6")->has_table());
}

TEST_CASE("group spec errors") {
  CHECK_THROWS_AS(build_group("Sn:8"), Error);
  try {
    build_group("Sn:8");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderCapExceeded);
  }
  try {
    build_group("SL:2,6");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameters);
  }
  try {
    build_group("Sn:0");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameters);
  }
  GroupSpec spec = GroupSpec::parse("Sn:8");
  spec.order_cap = 20000;
  CHECK_THROWS(build_group(spec));  // 40320 > hard cap
  spec = GroupSpec::parse("An:7");
  spec.order_cap = 2000;
  CHECK_THROWS(build_group(spec));
}

TEST_CASE("cayley files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "prodlab_z4.txt";
  {
    std::ofstream out(path);
    out << "order 4\n";
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) out << (a + b) % 4 << (b < 3 ? " " : "\n");
    }
  }
  auto g = build_group("cayley:" + path.string());
  CHECK(g->order() == 4);
  CHECK(g->class_count() == 4);
  CHECK(g->abelian());
  const auto bad = dir / "prodlab_bad.txt";
  {
    std::ofstream out(bad);
    out << "order 3\n0 1 2\n1 2 0\n2 1 0\n";
  }
  try {
    build_group("cayley:" + bad.string());
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CayleyFileMalformed);
  }
  // Latin square with identity that is not associative (a loop of order 5).
  const auto loop = dir / "prodlab_loop.txt";
  {
    std::ofstream out(loop);
    out << "order 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
  }
  try {
    build_group("cayley:" + loop.string());
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CayleyFileMalformed);
  }
  auto z23 = abelian_group({2, 3});
  CHECK(z23->order() == 6);
  CHECK(z23->class_count() == 6);
}

TEST_CASE("conjugate_subset") {
  auto a4 = build_group("An:4");
  const Subset a = elems(a4, {"()", "(1 2 3)"});
  const Element s = a4->parse_element("(1 2)(3 4)");
  CHECK(conjugate_subset(a, s) == elems(a4, {"()", "(2 1 4)"}));
  CHECK(conjugate_subset(Subset::singleton(a4, a4->identity()), s).size() == 1);
  for (std::size_t c = 0; c < a4->class_count(); ++c) {
    const auto cls = Subset::conjugacy_class(a4, c);
    for (Element x = 0; x < a4->order(); ++x) CHECK(conjugate_subset(cls, x) == cls);
  }
  auto s5 = build_group("Sn:5");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = Subset::random(s5, 17, seed);
    const Element t = static_cast<Element>(seed * 7 % 120);
    const auto c = conjugate_subset(r, t);
    CHECK(c.size() == r.size());
    CHECK(conjugate_subset(c, s5->inverse(t)) == r);
  }
  CHECK_THROWS(conjugate_subset(a, 1000));
}

TEST_CASE("product_set") {
  auto a5 = build_group("An:5");
  const Subset a = elems(a5, {"()", "(1 2 3 4 5)"});
  CHECK(product_set(a, a) == elems(a5, {"()", "(1 2 3 4 5)", "(1 3 5 2 4)"}));
  const auto full = Subset::full(a5);
  const auto id = Subset::singleton(a5, a5->identity());
  CHECK(product_set(full, id) == full);
  CHECK(product_set(id, id) == id);
  auto s5 = build_group("Sn:5");
  CHECK_THROWS_AS(product_set(a, Subset::full(s5)), Error);
  // Associativity on random triples.
  auto g = build_group("An:6");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = Subset::random(g, 5, 3 * seed), y = Subset::random(g, 6, 3 * seed + 1), z = Subset::random(g, 4, 3 * seed + 2);
    CHECK(product_set(product_set(x, y), z) == product_set(x, product_set(y, z)));
  }
}

TEST_CASE("growth_witness") {
  auto a5 = build_group("An:5");
  const Subset b = elems(a5, {"()", "(1 2 3 4 5)"});
  const Subset a = elems(a5, {"()", "(1 2)(3 4)"});
  auto w = growth_witness(b, a);
  REQUIRE(w.sigma);
  CHECK(w.product_size >= 3);
  CHECK(product_set(b, conjugate_subset(a, *w.sigma)).size() == w.product_size);

  Subset almost = Subset::full(a5);
  almost.erase(7);
  w = growth_witness(almost, a);
  REQUIRE(w.sigma);
  CHECK(w.product_size == 60);

  const Subset id = elems(a5, {"()"});
  const Subset pair = elems(a5, {"()", "(1 3 5)"});
  w = growth_witness(id, pair);
  REQUIRE(w.sigma);
  CHECK(*w.sigma == a5->identity());
  CHECK(w.product_size == 2);

  CHECK_FALSE(growth_witness(Subset::full(a5), a).sigma);
  CHECK_FALSE(growth_witness(b, id).sigma);
  auto a4 = build_group("An:4");
  auto refused = growth_witness(Subset::singleton(a4, 0), Subset::full(a4));
  CHECK_FALSE(refused.sigma);
  CHECK_FALSE(refused.diagnostic.empty());

  // Random simple-group checks, verified by recomputation.
  auto psl = build_group("PSL:2,7");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto bb = Subset::random(psl, 1 + seed * 13, seed);
    const auto aa = Subset::random(psl, 2 + seed, seed + 100);
    const auto r = growth_witness(bb, aa);
    REQUIRE(r.sigma);
    CHECK(product_set(bb, conjugate_subset(aa, *r.sigma)).size() == r.product_size);
    CHECK(r.product_size > bb.size());
  }
}

TEST_CASE("max_skew_product") {
  auto a5 = build_group("An:5");
  const auto id = Subset::singleton(a5, a5->identity());
  auto r = max_skew_product(id, id, Exhaustive{});
  CHECK(r.sigma == a5->identity());
  CHECK(r.size == 1);
  const Subset a = elems(a5, {"()", "(1 2 3 4 5)"});
  r = max_skew_product(a, a, Exhaustive{});
  CHECK(r.size == 4);
  CHECK(product_set(conjugate_subset(a, r.sigma), a).size() == 4);
  const auto cls = Subset::conjugacy_class(a5, 2);
  const auto b = Subset::random(a5, 9, 4);
  const auto expected = product_set(cls, b).size();
  for (Element s = 0; s < 60; s += 11) CHECK(skew_product_size(cls, b, s) == expected);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto x = Subset::random(a5, 6, seed), y = Subset::random(a5, 5, seed + 50);
    const auto ex = max_skew_product(x, y, Exhaustive{});
    const auto sm = max_skew_product(x, y, Sampled{8, seed});
    CHECK(ex.size >= sm.size);
    CHECK(skew_product_size(x, y, sm.sigma) == sm.size);
  }
  Budget tight{100};
  CHECK_THROWS_AS(max_skew_product(a, a, Exhaustive{}, tight), Error);
}

TEST_CASE("subset sources") {
  auto a5 = build_group("An:5");
  CHECK(parse_subset_source(a5, "all").size() == 60);
  CHECK(parse_subset_source(a5, "identity").size() == 1);
  CHECK(parse_subset_source(a5, "class:1") == Subset::conjugacy_class(a5, 1));
  CHECK(parse_subset_source(a5, "random:10:3") == Subset::random(a5, 10, 3));
  CHECK(parse_subset_source(a5, "elements:()|(1 2 3)").size() == 2);
  const auto u = parse_subset_source(a5, "umvirate:1,2:()");
  CHECK(u.size() == 3);
  for (Element x : u.elements()) {
    CHECK(a5->permutation(x)(0) == 0);
    CHECK(a5->permutation(x)(1) == 1);
  }
  CHECK_THROWS(parse_subset_source(a5, "umvirate:1:(1 2)"));
  auto psl = build_group("PSL:2,7");
  CHECK(parse_subset_source(psl, "elements:1,1;0,1|1,0;0,1").size() == 2);
  // -I represents the identity of PSL(2,7).
  CHECK(psl->parse_element("6,0;0,6") == psl->identity());
}
