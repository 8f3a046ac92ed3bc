#include <map>

#include "doctest.h"
#include "prodlab/error.hpp"
#include "prodlab/fq_additive.hpp"

using namespace prodlab;
using namespace prodlab::fq;

namespace {

CodeSet random_set(std::size_t universe, std::size_t size, std::uint64_t seed) {
  Rng rng(seed);
  CodeSet out;
  for (auto x : rng.sample(universe, size)) out.push_back(static_cast<Code>(x));
  return out;
}

BigInt energy_oracle(const AdditiveGroup& g, const std::vector<CodeSet>& sets) {
  // Direct enumeration of (x_1, x_1', ..., x_k, x_k').
  std::uint64_t count = 0;
  std::vector<std::size_t> idx(2 * sets.size(), 0);
  while (true) {
    Code a = 0, b = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      a = g.add(a, sets[i][idx[2 * i]]);
      b = g.add(b, sets[i][idx[2 * i + 1]]);
    }
    count += a == b;
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] == sets[p / 2].size()) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  return count;
}

}  // namespace

TEST_CASE("closed-form counts") {
  CHECK(count_injections(1, 2, 2) == 3);
  CHECK(count_subspaces(1, 2, 2) == 3);
  CHECK(count_subspaces(2, 4, 2) == 35);
  CHECK(count_rank(1, 2, 2) == 9);
  CHECK(count_rank(0, 3, 5) == 1);
  CHECK(count_rank(2, 2, 3) == 48);
  CHECK_THROWS_AS(count_rank(3, 2, 2), Error);
  CHECK_THROWS_AS(count_injections(3, 2, 2), Error);
  for (int q : {2, 3, 4, 5, 7, 8, 9})
    for (int n = 1; n <= 5; ++n)
      for (int r = 0; r <= n; ++r) {
        CHECK(rank_bounds(r, n, q).holds);
        CHECK(injection_bounds(r, n, q).holds);
        CHECK(subspace_bounds(r, n, q).holds);
      }
}

TEST_CASE("rank census matches the closed form") {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}, {2, 4}, {2, 9}}) {
    MatrixSpace space(Field::get(q), n);
    const auto census = rank_census(space);
    for (int r = 0; r <= n; ++r) CHECK(census[static_cast<std::size_t>(r)] == count_rank(r, n, q));
  }
}

TEST_CASE("matrix space arithmetic") {
  for (int q : {2, 3, 4, 9}) {
    MatrixSpace space(Field::get(q), 2);
    Rng rng(q);
    for (int i = 0; i < 200; ++i) {
      const auto a = static_cast<Code>(rng.below(space.size()));
      const auto b = static_cast<Code>(rng.below(space.size()));
      CHECK(space.matrix(space.add(a, b)) == space.matrix(a) + space.matrix(b));
      CHECK(space.add(a, space.neg(a)) == 0);
      CHECK(space.code(space.matrix(a)) == a);
    }
  }
  CHECK_THROWS_AS(MatrixSpace(Field::get(16), 2), Error);
  CHECK_THROWS_AS(MatrixSpace(Field::get(2), 5), Error);
}

TEST_CASE("rank-sum counts") {
  MatrixSpace one(Field::get(2), 1);
  const int r11[] = {1, 1};
  CHECK(nsum_bruteforce(one, r11, 0) == 1);
  CHECK(nsum_bruteforce(one, r11, 1) == 0);
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    MatrixSpace space(Field::get(q), n);
    for (int r = 0; r <= n; ++r)
      for (int s = 0; s <= n; ++s) {
        CHECK(nsum_conservation(space, r, s).holds);
        for (int t = 0; t <= n; ++t) {
          const int rs[] = {r, s}, sr[] = {s, r};
          const BigInt v = nsum_bruteforce(space, rs, t);
          CHECK(v == nsum_bruteforce(space, sr, t));
          CHECK(v == nsum_bruteforce(space, rs, rank_representative(space, t, Representative::RandomConjugate, 17 + t)));
          if (t < std::abs(r - s) || t > r + s) CHECK(v == 0);
        }
      }
    // k = 3 symmetry, representative independence and the split over rank(a1 + a2).
    for (int t = 0; t <= n; ++t) {
      const int a[] = {n, n - 1, n}, b[] = {n, n, n - 1};
      const BigInt v = nsum_bruteforce(space, a, t);
      CHECK(v == nsum_bruteforce(space, b, t));
      CHECK(v == nsum_bruteforce(space, a, rank_representative(space, t, Representative::RandomConjugate, 5)));
      BigInt split = 0;
      for (int s = 0; s <= n; ++s) {
        const int p[] = {a[0], a[1]}, q2[] = {a[2], s};
        split += nsum_bruteforce(space, p, s) * nsum_bruteforce(space, q2, t);
      }
      CHECK(v == split);
    }
  }
  // The histogram route for k >= 4 against nested pairs.
  MatrixSpace space(Field::get(2), 2);
  for (int t = 0; t <= 2; ++t) {
    const int four[] = {1, 2, 1, 2};
    BigInt nested = 0;
    for (int s = 0; s <= 2; ++s)
      for (int u = 0; u <= 2; ++u) {
        const int p1[] = {1, 2}, p2[] = {1, 2}, p3[] = {s, u};
        nested += nsum_bruteforce(space, p1, s) * nsum_bruteforce(space, p2, u) * nsum_bruteforce(space, p3, t);
      }
    CHECK(nsum_bruteforce(space, four, t) == nested);
  }
  CHECK_THROWS_AS(nsum_bruteforce(MatrixSpace(Field::get(3), 4), r11, 0), Error);
}

TEST_CASE("k = 3 ratio scan") {
  MatrixSpace space(Field::get(2), 2);
  const auto scan = nsum_ratio_scan(space);
  CHECK(scan.r_min == 2);
  CHECK(scan.k3.size() == 3);
  CHECK(scan.max_ratio > 0);
  CHECK(scan.max_ratio <= 100);
  for (const auto& row : scan.k2)
    if (row.vanishing) CHECK(row.count == 0);
  MatrixSpace s3(Field::get(2), 3);
  const auto scan3 = nsum_ratio_scan(s3);
  CHECK(scan3.k3.size() == 8 * 4);
  CHECK(scan3.max_ratio <= 100);
}

TEST_CASE("quadric series bound") {
  const auto r = quadric_series_bound(0, 3, -1, 0, 0, 0, 2);
  CHECK(r.sum == doctest::Approx(1 + 0.5 + 1.0 / 16 + 1.0 / 512));
  CHECK(r.bound == doctest::Approx(4));
  CHECK(r.holds);
  CHECK(quadric_series_bound(3, 0, -1, 0, 0, 0, 2).sum == 0);
  const auto one = quadric_series_bound(2, 2, -1, 0, 0, -4, 3);
  CHECK(one.holds);
  CHECK_THROWS_AS(quadric_series_bound(0, 3, -1, 0, 0, -1, 2), Error);
  CHECK_THROWS_AS(quadric_series_bound(0, 3, 1, 0, 0, 100, 2), Error);
}

TEST_CASE("additive energy and sumsets") {
  AdditiveGroup z6({2, 3});
  std::vector<CodeSet> whole(3, CodeSet{0, 1, 2, 3, 4, 5});
  CHECK(additive_energy(z6, whole) == 7776);  // 6^5
  CHECK(sumset_energy_check(z6, whole).sumset == 6);
  CHECK(sumset_energy_check(z6, whole).lower_bound == 6);
  CHECK(additive_energy(z6, {{0}, {0}}) == 1);
  CHECK(sumset_energy_check(z6, {{3}, {4}}).holds);
  for (int q : {2, 3}) {
    MatrixSpace space(Field::get(q), 2);
    const auto g = AdditiveGroup::of_matrices(space);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const std::size_t k = 2 + seed % 2;
      std::vector<CodeSet> sets;
      for (std::size_t i = 0; i < k; ++i) sets.push_back(random_set(space.size(), 2 + (seed * 7 + i * 3) % (q == 2 ? 10 : 12), seed * 10 + i));
      CHECK(additive_energy(g, sets) == energy_oracle(g, sets));
      CHECK(sumset_energy_check(g, sets).holds);
    }
  }
  CHECK_THROWS_AS(additive_energy(z6, {{1}}), Error);
  CHECK_THROWS_AS(additive_energy(z6, {{1}, {}}), Error);
}

TEST_CASE("U_n and T_n") {
  for (int q : {2, 3}) {
    const Field& f = Field::get(q);
    Rng rng(q);
    for (int n : {1, 2}) {
      MatrixSpace space(f, n);
      for (int i = 0; i < 30; ++i) {
        const Matrix g1 = random_invertible(f, n, rng), h1 = random_invertible(f, n, rng);
        const Matrix g2 = random_invertible(f, n, rng), h2 = random_invertible(f, n, rng);
        const Matrix a = space.matrix(static_cast<Code>(rng.below(space.size())));
        CHECK(un_tn_block_check(g1, h1, a));
        CHECK(un_tn_action(g1, h1, a).rank() == a.rank());
        CHECK(un_tn_action(g1 * g2, h1 * h2, a) == un_tn_action(g2, h2, un_tn_action(g1, h1, a)));
        CHECK(graph_matrix_membership(un_element(a), Graph::Upsilon));
      }
      const Matrix id = Matrix::identity(f, n);
      const Matrix a = space.matrix(5 % space.size());
      CHECK(un_tn_action(id, id, a) == a);
      CHECK_THROWS_AS(un_tn_action(Matrix::zero(f, n), id, a), Error);
    }
  }
}

TEST_CASE("graph patterns") {
  const Field& f = Field::get(3);
  for (int n : {1, 2, 3}) {
    const Matrix id = Matrix::identity(f, 2 * n + 1);
    for (Graph g : {Graph::Alpha, Graph::Kappa, Graph::Upsilon}) CHECK(graph_matrix_membership(id, g));
  }
  Matrix m = Matrix::identity(f, 5);
  m.at(1, 2) = 2;  // 1-based (2,3)
  CHECK_FALSE(graph_matrix_membership(m, Graph::Alpha));
  CHECK(graph_matrix_membership(m, Graph::Kappa));
  CHECK_FALSE(graph_matrix_membership(m, Graph::Upsilon));
  Matrix a = Matrix::identity(f, 5);
  a.at(0, 3) = 1;  // (1,4) is in alpha and upsilon
  CHECK(graph_matrix_membership(a, Graph::Alpha));
  CHECK_FALSE(graph_matrix_membership(a, Graph::Kappa));
  CHECK(graph_matrix_membership(a, Graph::Upsilon));
  CHECK_FALSE(graph_edge(Graph::Alpha, 2, 3, 2));
  CHECK_THROWS_AS(graph_matrix_membership(Matrix::identity(f, 4), Graph::Alpha), Error);
}

TEST_CASE("AKBLCM solver") {
  for (auto [size, q] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {5, 3}, {7, 2}, {3, 4}, {9, 9}, {7, 5}}) {
    const Field& f = Field::get(q);
    Rng rng(static_cast<std::uint64_t>(size * 100 + q));
    const Matrix id = Matrix::identity(f, size);
    const auto s = akblcm_solve(id);
    CHECK(s.A * s.K * s.B * s.L * s.C * s.M == id);
    for (int i = 0; i < 40; ++i) {
      const Matrix T = random_unipotent(f, size, rng);
      const auto r = akblcm_solve(T);
      CHECK(r.A * r.K * r.B * r.L * r.C * r.M == T);
      CHECK(graph_matrix_membership(r.A, Graph::Alpha));
      CHECK(graph_matrix_membership(r.B, Graph::Alpha));
      CHECK(graph_matrix_membership(r.C, Graph::Alpha));
      CHECK(graph_matrix_membership(r.K, Graph::Kappa));
      CHECK(graph_matrix_membership(r.L, Graph::Kappa));
      CHECK(graph_matrix_membership(r.M, Graph::Kappa));
    }
  }
  CHECK(cm_cube_covers_unipotent(Field::get(2), 1));
  CHECK(cm_cube_covers_unipotent(Field::get(3), 1));
  Matrix bad = Matrix::identity(Field::get(2), 3);
  bad.at(2, 0) = 1;
  CHECK_THROWS_AS(akblcm_solve(bad), Error);
}

TEST_CASE("automorphism growth search") {
  MatrixSpace space(Field::get(3), 2);
  CHECK(invariant_subgroups_trivial(space));
  CHECK(invariant_subgroups_trivial(MatrixSpace(Field::get(4), 2)));
  CodeSet all(space.size());
  for (Code c = 0; c < space.size(); ++c) all[c] = c;
  const auto full = automorphism_growth_search(space, {all, all}, 1);
  CHECK(full.filling);
  CHECK(full.coset_subgroup == space.size());
  const auto points = automorphism_growth_search(space, {{1}, {2}, {7}}, 1);
  CHECK(points.sumset == 1);
  CHECK_FALSE(points.growth);
  CHECK(points.filling);
  const auto two = automorphism_growth_search(space, {{1}, {2}}, 1);
  CHECK(two.growth);
  // |X| = 3^(0.9 * 4) rounded up.
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    std::vector<CodeSet> sets;
    for (int i = 0; i < 4; ++i) sets.push_back(random_set(space.size(), 52, seed * 10 + i));
    const auto r = automorphism_growth_search(space, sets, seed);
    CHECK((r.growth || r.filling));
  }
}

TEST_CASE("dilate cover search") {
  MatrixSpace f7(Field::get(7), 1);
  const auto r = dilate_cover_search(f7, {{1, 2, 3, 4, 5, 6}}, 3, 1);
  REQUIRE(r.found);
  CHECK(r.mu <= 3);
  CHECK(verify_dilate_cover(f7, {{1, 2, 3, 4, 5, 6}}, r.pairs));
  MatrixSpace m22(Field::get(2), 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<CodeSet> sets{random_set(16, 13, seed), random_set(16, 14, seed + 50)};
    const auto c = dilate_cover_search(m22, sets, 16, seed);
    REQUIRE(c.found);
    CHECK(c.mu <= 16);
    CHECK(verify_dilate_cover(m22, sets, c.pairs));
  }
  CodeSet all(16);
  for (Code c = 0; c < 16; ++c) all[c] = c;
  const auto one = dilate_cover_search(m22, {all}, 4, 0);
  CHECK(one.mu == 1);
  CHECK(one.pairs[0].g == Matrix::identity(Field::get(2), 2));
  // Two dilates of {0} never cover.
  CHECK_FALSE(dilate_cover_search(m22, {{0}}, 3, 0).found);
}
