#include <cmath>
#include <functional>
#include <map>

#include "doctest.h"
#include "prodlab/char_table.hpp"
#include "prodlab/sym.hpp"

using namespace prodlab;
using namespace prodlab::sym;

namespace {

// Standard Young tableaux count by removing the largest entry from a corner.
BigInt syt_count(std::vector<int> parts, std::map<std::vector<int>, BigInt>& memo) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  if (parts.empty()) return 1;
  if (auto it = memo.find(parts); it != memo.end()) return it->second;
  BigInt total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const bool corner = i + 1 == parts.size() || parts[i + 1] < parts[i];
    if (!corner) continue;
    auto next = parts;
    --next[i];
    total += syt_count(next, memo);
  }
  memo.emplace(parts, total);
  return total;
}

}  // namespace

TEST_CASE("partition basics") {
  const Partition p = Partition::parse("3,1,1");
  CHECK(p.n() == 5);
  CHECK(p.conjugate() == Partition({3, 1, 1}));
  CHECK(Partition({4, 2, 1}).conjugate() == Partition({3, 2, 1, 1}));
  CHECK(Partition({2, 1}).hooks() == std::vector<int>{3, 1, 1});
  CHECK(partitions_of(5).size() == 7);
  CHECK(partitions_of(10).size() == 42);
  CHECK(partitions_of(14).size() == 135);
  for (int n = 1; n <= 8; ++n)
    for (const auto& l : partitions_of(n)) {
      CHECK(l.conjugate().conjugate() == l);
      BigInt prod = 1;
      for (int h : l.hooks()) {
        CHECK(h >= 1);
        prod *= h;
      }
      CHECK(factorial(static_cast<unsigned>(n)) % prod == 0);
    }
}

TEST_CASE("hook dimensions") {
  CHECK(dimension_hook(Partition({5})) == 1);
  CHECK(dimension_hook(Partition({2, 1})) == 2);
  CHECK(dimension_hook(Partition({2, 2})) == 2);
  std::map<std::vector<int>, BigInt> memo;
  for (int n = 1; n <= 14; ++n) {
    BigInt sum = 0;
    for (const auto& l : partitions_of(n)) {
      const BigInt d = dimension_hook(l);
      if (n <= 10) CHECK(d == syt_count(l.parts(), memo));
      sum += d * d;
    }
    CHECK(sum == factorial(static_cast<unsigned>(n)));
  }
}

TEST_CASE("virtual degrees") {
  CHECK(virtual_degree(Partition({6})) == 1);
  CHECK(virtual_degree(Partition({2, 1})) == 2);
  CHECK(virtual_degree(Partition({2, 2})) == 6);
  // d <= D for every partition, with equality exactly on hooks.
  for (int n = 1; n <= 14; ++n)
    for (const auto& l : partitions_of(n)) {
      const Rational D = virtual_degree(l);
      const Rational d(dimension_hook(l));
      CHECK(d <= D);
      CHECK((d == D) == l.is_hook());
      CHECK(D >= 1);
    }
}

TEST_CASE("murnaghan-nakayama values") {
  CHECK(mn_character(Partition({2, 1}), Partition({3})) == -1);
  CHECK(mn_character(Partition({2, 1}), Partition({2, 1})) == 0);
  CHECK(mn_character(Partition({3, 2}), Partition({1, 1, 1, 1, 1})) == 5);
  for (int n = 1; n <= 8; ++n) {
    const auto parts = partitions_of(n);
    std::vector<int> ones(static_cast<std::size_t>(n), 1);
    const Partition identity_type(ones);
    const BigInt nf = factorial(static_cast<unsigned>(n));
    for (const auto& l : parts) {
      CHECK(BigInt(mn_character(l, identity_type)) == dimension_hook(l));
      std::vector<int> col(static_cast<std::size_t>(n), 1);
      for (const auto& mu : parts) CHECK(mn_character(Partition(col), mu) == sign(mu));
    }
    // Row orthogonality over classes, exact integers.
    if (n <= 7)
      for (const auto& a : parts)
        for (const auto& b : parts) {
          BigInt s = 0;
          for (const auto& mu : parts) s += class_size(mu) * mn_character(a, mu) * mn_character(b, mu);
          CHECK(s == (a == b ? nf : BigInt(0)));
        }
  }
}

TEST_CASE("murnaghan-nakayama matches the numeric table of S_n") {
  for (int n = 2; n <= 6; ++n) {
    auto g = build_group("Sn:" + std::to_string(n));
    const auto table = character_table(g);
    const auto parts = partitions_of(n);
    std::vector<Partition> class_types;
    for (const auto& c : g->classes()) class_types.push_back(cycle_type(g->permutation(c.representative)));
    std::vector<bool> used(table.size(), false);
    for (const auto& l : parts) {
      bool matched = false;
      for (std::size_t r = 0; r < table.size() && !matched; ++r) {
        if (used[r]) continue;
        bool ok = true;
        for (std::size_t c = 0; c < class_types.size() && ok; ++c)
          ok = std::abs(table[r].values[c] - Complex(static_cast<double>(mn_character(l, class_types[c])), 0)) < 1e-8;
        if (ok) used[r] = matched = true;
      }
      CHECK(matched);
    }
  }
}

TEST_CASE("cycle statistics") {
  auto st = cycle_statistics(Permutation::identity(5));
  CHECK(st.fixed_points == 5);
  CHECK(st.e.size() == 1);
  CHECK(st.e[0] == doctest::Approx(1.0));
  st = cycle_statistics(Permutation::parse("(1 2)(3 4 5)", 5));
  CHECK(st.sigma == std::vector<int>{0, 2, 5});
  CHECK(st.e[1] == doctest::Approx(std::log(2.0) / std::log(5.0)));
  CHECK(st.e[1] == doctest::Approx(0.4307).epsilon(1e-4));
  CHECK(st.e[2] == doctest::Approx(1 - st.e[1]));
  st = cycle_statistics(Permutation::parse("(1 2 3 4 5 6)", 6));
  CHECK(st.e.back() == doctest::Approx(1.0));
  for (int n = 2; n <= 10; ++n)
    for (const auto& mu : partitions_of(n)) {
      const auto s = cycle_statistics(mu);
      double total = 0;
      for (double e : s.e) total += e;
      CHECK(std::abs(total - 1.0) < 1e-12);
      CHECK(s.sigma.back() == n);
      for (std::size_t i = 1; i < s.sigma.size(); ++i) CHECK(s.sigma[i] >= s.sigma[i - 1]);
    }
}

TEST_CASE("refined character bound") {
  const auto r = ls_variant_check(Partition({2, 2}), Partition({1, 1, 1, 1}));
  CHECK(r.abs_chi == 2);
  CHECK(r.bound == doctest::Approx(std::sqrt(6.0) * std::pow(24.0, 0.25)));
  CHECK(r.bound == doctest::Approx(5.42).epsilon(1e-3));
  CHECK(r.holds);
  for (const auto& mu : partitions_of(6)) {
    const auto t = ls_variant_check(Partition({6}), mu);
    CHECK(t.abs_chi == 1);
    CHECK(t.holds);
  }
  for (const auto& row : charbound_scan(6))
    for (const auto& e : row.classes)
      if (e.fixed_points >= 1) CHECK(e.ls.holds);
}

TEST_CASE("charbound scan") {
  const auto rows = charbound_scan(5);
  CHECK(rows.size() == 7);
  CHECK(rows.front().lambda == Partition({5}));
  CHECK(rows.front().log_ratio == 1.0);
  for (const auto& row : rows) {
    CHECK(row.d_le_D);
    CHECK(row.D_le_d == row.lambda.is_hook());
    CHECK(row.base_case);
  }
  for (const auto& row : charbound_scan(7)) {
    const auto s = fixed_point_summary(row, 1);
    CHECK(s.any);
    CHECK(s.within_degree);
  }
}

TEST_CASE("restrictions to A_n are irreducible or split in two") {
  for (int n = 3; n <= 7; ++n) {
    auto g = build_group("An:" + std::to_string(n));
    const auto table = character_table(g);
    std::vector<Partition> types;
    for (const auto& c : g->classes()) types.push_back(cycle_type(g->permutation(c.representative)));
    auto matches = [&](const std::vector<Complex>& target, const std::vector<Complex>& row) {
      for (std::size_t c = 0; c < target.size(); ++c)
        if (std::abs(target[c] - row[c]) > 1e-8) return false;
      return true;
    };
    std::size_t splits = 0;
    for (const auto& l : partitions_of(n)) {
      std::vector<Complex> res;
      for (const auto& t : types) res.push_back(Complex(static_cast<double>(mn_character(l, t)), 0));
      bool found = false;
      for (std::size_t r = 0; r < table.size() && !found; ++r) found = matches(res, table[r].values);
      for (std::size_t r = 0; r < table.size() && !found; ++r)
        for (std::size_t s = r + 1; s < table.size() && !found; ++s) {
          std::vector<Complex> sum(res.size());
          for (std::size_t c = 0; c < res.size(); ++c) sum[c] = table[r].values[c] + table[s].values[c];
          if (matches(res, sum)) {
            found = true;
            ++splits;
          }
        }
      CHECK(found);
      // Self-conjugate partitions are exactly the ones that split.
    }
    std::size_t self_conjugate = 0;
    for (const auto& l : partitions_of(n)) self_conjugate += l == l.conjugate();
    CHECK(splits == self_conjugate);
  }
}
