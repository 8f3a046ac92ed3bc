#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "prodlab/bigint.hpp"
#include "prodlab/subset.hpp"

namespace prodlab {

/// Gamma = sum over classes alpha and a in A, b in B of
/// |alpha ∩ a^-1 A| |alpha^-1 ∩ b^-1 B| / (|alpha| |A| |B|), exactly.
/// Some s then satisfies |A^s B| >= |A||B| / Gamma.
Rational gamma_statistic(const Subset& a, const Subset& b);

struct Concentration {
  Element a = 0;
  std::size_t cls = 0;
  std::size_t count = 0;  // |a^-1 A ∩ alpha|
};

/// Maximizes |a^-1 A ∩ alpha| over a in A and classes alpha; ties go to the
/// smallest a, then the smallest class index.
Concentration class_concentration(const Subset& a);

struct SkewExpectation {
  Rational lhs;  // E_s |A^s B|
  Rational rhs;  // |alpha B| |A ∩ alpha| / |alpha|
  bool holds = false;
};

/// Exhaustive over s; refuses groups above order 2520.
SkewExpectation expected_skew_product_check(const Subset& a, const Subset& b, std::size_t cls, const Budget& budget = {});

struct GlobalityLevel {
  int d = 0;
  Rational ratio;  // max over d-umvirates U of (|A ∩ U| / |U|) / mu(A)
  std::vector<int> points;  // witnessing I, 0-based, increasing
  std::vector<int> images;  // witnessing values on I
  std::size_t intersection = 0;  // |A ∩ U|
  std::size_t umvirate_size = 0;  // |U|
};

struct GlobalityReport {
  std::vector<GlobalityLevel> levels;  // d = 0..d_max
  /// True when ratio_d <= r^d for every level.
  bool is_global(double r) const;
};

/// Exhaustive over all (I, pattern) pairs for each d <= d_max <= n-3.
GlobalityReport globality_profile(const Subset& a, int d_max, const Budget& budget = {});

struct TripleCover {
  Element sigma_i = 0;
  Element sigma_j = 0;
  Element sigma_k = 0;
  /// A transposition was inserted to keep an intermediate factor even.
  bool parity_adjusted = false;
};

struct PermutationTripleCover {
  Permutation sigma_i;
  Permutation sigma_j;
  Permutation sigma_k;
  bool parity_adjusted = false;
};

/// Writes an even permutation sigma = sigma_I sigma_J sigma_K with each
/// sigma_X even and fixing X pointwise, for disjoint 0-based point sets of
/// size >= 2. Throws ConstructionFailed if a step does not apply.
PermutationTripleCover umvirate_triple_cover(const Permutation& sigma, const std::vector<int>& I, const std::vector<int>& J,
                                             const std::vector<int>& K);

/// Group-element form of the above: writes sigma = sigma_I sigma_J sigma_K with sigma_X fixing X pointwise, for
/// disjoint 0-based point sets I, J, K of size >= 2 in A_n. Throws
/// ConstructionFailed if a step of the construction does not apply.
TripleCover umvirate_triple_cover(const Group& alt, Element sigma, const std::vector<int>& I, const std::vector<int>& J,
                                  const std::vector<int>& K);

struct CoverResult {
  bool found = false;
  std::size_t m = 0;
  std::vector<Element> conjugators;
  std::size_t restarts = 0;
};

/// Greedy search for s_1..s_M (M <= m_max) with A^{s_1}...A^{s_M} = G. Each
/// step picks the conjugate maximizing the running product, ties to the
/// smallest index; restart 0 scans all of G, later restarts scan seeded
/// random pools. The returned cover is rechecked from scratch.
CoverResult conjugate_cover_search(const Subset& a, std::size_t m_max, std::uint64_t seed, std::size_t restarts = 32);

/// Recomputes A^{s_1} ... A^{s_M} and compares with G.
bool verify_conjugate_cover(const Subset& a, const std::vector<Element>& conjugators);

}  // namespace prodlab
