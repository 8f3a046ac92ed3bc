#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "prodlab/bigint.hpp"
#include "prodlab/permutation.hpp"

namespace prodlab::sym {

/// Integer partition with weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;
  /// Sorts the parts and drops zeros; throws on negative parts.
  explicit Partition(std::vector<int> parts);
  /// "3,2,1"; "" or "0" is the empty partition.
  static Partition parse(std::string_view text);

  int n() const { return n_; }
  int length() const { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const { return parts_; }
  /// 1-based part, 0 beyond the length.
  int part(int i) const { return i >= 1 && i <= length() ? parts_[static_cast<std::size_t>(i - 1)] : 0; }

  Partition conjugate() const;
  /// Hook length of the 1-based cell (i, j).
  int hook(int i, int j) const;
  std::vector<int> hooks() const;
  bool is_hook() const { return length() <= 1 || part(2) <= 1; }

  std::string to_string() const;

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  auto operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// All partitions of n in reverse lexicographic order, (n) first.
std::vector<Partition> partitions_of(int n);

/// n! / prod of hooks.
BigInt dimension_hook(const Partition& lambda);

/// (n-1)! / (prod_i (lambda_i - i)! * prod_i (lambda'_i - i)!), with the
/// factorial of a non-positive integer taken to be 1.
Rational virtual_degree(const Partition& lambda);

/// Character value chi_lambda at the class of the given cycle type, by
/// border-strip removal on beta-sets with memoization.
long long mn_character(const Partition& lambda, const Partition& cycle_type);

/// Size of the S_n class with the given cycle type.
BigInt class_size(const Partition& cycle_type);

int sign(const Partition& cycle_type);

Partition cycle_type(const Permutation& p);

/// Cycle statistics of a permutation of degree n >= 2. sigma[i-1] counts points
/// lying in cycles of length at most i, for i = 1..(longest cycle).
struct CycleStats {
  int n = 0;
  Partition type;
  int fixed_points = 0;
  std::vector<int> sigma;
  /// e[i-1] = (log max(sigma_i,1) - log max(sigma_{i-1},1)) / log n.
  std::vector<double> e;
};

CycleStats cycle_statistics(const Partition& cycle_type);
CycleStats cycle_statistics(const Permutation& p);

struct LsCheck {
  long long abs_chi = 0;
  double bound = 0;
  double exponent = 0;  // e_1/2 + sum_{i>=2} e_i/i
  bool holds = false;
};

/// |chi_lambda(sigma)| against D(lambda)^{e_1/2 + sum_{i>=2} e_i/i} * f!^{1/4}.
LsCheck ls_variant_check(const Partition& lambda, const Partition& cycle_type);

struct ClassEntry {
  Partition type;
  int fixed_points = 0;
  long long chi = 0;
  LsCheck ls;
};

struct PartitionRow {
  Partition lambda;
  BigInt d;
  Rational D;
  bool D_le_d = false;  // D(lambda) <= d(lambda)
  bool d_le_D = false;  // d(lambda) <= D(lambda)
  double log_ratio = 1;  // log d / log D, 1 when D = 1
  double base_case_bound = 0;  // sqrt(D) * n!^{1/4}
  bool base_case = false;  // d <= sqrt(D) * n!^{1/4}
  std::vector<ClassEntry> classes;  // ordered as partitions_of(n)
};

/// Every partition of n (n <= 10) against every class of S_n.
std::vector<PartitionRow> charbound_scan(int n);

struct FixedPointSummary {
  bool any = false;  // some class has at most t fixed points
  long long max_abs_chi = 0;
  Partition argmax;
  double exponent = 0;  // log|chi| / log chi(1); 0 when chi(1) = 1
  bool within_degree = true;  // |chi| <= chi(1) on every admissible class
};

FixedPointSummary fixed_point_summary(const PartitionRow& row, int max_fixed_points);

}  // namespace prodlab::sym
