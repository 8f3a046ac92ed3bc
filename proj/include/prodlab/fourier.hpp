#pragma once

#include <optional>
#include <span>
#include <vector>

#include "prodlab/char_table.hpp"
#include "prodlab/subset.hpp"

namespace prodlab {

/// Complex-valued function on the elements of a group. Norms and inner
/// products use the normalized counting measure.
class GroupFunction {
 public:
  explicit GroupFunction(GroupPtr group);
  GroupFunction(GroupPtr group, std::vector<Complex> values);

  static GroupFunction constant(GroupPtr group, Complex c);
  /// Class function of irreducible chi of the table.
  static GroupFunction character(const CharacterTable& table, std::size_t chi);
  /// Independent real and imaginary parts uniform in [-1, 1].
  static GroupFunction random(GroupPtr group, std::uint64_t seed);

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }
  Complex operator[](Element x) const { return values_[x]; }
  Complex& operator[](Element x) { return values_[x]; }

  Complex mean() const;
  double norm2_sq() const;
  double norm2() const;
  double linf() const;
  Complex inner(const GroupFunction& other) const;
  bool is_density(double tolerance = 1e-9) const;

  /// f^s(t) = f(t s).
  GroupFunction right_shift(Element s) const;

  GroupFunction operator+(const GroupFunction& o) const;
  GroupFunction operator-(const GroupFunction& o) const;
  GroupFunction scaled(Complex c) const;

 private:
  GroupPtr group_;
  std::vector<Complex> values_;
};

/// |G|/|A| on A and 0 elsewhere.
GroupFunction normalized_indicator(const Subset& a);

/// f*g(x) = E_y f(y) g(y^-1 x), evaluated directly in O(|G|^2).
GroupFunction convolve(const GroupFunction& f, const GroupFunction& g);

/// f*h where h is the normalized indicator of a; O(|G||A|).
GroupFunction convolve_indicator(const GroupFunction& f, const Subset& a);

/// Isotypic component chi(1) (f * chi).
GroupFunction project(const GroupFunction& f, const CharacterTable& table, std::size_t chi);
/// All isotypic components, sharing one pass over G x G.
std::vector<GroupFunction> project_all(const GroupFunction& f, const CharacterTable& table);

/// Number of pairs (a, b) in A x A with a^-1 b in each class.
std::vector<std::size_t> quotient_class_histogram(const Subset& a);

/// E_{a,b in A} chi(a^-1 b), real after the imaginary residue check.
double mean_character_on_quotients(const Subset& a, const CharacterTable& table, std::size_t chi);
/// ||f^{=chi}||_2^2 = chi(1) E_{a,b in A} chi(a^-1 b) for the normalized indicator f of A.
double projection_norm_sq(const Subset& a, const CharacterTable& table, std::size_t chi);
std::vector<double> projection_norms_sq(const Subset& a, const CharacterTable& table);

/// Sum over chi of prod_i ||f_i^{=chi}||^2 / chi(1)^{2m}, for m+1 sets; each
/// averaged shift contributes one factor chi(1)^-2.
double frobenius_rhs(std::span<const Subset> sets, int m, const CharacterTable& table);

struct Estimate {
  double value = 0;
  double std_error = 0;
  std::size_t samples = 0;
};

/// E over shifts of ||f_1^{s_1} * ... * f_m^{s_m} * f_{m+1}||_2^2. Exhaustive
/// is exact (m = 1, |G| <= 720); Sampled returns the sample mean and its
/// standard error.
Estimate frobenius_lhs(std::span<const Subset> sets, int m, const ScanStrategy& mode, const Budget& budget = {});

/// Density of f_1^{s_1} * ... * f_k^{s_k}; supported on A_1 s_1^-1 ... A_k s_k^-1.
GroupFunction shifted_convolution(std::span<const Subset> sets, std::span<const Element> shifts);

/// ||f_1^{s_1} * ... * f_k^{s_k} - 1||_inf. When the result is below 1/2 the
/// translated product is checked to be all of G (throws otherwise).
double linf_mixing_distance(std::span<const Subset> sets, std::span<const Element> shifts);

/// Conjugating elements t_i with A_1^{t_1} ... A_k^{t_k} a two-sided translate
/// of A_1 s_1^-1 ... A_k s_k^-1: t_1 = e, t_{i+1} = s_i t_i.
std::vector<Element> shifts_to_conjugators(const Group& g, std::span<const Element> shifts);

struct CharacterMargin {
  std::size_t set = 0;
  std::size_t chi = 0;
  int degree = 0;
  double value = 0;  // |E_{a,b} chi(a^-1 b)|
  double bound = 0;  // 2 chi(1)^{1-eps}
  bool holds = false;
};

struct CriterionReport {
  int m = 0;
  double eps = 0;
  std::vector<CharacterMargin> margins;  // nontrivial characters only
  std::vector<CharacterMargin> trivial;  // reported separately
  bool hypothesis = false;
  std::vector<CharacterMargin> violations;
  double t = 0;  // m eps / 2 - 1
  std::optional<double> zeta_t;  // nontrivial part of zeta at t when t > 0
  double zeta_threshold = 0;  // 2^{-m/2-1}
  bool zeta_condition = false;
  double expected_linf_bound = 0;  // sum_{chi != 1} chi(1)^{1-m} prod ||f_i^{=chi}||_2
  std::size_t tuples_tried = 0;
  bool exhaustive = false;
  std::optional<std::vector<Element>> shifts;
  double witness_linf = 0;
  std::vector<Element> conjugators;
  bool covered = false;
};

/// Checks the character hypothesis for every set and searches shift tuples
/// with L-infinity distance below 1/2. A single set is reused m times.
CriterionReport criterion_check(std::span<const Subset> sets, const CharacterTable& table, double eps, int m,
                                const ScanStrategy& shift_search, const Budget& budget = {});

}  // namespace prodlab
