#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "prodlab/group.hpp"
#include "prodlab/runtime.hpp"

namespace prodlab {

using Complex = std::complex<double>;

struct Character {
  int degree = 0;
  std::vector<Complex> values;  // indexed by class
};

/// Irreducible complex characters of a group. Row 0 is the trivial
/// character; the rest are ordered by degree, then by their rounded values.
class CharacterTable {
 public:
  CharacterTable(GroupPtr group, std::vector<Character> irreducibles, double tolerance)
      : group_(std::move(group)), irr_(std::move(irreducibles)), tolerance_(tolerance) {}

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t size() const { return irr_.size(); }
  const Character& operator[](std::size_t i) const { return irr_[i]; }
  const std::vector<Character>& irreducibles() const { return irr_; }
  double tolerance() const { return tolerance_; }

  Complex value(std::size_t chi, Element x) const { return irr_[chi].values[group_->class_of(x)]; }

 private:
  GroupPtr group_;
  std::vector<Character> irr_;
  double tolerance_;
};

struct CharacterTableOptions {
  double tolerance = 1e-9;
  std::uint64_t seed = 0x5eed;
  int max_attempts = 24;
  Budget budget{};
};

/// Burnside-Dixon eigenvector method over the complex numbers: the class
/// algebra structure constants are diagonalized through a random real
/// combination, degrees are snapped to integers and the result is certified
/// against row orthogonality.
CharacterTable character_table(const GroupPtr& group, const CharacterTableOptions& options = {});

/// Sum over irreducibles of degree^-s, optionally skipping the trivial one.
double witten_zeta(const CharacterTable& table, double s, bool include_trivial);

/// Structure constants a[j][i][l] = #{x in C_j : x^-1 g_l in C_i}, where g_l
/// is the representative of class l.
std::vector<std::vector<std::vector<std::uint32_t>>> class_structure_constants(const Group& group);

}  // namespace prodlab
