#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "prodlab/group.hpp"
#include "prodlab/runtime.hpp"

namespace prodlab {

/// Arbitrary subset of a built group, as a membership bitmap.
class Subset {
 public:
  explicit Subset(GroupPtr group);

  static Subset from_elements(GroupPtr group, std::span<const Element> elements);
  static Subset full(GroupPtr group);
  static Subset singleton(GroupPtr group, Element x);
  static Subset conjugacy_class(GroupPtr group, std::size_t index);
  /// size distinct elements drawn uniformly with the given seed.
  static Subset random(GroupPtr group, std::size_t size, std::uint64_t seed);

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  bool same_group(const Subset& other) const { return group_ == other.group_; }

  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(Element x) const { return bits_.test(x); }
  void insert(Element x) { bits_.set(x); }
  void erase(Element x) { bits_.reset(x); }

  std::vector<Element> elements() const;
  const boost::dynamic_bitset<>& bits() const { return bits_; }

  bool operator==(const Subset& other) const { return group_ == other.group_ && bits_ == other.bits_; }

 private:
  GroupPtr group_;
  boost::dynamic_bitset<> bits_;
};

void require_same_group(const Subset& a, const Subset& b);

/// A^s = s^-1 A s.
Subset conjugate_subset(const Subset& a, Element s);
/// A s.
Subset right_translate(const Subset& a, Element s);
/// AB = {ab}.
Subset product_set(const Subset& a, const Subset& b);
/// A_1 A_2 ... A_k.
Subset product_set(std::span<const Subset> sets);
/// |A^s B| without materializing the subset.
std::size_t skew_product_size(const Subset& a, const Subset& b, Element s);

struct GrowthWitness {
  std::optional<Element> sigma;
  std::size_t product_size = 0;
  std::string diagnostic;
};

/// Finds s with |B A^s| > |B| by scanning G in index order. In a simple
/// group such s exists whenever B is proper and |A| >= 2; an empty result
/// explains which precondition failed.
GrowthWitness growth_witness(const Subset& b, const Subset& a);

struct Exhaustive {};
struct Sampled {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};
using ScanStrategy = std::variant<Exhaustive, Sampled>;

struct SkewProduct {
  Element sigma = 0;
  std::size_t size = 0;
};

/// Maximizes |A^s B| over s. Ties resolve to the smallest index (exhaustive)
/// or the earliest draw (sampled).
SkewProduct max_skew_product(const Subset& a, const Subset& b, const ScanStrategy& strategy,
                             const Budget& budget = {});

/// Reads a subset source:
///   all | identity | class:<i> | random:<size>:<seed> |
///   umvirate:<p1,p2,..>:<rep> | elements:<e1>|<e2>|... | <file path>
/// Files hold one element per line; '#' starts a comment.
Subset parse_subset_source(const GroupPtr& group, std::string_view source);

/// Permutations in A_n agreeing with rep on the 0-based points in fixed.
Subset umvirate_subset(const GroupPtr& group, std::span<const int> fixed, const Permutation& rep);

}  // namespace prodlab
