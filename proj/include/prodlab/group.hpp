#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "prodlab/bigint.hpp"
#include "prodlab/field.hpp"
#include "prodlab/fq_matrix.hpp"
#include "prodlab/permutation.hpp"

namespace prodlab {

enum class Family { SymN, AltN, SLnq, PSLnq, CayleyFile };

/// Parsed group description: "Sn:5", "An:6", "SL:3,2", "PSL:2,7",
/// "cayley:<path>".
struct GroupSpec {
  static constexpr std::size_t kDefaultOrderCap = 10'080;
  static constexpr std::size_t kHardOrderCap = 20'000;

  Family family = Family::SymN;
  int n = 0;
  int q = 0;
  std::string path;
  std::size_t order_cap = kDefaultOrderCap;

  static GroupSpec parse(std::string_view text);
  std::string to_string() const;

  bool is_permutation_family() const { return family == Family::SymN || family == Family::AltN; }
  bool is_matrix_family() const { return family == Family::SLnq || family == Family::PSLnq; }
};

/// Order from the family formula; not defined for Cayley files.
BigInt family_order(const GroupSpec& spec);

using Element = std::uint32_t;

struct ConjugacyClassInfo {
  Element representative = 0;
  std::size_t size = 0;
  boost::dynamic_bitset<> members;
  std::size_t inverse_class = 0;
};

/// A finite group with indexed elements. Elements are numbered by the
/// sorted order of their canonical forms, so indices are stable for a given
/// spec. Class 0 is always the identity class; the remaining classes are
/// ordered by smallest member index, which is also the representative.
class Group {
 public:
  /// Groups whose order is at most this get a full multiplication table.
  static constexpr std::size_t kTableThreshold = 2'000;

  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;

  const GroupSpec& spec() const { return spec_; }
  std::string name() const { return name_; }
  std::size_t order() const { return order_; }
  Element identity() const { return identity_; }

  Element multiply(Element a, Element b) const;
  Element inverse(Element a) const { return inverse_[a]; }
  /// by^-1 * x * by
  Element conjugate(Element x, Element by) const { return multiply(multiply(inverse_[by], x), by); }

  const std::vector<ConjugacyClassInfo>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t class_of(Element x) const { return class_of_[x]; }
  const std::vector<Element>& generators() const { return generators_; }

  /// Permutation degree or matrix dimension; 0 for Cayley tables.
  int degree() const { return degree_; }
  const fq::Field* field() const { return field_; }
  bool has_table() const { return !table_.empty(); }
  bool abelian() const;

  std::span<const std::uint8_t> form(Element x) const {
    return {forms_.data() + static_cast<std::size_t>(x) * width_, width_};
  }

  /// Index of a canonical form (PSL forms are normalized first).
  std::optional<Element> find(std::span<const std::uint8_t> form) const;

  Permutation permutation(Element x) const;
  fq::Matrix matrix(Element x) const;

  std::string format(Element x) const;
  Element parse_element(std::string_view text) const;

 private:
  Group() = default;
  friend class GroupBuilder;

  enum class Kind { Permutation, Matrix, ProjectiveMatrix, Table };

  void multiply_forms(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const;
  void normalize(std::uint8_t* form) const;
  std::uint64_t pack(const std::uint8_t* form) const;

  GroupSpec spec_;
  std::string name_;
  Kind kind_ = Kind::Table;
  std::size_t order_ = 0;
  std::size_t width_ = 0;
  int degree_ = 0;
  const fq::Field* field_ = nullptr;
  std::vector<fq::Elem> scalars_;  // central scalars for PSL normalization
  Element identity_ = 0;
  std::vector<std::uint8_t> forms_;
  std::unordered_map<std::uint64_t, Element> index_;
  std::vector<std::uint16_t> table_;
  std::vector<Element> inverse_;
  std::vector<Element> generators_;
  std::vector<ConjugacyClassInfo> classes_;
  std::vector<std::uint32_t> class_of_;
};

using GroupPtr = std::shared_ptr<const Group>;

GroupPtr build_group(const GroupSpec& spec);
GroupPtr build_group(std::string_view spec);

/// Group from an explicit multiplication table (row a, column b holds a*b).
/// Used for Cayley files; validates the group axioms.
GroupPtr group_from_table(const std::vector<std::vector<Element>>& table, std::string name);

/// Cyclic product Z/m1 x ... x Z/mk as a Cayley-table group.
GroupPtr abelian_group(const std::vector<int>& moduli);

}  // namespace prodlab
