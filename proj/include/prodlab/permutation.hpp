#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace prodlab {

/// Permutation of {0..n-1} stored as its image array. Products are read
/// left to right: (a * b)(i) = b(a(i)), so a is applied first. Text form is
/// 1-based cycle notation, "()" for the identity.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint8_t> images);

  static Permutation identity(int n);
  static Permutation parse(std::string_view cycles, int n);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint8_t>& images() const { return img_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool operator==(const Permutation& rhs) const { return img_ == rhs.img_; }
  bool operator!=(const Permutation& rhs) const { return img_ != rhs.img_; }

  bool even() const;
  int fixed_points() const;
  /// Cycle lengths in weakly decreasing order, fixed points included.
  std::vector<int> cycle_type() const;

  std::string to_string() const;

 private:
  std::vector<std::uint8_t> img_;
};

/// Cycle type of an image array without constructing a Permutation.
std::vector<int> cycle_type_of(const std::uint8_t* images, int n);

}  // namespace prodlab
