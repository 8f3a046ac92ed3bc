#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace prodlab::fq {

using Elem = std::uint8_t;

/// Finite field of prime power order q <= 32. Elements are codes
/// 0..q-1 holding the coefficients of a polynomial over F_p in base p,
/// so 0 and 1 are the additive and multiplicative identities and the
/// prime subfield is {0..p-1}.
class Field {
 public:
  static constexpr int kMaxOrder = 32;

  /// Shared immutable instance; throws InvalidParameters unless q is a
  /// prime power in [2, 32].
  static const Field& get(int q);

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return k_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, unsigned e) const;

  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(long long v) const;

  /// Generator of the multiplicative group.
  Elem primitive() const { return primitive_; }

  const std::vector<Elem>& add_table() const { return add_; }

 private:
  explicit Field(int q);

  int q_;
  int p_;
  int k_;
  Elem primitive_ = 1;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
};

/// True when q is a prime power; fills p and k.
bool prime_power(int q, int& p, int& k);

}  // namespace prodlab::fq
