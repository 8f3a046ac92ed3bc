#include "prodlab/field.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <string>

#include "prodlab/error.hpp"

namespace prodlab::fq {

bool prime_power(int q, int& p, int& k) {
  if (q < 2) return false;
  int m = q;
  p = 0;
  for (int d = 2; d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      break;
    }
  }
  k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return m == 1;
}

namespace {

// Coefficient digits of a code, least significant first.
std::array<int, 8> digits(int code, int p, int k) {
  std::array<int, 8> d{};
  for (int i = 0; i < k; ++i) {
    d[static_cast<std::size_t>(i)] = code % p;
    code /= p;
  }
  return d;
}

int product_mod(int a, int b, int p, int k, const std::array<int, 8>& modulus) {
  const auto da = digits(a, p, k);
  const auto db = digits(b, p, k);
  std::array<int, 16> prod{};
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) prod[static_cast<std::size_t>(i + j)] += da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)];
  // x^k = -(modulus_{k-1} x^{k-1} + ... + modulus_0)
  for (int deg = 2 * k - 2; deg >= k; --deg) {
    const int c = prod[static_cast<std::size_t>(deg)] % p;
    prod[static_cast<std::size_t>(deg)] = 0;
    if (c == 0) continue;
    for (int i = 0; i < k; ++i) prod[static_cast<std::size_t>(deg - k + i)] -= c * modulus[static_cast<std::size_t>(i)];
  }
  int code = 0;
  for (int i = k - 1; i >= 0; --i) code = code * p + (((prod[static_cast<std::size_t>(i)] % p) + p) % p);
  return code;
}

}  // namespace

Field::Field(int q) : q_(q) {
  if (q > kMaxOrder || !prime_power(q, p_, k_)) {
    throw Error(ErrorKind::InvalidParameters, "field order must be a prime power <= 32, got " + std::to_string(q));
  }
  const auto n = static_cast<std::size_t>(q);
  add_.assign(n * n, 0);
  mul_.assign(n * n, 0);
  neg_.assign(n, 0);
  inv_.assign(n, 0);
  for (int a = 0; a < q; ++a) {
    const auto da = digits(a, p_, k_);
    for (int b = 0; b < q; ++b) {
      const auto db = digits(b, p_, k_);
      int code = 0;
      for (int i = k_ - 1; i >= 0; --i) code = code * p_ + (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p_;
      add_[static_cast<std::size_t>(a * q + b)] = static_cast<Elem>(code);
      if (code == 0) neg_[static_cast<std::size_t>(a)] = static_cast<Elem>(b);
    }
  }
  // Smallest monic modulus of degree k without zero divisors.
  int modulus_count = 1;
  for (int i = 0; i < k_; ++i) modulus_count *= p_;
  bool found = false;
  for (int m = 0; m < modulus_count && !found; ++m) {
    const auto modulus = digits(m, p_, k_);
    bool ok = true;
    for (int a = 1; a < q && ok; ++a)
      for (int b = 1; b < q && ok; ++b) ok = product_mod(a, b, p_, k_, modulus) != 0;
    if (!ok) continue;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) mul_[static_cast<std::size_t>(a * q + b)] = static_cast<Elem>(product_mod(a, b, p_, k_, modulus));
    found = true;
  }
  if (!found) throw Error(ErrorKind::InvalidParameters, "no irreducible modulus found");
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[static_cast<std::size_t>(a * q + b)] == 1) inv_[static_cast<std::size_t>(a)] = static_cast<Elem>(b);

  // Field axioms, exhaustively.
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c) {
        const Elem x = static_cast<Elem>(a), y = static_cast<Elem>(b), z = static_cast<Elem>(c);
        if (mul(mul(x, y), z) != mul(x, mul(y, z)) || mul(x, add(y, z)) != add(mul(x, y), mul(x, z)) ||
            add(add(x, y), z) != add(x, add(y, z)))
          throw Error(ErrorKind::InvalidParameters, "field tables failed the axiom check for q=" + std::to_string(q));
      }

  for (int g = 1; g < q; ++g) {
    int order = 1;
    Elem x = static_cast<Elem>(g);
    while (x != 1) {
      x = mul(x, static_cast<Elem>(g));
      ++order;
    }
    if (order == q - 1) {
      primitive_ = static_cast<Elem>(g);
      break;
    }
  }
}

const Field& Field::get(int q) {
  static std::mutex mutex;
  static std::array<std::unique_ptr<Field>, kMaxOrder + 1> cache;
  if (q < 2 || q > kMaxOrder)
    throw Error(ErrorKind::InvalidParameters, "field order must be a prime power <= 32, got " + std::to_string(q));
  std::lock_guard lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(q)];
  if (!slot) slot.reset(new Field(q));
  return *slot;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::SingularInput, "inverse of zero");
  return inv_[a];
}

Elem Field::pow(Elem a, unsigned e) const {
  Elem r = 1;
  while (e) {
    if (e & 1u) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::from_int(long long v) const {
  long long r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

}  // namespace prodlab::fq
