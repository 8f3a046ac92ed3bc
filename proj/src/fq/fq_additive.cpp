#include "prodlab/fq_additive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "prodlab/error.hpp"

namespace prodlab::fq {

namespace {

std::size_t int_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_field_size(const Field& field) {
  if (field.order() > kMaxAdditiveField) throw Error(ErrorKind::InvalidParameters, "matrix spaces are limited to q <= 9");
}

int checked_q(int q) {
  int p = 0, k = 0;
  if (!prime_power(q, p, k)) throw Error(ErrorKind::InvalidParameters, "q must be a prime power");
  return q;
}

}  // namespace

MatrixSpace::MatrixSpace(const Field& field, int n) : field_(&field), n_(n) {
  require_field_size(field);
  if (n < 1) throw Error(ErrorKind::InvalidParameters, "matrix size must be positive");
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  long double approx = std::pow(static_cast<long double>(field.order()), static_cast<long double>(cells));
  if (approx > static_cast<long double>(kMaxSize))
    throw Error(ErrorKind::BudgetExceeded, "Mat(" + std::to_string(n) + "," + std::to_string(field.order()) + ") is too large to enumerate");
  size_ = int_pow(static_cast<std::size_t>(field.order()), cells);

  const int p = field.characteristic();
  const int digits = static_cast<int>(cells) * field.degree();
  int c = 1;
  while (int_pow(static_cast<std::size_t>(p), static_cast<std::size_t>(c + 1)) <= 256) ++c;
  c = std::min(c, digits);
  chunk_radix_ = static_cast<int>(int_pow(static_cast<std::size_t>(p), static_cast<std::size_t>(c)));
  chunks_ = (digits + c - 1) / c;
  const auto R = static_cast<std::size_t>(chunk_radix_);
  chunk_add_.resize(R * R);
  chunk_neg_.resize(R);
  for (std::size_t a = 0; a < R; ++a) {
    std::size_t neg = 0;
    for (std::size_t b = 0; b < R; ++b) {
      std::size_t x = a, y = b, out = 0, w = 1;
      for (int d = 0; d < c; ++d) {
        out += ((x % p + y % p) % p) * w;
        x /= p;
        y /= p;
        w *= p;
      }
      chunk_add_[a * R + b] = static_cast<std::uint16_t>(out);
    }
    std::size_t x = a, w = 1;
    for (int d = 0; d < c; ++d) {
      neg += ((p - static_cast<int>(x % p)) % p) * w;
      x /= p;
      w *= p;
    }
    chunk_neg_[a] = static_cast<std::uint16_t>(neg);
  }

  rank_.resize(size_);
  parallel_for((size_ + 1023) / 1024, [&](std::size_t b) {
    std::vector<Elem> e(cells);
    for (std::size_t x = b * 1024; x < std::min(size_, (b + 1) * 1024); ++x) {
      std::size_t v = x;
      for (std::size_t i = 0; i < cells; ++i) {
        e[i] = static_cast<Elem>(v % static_cast<std::size_t>(field.order()));
        v /= static_cast<std::size_t>(field.order());
      }
      rank_[x] = static_cast<std::uint8_t>(rank_of(field, e, n, n));
    }
  });
  by_rank_.assign(static_cast<std::size_t>(n) + 1, {});
  for (std::size_t x = 0; x < size_; ++x) by_rank_[rank_[x]].push_back(static_cast<Code>(x));
}

Code MatrixSpace::add(Code a, Code b) const {
  if (field_->characteristic() == 2) return a ^ b;
  const auto R = static_cast<Code>(chunk_radix_);
  Code out = 0, w = 1;
  for (int i = 0; i < chunks_; ++i) {
    out += chunk_add_[(a % R) * R + (b % R)] * w;
    a /= R;
    b /= R;
    w *= R;
  }
  return out;
}

Code MatrixSpace::neg(Code a) const {
  if (field_->characteristic() == 2) return a;
  const auto R = static_cast<Code>(chunk_radix_);
  Code out = 0, w = 1;
  for (int i = 0; i < chunks_; ++i) {
    out += chunk_neg_[a % R] * w;
    a /= R;
    w *= R;
  }
  return out;
}

Matrix MatrixSpace::matrix(Code a) const {
  if (a >= size_) throw Error(ErrorKind::InvalidParameters, "matrix code out of range");
  Matrix m(*field_, n_, n_);
  auto& e = m.entries();
  for (auto& x : e) {
    x = static_cast<Elem>(a % static_cast<Code>(field_->order()));
    a /= static_cast<Code>(field_->order());
  }
  return m;
}

Code MatrixSpace::code(const Matrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw Error(ErrorKind::SizeMismatch, "matrix does not belong to this space");
  Code out = 0, w = 1;
  for (Elem x : m.entries()) {
    out += x * w;
    w *= static_cast<Code>(field_->order());
  }
  return out;
}

BigInt count_injections(int d, int D, int q) {
  checked_q(q);
  if (d < 0 || d > D) throw Error(ErrorKind::InvalidRange, "need 0 <= d <= D");
  BigInt out = 1;
  const BigInt qD = power(q, static_cast<unsigned>(D));
  for (int i = 0; i < d; ++i) out *= qD - power(q, static_cast<unsigned>(i));
  return out;
}

BigInt count_subspaces(int d, int D, int q) {
  checked_q(q);
  if (d < 0 || d > D) throw Error(ErrorKind::InvalidRange, "need 0 <= d <= D");
  BigInt num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    num *= power(q, static_cast<unsigned>(D - i)) - 1;
    den *= power(q, static_cast<unsigned>(d - i)) - 1;
  }
  return num / den;
}

BigInt count_rank(int r, int n, int q) {
  if (r < 0 || r > n) throw Error(ErrorKind::InvalidRange, "need 0 <= r <= n");
  return count_subspaces(n - r, n, q) * count_injections(r, n, q);
}

namespace {

Sandwich sandwich(BigInt value, Rational lower, Rational upper) {
  Sandwich s{std::move(value), std::move(lower), std::move(upper), false};
  s.holds = s.lower <= Rational(s.value) && Rational(s.value) <= s.upper;
  return s;
}

}  // namespace

Sandwich injection_bounds(int d, int D, int q) {
  const BigInt e = power(q, static_cast<unsigned>(d * D));
  return sandwich(count_injections(d, D, q), Rational(e, 4), Rational(e));
}

Sandwich subspace_bounds(int d, int D, int q) {
  const BigInt e = power(q, static_cast<unsigned>(d * (D - d)));
  return sandwich(count_subspaces(d, D, q), Rational(e), Rational(e * 4));
}

Sandwich rank_bounds(int r, int n, int q) {
  const BigInt value = count_rank(r, n, q);
  const BigInt e = power(q, static_cast<unsigned>(r * (2 * n - r)));
  return sandwich(value, Rational(e, 4), Rational(e * 4));
}

std::vector<BigInt> rank_census(const MatrixSpace& space) {
  std::vector<BigInt> out(static_cast<std::size_t>(space.n()) + 1);
  for (std::size_t x = 0; x < space.size(); ++x) out[static_cast<std::size_t>(space.rank(static_cast<Code>(x)))] += 1;
  return out;
}

Matrix random_invertible(const Field& field, int n, Rng& rng) {
  Matrix m(field, n, n);
  while (true) {
    for (auto& x : m.entries()) x = static_cast<Elem>(rng.below(static_cast<std::uint64_t>(field.order())));
    if (m.determinant() != 0) return m;
  }
}

Code rank_representative(const MatrixSpace& space, int t, Representative kind, std::uint64_t seed) {
  if (t < 0 || t > space.n()) throw Error(ErrorKind::InvalidRange, "representative rank out of range");
  Matrix m(space.field(), space.n(), space.n());
  for (int i = 0; i < t; ++i) m.at(i, i) = 1;
  if (kind == Representative::RandomConjugate) {
    Rng rng(seed);
    const Matrix g = random_invertible(space.field(), space.n(), rng);
    const Matrix h = random_invertible(space.field(), space.n(), rng);
    m = g * m * h;
  }
  return space.code(m);
}

namespace {

void require_nsum_limits(const MatrixSpace& space) {
  const int q = space.field().order();
  if ((q == 2 && space.n() > 4) || (q >= 3 && space.n() > 3))
    throw Error(ErrorKind::BudgetExceeded, "rank-sum enumeration is limited to n <= 4 for q = 2 and n <= 3 otherwise");
}

void require_ranks(const MatrixSpace& space, std::span<const int> ranks) {
  if (ranks.empty()) throw Error(ErrorKind::InvalidParameters, "rank list must be nonempty");
  for (int r : ranks)
    if (r < 0 || r > space.n()) throw Error(ErrorKind::InvalidRange, "rank out of range");
}

// Counts of rank(m - a) over a of rank r, indexed by that rank.
std::vector<std::uint64_t> pair_histogram(const MatrixSpace& space, int r, Code m) {
  const auto& rs = space.of_rank(r);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(space.n()) + 1, 0);
  for (Code a : rs) ++out[static_cast<std::size_t>(space.rank(space.sub(m, a)))];
  return out;
}

// Counts of rank(m - a1 - a2) over pairs of ranks (r1, r2), indexed by that rank.
std::vector<std::uint64_t> triple_histogram(const MatrixSpace& space, int r1, int r2, Code m) {
  const auto& x1 = space.of_rank(r1);
  const auto& x2 = space.of_rank(r2);
  const std::size_t width = static_cast<std::size_t>(space.n()) + 1;
  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (x1.size() + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> part(blocks * width, 0);
  parallel_for(blocks, [&](std::size_t b) {
    std::uint64_t* h = part.data() + b * width;
    for (std::size_t i = b * kBlock; i < std::min(x1.size(), (b + 1) * kBlock); ++i) {
      const Code rest = space.sub(m, x1[i]);
      for (Code a2 : x2) ++h[space.rank(space.sub(rest, a2))];
    }
  });
  std::vector<std::uint64_t> out(width, 0);
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t w = 0; w < width; ++w) out[w] += part[b * width + w];
  return out;
}

}  // namespace

BigInt nsum_bruteforce(const MatrixSpace& space, std::span<const int> ranks, Code m, const Budget& budget) {
  require_nsum_limits(space);
  require_ranks(space, ranks);
  if (m >= space.size()) throw Error(ErrorKind::InvalidParameters, "target matrix code out of range");
  const std::size_t k = ranks.size();
  auto rs = [&](std::size_t i) { return space.of_rank(ranks[i]).size(); };
  if (k == 1) return space.rank(m) == ranks[0] ? 1 : 0;
  if (k == 2) {
    budget.require(rs(0), "rank-sum count");
    return pair_histogram(space, ranks[0], m)[static_cast<std::size_t>(ranks[1])];
  }
  if (k == 3) {
    budget.require(static_cast<std::uint64_t>(rs(0)) * rs(1), "rank-sum count");
    return triple_histogram(space, ranks[0], ranks[1], m)[static_cast<std::size_t>(ranks[2])];
  }
  std::uint64_t cost = 0;
  for (std::size_t i = 1; i + 1 < k; ++i) cost += static_cast<std::uint64_t>(space.size()) * rs(i);
  budget.require(cost, "rank-sum count");
  std::vector<BigInt> h(space.size());
  for (Code a : space.of_rank(ranks[0])) h[a] = 1;
  for (std::size_t i = 1; i + 1 < k; ++i) {
    std::vector<BigInt> next(space.size());
    for (std::size_t y = 0; y < space.size(); ++y) {
      if (h[y] == 0) continue;
      for (Code a : space.of_rank(ranks[i])) next[space.add(static_cast<Code>(y), a)] += h[y];
    }
    h = std::move(next);
  }
  BigInt out = 0;
  for (Code a : space.of_rank(ranks[k - 1])) out += h[space.sub(m, a)];
  return out;
}

BigInt nsum_bruteforce(const MatrixSpace& space, std::span<const int> ranks, int t, const Budget& budget) {
  return nsum_bruteforce(space, ranks, rank_representative(space, t, Representative::Canonical), budget);
}

Conservation nsum_conservation(const MatrixSpace& space, int r, int s, const Budget& budget) {
  const int rk[] = {r, s};
  require_ranks(space, rk);
  const auto census = rank_census(space);
  Conservation out;
  for (int t = 0; t <= space.n(); ++t) out.lhs += nsum_bruteforce(space, rk, t, budget) * census[static_cast<std::size_t>(t)];
  out.rhs = count_rank(r, space.n(), space.field().order()) * count_rank(s, space.n(), space.field().order());
  out.holds = out.lhs == out.rhs;
  return out;
}

RatioScan nsum_ratio_scan(const MatrixSpace& space, int r_min, const Budget& budget) {
  require_nsum_limits(space);
  const int n = space.n();
  const int q = space.field().order();
  if (r_min < 0) r_min = (2 * n + 2) / 3;
  if (r_min > n) throw Error(ErrorKind::InvalidRange, "r_min exceeds n");
  RatioScan out;
  out.n = n;
  out.q = q;
  out.r_min = r_min;
  std::vector<BigInt> R(static_cast<std::size_t>(n) + 1);
  for (int r = 0; r <= n; ++r) R[static_cast<std::size_t>(r)] = count_rank(r, n, q);
  const BigInt qn2 = power(q, static_cast<unsigned>(n * n));

  std::uint64_t cost = 0;
  for (int r1 = r_min; r1 <= n; ++r1)
    for (int r2 = r_min; r2 <= n; ++r2)
      cost += static_cast<std::uint64_t>(n + 1) * space.of_rank(r1).size() * space.of_rank(r2).size();
  budget.require(cost, "ratio scan");

  std::vector<std::vector<std::vector<std::uint64_t>>> hist(static_cast<std::size_t>(n) + 1);
  for (int r1 = r_min; r1 <= n; ++r1)
    for (int r2 = r_min; r2 <= n; ++r2)
      for (int t = 0; t <= n; ++t) {
        const auto h = triple_histogram(space, r1, r2, rank_representative(space, t, Representative::Canonical));
        for (int r3 = r_min; r3 <= n; ++r3) {
          RatioRow3 row{r1, r2, r3, t, BigInt(h[static_cast<std::size_t>(r3)]), 0};
          row.ratio = Rational(row.count * qn2, R[static_cast<std::size_t>(r1)] * R[static_cast<std::size_t>(r2)] * R[static_cast<std::size_t>(r3)]);
          if (out.k3.empty() || row.ratio > out.max_ratio) out.max_ratio = row.ratio;
          out.k3.push_back(std::move(row));
        }
      }
  std::sort(out.k3.begin(), out.k3.end(), [](const RatioRow3& a, const RatioRow3& b) {
    return std::tie(a.r1, a.r2, a.r3, a.t) < std::tie(b.r1, b.r2, b.r3, b.t);
  });

  for (int r = 0; r <= n; ++r)
    for (int t = 0; t <= n; ++t) {
      const auto h = pair_histogram(space, r, rank_representative(space, t, Representative::Canonical));
      for (int s = 0; s <= n; ++s) {
        RatioRow2 row;
        row.r = r;
        row.s = s;
        row.t = t;
        row.count = h[static_cast<std::size_t>(s)];
        row.ratio = Rational(row.count * qn2, R[static_cast<std::size_t>(r)] * R[static_cast<std::size_t>(s)]);
        const double e = 2.0 * n - r - s - t;
        row.envelope_ratio = to_double(row.ratio) / std::pow(static_cast<double>(q), e * e / 4);
        row.vanishing = t < std::abs(r - s) || t > r + s;
        out.max_envelope_ratio = std::max(out.max_envelope_ratio, row.envelope_ratio);
        out.k2.push_back(std::move(row));
      }
    }
  std::sort(out.k2.begin(), out.k2.end(), [](const RatioRow2& a, const RatioRow2& b) {
    return std::tie(a.r, a.s, a.t) < std::tie(b.r, b.s, b.t);
  });
  return out;
}

QuadricSum quadric_series_bound(long long a, long long b, double c, double lin, double cst, double M, int q) {
  if (!(c < 0)) throw Error(ErrorKind::PreconditionViolated, "leading coefficient must be negative");
  if (q < 2) throw Error(ErrorKind::InvalidParameters, "q must be at least 2");
  QuadricSum out;
  out.bound = 2 * std::pow(static_cast<long double>(q), static_cast<long double>(M)) / (1 - std::pow(2.0L, static_cast<long double>(c)));
  if (a <= b) {
    if (b - a > 10'000'000) throw Error(ErrorKind::InvalidRange, "range too long to scan");
    for (long long x = a; x <= b; ++x) {
      const long double xf = static_cast<long double>(x);
      const long double F = c * xf * xf + lin * xf + cst;
      if (F > M + 1e-12L * std::max(1.0L, std::fabs(static_cast<long double>(M))))
        throw Error(ErrorKind::PreconditionViolated, "F(" + std::to_string(x) + ") exceeds M");
      out.sum += std::pow(static_cast<long double>(q), F);
    }
  }
  out.holds = out.sum <= out.bound;
  return out;
}

AdditiveGroup::AdditiveGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
  for (int m : moduli_) {
    if (m < 1) throw Error(ErrorKind::InvalidParameters, "moduli must be positive");
    size_ *= static_cast<std::size_t>(m);
    if (size_ > MatrixSpace::kMaxSize) throw Error(ErrorKind::BudgetExceeded, "abelian group too large");
  }
}

AdditiveGroup AdditiveGroup::of_matrices(const MatrixSpace& space) {
  const auto digits = static_cast<std::size_t>(space.n() * space.n() * space.field().degree());
  return AdditiveGroup(std::vector<int>(digits, space.field().characteristic()));
}

Code AdditiveGroup::add(Code a, Code b) const {
  Code out = 0, w = 1;
  for (int m : moduli_) {
    const auto mm = static_cast<Code>(m);
    out += ((a % mm + b % mm) % mm) * w;
    a /= mm;
    b /= mm;
    w *= mm;
  }
  return out;
}

Code AdditiveGroup::neg(Code a) const {
  Code out = 0, w = 1;
  for (int m : moduli_) {
    const auto mm = static_cast<Code>(m);
    out += ((mm - a % mm) % mm) * w;
    a /= mm;
    w *= mm;
  }
  return out;
}

namespace {

std::vector<CodeSet> normalized_sets(std::size_t size, const std::vector<CodeSet>& sets, std::size_t min_count) {
  if (sets.size() < min_count) throw Error(ErrorKind::InvalidParameters, "need at least " + std::to_string(min_count) + " sets");
  std::vector<CodeSet> out;
  for (auto s : sets) {
    if (s.empty()) throw Error(ErrorKind::EmptySubset, "sets must be nonempty");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.back() >= size) throw Error(ErrorKind::InvalidParameters, "set element out of range");
    out.push_back(std::move(s));
  }
  return out;
}

// Number of representations of each z as a sum x_1 + ... + x_k.
std::vector<std::uint64_t> sum_histogram(const AdditiveGroup& g, const std::vector<CodeSet>& sets, const Budget& budget) {
  long double total = 1;
  std::uint64_t cost = 0;
  for (const auto& s : sets) {
    total *= static_cast<long double>(s.size());
    cost += static_cast<std::uint64_t>(g.size()) * s.size();
  }
  if (total > 9e18L) throw Error(ErrorKind::BudgetExceeded, "representation counts overflow");
  budget.require(cost, "sum histogram");
  std::vector<std::uint64_t> h(g.size(), 0);
  for (Code x : sets[0]) h[x] = 1;
  for (std::size_t i = 1; i < sets.size(); ++i) {
    std::vector<std::uint64_t> next(g.size(), 0);
    for (std::size_t y = 0; y < g.size(); ++y) {
      if (!h[y]) continue;
      for (Code x : sets[i]) next[g.add(static_cast<Code>(y), x)] += h[y];
    }
    h = std::move(next);
  }
  return h;
}

}  // namespace

BigInt additive_energy(const AdditiveGroup& group, const std::vector<CodeSet>& sets, const Budget& budget) {
  const auto h = sum_histogram(group, normalized_sets(group.size(), sets, 2), budget);
  BigInt e = 0;
  for (auto c : h) e += BigInt(c) * c;
  return e;
}

SumsetCheck sumset_energy_check(const AdditiveGroup& group, const std::vector<CodeSet>& sets, const Budget& budget) {
  const auto norm = normalized_sets(group.size(), sets, 2);
  const auto h = sum_histogram(group, norm, budget);
  SumsetCheck out;
  for (auto c : h) {
    out.energy += BigInt(c) * c;
    out.sumset += c != 0;
  }
  BigInt num = 1;
  for (const auto& s : norm) num *= BigInt(s.size()) * s.size();
  out.lower_bound = Rational(num, out.energy);
  out.holds = Rational(out.sumset) >= out.lower_bound;
  return out;
}

Matrix un_tn_action(const Matrix& g, const Matrix& h, const Matrix& a) {
  const auto gi = g.square() ? g.inverse() : std::nullopt;
  if (!gi || !h.invertible()) throw Error(ErrorKind::SingularInput, "g and h must be invertible");
  if (g.rows() != a.rows() || h.rows() != a.cols() || !a.square()) throw Error(ErrorKind::SizeMismatch, "block sizes differ");
  return *gi * a * h;
}

Matrix un_element(const Matrix& a) {
  if (!a.square()) throw Error(ErrorKind::SizeMismatch, "the a-block must be square");
  const int n = a.rows();
  Matrix u = Matrix::identity(a.field(), 2 * n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) u.at(i, n + 1 + j) = a(i, j);
  return u;
}

Matrix tn_element(const Matrix& g, const Matrix& h) {
  if (!g.invertible() || !h.invertible()) throw Error(ErrorKind::SingularInput, "g and h must be invertible");
  if (g.rows() != h.rows()) throw Error(ErrorKind::SizeMismatch, "block sizes differ");
  const Field& f = g.field();
  const int n = g.rows();
  Matrix t(f, 2 * n + 1, 2 * n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      t.at(i, j) = g(i, j);
      t.at(n + 1 + i, n + 1 + j) = h(i, j);
    }
  t.at(n, n) = f.inv(f.mul(g.determinant(), h.determinant()));
  return t;
}

bool un_tn_block_check(const Matrix& g, const Matrix& h, const Matrix& a) {
  const Matrix t = tn_element(g, h);
  const Matrix lhs = *t.inverse() * un_element(a) * t;
  return lhs == un_element(un_tn_action(g, h, a)) && lhs.determinant() == 1 && t.determinant() == 1;
}

bool invariant_subgroups_trivial(const MatrixSpace& space) {
  const int p = space.field().characteristic();
  const auto digits = static_cast<std::size_t>(space.n() * space.n() * space.field().degree());
  for (int r = 1; r <= space.n(); ++r) {
    std::vector<std::vector<int>> basis;  // rows in echelon form keyed by pivot
    std::vector<int> pivot_row(digits, -1);
    for (Code x : space.of_rank(r)) {
      std::vector<int> v(digits);
      Code c = x;
      for (auto& d : v) {
        d = static_cast<int>(c % static_cast<Code>(p));
        c /= static_cast<Code>(p);
      }
      for (std::size_t i = 0; i < digits; ++i) {
        if (v[i] == 0) continue;
        const int pr = pivot_row[i];
        if (pr < 0) {
          int inv = 1;
          while (inv * v[i] % p != 1) ++inv;
          for (auto& d : v) d = d * inv % p;
          pivot_row[i] = static_cast<int>(basis.size());
          basis.push_back(v);
          break;
        }
        const int f = v[i];
        for (std::size_t j = 0; j < digits; ++j) v[j] = ((v[j] - f * basis[static_cast<std::size_t>(pr)][j]) % p + p) % p;
      }
      if (basis.size() == digits) break;
    }
    if (basis.size() != digits) return false;
  }
  return true;
}

namespace {

std::vector<Code> act(const MatrixSpace& space, const Matrix& g_inv, const Matrix& h, const CodeSet& x) {
  std::vector<Code> out;
  out.reserve(x.size());
  for (Code c : x) out.push_back(space.code(g_inv * space.matrix(c) * h));
  return out;
}

std::vector<bool> add_sets(const MatrixSpace& space, const std::vector<bool>& s, const std::vector<Code>& y) {
  std::vector<bool> out(space.size(), false);
  for (std::size_t z = 0; z < space.size(); ++z) {
    if (!s[z]) continue;
    for (Code c : y) out[space.add(static_cast<Code>(z), c)] = true;
  }
  return out;
}

std::size_t count_true(const std::vector<bool>& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

std::vector<bool> as_mask(const MatrixSpace& space, const std::vector<Code>& x) {
  std::vector<bool> out(space.size(), false);
  for (Code c : x) out[c] = true;
  return out;
}

}  // namespace

AutomorphismGrowth automorphism_growth_search(const MatrixSpace& space, const std::vector<CodeSet>& sets, std::uint64_t seed,
                                              std::size_t pool, const Budget& budget) {
  const auto norm = normalized_sets(space.size(), sets, 1);
  const Field& f = space.field();
  const int n = space.n();
  AutomorphismGrowth out;
  out.min_size = space.size();
  for (const auto& s : norm) out.min_size = std::min(out.min_size, s.size());
  std::uint64_t cost = 0;
  for (std::size_t i = 1; i < norm.size(); ++i) cost += static_cast<std::uint64_t>(pool + 1) * space.size() * norm[i].size();
  budget.require(cost, "automorphism growth search");

  const Matrix id = Matrix::identity(f, n);
  out.t.push_back({id, id});
  std::vector<bool> sum = as_mask(space, norm[0]);
  for (std::size_t i = 1; i < norm.size(); ++i) {
    Rng rng(mix_seed(seed, i));
    std::vector<GlPair> cand{{id, id}};
    for (std::size_t k = 0; k < pool; ++k) {
      Matrix g = random_invertible(f, n, rng);
      Matrix h = random_invertible(f, n, rng);
      cand.push_back({std::move(g), std::move(h)});
    }
    std::vector<std::size_t> sizes(cand.size());
    parallel_for(cand.size(), [&](std::size_t c) {
      sizes[c] = count_true(add_sets(space, sum, act(space, *cand[c].g.inverse(), cand[c].h, norm[i])));
    });
    std::size_t best = 0;
    for (std::size_t c = 1; c < cand.size(); ++c)
      if (sizes[c] > sizes[best]) best = c;
    sum = add_sets(space, sum, act(space, *cand[best].g.inverse(), cand[best].h, norm[i]));
    out.t.push_back(cand[best]);
  }
  out.sumset = count_true(sum);
  out.growth = 2 * out.sumset >= norm.size() * out.min_size;
  out.invariant_subgroups_trivial = invariant_subgroups_trivial(space);
  // With only 0 and Mat invariant, the sumset is a union of N-cosets for
  // N = Mat exactly when it is everything, and always for N = 0.
  if (out.sumset == space.size())
    out.coset_subgroup = space.size();
  else if (out.min_size <= 1)
    out.coset_subgroup = 1;
  out.filling = out.invariant_subgroups_trivial && out.coset_subgroup >= out.min_size && out.coset_subgroup > 0;
  return out;
}

std::vector<bool> dilate_sum(const MatrixSpace& space, const std::vector<CodeSet>& sets, const std::vector<GlPair>& pairs) {
  const auto norm = normalized_sets(space.size(), sets, 1);
  if (pairs.empty()) return std::vector<bool>(space.size(), false);
  std::vector<bool> sum;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto ai = pairs[i].g.inverse();
    if (!ai || !pairs[i].h.invertible()) throw Error(ErrorKind::SingularInput, "dilate pairs must be invertible");
    const auto img = act(space, *ai, pairs[i].h, norm[i % norm.size()]);
    sum = i == 0 ? as_mask(space, img) : add_sets(space, sum, img);
  }
  return sum;
}

bool verify_dilate_cover(const MatrixSpace& space, const std::vector<CodeSet>& sets, const std::vector<GlPair>& pairs) {
  return !pairs.empty() && count_true(dilate_sum(space, sets, pairs)) == space.size();
}

DilateCover dilate_cover_search(const MatrixSpace& space, const std::vector<CodeSet>& sets, std::size_t mu_max,
                                std::uint64_t seed, std::size_t restarts) {
  const auto norm = normalized_sets(space.size(), sets, 1);
  const Field& f = space.field();
  const int n = space.n();
  const Matrix id = Matrix::identity(f, n);
  const auto& gl = space.of_rank(n);
  const bool enumerate = gl.size() * gl.size() <= 256;
  DilateCover best;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, restarts); ++r) {
    Rng rng(mix_seed(seed, r));
    std::vector<GlPair> chosen;
    if (r == 0)
      chosen.push_back({id, id});
    else
      chosen.push_back({random_invertible(f, n, rng), random_invertible(f, n, rng)});
    std::vector<bool> sum = as_mask(space, act(space, *chosen[0].g.inverse(), chosen[0].h, norm[0]));
    const std::size_t limit = best.found ? std::min(mu_max, best.mu - 1) : mu_max;
    while (count_true(sum) < space.size() && chosen.size() < limit) {
      std::vector<GlPair> cand;
      if (enumerate) {
        for (Code a : gl)
          for (Code b : gl) cand.push_back({space.matrix(a), space.matrix(b)});
      } else {
        for (int k = 0; k < 256; ++k) cand.push_back({random_invertible(f, n, rng), random_invertible(f, n, rng)});
      }
      const CodeSet& x = norm[chosen.size() % norm.size()];
      std::vector<std::size_t> sizes(cand.size());
      parallel_for(cand.size(), [&](std::size_t c) {
        sizes[c] = count_true(add_sets(space, sum, act(space, *cand[c].g.inverse(), cand[c].h, x)));
      });
      std::size_t bi = 0;
      for (std::size_t c = 1; c < cand.size(); ++c)
        if (sizes[c] > sizes[bi]) bi = c;
      sum = add_sets(space, sum, act(space, *cand[bi].g.inverse(), cand[bi].h, x));
      chosen.push_back(cand[bi]);
    }
    if (count_true(sum) == space.size() && chosen.size() <= mu_max && (!best.found || chosen.size() < best.mu)) {
      best.found = true;
      best.mu = chosen.size();
      best.pairs = chosen;
    }
    if (best.found && best.mu == 1) break;
  }
  if (best.found && !verify_dilate_cover(space, sets, best.pairs))
    throw Error(ErrorKind::ToleranceViolation, "dilate cover does not recheck");
  return best;
}

bool graph_edge(Graph g, int n, int i, int j) {
  switch (g) {
    case Graph::Alpha:
      return i % 2 == 1 && j % 2 == 0 && (i + 1) / 2 <= j / 2 && j / 2 <= n && i >= 1;
    case Graph::Kappa:
      return i % 2 == 0 && j % 2 == 1 && i >= 2 && i / 2 <= (j - 1) / 2 && (j - 1) / 2 <= n;
    case Graph::Upsilon:
      return i >= 1 && i <= n && j >= n + 2 && j <= 2 * n + 1;
  }
  return false;
}

namespace {

int pattern_n(const Matrix& m) {
  if (!m.square() || m.rows() < 3 || m.rows() % 2 == 0) throw Error(ErrorKind::SizeMismatch, "pattern matrices have odd size 2n+1 >= 3");
  return (m.rows() - 1) / 2;
}

}  // namespace

bool graph_matrix_membership(const Matrix& m, Graph g) {
  const int n = pattern_n(m);
  for (int i = 1; i <= m.rows(); ++i)
    for (int j = 1; j <= m.rows(); ++j) {
      const Elem x = m(i - 1, j - 1);
      if (i == j) {
        if (x != 1) return false;
      } else if (x != 0 && !graph_edge(g, n, i, j)) {
        return false;
      }
    }
  return true;
}

Matrix random_unipotent(const Field& field, int size, Rng& rng) {
  Matrix m = Matrix::identity(field, size);
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) m.at(i, j) = static_cast<Elem>(rng.below(static_cast<std::uint64_t>(field.order())));
  return m;
}

Akblcm akblcm_solve(const Matrix& T) {
  const int n = pattern_n(T);
  const Field& f = T.field();
  const int N = 2 * n + 1;
  if (f.order() > kMaxAdditiveField || N > 9) throw Error(ErrorKind::InvalidParameters, "solver is limited to q <= 9 and size <= 9");
  if (!T.is_unipotent_upper()) throw Error(ErrorKind::InvalidParameters, "T must be unipotent upper triangular");
  // Unknowns, indexed 1-based as (row, column): At on alpha edges stands for
  // A + C, Cv on alpha edges, Kv and Mv on kappa edges. B is 1 on alpha and
  // L = 1 - K on kappa.
  Matrix At(f, N + 1, N + 1), Cv(f, N + 1, N + 1), Kv(f, N + 1, N + 1), Mv(f, N + 1, N + 1);
  auto factors = [&] {
    Akblcm o{Matrix::identity(f, N), Matrix::identity(f, N), Matrix::identity(f, N),
             Matrix::identity(f, N), Matrix::identity(f, N), Matrix::identity(f, N)};
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j) {
        if (graph_edge(Graph::Alpha, n, i, j)) {
          o.A.at(i - 1, j - 1) = f.sub(At(i, j), Cv(i, j));
          o.B.at(i - 1, j - 1) = 1;
          o.C.at(i - 1, j - 1) = Cv(i, j);
        }
        if (graph_edge(Graph::Kappa, n, i, j)) {
          o.K.at(i - 1, j - 1) = Kv(i, j);
          o.L.at(i - 1, j - 1) = f.sub(1, Kv(i, j));
          o.M.at(i - 1, j - 1) = Mv(i, j);
        }
      }
    return o;
  };
  auto entry = [&](int s, int t) {
    const auto o = factors();
    return (o.A * o.K * o.B * o.L * o.C * o.M)(s - 1, t - 1);
  };
  for (int s = N - 1; s >= 1; --s)
    for (int t = s + 1; t <= N; ++t) {
      Elem* var = nullptr;
      if (s % 2 == 1 && t % 2 == 0)
        var = &At.at(s, t);
      else if (s % 2 == 1)
        var = &Cv.at(s, t - 1);
      else if (t % 2 == 1)
        var = &Mv.at(s, t);
      else
        var = &Kv.at(s, t - 1);
      *var = 0;
      const Elem v0 = entry(s, t);
      *var = 1;
      const Elem v1 = entry(s, t);
      const Elem coef = f.sub(v1, v0);
      if (coef == 0)
        throw Error(ErrorKind::SolveFailed, "equation (" + std::to_string(s) + "," + std::to_string(t) + ") has no adjustable variable");
      *var = f.div(f.sub(T(s - 1, t - 1), v0), coef);
      if (entry(s, t) != T(s - 1, t - 1))
        throw Error(ErrorKind::SolveFailed, "equation (" + std::to_string(s) + "," + std::to_string(t) + ") is not affine in its variable");
    }
  auto out = factors();
  const bool ok = graph_matrix_membership(out.A, Graph::Alpha) && graph_matrix_membership(out.B, Graph::Alpha) &&
                  graph_matrix_membership(out.C, Graph::Alpha) && graph_matrix_membership(out.K, Graph::Kappa) &&
                  graph_matrix_membership(out.L, Graph::Kappa) && graph_matrix_membership(out.M, Graph::Kappa);
  if (!ok) throw Error(ErrorKind::SolveFailed, "factor left its sparsity pattern");
  if (out.A * out.K * out.B * out.L * out.C * out.M != T) throw Error(ErrorKind::SolveFailed, "factors do not multiply back to T");
  return out;
}

namespace {

std::vector<Matrix> pattern_set(const Field& f, int n, Graph g) {
  const int N = 2 * n + 1;
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      if (i != j && graph_edge(g, n, i, j)) edges.emplace_back(i - 1, j - 1);
  const std::size_t count = int_pow(static_cast<std::size_t>(f.order()), edges.size());
  std::vector<Matrix> out;
  for (std::size_t code = 0; code < count; ++code) {
    Matrix m = Matrix::identity(f, N);
    std::size_t c = code;
    for (auto [i, j] : edges) {
      m.at(i, j) = static_cast<Elem>(c % static_cast<std::size_t>(f.order()));
      c /= static_cast<std::size_t>(f.order());
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

bool cm_cube_covers_unipotent(const Field& field, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameters, "n must be positive");
  const auto a = pattern_set(field, n, Graph::Alpha);
  const auto k = pattern_set(field, n, Graph::Kappa);
  const int N = 2 * n + 1;
  const long double p_size = std::pow(static_cast<long double>(field.order()), N * (N - 1) / 2.0L);
  const long double ak = static_cast<long double>(a.size()) * k.size();
  if (ak * std::min(p_size, ak * ak) > 1e7L) throw Error(ErrorKind::BudgetExceeded, "pattern product enumeration too large");
  std::set<std::vector<Elem>> base;
  for (const auto& x : a)
    for (const auto& y : k) base.insert((x * y).entries());
  std::vector<Matrix> base_m;
  for (const auto& e : base) {
    Matrix m(field, N, N);
    m.entries() = e;
    base_m.push_back(std::move(m));
  }
  std::set<std::vector<Elem>> cur = base;
  for (int round = 1; round < 3; ++round) {
    std::set<std::vector<Elem>> next;
    for (const auto& e : cur) {
      Matrix m(field, N, N);
      m.entries() = e;
      for (const auto& y : base_m) next.insert((m * y).entries());
    }
    cur = std::move(next);
  }
  for (const auto& e : cur) {
    Matrix m(field, N, N);
    m.entries() = e;
    if (!m.is_unipotent_upper()) return false;
  }
  return static_cast<long double>(cur.size()) == p_size;
}

}  // namespace prodlab::fq
