#include "prodlab/sym.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "prodlab/error.hpp"

namespace prodlab::sym {

Partition::Partition(std::vector<int> parts) {
  for (int p : parts)
    if (p < 0) throw Error(ErrorKind::InvalidParameters, "partition parts must be non-negative");
  parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
  std::sort(parts.begin(), parts.end(), std::greater<>());
  parts_ = std::move(parts);
  for (int p : parts_) n_ += p;
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ',' || text[i] == ' ' || text[i] == '(' || text[i] == ')') {
      ++i;
      continue;
    }
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc{}) throw Error(ErrorKind::ParseError, "bad partition: '" + std::string(text) + "'");
    parts.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  return Partition(std::move(parts));
}

Partition Partition::conjugate() const {
  std::vector<int> c(static_cast<std::size_t>(part(1)), 0);
  for (int p : parts_)
    for (int j = 0; j < p; ++j) ++c[static_cast<std::size_t>(j)];
  return Partition(std::move(c));
}

int Partition::hook(int i, int j) const {
  const int arm = part(i) - j;
  int leg = 0;
  for (int r = i + 1; r <= length() && part(r) >= j; ++r) ++leg;
  return arm + leg + 1;
}

std::vector<int> Partition::hooks() const {
  std::vector<int> h;
  for (int i = 1; i <= length(); ++i)
    for (int j = 1; j <= part(i); ++j) h.push_back(hook(i, j));
  return h;
}

std::string Partition::to_string() const {
  if (parts_.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidParameters, "n must be non-negative");
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

BigInt dimension_hook(const Partition& lambda) {
  BigInt prod = 1;
  for (int h : lambda.hooks()) prod *= h;
  return factorial(static_cast<unsigned>(lambda.n())) / prod;
}

Rational virtual_degree(const Partition& lambda) {
  if (lambda.n() == 0) return Rational(1);
  auto fact = [](int x) { return x <= 0 ? BigInt(1) : factorial(static_cast<unsigned>(x)); };
  BigInt denom = 1;
  const Partition conj = lambda.conjugate();
  for (int i = 1; i <= lambda.length(); ++i) denom *= fact(lambda.part(i) - i);
  for (int i = 1; i <= conj.length(); ++i) denom *= fact(conj.part(i) - i);
  return Rational(factorial(static_cast<unsigned>(lambda.n() - 1)), denom);
}

namespace {

// Beta-set of lambda with exactly `beads` beads: lambda_i + beads - i.
std::vector<int> beta_set(const Partition& lambda, int beads) {
  std::vector<int> b;
  for (int i = 1; i <= beads; ++i) b.push_back(lambda.part(i) + beads - i);
  return b;  // strictly decreasing
}

long long mn_rec(std::vector<int>& beta, const std::vector<int>& mu, std::size_t idx, std::map<std::pair<std::vector<int>, std::size_t>, long long>& memo) {
  if (idx == mu.size()) return 1;
  auto key = std::make_pair(beta, idx);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int r = mu[idx];
  long long total = 0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const int from = beta[k];
    const int to = from - r;
    if (to < 0) continue;
    if (std::find(beta.begin(), beta.end(), to) != beta.end()) continue;
    int between = 0;
    for (int x : beta) between += (x > to && x < from);
    std::vector<int> next = beta;
    next[k] = to;
    std::sort(next.begin(), next.end(), std::greater<>());
    const long long sub = mn_rec(next, mu, idx + 1, memo);
    total += (between % 2 ? -sub : sub);
  }
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

long long mn_character(const Partition& lambda, const Partition& cycle_type) {
  if (lambda.n() != cycle_type.n()) throw Error(ErrorKind::InvalidParameters, "partition and cycle type have different sizes");
  if (lambda.n() > 24) throw Error(ErrorKind::InvalidParameters, "character values are limited to n <= 24");
  std::vector<int> beta = beta_set(lambda, lambda.length());
  std::map<std::pair<std::vector<int>, std::size_t>, long long> memo;
  return mn_rec(beta, cycle_type.parts(), 0, memo);
}

BigInt class_size(const Partition& mu) {
  BigInt z = 1;
  std::map<int, int> mult;
  for (int p : mu.parts()) {
    z *= p;
    ++mult[p];
  }
  for (const auto& [p, m] : mult) z *= factorial(static_cast<unsigned>(m));
  return factorial(static_cast<unsigned>(mu.n())) / z;
}

int sign(const Partition& mu) {
  int t = 0;
  for (int p : mu.parts()) t += p - 1;
  return t % 2 ? -1 : 1;
}

Partition cycle_type(const Permutation& p) { return Partition(p.cycle_type()); }

CycleStats cycle_statistics(const Partition& type) {
  const int n = type.n();
  if (n < 2) throw Error(ErrorKind::InvalidParameters, "cycle statistics need n >= 2");
  CycleStats st;
  st.n = n;
  st.type = type;
  const int longest = type.part(1);
  st.sigma.assign(static_cast<std::size_t>(longest), 0);
  for (int p : type.parts())
    for (int i = p; i <= longest; ++i) st.sigma[static_cast<std::size_t>(i - 1)] += p;
  st.fixed_points = st.sigma[0];
  const double log_n = std::log(static_cast<double>(n));
  double prev = 0;
  for (int i = 1; i <= longest; ++i) {
    const double cur = std::log(static_cast<double>(std::max(st.sigma[static_cast<std::size_t>(i - 1)], 1)));
    st.e.push_back((cur - prev) / log_n);
    prev = cur;
  }
  return st;
}

CycleStats cycle_statistics(const Permutation& p) { return cycle_statistics(cycle_type(p)); }

namespace {

long double log_big(const BigInt& x) {
  // Values here stay far below the long double range.
  return std::log(static_cast<long double>(x));
}

long double log_rational(const Rational& x) {
  return log_big(boost::multiprecision::numerator(x)) - log_big(boost::multiprecision::denominator(x));
}

}  // namespace

LsCheck ls_variant_check(const Partition& lambda, const Partition& type) {
  LsCheck out;
  out.abs_chi = std::llabs(mn_character(lambda, type));
  const CycleStats st = cycle_statistics(type);
  long double exponent = st.e[0] / 2.0L;
  for (std::size_t i = 1; i < st.e.size(); ++i) exponent += st.e[i] / static_cast<long double>(i + 1);
  out.exponent = static_cast<double>(exponent);
  const long double log_bound = exponent * log_rational(virtual_degree(lambda)) +
                                log_big(factorial(static_cast<unsigned>(st.fixed_points))) / 4.0L;
  const long double bound = std::exp(log_bound);
  out.bound = static_cast<double>(bound);
  out.holds = static_cast<long double>(out.abs_chi) <= bound * (1.0L + 1e-9L);
  return out;
}

std::vector<PartitionRow> charbound_scan(int n) {
  if (n < 2 || n > 10) throw Error(ErrorKind::InvalidParameters, "scan requires 2 <= n <= 10");
  const auto parts = partitions_of(n);
  std::vector<PartitionRow> rows;
  const long double log_n_fact = log_big(factorial(static_cast<unsigned>(n)));
  for (const auto& lambda : parts) {
    PartitionRow row;
    row.lambda = lambda;
    row.d = dimension_hook(lambda);
    row.D = virtual_degree(lambda);
    row.D_le_d = row.D <= Rational(row.d);
    row.d_le_D = Rational(row.d) <= row.D;
    const long double log_D = log_rational(row.D);
    const long double log_d = log_big(row.d);
    row.log_ratio = log_D > 0 ? static_cast<double>(log_d / log_D) : 1.0;
    const long double base = std::exp(log_D / 2 + log_n_fact / 4);
    row.base_case_bound = static_cast<double>(base);
    row.base_case = static_cast<long double>(row.d) <= base * (1.0L + 1e-9L);
    for (const auto& mu : parts) {
      ClassEntry e;
      e.type = mu;
      e.fixed_points = static_cast<int>(std::count(mu.parts().begin(), mu.parts().end(), 1));
      e.ls = ls_variant_check(lambda, mu);
      e.chi = mn_character(lambda, mu);
      row.classes.push_back(std::move(e));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FixedPointSummary fixed_point_summary(const PartitionRow& row, int max_fixed_points) {
  FixedPointSummary s;
  const long long degree = static_cast<long long>(row.d);
  for (const auto& e : row.classes) {
    if (e.fixed_points > max_fixed_points) continue;
    const long long a = std::llabs(e.chi);
    if (a > degree) s.within_degree = false;
    if (!s.any || a > s.max_abs_chi) {
      s.max_abs_chi = a;
      s.argmax = e.type;
    }
    s.any = true;
  }
  if (s.any && degree > 1 && s.max_abs_chi > 0)
    s.exponent = std::log(static_cast<double>(s.max_abs_chi)) / std::log(static_cast<double>(degree));
  return s;
}

}  // namespace prodlab::sym
