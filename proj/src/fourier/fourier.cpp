#include "prodlab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prodlab/error.hpp"

namespace prodlab {

namespace {

constexpr double kImaginaryTolerance = 1e-8;

void require_same(const GroupFunction& f, const GroupFunction& g) {
  if (f.group_ptr() != g.group_ptr()) throw Error(ErrorKind::GroupMismatch, "functions live on different groups");
}

void require_table(const GroupPtr& g, const CharacterTable& table) {
  if (g != table.group_ptr()) throw Error(ErrorKind::TableMismatch, "character table belongs to a different group");
}

void require_common_group(std::span<const Subset> sets) {
  if (sets.empty()) throw Error(ErrorKind::InvalidParameters, "empty list of sets");
  for (const auto& s : sets) {
    require_same_group(sets.front(), s);
    if (s.empty()) throw Error(ErrorKind::EmptySubset, "empty subset in list");
  }
}

}  // namespace

GroupFunction::GroupFunction(GroupPtr group) : group_(std::move(group)), values_(group_->order()) {}

GroupFunction::GroupFunction(GroupPtr group, std::vector<Complex> values) : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_->order()) throw Error(ErrorKind::SizeMismatch, "function size differs from the group order");
}

GroupFunction GroupFunction::constant(GroupPtr group, Complex c) {
  const std::size_t n = group->order();
  return GroupFunction(std::move(group), std::vector<Complex>(n, c));
}

GroupFunction GroupFunction::character(const CharacterTable& table, std::size_t chi) {
  GroupFunction f(table.group_ptr());
  for (Element x = 0; x < f.size(); ++x) f.values_[x] = table.value(chi, x);
  return f;
}

GroupFunction GroupFunction::random(GroupPtr group, std::uint64_t seed) {
  GroupFunction f(std::move(group));
  Rng rng(seed);
  for (auto& v : f.values_) {
    const double re = 2 * rng.unit() - 1;
    const double im = 2 * rng.unit() - 1;
    v = Complex(re, im);
  }
  return f;
}

Complex GroupFunction::mean() const {
  Complex s = 0;
  for (const auto& v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double GroupFunction::norm2_sq() const {
  double s = 0;
  for (const auto& v : values_) s += std::norm(v);
  return s / static_cast<double>(values_.size());
}

double GroupFunction::norm2() const { return std::sqrt(norm2_sq()); }

double GroupFunction::linf() const {
  double m = 0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

Complex GroupFunction::inner(const GroupFunction& other) const {
  require_same(*this, other);
  Complex s = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * std::conj(other.values_[i]);
  return s / static_cast<double>(values_.size());
}

bool GroupFunction::is_density(double tolerance) const {
  for (const auto& v : values_)
    if (v.real() < -tolerance || std::abs(v.imag()) > tolerance) return false;
  return std::abs(mean() - 1.0) <= tolerance;
}

GroupFunction GroupFunction::right_shift(Element s) const {
  GroupFunction out(group_);
  for (Element t = 0; t < values_.size(); ++t) out.values_[t] = values_[group_->multiply(t, s)];
  return out;
}

GroupFunction GroupFunction::operator+(const GroupFunction& o) const {
  require_same(*this, o);
  GroupFunction out(*this);
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] += o.values_[i];
  return out;
}

GroupFunction GroupFunction::operator-(const GroupFunction& o) const {
  require_same(*this, o);
  GroupFunction out(*this);
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] -= o.values_[i];
  return out;
}

GroupFunction GroupFunction::scaled(Complex c) const {
  GroupFunction out(*this);
  for (auto& v : out.values_) v *= c;
  return out;
}

GroupFunction normalized_indicator(const Subset& a) {
  if (a.empty()) throw Error(ErrorKind::EmptySubset, "normalized indicator of an empty set");
  GroupFunction f(a.group_ptr());
  const double v = static_cast<double>(a.group().order()) / static_cast<double>(a.size());
  for (Element x : a.elements()) f[x] = v;
  return f;
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
  require_same(f, g);
  const Group& G = f.group();
  const std::size_t n = G.order();
  std::vector<Complex> out(n);
  parallel_for(n, [&](std::size_t x) {
    Complex s = 0;
    for (Element y = 0; y < n; ++y) {
      const Complex fy = f[y];
      if (fy == Complex(0)) continue;
      s += fy * g[G.multiply(G.inverse(y), static_cast<Element>(x))];
    }
    out[x] = s / static_cast<double>(n);
  });
  return GroupFunction(f.group_ptr(), std::move(out));
}

GroupFunction convolve_indicator(const GroupFunction& f, const Subset& a) {
  if (f.group_ptr() != a.group_ptr()) throw Error(ErrorKind::GroupMismatch, "function and set live on different groups");
  if (a.empty()) throw Error(ErrorKind::EmptySubset, "convolution with an empty set");
  // (f * h)(x) = (1/|A|) sum_{b in A} f(x b^-1)
  const Group& G = f.group();
  const auto elems = a.elements();
  std::vector<Element> inv;
  inv.reserve(elems.size());
  for (Element b : elems) inv.push_back(G.inverse(b));
  std::vector<Complex> out(G.order());
  const double scale = 1.0 / static_cast<double>(elems.size());
  for (Element x = 0; x < G.order(); ++x) {
    Complex s = 0;
    for (Element bi : inv) s += f[G.multiply(x, bi)];
    out[x] = s * scale;
  }
  return GroupFunction(f.group_ptr(), std::move(out));
}

namespace {

// S[x*k + c] = sum over y with y^-1 x in class c of f(y).
std::vector<Complex> class_sums(const GroupFunction& f) {
  const Group& G = f.group();
  const std::size_t n = G.order(), k = G.class_count();
  std::vector<Complex> s(n * k);
  parallel_for(n, [&](std::size_t x) {
    for (Element y = 0; y < n; ++y) s[x * k + G.class_of(G.multiply(G.inverse(y), static_cast<Element>(x)))] += f[y];
  });
  return s;
}

GroupFunction component(const GroupFunction& f, const CharacterTable& table, std::size_t chi, const std::vector<Complex>& sums) {
  const std::size_t n = f.size(), k = table.group().class_count();
  const auto& values = table[chi].values;
  const double scale = table[chi].degree / static_cast<double>(n);
  GroupFunction out(f.group_ptr());
  for (Element x = 0; x < n; ++x) {
    Complex s = 0;
    for (std::size_t c = 0; c < k; ++c) s += sums[x * k + c] * values[c];
    out[x] = s * scale;
  }
  return out;
}

}  // namespace

GroupFunction project(const GroupFunction& f, const CharacterTable& table, std::size_t chi) {
  require_table(f.group_ptr(), table);
  if (chi >= table.size()) throw Error(ErrorKind::TableMismatch, "character index out of range");
  return component(f, table, chi, class_sums(f));
}

std::vector<GroupFunction> project_all(const GroupFunction& f, const CharacterTable& table) {
  require_table(f.group_ptr(), table);
  const auto sums = class_sums(f);
  std::vector<GroupFunction> out;
  out.reserve(table.size());
  for (std::size_t chi = 0; chi < table.size(); ++chi) out.push_back(component(f, table, chi, sums));
  return out;
}

std::vector<std::size_t> quotient_class_histogram(const Subset& a) {
  const Group& G = a.group();
  const auto elems = a.elements();
  std::vector<std::size_t> hist(G.class_count(), 0);
  for (Element x : elems) {
    const Element xi = G.inverse(x);
    for (Element y : elems) ++hist[G.class_of(G.multiply(xi, y))];
  }
  return hist;
}

namespace {

double mean_from_histogram(const std::vector<std::size_t>& hist, std::size_t pairs, const CharacterTable& table, std::size_t chi) {
  Complex s = 0;
  for (std::size_t c = 0; c < hist.size(); ++c) s += static_cast<double>(hist[c]) * table[chi].values[c];
  s /= static_cast<double>(pairs);
  if (std::abs(s.imag()) > kImaginaryTolerance * std::max(1.0, std::abs(s)))
    throw Error(ErrorKind::ImaginaryResidue, "imaginary part " + std::to_string(s.imag()) + " for character " + std::to_string(chi));
  return s.real();
}

}  // namespace

double mean_character_on_quotients(const Subset& a, const CharacterTable& table, std::size_t chi) {
  require_table(a.group_ptr(), table);
  if (a.empty()) throw Error(ErrorKind::EmptySubset, "empty set");
  return mean_from_histogram(quotient_class_histogram(a), a.size() * a.size(), table, chi);
}

double projection_norm_sq(const Subset& a, const CharacterTable& table, std::size_t chi) {
  return table[chi].degree * mean_character_on_quotients(a, table, chi);
}

std::vector<double> projection_norms_sq(const Subset& a, const CharacterTable& table) {
  require_table(a.group_ptr(), table);
  if (a.empty()) throw Error(ErrorKind::EmptySubset, "empty set");
  const auto hist = quotient_class_histogram(a);
  std::vector<double> out;
  for (std::size_t chi = 0; chi < table.size(); ++chi)
    out.push_back(table[chi].degree * mean_from_histogram(hist, a.size() * a.size(), table, chi));
  return out;
}

double frobenius_rhs(std::span<const Subset> sets, int m, const CharacterTable& table) {
  require_common_group(sets);
  if (m < 1 || sets.size() != static_cast<std::size_t>(m) + 1)
    throw Error(ErrorKind::InvalidParameters, "frobenius formula needs m >= 1 and m+1 sets");
  std::vector<std::vector<double>> norms;
  for (const auto& s : sets) norms.push_back(projection_norms_sq(s, table));
  double total = 0;
  for (std::size_t chi = 0; chi < table.size(); ++chi) {
    double prod = 1;
    for (const auto& n : norms) prod *= n[chi];
    total += prod / std::pow(static_cast<double>(table[chi].degree), 2.0 * m);
  }
  return total;
}

GroupFunction shifted_convolution(std::span<const Subset> sets, std::span<const Element> shifts) {
  require_common_group(sets);
  if (sets.size() != shifts.size()) throw Error(ErrorKind::InvalidParameters, "one shift per set is required");
  const Group& G = sets.front().group();
  GroupFunction acc = normalized_indicator(sets.front()).right_shift(shifts[0]);
  for (std::size_t i = 1; i < sets.size(); ++i)
    acc = convolve_indicator(acc, right_translate(sets[i], G.inverse(shifts[i])));
  return acc;
}

namespace {

Estimate frobenius_sample(std::span<const Subset> sets, const std::vector<Element>& shifts) {
  // f_1^{s_1} * ... * f_m^{s_m} * f_{m+1}
  const Group& G = sets.front().group();
  GroupFunction acc = normalized_indicator(sets.front()).right_shift(shifts[0]);
  for (std::size_t i = 1; i + 1 < sets.size(); ++i) acc = convolve_indicator(acc, right_translate(sets[i], G.inverse(shifts[i])));
  acc = convolve_indicator(acc, sets.back());
  return {acc.norm2_sq(), 0, 1};
}

}  // namespace

Estimate frobenius_lhs(std::span<const Subset> sets, int m, const ScanStrategy& mode, const Budget& budget) {
  require_common_group(sets);
  if (m < 1 || sets.size() != static_cast<std::size_t>(m) + 1)
    throw Error(ErrorKind::InvalidParameters, "frobenius formula needs m >= 1 and m+1 sets");
  const Group& G = sets.front().group();
  std::uint64_t per_sample = 0;
  for (const auto& s : sets) per_sample += static_cast<std::uint64_t>(G.order()) * s.size();
  if (std::holds_alternative<Exhaustive>(mode)) {
    if (m != 1 || G.order() > 720)
      throw Error(ErrorKind::BudgetExceeded, "exhaustive frobenius evaluation is limited to m = 1 and |G| <= 720");
    budget.require(per_sample * G.order(), "exhaustive frobenius evaluation");
    std::vector<double> vals(G.order());
    parallel_for(G.order(), [&](std::size_t s) { vals[s] = frobenius_sample(sets, {static_cast<Element>(s)}).value; });
    double total = 0;
    for (double v : vals) total += v;
    return {total / static_cast<double>(G.order()), 0, G.order()};
  }
  const auto& sampled = std::get<Sampled>(mode);
  if (sampled.samples < 2) throw Error(ErrorKind::InvalidParameters, "Monte Carlo needs at least two samples");
  budget.require(per_sample * sampled.samples, "Monte Carlo frobenius evaluation");
  std::vector<double> vals(sampled.samples);
  parallel_for(sampled.samples, [&](std::size_t i) {
    Rng rng(mix_seed(sampled.seed, i));
    std::vector<Element> shifts(static_cast<std::size_t>(m));
    for (auto& s : shifts) s = static_cast<Element>(rng.below(G.order()));
    vals[i] = frobenius_sample(sets, shifts).value;
  });
  double mean = 0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  double var = 0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= static_cast<double>(vals.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(vals.size())), vals.size()};
}

std::vector<Element> shifts_to_conjugators(const Group& g, std::span<const Element> shifts) {
  std::vector<Element> t;
  if (shifts.empty()) return t;
  t.push_back(g.identity());
  for (std::size_t i = 0; i + 1 < shifts.size(); ++i) t.push_back(g.multiply(shifts[i], t.back()));
  return t;
}

namespace {

double linf_distance_unchecked(std::span<const Subset> sets, std::span<const Element> shifts) {
  const GroupFunction h = shifted_convolution(sets, shifts);
  double d = 0;
  for (const auto& v : h.values()) d = std::max(d, std::abs(v - 1.0));
  return d;
}

bool translates_cover(std::span<const Subset> sets, std::span<const Element> shifts) {
  const Group& G = sets.front().group();
  Subset acc = right_translate(sets[0], G.inverse(shifts[0]));
  for (std::size_t i = 1; i < sets.size(); ++i) acc = product_set(acc, right_translate(sets[i], G.inverse(shifts[i])));
  return acc.size() == G.order();
}

}  // namespace

double linf_mixing_distance(std::span<const Subset> sets, std::span<const Element> shifts) {
  const double d = linf_distance_unchecked(sets, shifts);
  if (d < 0.5 && !translates_cover(sets, shifts))
    throw Error(ErrorKind::ToleranceViolation, "L-infinity distance below 1/2 but the translated product misses elements");
  return d;
}

CriterionReport criterion_check(std::span<const Subset> sets_in, const CharacterTable& table, double eps, int m,
                                const ScanStrategy& shift_search, const Budget& budget) {
  require_common_group(sets_in);
  require_table(sets_in.front().group_ptr(), table);
  if (m < 2 || m % 2 != 0) throw Error(ErrorKind::InvalidParameters, "m must be a positive even integer");
  if (!(eps > 0)) throw Error(ErrorKind::InvalidParameters, "eps must be positive");
  std::vector<Subset> sets;
  if (sets_in.size() == 1) {
    sets.assign(static_cast<std::size_t>(m), sets_in.front());
  } else if (sets_in.size() == static_cast<std::size_t>(m)) {
    sets.assign(sets_in.begin(), sets_in.end());
  } else {
    throw Error(ErrorKind::InvalidParameters, "criterion needs one set or m sets");
  }
  const Group& G = sets.front().group();
  CriterionReport rep;
  rep.m = m;
  rep.eps = eps;
  rep.hypothesis = true;
  std::vector<std::vector<double>> norms;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto hist = quotient_class_histogram(sets[i]);
    std::vector<double> ni;
    for (std::size_t chi = 0; chi < table.size(); ++chi) {
      const double mean = mean_from_histogram(hist, sets[i].size() * sets[i].size(), table, chi);
      ni.push_back(table[chi].degree * mean);
      CharacterMargin cm;
      cm.set = i;
      cm.chi = chi;
      cm.degree = table[chi].degree;
      cm.value = std::abs(mean);
      cm.bound = 2 * std::pow(static_cast<double>(cm.degree), 1 - eps);
      cm.holds = cm.value < cm.bound;
      if (chi == 0) {
        rep.trivial.push_back(cm);
        continue;
      }
      if (!cm.holds) {
        rep.hypothesis = false;
        rep.violations.push_back(cm);
      }
      rep.margins.push_back(cm);
    }
    norms.push_back(std::move(ni));
  }
  rep.t = m * eps / 2 - 1;
  rep.zeta_threshold = std::pow(2.0, -m / 2.0 - 1);
  if (rep.t > 0) {
    rep.zeta_t = witten_zeta(table, rep.t, false);
    rep.zeta_condition = *rep.zeta_t < rep.zeta_threshold;
  }
  for (std::size_t chi = 1; chi < table.size(); ++chi) {
    double prod = std::pow(static_cast<double>(table[chi].degree), 1.0 - m);
    for (const auto& n : norms) prod *= std::sqrt(std::max(0.0, n[chi]));
    rep.expected_linf_bound += prod;
  }

  // Witness search over shift tuples.
  std::uint64_t per_tuple = 0;
  for (const auto& s : sets) per_tuple += static_cast<std::uint64_t>(G.order()) * s.size();
  std::vector<std::vector<Element>> candidates;
  if (std::holds_alternative<Exhaustive>(shift_search)) {
    double total = std::pow(static_cast<double>(G.order()), m);
    if (total > 1e6) throw Error(ErrorKind::BudgetExceeded, "exhaustive shift search needs |G|^m <= 1e6");
    rep.exhaustive = true;
    const auto count = static_cast<std::size_t>(std::llround(total));
    budget.require(per_tuple * count, "exhaustive shift search");
    candidates.reserve(count);
    std::vector<Element> cur(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < count; ++i) {
      candidates.push_back(cur);
      for (std::size_t p = cur.size(); p-- > 0;) {
        if (++cur[p] < G.order()) break;
        cur[p] = 0;
      }
    }
  } else {
    const auto& sampled = std::get<Sampled>(shift_search);
    budget.require(per_tuple * sampled.samples, "sampled shift search");
    for (std::size_t i = 0; i < sampled.samples; ++i) {
      Rng rng(mix_seed(sampled.seed, i));
      std::vector<Element> cur(static_cast<std::size_t>(m));
      for (auto& s : cur) s = static_cast<Element>(rng.below(G.order()));
      candidates.push_back(std::move(cur));
    }
  }
  const std::size_t batch = std::max<std::size_t>(1, worker_count() * 4);
  for (std::size_t start = 0; start < candidates.size() && !rep.shifts; start += batch) {
    const std::size_t end = std::min(candidates.size(), start + batch);
    std::vector<double> dist(end - start);
    parallel_for(end - start, [&](std::size_t i) { dist[i] = linf_distance_unchecked(sets, candidates[start + i]); });
    for (std::size_t i = 0; i < dist.size(); ++i) {
      if (dist[i] < 0.5) {
        rep.shifts = candidates[start + i];
        rep.witness_linf = dist[i];
        rep.tuples_tried = start + i + 1;
        break;
      }
    }
    if (!rep.shifts) rep.tuples_tried = end;
  }
  if (rep.shifts) {
    rep.conjugators = shifts_to_conjugators(G, *rep.shifts);
    std::vector<Subset> conj;
    for (std::size_t i = 0; i < sets.size(); ++i) conj.push_back(conjugate_subset(sets[i], rep.conjugators[i]));
    rep.covered = product_set(conj).size() == G.order();
    if (!rep.covered) throw Error(ErrorKind::ToleranceViolation, "witness shifts do not yield a covering product of conjugates");
  }
  return rep;
}

}  // namespace prodlab
