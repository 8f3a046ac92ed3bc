#include "prodlab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "prodlab/error.hpp"

namespace prodlab {

namespace {

std::vector<std::size_t> quotient_histogram(const Subset& s) {
  const Group& g = s.group();
  const auto elems = s.elements();
  std::vector<std::size_t> hist(g.class_count(), 0);
  for (Element x : elems) {
    const Element xi = g.inverse(x);
    for (Element y : elems) ++hist[g.class_of(g.multiply(xi, y))];
  }
  return hist;
}

void require_nonempty(const Subset& s) {
  if (s.empty()) throw Error(ErrorKind::EmptySubset, "subset must be nonempty");
}

}  // namespace

Rational gamma_statistic(const Subset& a, const Subset& b) {
  require_same_group(a, b);
  require_nonempty(a);
  require_nonempty(b);
  const Group& g = a.group();
  const auto ha = quotient_histogram(a);
  const auto hb = quotient_histogram(b);
  Rational total = 0;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    const auto& cls = g.classes()[c];
    total += Rational(BigInt(ha[c]) * hb[cls.inverse_class], BigInt(cls.size));
  }
  return total / (BigInt(a.size()) * b.size());
}

Concentration class_concentration(const Subset& a) {
  require_nonempty(a);
  const Group& g = a.group();
  const auto elems = a.elements();
  Concentration best;
  bool have = false;
  std::vector<std::size_t> counts(g.class_count());
  for (Element x : elems) {
    std::fill(counts.begin(), counts.end(), 0);
    const Element xi = g.inverse(x);
    for (Element y : elems) ++counts[g.class_of(g.multiply(xi, y))];
    for (std::size_t c = 0; c < counts.size(); ++c)
      if (!have || counts[c] > best.count) {
        best = {x, c, counts[c]};
        have = true;
      }
  }
  return best;
}

SkewExpectation expected_skew_product_check(const Subset& a, const Subset& b, std::size_t cls, const Budget& budget) {
  require_same_group(a, b);
  require_nonempty(a);
  require_nonempty(b);
  const Group& g = a.group();
  if (g.order() > 2520) throw Error(ErrorKind::BudgetExceeded, "exact expectation over conjugates is limited to |G| <= 2520");
  if (cls >= g.class_count()) throw Error(ErrorKind::InvalidParameters, "class index out of range");
  budget.require(static_cast<std::uint64_t>(g.order()) * a.size() * b.size(), "expected skew product");
  std::vector<std::size_t> sizes(g.order());
  parallel_for(g.order(), [&](std::size_t s) { sizes[s] = skew_product_size(a, b, static_cast<Element>(s)); });
  BigInt sum = 0;
  for (auto s : sizes) sum += s;
  SkewExpectation out;
  out.lhs = Rational(sum, BigInt(g.order()));
  const Subset alpha = Subset::conjugacy_class(a.group_ptr(), cls);
  const std::size_t alpha_b = product_set(alpha, b).size();
  const std::size_t meet = (a.bits() & alpha.bits()).count();
  out.rhs = Rational(BigInt(alpha_b) * meet, BigInt(alpha.size()));
  out.holds = out.lhs >= out.rhs;
  return out;
}

bool GlobalityReport::is_global(double r) const {
  for (const auto& lv : levels)
    if (to_double(lv.ratio) > std::pow(r, lv.d) * (1 + 1e-12)) return false;
  return true;
}

GlobalityReport globality_profile(const Subset& a, int d_max, const Budget& budget) {
  require_nonempty(a);
  const Group& g = a.group();
  if (g.spec().family != Family::AltN) throw Error(ErrorKind::InvalidParameters, "globality profiles are defined in alternating groups");
  const int n = g.degree();
  if (d_max < 0 || d_max > n - 3) throw Error(ErrorKind::InvalidParameters, "d_max must lie in [0, n-3]");
  GlobalityReport rep;
  const auto elems = a.elements();
  for (int d = 0; d <= d_max; ++d) {
    // All d-subsets of [n] in lexicographic order.
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur(static_cast<std::size_t>(d));
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
      subsets.push_back(cur);
      int i = d - 1;
      while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - d + i) --i;
      if (i < 0) break;
      ++cur[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < d; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    budget.require(static_cast<std::uint64_t>(elems.size()) * subsets.size() * static_cast<std::uint64_t>(std::max(d, 1)), "globality profile");
    struct Best {
      std::size_t count = 0;
      std::vector<int> images;
    };
    std::vector<Best> best(subsets.size());
    parallel_for(subsets.size(), [&](std::size_t si) {
      const auto& pts = subsets[si];
      std::map<std::vector<int>, std::size_t> counts;
      std::vector<int> key(pts.size());
      for (Element x : elems) {
        const auto f = g.form(x);
        for (std::size_t k = 0; k < pts.size(); ++k) key[k] = f[static_cast<std::size_t>(pts[k])];
        ++counts[key];
      }
      for (const auto& [k, c] : counts)
        if (c > best[si].count) best[si] = {c, k};
    });
    GlobalityLevel lv;
    lv.d = d;
    std::size_t best_index = 0;
    for (std::size_t si = 1; si < subsets.size(); ++si)
      if (best[si].count > best[best_index].count) best_index = si;
    lv.points = subsets[best_index];
    lv.images = best[best_index].images;
    lv.intersection = best[best_index].count;
    BigInt falling = 1;
    for (int i = 0; i < d; ++i) falling *= n - i;
    lv.umvirate_size = static_cast<std::size_t>(BigInt(g.order()) / falling);
    lv.ratio = Rational(BigInt(lv.intersection) * falling, BigInt(elems.size()));
    rep.levels.push_back(std::move(lv));
  }
  return rep;
}

namespace {

using Map = std::vector<int>;

Map compose(const Map& f, const Map& g) {  // f after g
  Map out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = f[static_cast<std::size_t>(g[x])];
  return out;
}

Map invert(const Map& f) {
  Map out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[static_cast<std::size_t>(f[x])] = static_cast<int>(x);
  return out;
}

bool even(const Map& f) {
  std::vector<std::uint8_t> img(f.begin(), f.end());
  return Permutation(img).even();
}

bool fixes(const Map& f, const std::vector<int>& pts) {
  for (int p : pts)
    if (f[static_cast<std::size_t>(p)] != p) return false;
  return true;
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ConstructionFailed, what); }

}  // namespace

PermutationTripleCover umvirate_triple_cover(const Permutation& sigma, const std::vector<int>& I, const std::vector<int>& J,
                                             const std::vector<int>& K) {
  const int n = sigma.degree();
  if (!sigma.even()) throw Error(ErrorKind::InvalidParameters, "sigma must be an even permutation");
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  const std::vector<int>* sets[] = {&I, &J, &K};
  for (int s = 0; s < 3; ++s) {
    if (sets[s]->size() < 2) throw Error(ErrorKind::InvalidParameters, "I, J, K need at least two points each");
    for (int p : *sets[s]) {
      if (p < 0 || p >= n || owner[static_cast<std::size_t>(p)] != -1) throw Error(ErrorKind::InvalidParameters, "I, J, K must be disjoint point sets");
      owner[static_cast<std::size_t>(p)] = s;
    }
  }
  // Work with functions composed right to left: rho = X o Y o Z where
  // rho = sigma^-1, X fixes I, Y fixes J, Z fixes K. Inverting gives the
  // left-to-right factorization sigma = X^-1 Y^-1 Z^-1.
  const Map s(sigma.images().begin(), sigma.images().end());
  const Map rho = invert(s);
  const Map rho_inv = s;
  PermutationTripleCover out;
  std::vector<bool> in_i(static_cast<std::size_t>(n), false), in_pre(static_cast<std::size_t>(n), false);
  for (int p : I) {
    in_i[static_cast<std::size_t>(p)] = true;
    in_pre[static_cast<std::size_t>(rho_inv[static_cast<std::size_t>(p)])] = true;
  }
  // tau agrees with rho on rho^-1(I), fixes the complement of I ∪ rho^-1(I)
  // and matches I \ rho^-1(I) with rho^-1(I) \ I in increasing order.
  Map tau(static_cast<std::size_t>(n), -1);
  std::vector<int> domain, codomain, rest;
  for (int x = 0; x < n; ++x) {
    const auto ux = static_cast<std::size_t>(x);
    if (in_pre[ux]) tau[ux] = rho[ux];
    if (in_i[ux] && !in_pre[ux]) domain.push_back(x);
    if (in_pre[ux] && !in_i[ux]) codomain.push_back(x);
    if (!in_i[ux] && !in_pre[ux]) {
      tau[ux] = x;
      rest.push_back(x);
    }
  }
  for (std::size_t k = 0; k < domain.size(); ++k) tau[static_cast<std::size_t>(domain[k])] = codomain[k];
  if (!even(tau)) {
    out.parity_adjusted = true;
    if (domain.size() >= 2) {
      std::swap(tau[static_cast<std::size_t>(domain[0])], tau[static_cast<std::size_t>(domain[1])]);
    } else {
      std::vector<int> in_k, not_k;
      for (int x : rest) (owner[static_cast<std::size_t>(x)] == 2 ? in_k : not_k).push_back(x);
      const std::vector<int>* pick = in_k.size() >= 2 ? &in_k : not_k.size() >= 2 ? &not_k : nullptr;
      if (!pick) fail("no transposition available to fix the parity of the I-step");
      std::swap(tau[static_cast<std::size_t>((*pick)[0])], tau[static_cast<std::size_t>((*pick)[1])]);
    }
  }
  const Map x_map = compose(rho, invert(tau));
  if (!fixes(x_map, I) || !even(x_map)) fail("I-step factor is not in U_I");

  // Y agrees with tau on K and fixes J; this needs tau(K) disjoint from J.
  Map y_map(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int p : J) {
    y_map[static_cast<std::size_t>(p)] = p;
    used[static_cast<std::size_t>(p)] = true;
  }
  for (int p : K) {
    const int img = tau[static_cast<std::size_t>(p)];
    if (owner[static_cast<std::size_t>(img)] == 1) fail("tau maps a point of K into J");
    y_map[static_cast<std::size_t>(p)] = img;
    used[static_cast<std::size_t>(img)] = true;
  }
  std::vector<int> free_dom, free_cod;
  for (int x = 0; x < n; ++x) {
    if (y_map[static_cast<std::size_t>(x)] == -1) free_dom.push_back(x);
    if (!used[static_cast<std::size_t>(x)]) free_cod.push_back(x);
  }
  for (std::size_t k = 0; k < free_dom.size(); ++k) y_map[static_cast<std::size_t>(free_dom[k])] = free_cod[k];
  if (!even(y_map)) {
    if (free_dom.size() < 2) fail("no room to fix the parity of the J-step");
    std::swap(y_map[static_cast<std::size_t>(free_dom[0])], y_map[static_cast<std::size_t>(free_dom[1])]);
  }
  const Map z_map = compose(invert(y_map), tau);
  if (!fixes(y_map, J) || !even(y_map)) fail("J-step factor is not in U_J");
  if (!fixes(z_map, K) || !even(z_map)) fail("K-step factor is not in U_K");

  auto to_perm = [](const Map& m) { return Permutation(std::vector<std::uint8_t>(m.begin(), m.end())); };
  out.sigma_i = to_perm(invert(x_map));
  out.sigma_j = to_perm(invert(y_map));
  out.sigma_k = to_perm(invert(z_map));
  if (out.sigma_i * out.sigma_j * out.sigma_k != sigma) fail("factors do not multiply back to sigma");
  return out;
}

TripleCover umvirate_triple_cover(const Group& alt, Element sigma, const std::vector<int>& I, const std::vector<int>& J,
                                  const std::vector<int>& K) {
  if (alt.spec().family != Family::AltN) throw Error(ErrorKind::InvalidParameters, "umvirate covers live in alternating groups");
  const auto c = umvirate_triple_cover(alt.permutation(sigma), I, J, K);
  auto index_of = [&](const Permutation& p) {
    const auto e = alt.find(p.images());
    if (!e) fail("factor is not an element of the group");
    return *e;
  };
  TripleCover out;
  out.sigma_i = index_of(c.sigma_i);
  out.sigma_j = index_of(c.sigma_j);
  out.sigma_k = index_of(c.sigma_k);
  out.parity_adjusted = c.parity_adjusted;
  if (alt.multiply(alt.multiply(out.sigma_i, out.sigma_j), out.sigma_k) != sigma) fail("factors do not multiply back to sigma");
  return out;
}

bool verify_conjugate_cover(const Subset& a, const std::vector<Element>& conjugators) {
  if (conjugators.empty()) return false;
  for (Element s : conjugators)
    if (s >= a.group().order()) return false;
  Subset acc = conjugate_subset(a, conjugators.front());
  for (std::size_t i = 1; i < conjugators.size(); ++i) acc = product_set(acc, conjugate_subset(a, conjugators[i]));
  return acc.size() == a.group().order();
}

namespace {

Subset product_with(const Subset& p, const std::vector<Element>& b) {
  const Group& g = p.group();
  Subset out(p.group_ptr());
  const auto pe = p.elements();
  for (Element y : b)
    for (Element x : pe) out.insert(g.multiply(x, y));
  return out;
}

std::vector<Element> conjugate_elements(const Subset& a, Element s) {
  std::vector<Element> out;
  for (Element x : a.elements()) out.push_back(a.group().conjugate(x, s));
  return out;
}

}  // namespace

CoverResult conjugate_cover_search(const Subset& a, std::size_t m_max, std::uint64_t seed, std::size_t restarts) {
  require_nonempty(a);
  const Group& g = a.group();
  CoverResult best;
  const std::size_t pool = g.order() <= 720 ? g.order() : 64;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, restarts); ++r) {
    Rng rng(mix_seed(seed, r));
    std::vector<Element> chosen{r == 0 ? g.identity() : static_cast<Element>(rng.below(g.order()))};
    Subset prod = conjugate_subset(a, chosen.front());
    const std::size_t limit = best.found ? std::min(m_max, best.m - 1) : m_max;
    while (prod.size() < g.order() && chosen.size() < limit) {
      std::vector<Element> cand;
      if (r == 0) {
        cand.resize(g.order());
        std::iota(cand.begin(), cand.end(), 0);
      } else {
        for (std::size_t i = 0; i < pool; ++i) cand.push_back(static_cast<Element>(rng.below(g.order())));
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      }
      std::vector<std::size_t> sizes(cand.size());
      parallel_for(cand.size(), [&](std::size_t i) { sizes[i] = product_with(prod, conjugate_elements(a, cand[i])).size(); });
      std::size_t bi = 0;
      for (std::size_t i = 1; i < cand.size(); ++i)
        if (sizes[i] > sizes[bi]) bi = i;
      chosen.push_back(cand[bi]);
      prod = product_with(prod, conjugate_elements(a, cand[bi]));
    }
    if (prod.size() == g.order() && (!best.found || chosen.size() < best.m)) {
      best.found = true;
      best.m = chosen.size();
      best.conjugators = chosen;
    }
    best.restarts = r + 1;
    if (best.found && best.m == 1) break;
  }
  if (best.found && !verify_conjugate_cover(a, best.conjugators))
    throw Error(ErrorKind::ToleranceViolation, "cover search produced a product that does not recheck");
  return best;
}

}  // namespace prodlab
