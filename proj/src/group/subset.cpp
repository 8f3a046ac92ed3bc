#include "prodlab/subset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "prodlab/error.hpp"

namespace prodlab {

Subset::Subset(GroupPtr group) : group_(std::move(group)), bits_(group_->order()) {}

Subset Subset::from_elements(GroupPtr group, std::span<const Element> elements) {
  Subset s(std::move(group));
  for (Element x : elements) {
    if (x >= s.group().order()) throw Error(ErrorKind::InvalidParameters, "element index out of range");
    s.bits_.set(x);
  }
  return s;
}

Subset Subset::full(GroupPtr group) {
  Subset s(std::move(group));
  s.bits_.set();
  return s;
}

Subset Subset::singleton(GroupPtr group, Element x) {
  const Element xs[] = {x};
  return from_elements(std::move(group), xs);
}

Subset Subset::conjugacy_class(GroupPtr group, std::size_t index) {
  if (index >= group->class_count())
    throw Error(ErrorKind::InvalidParameters, "class index " + std::to_string(index) + " out of range");
  Subset s(group);
  s.bits_ = group->classes()[index].members;
  return s;
}

Subset Subset::random(GroupPtr group, std::size_t size, std::uint64_t seed) {
  if (size > group->order()) throw Error(ErrorKind::InvalidParameters, "random subset larger than the group");
  Subset s(group);
  Rng rng(seed);
  for (auto x : rng.sample(group->order(), size)) s.bits_.set(x);
  return s;
}

std::vector<Element> Subset::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) out.push_back(static_cast<Element>(i));
  return out;
}

void require_same_group(const Subset& a, const Subset& b) {
  if (!a.same_group(b)) throw Error(ErrorKind::GroupMismatch, "subsets belong to different groups");
}

Subset conjugate_subset(const Subset& a, Element s) {
  const Group& g = a.group();
  if (s >= g.order()) throw Error(ErrorKind::GroupMismatch, "conjugating element not in the parent group");
  Subset out(a.group_ptr());
  for (Element x : a.elements()) out.insert(g.conjugate(x, s));
  return out;
}

Subset right_translate(const Subset& a, Element s) {
  const Group& g = a.group();
  if (s >= g.order()) throw Error(ErrorKind::GroupMismatch, "translating element not in the parent group");
  Subset out(a.group_ptr());
  for (Element x : a.elements()) out.insert(g.multiply(x, s));
  return out;
}

Subset product_set(const Subset& a, const Subset& b) {
  require_same_group(a, b);
  const Group& g = a.group();
  Subset out(a.group_ptr());
  const auto ea = a.elements();
  const auto eb = b.elements();
  for (Element x : ea)
    for (Element y : eb) out.insert(g.multiply(x, y));
  return out;
}

Subset product_set(std::span<const Subset> sets) {
  if (sets.empty()) throw Error(ErrorKind::InvalidParameters, "product of an empty list of subsets");
  Subset acc = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) acc = product_set(acc, sets[i]);
  return acc;
}

std::size_t skew_product_size(const Subset& a, const Subset& b, Element s) {
  require_same_group(a, b);
  const Group& g = a.group();
  boost::dynamic_bitset<> hit(g.order());
  const auto eb = b.elements();
  for (Element x : a.elements()) {
    const Element c = g.conjugate(x, s);
    for (Element y : eb) hit.set(g.multiply(c, y));
  }
  return hit.count();
}

namespace {

std::string refuses_small_family(const GroupSpec& spec) {
  if (spec.is_permutation_family() && spec.n <= 4)
    return spec.to_string() + " is not a nonabelian simple group";
  if (spec.is_matrix_family() && spec.n == 2 && spec.q <= 3)
    return spec.to_string() + " is not a nonabelian simple group";
  return {};
}

std::size_t right_skew_size(const Group& g, const Subset& b, const std::vector<Element>& ea, Element s) {
  boost::dynamic_bitset<> hit(g.order());
  const auto eb = b.elements();
  std::vector<Element> conj;
  conj.reserve(ea.size());
  for (Element x : ea) conj.push_back(g.conjugate(x, s));
  for (Element y : eb)
    for (Element c : conj) hit.set(g.multiply(y, c));
  return hit.count();
}

}  // namespace

GrowthWitness growth_witness(const Subset& b, const Subset& a) {
  require_same_group(a, b);
  const Group& g = a.group();
  GrowthWitness w;
  if (auto why = refuses_small_family(g.spec()); !why.empty()) {
    w.diagnostic = why;
    return w;
  }
  if (b.empty()) {
    w.diagnostic = "B is empty";
    return w;
  }
  if (b.size() == g.order()) {
    w.diagnostic = "B is the whole group";
    return w;
  }
  if (a.size() < 2) {
    w.diagnostic = "A has fewer than two elements";
    return w;
  }
  const auto ea = a.elements();
  for (Element s = 0; s < g.order(); ++s) {
    const std::size_t size = right_skew_size(g, b, ea, s);
    if (size > b.size()) {
      w.sigma = s;
      w.product_size = size;
      return w;
    }
  }
  w.diagnostic = "no conjugate of A enlarges B; the parent group is not simple";
  return w;
}

SkewProduct max_skew_product(const Subset& a, const Subset& b, const ScanStrategy& strategy, const Budget& budget) {
  require_same_group(a, b);
  const Group& g = a.group();
  std::vector<Element> candidates;
  if (std::holds_alternative<Exhaustive>(strategy)) {
    budget.require(static_cast<std::uint64_t>(g.order()) * std::max<std::size_t>(1, a.size() * b.size()), "exhaustive skew-product scan");
    candidates.resize(g.order());
    for (Element s = 0; s < g.order(); ++s) candidates[s] = s;
  } else {
    const auto& sampled = std::get<Sampled>(strategy);
    if (sampled.samples == 0) throw Error(ErrorKind::InvalidParameters, "sample count must be positive");
    budget.require(static_cast<std::uint64_t>(sampled.samples) * std::max<std::size_t>(1, a.size() * b.size()), "sampled skew-product scan");
    Rng rng(sampled.seed);
    candidates.resize(sampled.samples);
    for (auto& s : candidates) s = static_cast<Element>(rng.below(g.order()));
  }
  std::vector<std::size_t> sizes(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) { sizes[i] = skew_product_size(a, b, candidates[i]); });
  SkewProduct best{candidates.front(), sizes.front()};
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (sizes[i] > best.size) best = {candidates[i], sizes[i]};
  return best;
}

Subset umvirate_subset(const GroupPtr& group, std::span<const int> fixed, const Permutation& rep) {
  if (group->spec().family != Family::AltN) throw Error(ErrorKind::InvalidParameters, "umvirates live in alternating groups");
  const int n = group->degree();
  if (rep.degree() != n || !rep.even()) throw Error(ErrorKind::InvalidParameters, "umvirate representative must be an even permutation of degree " + std::to_string(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i : fixed) {
    if (i < 0 || i >= n || seen[static_cast<std::size_t>(i)]) throw Error(ErrorKind::InvalidParameters, "umvirate points must be distinct and in range");
    seen[static_cast<std::size_t>(i)] = true;
  }
  Subset out(group);
  for (Element x = 0; x < group->order(); ++x) {
    const auto f = group->form(x);
    bool ok = true;
    for (int i : fixed) ok = ok && f[static_cast<std::size_t>(i)] == rep(i);
    if (ok) out.insert(x);
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorKind::ParseError, "bad " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

}  // namespace

Subset parse_subset_source(const GroupPtr& group, std::string_view source) {
  if (source == "all") return Subset::full(group);
  if (source == "identity") return Subset::singleton(group, group->identity());
  if (source.starts_with("class:")) return Subset::conjugacy_class(group, parse_u64(source.substr(6), "class index"));
  if (source.starts_with("random:")) {
    const auto parts = split(source.substr(7), ':');
    if (parts.size() != 2) throw Error(ErrorKind::ParseError, "expected random:<size>:<seed>");
    return Subset::random(group, parse_u64(parts[0], "subset size"), parse_u64(parts[1], "seed"));
  }
  if (source.starts_with("umvirate:")) {
    const auto rest = source.substr(9);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorKind::ParseError, "expected umvirate:<p1,p2,...>:<rep>");
    std::vector<int> fixed;
    if (colon > 0)
      for (auto p : split(rest.substr(0, colon), ',')) fixed.push_back(static_cast<int>(parse_u64(p, "umvirate point")) - 1);
    const Permutation rep = Permutation::parse(rest.substr(colon + 1), group->degree());
    return umvirate_subset(group, fixed, rep);
  }
  if (source.starts_with("elements:")) {
    Subset out(group);
    for (auto e : split(source.substr(9), '|'))
      if (!e.empty()) out.insert(group->parse_element(e));
    return out;
  }
  std::ifstream in{std::string(source)};
  if (!in) throw Error(ErrorKind::ParseError, "cannot open subset file '" + std::string(source) + "'");
  Subset out(group);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.insert(group->parse_element(line));
  }
  return out;
}

}  // namespace prodlab
