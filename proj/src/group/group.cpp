#include "prodlab/group.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "prodlab/error.hpp"

namespace prodlab {

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorKind::InvalidParameters, "bad " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

constexpr int kBitsPerEntry = 5;
constexpr std::size_t kMaxPackedEntries = 12;

}  // namespace

GroupSpec GroupSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorKind::InvalidParameters, "group spec needs '<family>:<params>': " + std::string(text));
  const std::string_view family = text.substr(0, colon);
  const std::string_view params = text.substr(colon + 1);
  GroupSpec spec;
  if (family == "cayley") {
    spec.family = Family::CayleyFile;
    spec.path = std::string(params);
    if (spec.path.empty()) throw Error(ErrorKind::InvalidParameters, "cayley spec needs a path");
    return spec;
  }
  if (family == "Sn" || family == "An") {
    spec.family = family == "Sn" ? Family::SymN : Family::AltN;
    spec.n = parse_int(params, "degree");
    if (spec.n < 1) throw Error(ErrorKind::InvalidParameters, "permutation degree must be >= 1");
    if (spec.n > static_cast<int>(kMaxPackedEntries)) throw Error(ErrorKind::OrderCapExceeded, "degree too large for the order cap");
    return spec;
  }
  if (family == "SL" || family == "PSL") {
    spec.family = family == "SL" ? Family::SLnq : Family::PSLnq;
    const auto comma = params.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::InvalidParameters, "matrix group spec needs 'n,q'");
    spec.n = parse_int(params.substr(0, comma), "dimension");
    spec.q = parse_int(params.substr(comma + 1), "field order");
    int p = 0, k = 0;
    if (spec.n < 2) throw Error(ErrorKind::InvalidParameters, "matrix dimension must be >= 2");
    if (spec.q > fq::Field::kMaxOrder || !fq::prime_power(spec.q, p, k))
      throw Error(ErrorKind::InvalidParameters, "q must be a prime power <= 32");
    return spec;
  }
  throw Error(ErrorKind::InvalidParameters, "unknown group family '" + std::string(family) + "'");
}

std::string GroupSpec::to_string() const {
  switch (family) {
    case Family::SymN: return "Sn:" + std::to_string(n);
    case Family::AltN: return "An:" + std::to_string(n);
    case Family::SLnq: return "SL:" + std::to_string(n) + "," + std::to_string(q);
    case Family::PSLnq: return "PSL:" + std::to_string(n) + "," + std::to_string(q);
    case Family::CayleyFile: return "cayley:" + path;
  }
  return {};
}

BigInt family_order(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::SymN: return factorial(static_cast<unsigned>(spec.n));
    case Family::AltN: return spec.n <= 1 ? BigInt(1) : factorial(static_cast<unsigned>(spec.n)) / 2;
    case Family::SLnq:
    case Family::PSLnq: {
      const BigInt q = spec.q;
      BigInt order = power(q, static_cast<unsigned>(spec.n * (spec.n - 1) / 2));
      for (int i = 2; i <= spec.n; ++i) order *= power(q, static_cast<unsigned>(i)) - 1;
      if (spec.family == Family::PSLnq) order /= std::gcd(spec.n, spec.q - 1);
      return order;
    }
    case Family::CayleyFile: break;
  }
  throw Error(ErrorKind::InvalidParameters, "no order formula for Cayley-file groups");
}

class GroupBuilder {
 public:
  static GroupPtr from_spec(const GroupSpec& spec);
  static GroupPtr from_table(const std::vector<std::vector<Element>>& table, std::string name, GroupSpec spec);

 private:
  static void close(Group& g, const std::vector<std::vector<std::uint8_t>>& generator_forms);
  static void finish(Group& g);
};

void Group::multiply_forms(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const {
  if (kind_ == Kind::Permutation) {
    for (std::size_t i = 0; i < width_; ++i) out[i] = b[a[i]];
    return;
  }
  const fq::Field& f = *field_;
  const int n = degree_;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      fq::Elem s = 0;
      for (int k = 0; k < n; ++k) s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
      out[i * n + j] = s;
    }
  if (kind_ == Kind::ProjectiveMatrix) normalize(out);
}

void Group::normalize(std::uint8_t* form) const {
  if (kind_ != Kind::ProjectiveMatrix) return;
  std::uint8_t best[kMaxPackedEntries];
  std::uint8_t trial[kMaxPackedEntries];
  std::copy(form, form + width_, best);
  std::uint64_t best_code = pack(best);
  for (fq::Elem s : scalars_) {
    for (std::size_t i = 0; i < width_; ++i) trial[i] = field_->mul(form[i], s);
    const std::uint64_t code = pack(trial);
    if (code < best_code) {
      best_code = code;
      std::copy(trial, trial + width_, best);
    }
  }
  std::copy(best, best + width_, form);
}

std::uint64_t Group::pack(const std::uint8_t* form) const {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < width_; ++i) code = (code << kBitsPerEntry) | form[i];
  return code;
}

Element Group::multiply(Element a, Element b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
  std::uint8_t out[kMaxPackedEntries];
  multiply_forms(forms_.data() + static_cast<std::size_t>(a) * width_, forms_.data() + static_cast<std::size_t>(b) * width_, out);
  return index_.at(pack(out));
}

bool Group::abelian() const {
  for (Element a : generators_)
    for (Element b : generators_)
      if (multiply(a, b) != multiply(b, a)) return false;
  return true;
}

std::optional<Element> Group::find(std::span<const std::uint8_t> form) const {
  if (kind_ == Kind::Table || form.size() != width_) return std::nullopt;
  std::uint8_t buf[kMaxPackedEntries];
  std::copy(form.begin(), form.end(), buf);
  normalize(buf);
  const auto it = index_.find(pack(buf));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Permutation Group::permutation(Element x) const {
  if (kind_ != Kind::Permutation) throw Error(ErrorKind::InvalidParameters, name_ + " is not a permutation group");
  const auto f = form(x);
  return Permutation(std::vector<std::uint8_t>(f.begin(), f.end()));
}

fq::Matrix Group::matrix(Element x) const {
  if (kind_ != Kind::Matrix && kind_ != Kind::ProjectiveMatrix) throw Error(ErrorKind::InvalidParameters, name_ + " is not a matrix group");
  fq::Matrix m(*field_, degree_, degree_);
  const auto f = form(x);
  std::copy(f.begin(), f.end(), m.entries().begin());
  return m;
}

std::string Group::format(Element x) const {
  switch (kind_) {
    case Kind::Permutation: return permutation(x).to_string();
    case Kind::Matrix:
    case Kind::ProjectiveMatrix: return matrix(x).to_string();
    case Kind::Table: break;
  }
  return std::to_string(x);
}

Element Group::parse_element(std::string_view text) const {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  std::optional<Element> found;
  switch (kind_) {
    case Kind::Permutation: {
      const Permutation p = Permutation::parse(text, degree_);
      found = find(p.images());
      break;
    }
    case Kind::Matrix:
    case Kind::ProjectiveMatrix: {
      const fq::Matrix m = fq::Matrix::parse(*field_, text);
      if (m.rows() != degree_ || m.cols() != degree_) throw Error(ErrorKind::ParseError, "matrix has the wrong dimension: " + std::string(text));
      found = find(m.entries());
      break;
    }
    case Kind::Table: {
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || ptr != text.data() + text.size()) throw Error(ErrorKind::ParseError, "bad element index: " + std::string(text));
      if (v >= 0 && static_cast<std::size_t>(v) < order_) found = static_cast<Element>(v);
      break;
    }
  }
  if (!found) throw Error(ErrorKind::ParseError, "'" + std::string(text) + "' is not an element of " + name_);
  return *found;
}

void GroupBuilder::close(Group& g, const std::vector<std::vector<std::uint8_t>>& generator_forms) {
  const std::size_t w = g.width_;
  std::vector<std::uint8_t> forms;
  std::unordered_map<std::uint64_t, Element> seen;
  std::vector<std::uint8_t> id(w, 0);
  if (g.kind_ == Group::Kind::Permutation) {
    for (std::size_t i = 0; i < w; ++i) id[i] = static_cast<std::uint8_t>(i);
  } else {
    for (int i = 0; i < g.degree_; ++i) id[static_cast<std::size_t>(i * g.degree_ + i)] = 1;
    g.normalize(id.data());
  }
  forms.insert(forms.end(), id.begin(), id.end());
  seen.emplace(g.pack(id.data()), 0);
  std::uint8_t out[kMaxPackedEntries];
  for (std::size_t head = 0; head * w < forms.size(); ++head) {
    for (const auto& gen : generator_forms) {
      g.multiply_forms(forms.data() + head * w, gen.data(), out);
      const std::uint64_t code = g.pack(out);
      if (seen.emplace(code, static_cast<Element>(seen.size())).second) {
        if (seen.size() > GroupSpec::kHardOrderCap) throw Error(ErrorKind::OrderCapExceeded, "closure exceeded the hard order cap");
        forms.insert(forms.end(), out, out + w);
      }
    }
  }
  // Canonical order: sort by packed code.
  std::vector<std::uint64_t> codes;
  codes.reserve(seen.size());
  for (const auto& [code, idx] : seen) codes.push_back(code);
  std::sort(codes.begin(), codes.end());
  g.order_ = codes.size();
  g.forms_.assign(g.order_ * w, 0);
  g.index_.reserve(g.order_);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const Element old = seen.at(codes[i]);
    std::copy(forms.begin() + static_cast<std::ptrdiff_t>(old * w), forms.begin() + static_cast<std::ptrdiff_t>((old + 1) * w),
              g.forms_.begin() + static_cast<std::ptrdiff_t>(i * w));
    g.index_.emplace(codes[i], static_cast<Element>(i));
  }
  g.identity_ = g.index_.at(g.pack(id.data()));
  for (const auto& gen : generator_forms) {
    const Element e = g.index_.at(g.pack(gen.data()));
    if (std::find(g.generators_.begin(), g.generators_.end(), e) == g.generators_.end()) g.generators_.push_back(e);
  }
  if (g.order_ <= Group::kTableThreshold) {
    g.table_.resize(g.order_ * g.order_);
    for (Element a = 0; a < g.order_; ++a)
      for (Element b = 0; b < g.order_; ++b) {
        g.multiply_forms(g.forms_.data() + static_cast<std::size_t>(a) * w, g.forms_.data() + static_cast<std::size_t>(b) * w, out);
        g.table_[static_cast<std::size_t>(a) * g.order_ + b] = static_cast<std::uint16_t>(g.index_.at(g.pack(out)));
      }
  }
}

void GroupBuilder::finish(Group& g) {
  const std::size_t n = g.order_;
  g.inverse_.assign(n, 0);
  // Inverses: x^-1 is the first power before the identity.
  std::vector<bool> done(n, false);
  for (Element x = 0; x < n; ++x) {
    if (done[x]) continue;
    Element p = x;
    Element prev = g.identity_;
    while (true) {
      const Element next = g.multiply(p, x);
      if (next == g.identity_) {
        prev = p;
        break;
      }
      p = next;
    }
    g.inverse_[x] = prev;
    g.inverse_[prev] = x;
    done[x] = done[prev] = true;
  }
  for (Element x = 0; x < n; ++x)
    if (g.multiply(x, g.inverse_[x]) != g.identity_) throw Error(ErrorKind::InvalidParameters, "inverse computation failed");

  g.class_of_.assign(n, static_cast<std::uint32_t>(-1));
  auto orbit = [&](Element start) {
    ConjugacyClassInfo info;
    info.members.resize(n);
    info.representative = start;
    const auto idx = static_cast<std::uint32_t>(g.classes_.size());
    std::deque<Element> queue{start};
    info.members.set(start);
    g.class_of_[start] = idx;
    while (!queue.empty()) {
      const Element y = queue.front();
      queue.pop_front();
      for (Element s : g.generators_) {
        const Element z = g.conjugate(y, s);
        if (!info.members.test(z)) {
          info.members.set(z);
          g.class_of_[z] = idx;
          queue.push_back(z);
        }
      }
    }
    info.size = info.members.count();
    g.classes_.push_back(std::move(info));
  };
  orbit(g.identity_);
  for (Element x = 0; x < n; ++x)
    if (g.class_of_[x] == static_cast<std::uint32_t>(-1)) orbit(x);
  for (auto& c : g.classes_) c.inverse_class = g.class_of_[g.inverse_[c.representative]];
}

GroupPtr GroupBuilder::from_spec(const GroupSpec& spec) {
  if (spec.order_cap > GroupSpec::kHardOrderCap)
    throw Error(ErrorKind::InvalidParameters, "order cap exceeds the hard maximum " + std::to_string(GroupSpec::kHardOrderCap));
  if (spec.family == Family::CayleyFile) {
    std::ifstream in(spec.path);
    if (!in) throw Error(ErrorKind::CayleyFileMalformed, "cannot open " + spec.path);
    std::string line;
    std::string word;
    std::size_t k = 0;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      if (!(ls >> word)) continue;
      if (word != "order" || !(ls >> k) || k == 0) throw Error(ErrorKind::CayleyFileMalformed, "expected header 'order k'");
      break;
    }
    if (k == 0) throw Error(ErrorKind::CayleyFileMalformed, "missing header 'order k'");
    if (k > spec.order_cap) throw Error(ErrorKind::OrderCapExceeded, "order " + std::to_string(k) + " exceeds cap " + std::to_string(spec.order_cap));
    std::vector<std::vector<Element>> table;
    while (table.size() < k && std::getline(in, line)) {
      std::istringstream ls(line);
      std::vector<Element> row;
      long long v = 0;
      while (ls >> v) {
        if (v < 0 || static_cast<std::size_t>(v) >= k) throw Error(ErrorKind::CayleyFileMalformed, "entry out of range in row " + std::to_string(table.size()));
        row.push_back(static_cast<Element>(v));
      }
      if (!ls.eof()) throw Error(ErrorKind::CayleyFileMalformed, "non-numeric entry in row " + std::to_string(table.size()));
      if (row.empty()) continue;
      if (row.size() != k) throw Error(ErrorKind::CayleyFileMalformed, "row " + std::to_string(table.size()) + " has " + std::to_string(row.size()) + " entries");
      table.push_back(std::move(row));
    }
    if (table.size() != k) throw Error(ErrorKind::CayleyFileMalformed, "expected " + std::to_string(k) + " rows");
    while (std::getline(in, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos) throw Error(ErrorKind::CayleyFileMalformed, "trailing data after table");
    return from_table(table, spec.to_string(), spec);
  }

  const BigInt expected = family_order(spec);
  if (expected > spec.order_cap)
    throw Error(ErrorKind::OrderCapExceeded, spec.to_string() + " has order " + to_decimal(expected) + " above cap " + std::to_string(spec.order_cap));

  auto g = std::shared_ptr<Group>(new Group());
  g->spec_ = spec;
  g->name_ = spec.to_string();
  g->degree_ = spec.n;
  std::vector<std::vector<std::uint8_t>> gens;
  if (spec.is_permutation_family()) {
    g->kind_ = Group::Kind::Permutation;
    g->width_ = static_cast<std::size_t>(spec.n);
    const int n = spec.n;
    if (spec.family == Family::SymN && n >= 2) {
      gens.push_back(Permutation::parse("(1 2)", n).images());
      std::string cycle = "(";
      for (int i = 1; i <= n; ++i) cycle += std::to_string(i) + (i < n ? " " : ")");
      gens.push_back(Permutation::parse(cycle, n).images());
    } else if (spec.family == Family::AltN) {
      for (int k = 3; k <= n; ++k) gens.push_back(Permutation::parse("(1 2 " + std::to_string(k) + ")", n).images());
    }
  } else {
    g->kind_ = spec.family == Family::PSLnq ? Group::Kind::ProjectiveMatrix : Group::Kind::Matrix;
    g->width_ = static_cast<std::size_t>(spec.n * spec.n);
    if (g->width_ > kMaxPackedEntries) throw Error(ErrorKind::OrderCapExceeded, "matrix dimension too large");
    const fq::Field& f = fq::Field::get(spec.q);
    g->field_ = &f;
    for (int s = 1; s < spec.q; ++s)
      if (f.pow(static_cast<fq::Elem>(s), static_cast<unsigned>(spec.n)) == 1 && s != 1) g->scalars_.push_back(static_cast<fq::Elem>(s));
    const int n = spec.n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        int c = 1;
        for (int b = 0; b < f.degree(); ++b, c *= f.characteristic()) {
          std::vector<std::uint8_t> m(g->width_, 0);
          for (int d = 0; d < n; ++d) m[static_cast<std::size_t>(d * n + d)] = 1;
          m[static_cast<std::size_t>(i * n + j)] = static_cast<std::uint8_t>(c);
          g->normalize(m.data());
          gens.push_back(std::move(m));
        }
      }
  }
  close(*g, gens);
  if (BigInt(g->order_) != expected)
    throw Error(ErrorKind::InvalidParameters, "closure of " + g->name_ + " has order " + std::to_string(g->order_) + ", expected " + to_decimal(expected));
  finish(*g);
  return g;
}

GroupPtr GroupBuilder::from_table(const std::vector<std::vector<Element>>& table, std::string name, GroupSpec spec) {
  const std::size_t k = table.size();
  auto malformed = [](const std::string& msg) { return Error(ErrorKind::CayleyFileMalformed, msg); };
  if (k == 0) throw malformed("empty table");
  if (k > GroupSpec::kHardOrderCap) throw Error(ErrorKind::OrderCapExceeded, "table exceeds the hard order cap");
  auto g = std::shared_ptr<Group>(new Group());
  g->spec_ = std::move(spec);
  g->spec_.family = Family::CayleyFile;
  g->name_ = std::move(name);
  g->kind_ = Group::Kind::Table;
  g->order_ = k;
  g->table_.resize(k * k);
  // Latin square.
  std::vector<std::uint32_t> col_seen(k * k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    if (table[a].size() != k) throw malformed("row " + std::to_string(a) + " has the wrong length");
    std::vector<bool> row_seen(k, false);
    for (std::size_t b = 0; b < k; ++b) {
      const Element v = table[a][b];
      if (v >= k) throw malformed("entry out of range");
      if (row_seen[v]) throw malformed("row " + std::to_string(a) + " repeats an entry");
      row_seen[v] = true;
      if (col_seen[b * k + v]++) throw malformed("column " + std::to_string(b) + " repeats an entry");
      g->table_[a * k + b] = static_cast<std::uint16_t>(v);
    }
  }
  std::optional<Element> identity;
  for (Element e = 0; e < k && !identity; ++e) {
    bool ok = true;
    for (Element x = 0; x < k && ok; ++x) ok = g->table_[e * k + x] == x && g->table_[x * k + e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw malformed("no identity element");
  g->identity_ = *identity;
  // Greedy generating set, then Light's associativity test on it.
  boost::dynamic_bitset<> reached(k);
  reached.set(g->identity_);
  std::vector<Element> span_list{g->identity_};
  for (Element x = 0; x < k; ++x) {
    if (reached.test(x)) continue;
    g->generators_.push_back(x);
    std::deque<Element> queue(span_list.begin(), span_list.end());
    while (!queue.empty()) {
      const Element y = queue.front();
      queue.pop_front();
      for (Element s : g->generators_) {
        const Element z = g->table_[static_cast<std::size_t>(y) * k + s];
        if (!reached.test(z)) {
          reached.set(z);
          span_list.push_back(z);
          queue.push_back(z);
        }
      }
    }
  }
  for (Element s : g->generators_)
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y) {
        const std::size_t xs = g->table_[x * k + s];
        const std::size_t sy = g->table_[static_cast<std::size_t>(s) * k + y];
        if (g->table_[xs * k + y] != g->table_[x * k + sy]) throw malformed("multiplication is not associative");
      }
  finish(*g);
  return g;
}

GroupPtr build_group(const GroupSpec& spec) { return GroupBuilder::from_spec(spec); }

GroupPtr build_group(std::string_view spec) { return build_group(GroupSpec::parse(spec)); }

GroupPtr group_from_table(const std::vector<std::vector<Element>>& table, std::string name) {
  GroupSpec spec;
  spec.family = Family::CayleyFile;
  spec.path = name;
  return GroupBuilder::from_table(table, std::move(name), std::move(spec));
}

GroupPtr abelian_group(const std::vector<int>& moduli) {
  std::size_t k = 1;
  for (int m : moduli) {
    if (m < 1) throw Error(ErrorKind::InvalidParameters, "moduli must be positive");
    k *= static_cast<std::size_t>(m);
    if (k > GroupSpec::kHardOrderCap) throw Error(ErrorKind::OrderCapExceeded, "abelian group too large");
  }
  auto digits = [&](std::size_t x) {
    std::vector<int> d(moduli.size());
    for (std::size_t i = moduli.size(); i-- > 0;) {
      d[i] = static_cast<int>(x % static_cast<std::size_t>(moduli[i]));
      x /= static_cast<std::size_t>(moduli[i]);
    }
    return d;
  };
  std::vector<std::vector<Element>> table(k, std::vector<Element>(k));
  for (std::size_t a = 0; a < k; ++a) {
    const auto da = digits(a);
    for (std::size_t b = 0; b < k; ++b) {
      const auto db = digits(b);
      std::size_t code = 0;
      for (std::size_t i = 0; i < moduli.size(); ++i) code = code * static_cast<std::size_t>(moduli[i]) + static_cast<std::size_t>((da[i] + db[i]) % moduli[i]);
      table[a][b] = static_cast<Element>(code);
    }
  }
  std::string name = "Z";
  for (std::size_t i = 0; i < moduli.size(); ++i) name += (i ? "xZ" : "") + std::to_string(moduli[i]);
  if (moduli.empty()) name = "Z1";
  return group_from_table(table, name);
}

}  // namespace prodlab
