#include <boost/version.hpp>
#include <Eigen/Core>

#include "internal.hpp"
#include "prodlab/error.hpp"

namespace prodlab::report {

Json set_json(const Subset& s) {
  Json out = Json::array();
  for (Element x : s.elements()) out.push_back(s.group().format(x));
  return out;
}

Subset set_from_json(const GroupPtr& g, const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::SchemaMismatch, "set must be an array of elements");
  Subset s(g);
  for (const auto& e : j) {
    if (!e.is_string()) throw Error(ErrorKind::SchemaMismatch, "set elements must be strings");
    s.insert(g->parse_element(e.get<std::string>()));
  }
  return s;
}

Json versions() {
  Json v;
  v["prodlab"] = PRODLAB_VERSION;
  v["boost"] = std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000) + "." + std::to_string(BOOST_VERSION % 100);
  v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." + std::to_string(EIGEN_MINOR_VERSION);
  v["json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  return v;
}

Json make_report(const std::string& command, Json config) {
  Json r;
  r["command"] = command;
  r["config"] = std::move(config);
  r["results"] = Json::object();
  r["witnesses"] = Json::array();
  r["versions"] = versions();
  return r;
}

Json conjugate_cover_witness(const Group& g, const std::vector<Subset>& sets, const std::vector<Element>& conjugators) {
  Json w;
  w["type"] = "conjugate_cover";
  w["group"] = g.spec().to_string();
  Json js = Json::array();
  for (const auto& s : sets) js.push_back(set_json(s));
  w["sets"] = js;
  Json c = Json::array();
  for (Element x : conjugators) c.push_back(g.format(x));
  w["conjugators"] = c;
  w["claim"] = "product of the conjugates, sets reused cyclically, is the whole group";
  return w;
}

Json skew_product_witness(const Subset& a, const Subset& b, Element sigma, std::size_t size) {
  Json w;
  w["type"] = "skew_product";
  w["group"] = a.group().spec().to_string();
  w["A"] = set_json(a);
  w["B"] = set_json(b);
  w["sigma"] = a.group().format(sigma);
  w["size"] = size;
  w["claim"] = "|A^sigma B| = size and size * Gamma >= |A||B|";
  return w;
}

Json skew_expectation_witness(const Subset& a, const Subset& b, std::size_t cls, const SkewExpectation& r) {
  Json w;
  w["type"] = "skew_expectation";
  w["group"] = a.group().spec().to_string();
  w["A"] = set_json(a);
  w["B"] = set_json(b);
  w["class_rep"] = a.group().format(a.group().classes()[cls].representative);
  w["lhs"] = big(r.lhs);
  w["rhs"] = big(r.rhs);
  w["claim"] = "E_sigma |A^sigma B| = lhs >= rhs = |alpha B||A cap alpha|/|alpha|";
  return w;
}

Json concentration_witness(const Subset& a, const Concentration& c) {
  Json w;
  w["type"] = "class_concentration";
  w["group"] = a.group().spec().to_string();
  w["A"] = set_json(a);
  w["a"] = a.group().format(c.a);
  w["class_rep"] = a.group().format(a.group().classes()[c.cls].representative);
  w["count"] = c.count;
  w["claim"] = "|a^-1 A cap alpha| = count";
  return w;
}

Json umvirate_density_witness(const Subset& a, const GlobalityLevel& lv) {
  Json w;
  w["type"] = "umvirate_density";
  w["group"] = a.group().spec().to_string();
  w["A"] = set_json(a);
  Json pts = Json::array(), img = Json::array();
  for (int p : lv.points) pts.push_back(p + 1);
  for (int p : lv.images) img.push_back(p + 1);
  w["points"] = pts;
  w["images"] = img;
  w["intersection"] = lv.intersection;
  w["ratio"] = big(lv.ratio);
  w["claim"] = "|A cap U| = intersection and ratio = intersection (n)_d / |A| for the umvirate U";
  return w;
}

Json umvirate_factorization_witness(const Permutation& sigma, const std::vector<int>& I, const std::vector<int>& J,
                                    const std::vector<int>& K, const PermutationTripleCover& c) {
  Json w;
  w["type"] = "umvirate_factorization";
  w["degree"] = sigma.degree();
  w["sigma"] = sigma.to_string();
  auto pts = [](const std::vector<int>& v) {
    Json a = Json::array();
    for (int p : v) a.push_back(p + 1);
    return a;
  };
  w["I"] = pts(I);
  w["J"] = pts(J);
  w["K"] = pts(K);
  w["factors"] = Json::array({c.sigma_i.to_string(), c.sigma_j.to_string(), c.sigma_k.to_string()});
  w["claim"] = "sigma = sigma_I sigma_J sigma_K with each factor even and fixing its set pointwise";
  return w;
}

Json dilate_cover_witness(const fq::MatrixSpace& space, const std::vector<fq::CodeSet>& sets, const std::vector<fq::GlPair>& pairs) {
  Json w;
  w["type"] = "dilate_cover";
  w["n"] = space.n();
  w["q"] = space.field().order();
  Json js = Json::array();
  for (const auto& s : sets) {
    Json one = Json::array();
    for (fq::Code c : s) one.push_back(space.matrix(c).to_string());
    js.push_back(one);
  }
  w["sets"] = js;
  Json ps = Json::array();
  for (const auto& p : pairs) ps.push_back(Json::array({p.g.to_string(), p.h.to_string()}));
  w["pairs"] = ps;
  w["claim"] = "sum of a_i^-1 X_i b_i, sets reused cyclically, is all of Mat(n,q)";
  return w;
}

Json akblcm_witness(const fq::Matrix& T, const fq::Akblcm& f) {
  Json w;
  w["type"] = "akblcm";
  w["q"] = T.field().order();
  w["T"] = T.to_string();
  Json fs;
  fs["A"] = f.A.to_string();
  fs["K"] = f.K.to_string();
  fs["B"] = f.B.to_string();
  fs["L"] = f.L.to_string();
  fs["C"] = f.C.to_string();
  fs["M"] = f.M.to_string();
  w["factors"] = fs;
  w["claim"] = "T = A K B L C M with A, B, C in CM(alpha) and K, L, M in CM(kappa)";
  return w;
}

namespace {

const Json& field(const Json& w, const char* key) {
  if (!w.is_object() || !w.contains(key)) throw Error(ErrorKind::SchemaMismatch, std::string("witness lacks field '") + key + "'");
  return w.at(key);
}

std::string str(const Json& w, const char* key) {
  const Json& v = field(w, key);
  if (!v.is_string()) throw Error(ErrorKind::SchemaMismatch, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

long long num(const Json& w, const char* key) {
  const Json& v = field(w, key);
  if (!v.is_number_integer()) throw Error(ErrorKind::SchemaMismatch, std::string("field '") + key + "' must be an integer");
  return v.get<long long>();
}

std::vector<int> points(const Json& w, const char* key) {
  const Json& v = field(w, key);
  if (!v.is_array()) throw Error(ErrorKind::SchemaMismatch, std::string("field '") + key + "' must be an array");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw Error(ErrorKind::SchemaMismatch, "points must be integers");
    out.push_back(x.get<int>() - 1);
  }
  return out;
}

std::size_t class_index(const Group& g, const std::string& rep) { return g.class_of(g.parse_element(rep)); }

ClaimResult check(const Json& w) {
  const std::string type = str(w, "type");
  ClaimResult out{type, false, ""};
  if (type == "conjugate_cover") {
    auto g = build_group(str(w, "group"));
    const Json& js = field(w, "sets");
    if (!js.is_array() || js.empty()) throw Error(ErrorKind::SchemaMismatch, "sets must be a nonempty array");
    std::vector<Subset> sets;
    for (const auto& s : js) sets.push_back(set_from_json(g, s));
    const Json& cj = field(w, "conjugators");
    if (!cj.is_array() || cj.empty()) throw Error(ErrorKind::SchemaMismatch, "conjugators must be a nonempty array");
    std::vector<Subset> parts;
    std::size_t i = 0;
    for (const auto& c : cj) {
      if (!c.is_string()) throw Error(ErrorKind::SchemaMismatch, "conjugators must be strings");
      parts.push_back(conjugate_subset(sets[i++ % sets.size()], g->parse_element(c.get<std::string>())));
    }
    const std::size_t size = product_set(parts).size();
    out.pass = size == g->order();
    out.detail = "product has " + std::to_string(size) + " of " + std::to_string(g->order()) + " elements";
  } else if (type == "skew_product") {
    auto g = build_group(str(w, "group"));
    const Subset a = set_from_json(g, field(w, "A")), b = set_from_json(g, field(w, "B"));
    const Element s = g->parse_element(str(w, "sigma"));
    const std::size_t size = skew_product_size(a, b, s);
    const Rational gamma = gamma_statistic(a, b);
    out.pass = size == static_cast<std::size_t>(num(w, "size")) && Rational(size) * gamma >= Rational(BigInt(a.size()) * b.size());
    out.detail = "|A^sigma B| = " + std::to_string(size) + ", |A||B|/Gamma = " + to_decimal(Rational(BigInt(a.size()) * b.size()) / gamma);
  } else if (type == "skew_expectation") {
    auto g = build_group(str(w, "group"));
    const Subset a = set_from_json(g, field(w, "A")), b = set_from_json(g, field(w, "B"));
    const auto r = expected_skew_product_check(a, b, class_index(*g, str(w, "class_rep")));
    out.pass = r.holds && to_decimal(r.lhs) == str(w, "lhs") && to_decimal(r.rhs) == str(w, "rhs");
    out.detail = "lhs " + to_decimal(r.lhs) + ", rhs " + to_decimal(r.rhs);
  } else if (type == "class_concentration") {
    auto g = build_group(str(w, "group"));
    const Subset a = set_from_json(g, field(w, "A"));
    const Element x = g->parse_element(str(w, "a"));
    const auto& cls = g->classes()[class_index(*g, str(w, "class_rep"))];
    std::size_t count = 0;
    for (Element y : a.elements()) count += cls.members.test(g->multiply(g->inverse(x), y));
    out.pass = a.contains(x) && count == static_cast<std::size_t>(num(w, "count"));
    out.detail = "count " + std::to_string(count);
  } else if (type == "umvirate_density") {
    auto g = build_group(str(w, "group"));
    const Subset a = set_from_json(g, field(w, "A"));
    const auto pts = points(w, "points"), img = points(w, "images");
    if (pts.size() != img.size()) throw Error(ErrorKind::SchemaMismatch, "points and images differ in length");
    for (int p : pts)
      if (p < 0 || p >= g->degree()) throw Error(ErrorKind::SchemaMismatch, "point out of range");
    std::size_t count = 0;
    for (Element x : a.elements()) {
      const auto f = g->form(x);
      bool in = true;
      for (std::size_t k = 0; k < pts.size(); ++k) in = in && f[static_cast<std::size_t>(pts[k])] == img[k];
      count += in;
    }
    BigInt falling = 1;
    for (std::size_t k = 0; k < pts.size(); ++k) falling *= g->degree() - static_cast<int>(k);
    const Rational ratio(BigInt(count) * falling, BigInt(a.size()));
    out.pass = count == static_cast<std::size_t>(num(w, "intersection")) && to_decimal(ratio) == str(w, "ratio");
    out.detail = "intersection " + std::to_string(count) + ", ratio " + to_decimal(ratio);
  } else if (type == "umvirate_factorization") {
    const int n = static_cast<int>(num(w, "degree"));
    const Permutation s = Permutation::parse(str(w, "sigma"), n);
    const Json& fj = field(w, "factors");
    if (!fj.is_array() || fj.size() != 3) throw Error(ErrorKind::SchemaMismatch, "factors must hold three permutations");
    const Permutation fi = Permutation::parse(fj[0].get<std::string>(), n), fjj = Permutation::parse(fj[1].get<std::string>(), n),
                      fk = Permutation::parse(fj[2].get<std::string>(), n);
    auto fixes = [](const Permutation& p, const std::vector<int>& pts) {
      for (int x : pts)
        if (x < 0 || x >= p.degree() || p(x) != x) return false;
      return true;
    };
    out.pass = s.even() && fi.even() && fjj.even() && fk.even() && fixes(fi, points(w, "I")) && fixes(fjj, points(w, "J")) &&
               fixes(fk, points(w, "K")) && fi * fjj * fk == s;
    out.detail = out.pass ? "factorization rechecked" : "factorization does not recheck";
  } else if (type == "dilate_cover") {
    const fq::MatrixSpace space(fq::Field::get(static_cast<int>(num(w, "q"))), static_cast<int>(num(w, "n")));
    std::vector<fq::CodeSet> sets;
    for (const auto& s : field(w, "sets")) {
      fq::CodeSet cs;
      for (const auto& m : s) cs.push_back(space.code(fq::Matrix::parse(space.field(), m.get<std::string>())));
      sets.push_back(cs);
    }
    std::vector<fq::GlPair> pairs;
    for (const auto& p : field(w, "pairs")) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::SchemaMismatch, "pairs hold two matrices");
      pairs.push_back({fq::Matrix::parse(space.field(), p[0].get<std::string>()), fq::Matrix::parse(space.field(), p[1].get<std::string>())});
    }
    if (sets.empty()) throw Error(ErrorKind::SchemaMismatch, "sets must be nonempty");
    try {
      out.pass = fq::verify_dilate_cover(space, sets, pairs);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularInput) throw;
      out.pass = false;
    }
    out.detail = out.pass ? "sum covers Mat" : "sum does not cover Mat";
  } else if (type == "akblcm") {
    const fq::Field& f = fq::Field::get(static_cast<int>(num(w, "q")));
    const fq::Matrix T = fq::Matrix::parse(f, str(w, "T"));
    const Json& fs = field(w, "factors");
    auto get = [&](const char* k) { return fq::Matrix::parse(f, str(fs, k)); };
    const fq::Akblcm x{get("A"), get("K"), get("B"), get("L"), get("C"), get("M")};
    using fq::Graph;
    out.pass = fq::graph_matrix_membership(x.A, Graph::Alpha) && fq::graph_matrix_membership(x.B, Graph::Alpha) &&
               fq::graph_matrix_membership(x.C, Graph::Alpha) && fq::graph_matrix_membership(x.K, Graph::Kappa) &&
               fq::graph_matrix_membership(x.L, Graph::Kappa) && fq::graph_matrix_membership(x.M, Graph::Kappa) &&
               x.A * x.K * x.B * x.L * x.C * x.M == T;
    out.detail = out.pass ? "product and patterns recheck" : "factorization does not recheck";
  } else {
    throw Error(ErrorKind::SchemaMismatch, "unknown witness type '" + type + "'");
  }
  return out;
}

}  // namespace

ClaimResult verify_witness_record(const Json& w) {
  try {
    return check(w);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("malformed witness: ") + e.what());
  } catch (const Error& e) {
    // Content that no longer denotes valid objects fails the claim.
    if (e.kind() == ErrorKind::SchemaMismatch) throw;
    return {w.value("type", ""), false, e.what()};
  }
}

}  // namespace prodlab::report
