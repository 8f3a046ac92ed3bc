#include "prodlab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "internal.hpp"
#include "prodlab/char_table.hpp"
#include "prodlab/error.hpp"
#include "prodlab/fourier.hpp"
#include "prodlab/fq_additive.hpp"
#include "prodlab/growth.hpp"
#include "prodlab/suite.hpp"
#include "prodlab/sym.hpp"

namespace prodlab {

namespace {

using report::big;
using report::Json;

struct Global {
  std::uint64_t seed = 1;
  std::uint64_t budget = Budget::kDefault;
  std::string out;
  std::size_t workers = 0;
  std::string format;
  bool timing = false;
};

struct Output {
  explicit Output(Json r) : report(std::move(r)) {}

  Json report;
  bool claim_ok = true;
  std::optional<std::string> text;  // CSV body for tabular commands
};

Budget budget_of(const Global& g) { return Budget{g.budget}; }

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorKind::UsageError, msg); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, ','))
    if (!part.empty()) out.push_back(std::stoi(part));
  return out;
}

// 1-based point list to 0-based.
std::vector<int> points(const std::string& s) {
  auto v = int_list(s);
  for (int& x : v) {
    if (x < 1) usage("points are 1-based");
    --x;
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidParameters, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + csv_field(cells[i]);
  return line + "\n";
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

std::string complex_text(Complex z) {
  const double re = std::abs(z.real()) < 1e-12 ? 0 : z.real();
  const double im = std::abs(z.imag()) < 1e-12 ? 0 : z.imag();
  if (im == 0) return num(re);
  return num(re) + (im < 0 ? "-" : "+") + num(std::abs(im)) + "i";
}

ScanStrategy parse_mode(const std::string& mode) {
  if (mode == "exhaustive") return Exhaustive{};
  const auto parts = split(mode, ':');
  if (parts.size() == 3 && (parts[0] == "mc" || parts[0] == "random"))
    return Sampled{static_cast<std::size_t>(std::stoull(parts[1])), std::stoull(parts[2])};
  usage("mode must be exhaustive, mc:<k>:<seed> or random:<k>:<seed>");
}

Json classes_json(const Group& g) {
  Json cs = Json::array();
  for (const auto& c : g.classes()) cs.push_back({{"rep", g.format(c.representative)}, {"size", c.size}});
  return cs;
}

// Group commands.

Output cmd_group(const std::string& spec) {
  auto g = build_group(spec);
  Output o{report::make_report("group", {{"group", spec}})};
  Json gens = Json::array();
  for (Element x : g->generators()) gens.push_back(g->format(x));
  o.report["results"] = {{"group", g->name()}, {"order", g->order()}, {"degree", g->degree()}, {"class_count", g->class_count()},
                         {"abelian", g->abelian()}, {"generators", gens}, {"classes", classes_json(*g)}};
  return o;
}

Output cmd_chartable(const std::string& spec, bool csv) {
  auto g = build_group(spec);
  const auto t = character_table(g);
  Output o{report::make_report("chartable", {{"group", spec}})};
  Json irr = Json::array();
  for (const auto& chi : t.irreducibles()) {
    Json vals = Json::array();
    for (const auto& v : chi.values) vals.push_back(Json::array({v.real(), v.imag()}));
    irr.push_back({{"degree", chi.degree}, {"values", vals}});
  }
  o.report["results"] = {{"group", g->name()}, {"classes", classes_json(*g)}, {"irreducibles", irr}, {"tolerance", t.tolerance()}};
  if (csv) {
    std::vector<std::string> head{"chi", "degree"};
    for (const auto& c : g->classes()) head.push_back(g->format(c.representative) + " [" + std::to_string(c.size) + "]");
    std::string body = csv_row(head);
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::vector<std::string> row{std::to_string(i), std::to_string(t[i].degree)};
      for (const auto& v : t[i].values) row.push_back(complex_text(v));
      body += csv_row(row);
    }
    o.text = body;
  }
  return o;
}

Output cmd_zeta(const std::string& spec, const std::vector<double>& s, bool nontrivial) {
  auto g = build_group(spec);
  const auto t = character_table(g);
  Output o{report::make_report("zeta", {{"group", spec}, {"s", s}, {"nontrivial", nontrivial}})};
  Json degrees = Json::array(), values = Json::array();
  for (const auto& chi : t.irreducibles()) degrees.push_back(chi.degree);
  for (double x : s) values.push_back({{"s", x}, {"zeta", witten_zeta(t, x, !nontrivial)}});
  o.report["results"] = {{"group", g->name()}, {"degrees", degrees}, {"values", values}};
  return o;
}

Output cmd_fourier(const Global& gl, const std::string& spec, const std::string& set, int functions) {
  auto g = build_group(spec);
  const auto t = character_table(g);
  Output o{report::make_report("fourier", {{"group", spec}, {"set", set}, {"functions", functions}, {"seed", gl.seed}})};
  Json res = {{"group", g->name()}};
  if (!set.empty()) {
    const Subset a = parse_subset_source(g, set);
    const auto norms = projection_norms_sq(a, t);
    Json rows = Json::array();
    double total = 0;
    for (std::size_t chi = 0; chi < t.size(); ++chi) {
      rows.push_back({{"chi", chi}, {"degree", t[chi].degree}, {"mean_character", mean_character_on_quotients(a, t, chi)}, {"norm_sq", norms[chi]}});
      total += norms[chi];
    }
    const double direct = normalized_indicator(a).norm2_sq();
    res["set"] = {{"size", a.size()}, {"projections", rows}, {"norm_sq", direct}, {"sum_of_projections", total},
                  {"relative_error", std::abs(total - direct) / direct}};
  }
  if (functions > 0) {
    Rng rng(mix_seed(gl.seed, 1));
    double parseval = 0, reconstruction = 0;
    for (int i = 0; i < functions; ++i) {
      const auto f = GroupFunction::random(g, rng.next());
      GroupFunction sum(g);
      double sq = 0;
      for (const auto& p : project_all(f, t)) {
        sq += p.norm2_sq();
        sum = sum + p;
      }
      parseval = std::max(parseval, std::abs(sq - f.norm2_sq()) / f.norm2_sq());
      reconstruction = std::max(reconstruction, (sum - f).linf() / f.linf());
    }
    res["random_functions"] = {{"count", functions}, {"parseval_relative_error", parseval}, {"reconstruction_relative_error", reconstruction}};
  }
  o.report["results"] = res;
  return o;
}

std::vector<Subset> load_sets(const GroupPtr& g, const std::vector<std::string>& sources) {
  std::vector<Subset> sets;
  for (const auto& s : sources) sets.push_back(parse_subset_source(g, s));
  return sets;
}

Output cmd_frobenius(const Global& gl, const std::string& spec, int m, const std::vector<std::string>& sources, const std::string& mode) {
  auto g = build_group(spec);
  const auto t = character_table(g);
  const auto sets = load_sets(g, sources);
  if (sets.size() != static_cast<std::size_t>(m) + 1) usage("frobenius verify needs m+1 sets");
  Output o{report::make_report("frobenius verify", {{"group", spec}, {"m", m}, {"sets", sources}, {"mode", mode}})};
  const double rhs = frobenius_rhs(sets, m, t);
  const auto lhs = frobenius_lhs(sets, m, parse_mode(mode), budget_of(gl));
  const bool exhaustive = mode == "exhaustive";
  const double relerr = std::abs(lhs.value - rhs) / std::max(std::abs(rhs), 1e-300);
  const double z = lhs.std_error > 0 ? std::abs(lhs.value - rhs) / lhs.std_error : (lhs.value == rhs ? 0.0 : INFINITY);
  o.claim_ok = exhaustive ? relerr <= 1e-6 : z <= 5;
  o.report["results"] = {{"lhs", lhs.value}, {"rhs", rhs}, {"stderr", lhs.std_error}, {"samples", lhs.samples},
                         {"relative_error", relerr}, {"standard_errors", exhaustive ? Json(nullptr) : Json(z)}, {"agree", o.claim_ok}};
  return o;
}

Json margin_json(const CharacterMargin& m) {
  return {{"set", m.set}, {"chi", m.chi}, {"char_degree", m.degree}, {"value", m.value}, {"bound", m.bound}, {"holds", m.holds}};
}

Output cmd_criterion(const Global& gl, const std::string& spec, double eps, int m, const std::vector<std::string>& sources, const std::string& search) {
  auto g = build_group(spec);
  const auto t = character_table(g);
  const auto sets = load_sets(g, sources);
  Output o{report::make_report("criterion check", {{"group", spec}, {"eps", eps}, {"m", m}, {"sets", sources}, {"search", search}})};
  const auto r = criterion_check(sets, t, eps, m, parse_mode(search), budget_of(gl));
  Json margins = Json::array(), trivial = Json::array(), witness = Json::array();
  for (const auto& x : r.margins) margins.push_back(margin_json(x));
  for (const auto& x : r.trivial) trivial.push_back(margin_json(x));
  if (r.shifts)
    for (Element s : *r.shifts) witness.push_back(g->format(s));
  Json conj = Json::array();
  for (Element s : r.conjugators) conj.push_back(g->format(s));
  o.report["results"] = {{"hypothesis", r.hypothesis}, {"margins", margins}, {"trivial", trivial}, {"violations", r.violations.size()},
                         {"t", r.t}, {"zeta_t", r.zeta_t ? Json(*r.zeta_t) : Json(nullptr)}, {"zeta_threshold", r.zeta_threshold},
                         {"zeta_condition", r.zeta_condition}, {"expected_linf_bound", r.expected_linf_bound},
                         {"tuples_tried", r.tuples_tried}, {"exhaustive", r.exhaustive}, {"witness", witness},
                         {"witness_linf", r.shifts ? Json(r.witness_linf) : Json(nullptr)}, {"conjugators", conj}, {"covered", r.covered}};
  if (r.covered) o.report["witnesses"].push_back(report::conjugate_cover_witness(*g, sets, r.conjugators));
  o.claim_ok = r.covered;
  return o;
}

// Growth commands.

struct GrowthArgs {
  std::string group, A, B, sigma, I = "1,2", J = "3,4", K = "5,6";
  std::size_t cls = 1, m_max = 8, restarts = 32;
  int d_max = 2, n = 6;
  double r = 0;
};

Output cmd_growth(const Global& gl, const std::string& sub, const GrowthArgs& a) {
  Json config = {{"group", a.group}};
  if (sub == "umvirate") config = {{"n", a.n}, {"sigma", a.sigma}, {"I", a.I}, {"J", a.J}, {"K", a.K}};
  Output o{report::make_report("growth " + sub, config)};
  if (sub == "umvirate") {
    const auto sigma = Permutation::parse(a.sigma, a.n);
    const auto I = points(a.I), J = points(a.J), K = points(a.K);
    const auto c = umvirate_triple_cover(sigma, I, J, K);
    o.report["results"] = {{"sigma", sigma.to_string()}, {"sigma_I", c.sigma_i.to_string()}, {"sigma_J", c.sigma_j.to_string()},
                           {"sigma_K", c.sigma_k.to_string()}, {"parity_adjusted", c.parity_adjusted}};
    o.report["witnesses"].push_back(report::umvirate_factorization_witness(sigma, I, J, K, c));
    return o;
  }
  auto g = build_group(a.group);
  if (a.A.empty()) usage("--A is required");
  const Subset A = parse_subset_source(g, a.A);
  o.report["config"]["A"] = a.A;
  auto need_b = [&] {
    if (a.B.empty()) usage("--B is required");
    o.report["config"]["B"] = a.B;
    return parse_subset_source(g, a.B);
  };
  if (sub == "gamma") {
    const Subset B = need_b();
    const Rational gamma = gamma_statistic(A, B);
    const Rational bound = Rational(BigInt(A.size()) * B.size()) / gamma;
    const auto best = max_skew_product(A, B, Exhaustive{}, budget_of(gl));
    o.claim_ok = Rational(best.size) >= bound;
    o.report["results"] = {{"A_size", A.size()}, {"B_size", B.size()}, {"gamma", big(gamma)}, {"gamma_value", to_double(gamma)},
                           {"bound", big(bound)}, {"max_skew", {{"sigma", g->format(best.sigma)}, {"size", best.size}}}, {"holds", o.claim_ok}};
    o.report["witnesses"].push_back(report::skew_product_witness(A, B, best.sigma, best.size));
  } else if (sub == "concentrate") {
    const auto c = class_concentration(A);
    const auto& cl = g->classes()[c.cls];
    o.report["results"] = {{"A_size", A.size()}, {"a", g->format(c.a)}, {"class", c.cls}, {"class_rep", g->format(cl.representative)},
                           {"class_size", cl.size}, {"count", c.count}};
    o.report["witnesses"].push_back(report::concentration_witness(A, c));
  } else if (sub == "classbound") {
    const Subset B = need_b();
    if (a.cls >= g->class_count()) usage("class index out of range");
    o.report["config"]["class"] = a.cls;
    const auto r = expected_skew_product_check(A, B, a.cls, budget_of(gl));
    o.claim_ok = r.holds;
    o.report["results"] = {{"class_rep", g->format(g->classes()[a.cls].representative)}, {"lhs", big(r.lhs)}, {"rhs", big(r.rhs)},
                           {"lhs_value", to_double(r.lhs)}, {"rhs_value", to_double(r.rhs)}, {"holds", r.holds}};
    o.report["witnesses"].push_back(report::skew_expectation_witness(A, B, a.cls, r));
  } else if (sub == "globality") {
    o.report["config"]["d_max"] = a.d_max;
    const auto prof = globality_profile(A, a.d_max, budget_of(gl));
    Json levels = Json::array();
    for (const auto& lv : prof.levels) {
      Json pts = Json::array(), img = Json::array();
      for (int p : lv.points) pts.push_back(p + 1);
      for (int p : lv.images) img.push_back(p + 1);
      levels.push_back({{"d", lv.d}, {"ratio", big(lv.ratio)}, {"ratio_value", to_double(lv.ratio)}, {"points", pts}, {"images", img},
                        {"intersection", lv.intersection}, {"umvirate_size", lv.umvirate_size}});
      if (lv.d >= 1) o.report["witnesses"].push_back(report::umvirate_density_witness(A, lv));
    }
    o.report["results"] = {{"A_size", A.size()}, {"levels", levels}};
    if (a.r > 0) {
      o.report["config"]["r"] = a.r;
      o.report["results"]["r"] = a.r;
      o.report["results"]["global"] = prof.is_global(a.r);
    }
  } else if (sub == "cover") {
    o.report["config"]["m_max"] = a.m_max;
    o.report["config"]["restarts"] = a.restarts;
    o.report["config"]["seed"] = gl.seed;
    const auto c = conjugate_cover_search(A, a.m_max, gl.seed, a.restarts);
    Json conj = Json::array();
    for (Element s : c.conjugators) conj.push_back(g->format(s));
    o.report["results"] = {{"A_size", A.size()}, {"found", c.found}, {"m", c.m}, {"conjugators", conj}, {"restarts", c.restarts}};
    if (c.found) o.report["witnesses"].push_back(report::conjugate_cover_witness(*g, {A}, c.conjugators));
    o.claim_ok = c.found;
  } else if (sub == "grow") {
    const Subset B = need_b();
    const auto w = growth_witness(B, A);
    o.report["results"] = {{"found", w.sigma.has_value()}, {"sigma", w.sigma ? Json(g->format(*w.sigma)) : Json(nullptr)},
                           {"product_size", w.product_size}, {"B_size", B.size()}, {"diagnostic", w.diagnostic}};
    o.claim_ok = w.sigma.has_value();
  }
  return o;
}

// Partitions.

Output cmd_partitions(int n, const std::string& mode, bool csv) {
  Output o{report::make_report("partitions scan", {{"n", n}, {"mode", mode}})};
  Json rows = Json::array();
  std::string body;
  if (mode == "virtual") {
    if (n < 1 || n > 40) throw Error(ErrorKind::InvalidParameters, "virtual mode needs 1 <= n <= 40");
    body = csv_row({"lambda", "d", "D", "D_le_d", "d_le_D", "log_ratio"});
    for (const auto& lambda : sym::partitions_of(n)) {
      const BigInt d = sym::dimension_hook(lambda);
      const Rational D = sym::virtual_degree(lambda);
      const double lD = std::log(to_double(D));
      const double ratio = lD > 0 ? std::log(static_cast<double>(d)) / lD : 1;
      const bool a = D <= Rational(d), b = Rational(d) <= D;
      rows.push_back({{"lambda", lambda.to_string()}, {"d", big(d)}, {"D", big(D)}, {"D_le_d", a}, {"d_le_D", b}, {"log_ratio", ratio}});
      body += csv_row({lambda.to_string(), to_decimal(d), to_decimal(D), a ? "1" : "0", b ? "1" : "0", num(ratio)});
    }
  } else if (mode == "lsbound") {
    body = csv_row({"lambda", "d", "D", "class", "fixed_points", "chi", "bound", "margin", "holds"});
    for (const auto& row : sym::charbound_scan(n))
      for (const auto& e : row.classes) {
        const double margin = e.ls.bound - static_cast<double>(e.ls.abs_chi);
        rows.push_back({{"lambda", row.lambda.to_string()}, {"d", big(row.d)}, {"D", big(row.D)}, {"class", e.type.to_string()},
                        {"fixed_points", e.fixed_points}, {"chi", e.chi}, {"bound", e.ls.bound}, {"margin", margin}, {"holds", e.ls.holds}});
        body += csv_row({row.lambda.to_string(), to_decimal(row.d), to_decimal(row.D), e.type.to_string(), std::to_string(e.fixed_points),
                         std::to_string(e.chi), num(e.ls.bound), num(margin), e.ls.holds ? "1" : "0"});
      }
  } else if (mode.rfind("fixedpoints:", 0) == 0) {
    const int t = std::stoi(mode.substr(12));
    body = csv_row({"lambda", "d", "D", "max_abs_chi", "argmax", "exponent", "within_degree"});
    for (const auto& row : sym::charbound_scan(n)) {
      const auto s = sym::fixed_point_summary(row, t);
      if (!s.any) continue;
      rows.push_back({{"lambda", row.lambda.to_string()}, {"d", big(row.d)}, {"D", big(row.D)}, {"max_abs_chi", s.max_abs_chi},
                      {"argmax", s.argmax.to_string()}, {"exponent", s.exponent}, {"within_degree", s.within_degree}});
      body += csv_row({row.lambda.to_string(), to_decimal(row.d), to_decimal(row.D), std::to_string(s.max_abs_chi), s.argmax.to_string(),
                       num(s.exponent), s.within_degree ? "1" : "0"});
    }
  } else {
    usage("mode must be virtual, lsbound or fixedpoints:<t>");
  }
  o.report["results"] = {{"n", n}, {"rows", rows}};
  if (csv) o.text = body;
  return o;
}

// F_q commands.

struct FqArgs {
  int n = 0, q = 2, t = 0, r_min = -1, random = 0;
  std::string ranks, representative = "canonical", matrix;
  std::vector<std::string> sets;
  std::size_t mu_max = 16;
};

fq::CodeSet load_code_set(const fq::MatrixSpace& space, const std::string& source, std::uint64_t& salt) {
  fq::CodeSet s;
  if (source == "all" || source == "nonzero") {
    for (fq::Code c = source == "all" ? 0 : 1; c < space.size(); ++c) s.push_back(c);
    return s;
  }
  if (source.rfind("random:", 0) == 0) {
    const auto parts = split(source, ':');
    if (parts.size() != 3) usage("random set source is random:<size>:<seed>");
    Rng rng(mix_seed(std::stoull(parts[2]), ++salt));
    for (auto x : rng.sample(space.size(), std::stoull(parts[1]))) s.push_back(static_cast<fq::Code>(x));
    std::sort(s.begin(), s.end());
    return s;
  }
  std::istringstream in(read_file(source));
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto m = fq::Matrix::parse(space.field(), line);
    if (m.rows() != space.n() || m.cols() != space.n()) throw Error(ErrorKind::SizeMismatch, "matrix size differs from n in " + source);
    s.push_back(space.code(m));
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) throw Error(ErrorKind::EmptySubset, "no matrices in " + source);
  return s;
}

// Matrix size from the first matrix line of the first file source.
int infer_n(const FqArgs& a) {
  if (a.n > 0) return a.n;
  for (const auto& src : a.sets) {
    if (src == "all" || src == "nonzero" || src.rfind("random:", 0) == 0) continue;
    std::istringstream in(read_file(src));
    std::string line;
    while (std::getline(in, line)) {
      line = line.substr(0, line.find('#'));
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      return fq::Matrix::parse(fq::Field::get(a.q), line).rows();
    }
  }
  usage("--n is required when no set file fixes the matrix size");
}

Json pair_json(const fq::GlPair& p) { return {{"a", p.g.to_string()}, {"b", p.h.to_string()}}; }

Output cmd_fq(const Global& gl, const std::string& sub, FqArgs a) {
  Output o{report::make_report("fq " + sub, Json::object())};
  Json& cfg = o.report["config"];
  if (sub == "count") {
    cfg = {{"n", a.n}, {"q", a.q}};
    Json ranks = Json::array(), bounds = Json::array();
    for (int r = 0; r <= a.n; ++r) {
      ranks.push_back(big(fq::count_rank(r, a.n, a.q)));
      const auto b = fq::rank_bounds(r, a.n, a.q);
      bounds.push_back({{"r", r}, {"lower", big(b.lower)}, {"value", big(b.value)}, {"upper", big(b.upper)}, {"holds", b.holds}});
    }
    o.report["results"] = {{"n", a.n}, {"q", a.q}, {"ranks", ranks}, {"sandwich", bounds}};
    if (a.q <= fq::kMaxAdditiveField && std::pow(a.q, a.n * a.n) <= static_cast<double>(fq::MatrixSpace::kMaxSize)) {
      const fq::MatrixSpace space(fq::Field::get(a.q), a.n);
      Json census = Json::array();
      bool match = true;
      const auto c = fq::rank_census(space);
      for (int r = 0; r <= a.n; ++r) {
        census.push_back(big(c[static_cast<std::size_t>(r)]));
        match = match && c[static_cast<std::size_t>(r)] == fq::count_rank(r, a.n, a.q);
      }
      o.report["results"]["census"] = census;
      o.report["results"]["census_matches"] = match;
      o.claim_ok = match;
    }
    return o;
  }
  if (sub == "nsum") {
    cfg = {{"n", a.n}, {"q", a.q}, {"ranks", a.ranks}, {"t", a.t}, {"representative", a.representative}, {"seed", gl.seed}};
    const fq::MatrixSpace space(fq::Field::get(a.q), a.n);
    const auto ranks = int_list(a.ranks);
    if (ranks.empty()) usage("--ranks is required");
    for (int r : ranks)
      if (r < 0 || r > a.n) usage("ranks must lie in 0..n");
    if (a.t < 0 || a.t > a.n) usage("t must lie in 0..n");
    const auto kind = a.representative == "random" ? fq::Representative::RandomConjugate : fq::Representative::Canonical;
    const fq::Code m = fq::rank_representative(space, a.t, kind, gl.seed);
    const BigInt count = fq::nsum_bruteforce(space, ranks, m, budget_of(gl));
    o.report["results"] = {{"n", a.n}, {"q", a.q}, {"ranks", ranks}, {"t", a.t}, {"representative", space.matrix(m).to_string()}, {"count", big(count)}};
    if (ranks.size() == 2) {
      const auto c = fq::nsum_conservation(space, ranks[0], ranks[1], budget_of(gl));
      o.report["results"]["conservation"] = {{"lhs", big(c.lhs)}, {"rhs", big(c.rhs)}, {"holds", c.holds}};
      o.claim_ok = c.holds;
    }
    return o;
  }
  if (sub == "ratio-scan") {
    cfg = {{"n", a.n}, {"q", a.q}, {"r_min", a.r_min}};
    const fq::MatrixSpace space(fq::Field::get(a.q), a.n);
    const auto s = fq::nsum_ratio_scan(space, a.r_min, budget_of(gl));
    Json k3 = Json::array(), k2 = Json::array();
    std::string body = csv_row({"r1", "r2", "r3", "t", "count", "ratio"});
    for (const auto& r : s.k3) {
      k3.push_back({{"r1", r.r1}, {"r2", r.r2}, {"r3", r.r3}, {"t", r.t}, {"count", big(r.count)}, {"ratio", big(r.ratio)},
                    {"ratio_value", to_double(r.ratio)}});
      body += csv_row({std::to_string(r.r1), std::to_string(r.r2), std::to_string(r.r3), std::to_string(r.t), to_decimal(r.count), to_decimal(r.ratio)});
    }
    for (const auto& r : s.k2)
      k2.push_back({{"r", r.r}, {"s", r.s}, {"t", r.t}, {"count", big(r.count)}, {"ratio", big(r.ratio)}, {"envelope_ratio", r.envelope_ratio},
                    {"vanishing", r.vanishing}});
    o.report["results"] = {{"n", s.n}, {"q", s.q}, {"r_min", s.r_min}, {"max_ratio", big(s.max_ratio)}, {"max_ratio_value", to_double(s.max_ratio)},
                           {"k3", k3}, {"max_envelope_ratio", s.max_envelope_ratio}, {"k2", k2}};
    o.text = body;
    return o;
  }
  if (sub == "energy" || sub == "cover") {
    if (a.sets.empty()) usage("--sets is required");
    a.n = infer_n(a);
    cfg = {{"n", a.n}, {"q", a.q}, {"sets", a.sets}};
    const fq::MatrixSpace space(fq::Field::get(a.q), a.n);
    std::vector<fq::CodeSet> sets;
    std::uint64_t salt = 0;
    for (const auto& s : a.sets) sets.push_back(load_code_set(space, s, salt));
    Json sizes = Json::array();
    for (const auto& s : sets) sizes.push_back(s.size());
    if (sub == "energy") {
      const auto g = fq::AdditiveGroup::of_matrices(space);
      const auto c = fq::sumset_energy_check(g, sets, budget_of(gl));
      o.report["results"] = {{"set_sizes", sizes}, {"energy", big(c.energy)}, {"sumset", c.sumset}, {"lower_bound", big(c.lower_bound)},
                             {"lower_bound_value", to_double(c.lower_bound)}, {"holds", c.holds}};
      o.claim_ok = c.holds;
    } else {
      cfg["mu_max"] = a.mu_max;
      cfg["seed"] = gl.seed;
      const auto c = fq::dilate_cover_search(space, sets, a.mu_max, gl.seed);
      Json pairs = Json::array();
      for (const auto& p : c.pairs) pairs.push_back(pair_json(p));
      o.report["results"] = {{"set_sizes", sizes}, {"found", c.found}, {"mu", c.mu}, {"pairs", pairs}};
      if (c.found) o.report["witnesses"].push_back(report::dilate_cover_witness(space, sets, c.pairs));
      o.claim_ok = c.found;
    }
    return o;
  }
  usage("unknown fq command " + sub);
}

Output cmd_akblcm(const Global& gl, const FqArgs& a) {
  Output o{report::make_report("sl akblcm", {{"n", a.n}, {"q", a.q}, {"random", a.random}, {"matrix", a.matrix}, {"seed", gl.seed}})};
  if (a.n < 1) usage("--n must be at least 1");
  const fq::Field& f = fq::Field::get(a.q);
  std::vector<fq::Matrix> inputs;
  if (!a.matrix.empty()) {
    std::string text = read_file(a.matrix);
    std::string clean;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) clean += line.substr(0, line.find('#')) + "\n";
    inputs.push_back(fq::Matrix::parse(f, clean));
    if (inputs.back().rows() != 2 * a.n + 1 || !inputs.back().square()) throw Error(ErrorKind::SizeMismatch, "matrix must be (2n+1) x (2n+1)");
    if (!inputs.back().is_unipotent_upper()) throw Error(ErrorKind::PreconditionViolated, "matrix must be unipotent upper triangular");
  } else {
    Rng rng(mix_seed(gl.seed, 12));
    for (int i = 0; i < std::max(a.random, 1); ++i) inputs.push_back(fq::random_unipotent(f, 2 * a.n + 1, rng));
  }
  Json rows = Json::array();
  std::size_t failures = 0;
  for (const auto& T : inputs) {
    try {
      const auto r = fq::akblcm_solve(T);
      rows.push_back({{"T", T.to_string()}, {"solved", true}});
      o.report["witnesses"].push_back(report::akblcm_witness(T, r));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SolveFailed) throw;
      rows.push_back({{"T", T.to_string()}, {"solved", false}, {"error", e.what()}});
      ++failures;
    }
  }
  o.report["results"] = {{"size", 2 * a.n + 1}, {"q", a.q}, {"matrices", inputs.size()}, {"failures", failures}, {"solves", rows}};
  o.claim_ok = failures == 0;
  return o;
}

Output cmd_verify(const std::string& path) {
  Json rep;
  try {
    rep = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("report is not JSON: ") + e.what());
  }
  if (!rep.is_object() || !rep.contains("witnesses") || !rep["witnesses"].is_array())
    throw Error(ErrorKind::SchemaMismatch, "report has no witnesses array");
  Output o{report::make_report("verify-witness", {{"report", path}})};
  Json claims = Json::array();
  bool all = true;
  for (const auto& w : rep["witnesses"]) {
    const auto c = report::verify_witness_record(w);
    claims.push_back({{"type", c.type}, {"pass", c.pass}, {"detail", c.detail}});
    all = all && c.pass;
  }
  o.report["results"] = {{"source_command", rep.value("command", "")}, {"claims", claims}, {"all_pass", all}};
  o.claim_ok = all;
  return o;
}

std::string render_text(const Json& report) {
  std::string s = "command: " + report["command"].get<std::string>() + "\n";
  for (const auto& [k, v] : report["results"].items()) s += k + ": " + v.dump() + "\n";
  s += "witnesses: " + std::to_string(report["witnesses"].size()) + "\n";
  return s;
}

int exit_for(const Error& e) { return e.kind() == ErrorKind::UsageError ? kExitUsage : kExitError; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Global gl;
  CLI::App app{"Product decompositions in finite groups: exact checks and searches", "prodlab"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", PRODLAB_VERSION);
  app.add_option("--seed", gl.seed, "random seed");
  app.add_option("--budget", gl.budget, "maximum element operations");
  app.add_option("--out", gl.out, "write the report to this path");
  app.add_option("--workers", gl.workers, "worker threads (default $PRODLAB_WORKERS)");
  app.add_option("--format", gl.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--timing", gl.timing, "include wall time in the report");

  std::function<Output()> action;
  std::string spec;

  auto* group = app.add_subcommand("group", "order, generators and classes");
  group->add_option("group", spec, "group spec")->required();
  group->callback([&] { action = [&] { return cmd_group(spec); }; });

  bool as_json = false, as_csv = false;
  auto* chartable = app.add_subcommand("chartable", "character table");
  chartable->add_option("group", spec)->required();
  chartable->add_flag("--json", as_json);
  chartable->add_flag("--csv", as_csv);
  chartable->callback([&] { action = [&] { return cmd_chartable(spec, as_csv || gl.format == "csv"); }; });

  std::vector<double> zeta_s{2};
  bool nontrivial = false;
  auto* zeta = app.add_subcommand("zeta", "Witten zeta function");
  zeta->add_option("group", spec)->required();
  zeta->add_option("--s", zeta_s, "exponents")->delimiter(',');
  zeta->add_flag("--nontrivial", nontrivial, "skip the trivial character");
  zeta->callback([&] { action = [&] { return cmd_zeta(spec, zeta_s, nontrivial); }; });

  std::string fourier_set;
  int functions = 0;
  auto* fourier = app.add_subcommand("fourier", "isotypic projections and Parseval");
  fourier->add_option("group", spec)->required();
  fourier->add_option("--set", fourier_set, "subset source");
  fourier->add_option("--functions", functions, "random functions to check");
  fourier->callback([&] { action = [&] { return cmd_fourier(gl, spec, fourier_set, functions); }; });

  int m = 1;
  std::vector<std::string> sets;
  std::string mode = "exhaustive";
  auto* frobenius = app.add_subcommand("frobenius", "generalized Frobenius formula");
  frobenius->require_subcommand(1);
  auto* fverify = frobenius->add_subcommand("verify", "compare both sides");
  fverify->add_option("group", spec)->required();
  fverify->add_option("--m", m)->required();
  fverify->add_option("--sets", sets)->required();
  fverify->add_option("--mode", mode, "exhaustive or mc:<k>:<seed>");
  fverify->callback([&] { action = [&] { return cmd_frobenius(gl, spec, m, sets, mode); }; });

  double eps = 0.2;
  std::string search = "random:512:1";
  auto* criterion = app.add_subcommand("criterion", "character criterion for product decompositions");
  criterion->require_subcommand(1);
  auto* ccheck = criterion->add_subcommand("check", "hypothesis margins and witness search");
  ccheck->add_option("group", spec)->required();
  ccheck->add_option("--eps", eps);
  ccheck->add_option("--m", m)->required();
  ccheck->add_option("--sets", sets)->required();
  ccheck->add_option("--search", search, "exhaustive or random:<k>:<seed>");
  ccheck->callback([&] { action = [&] { return cmd_criterion(gl, spec, eps, m, sets, search); }; });

  GrowthArgs ga;
  auto* growth = app.add_subcommand("growth", "growth and covering experiments");
  growth->require_subcommand(1);
  for (const char* name : {"gamma", "concentrate", "classbound", "globality", "cover", "grow"}) {
    auto* s = growth->add_subcommand(name);
    s->add_option("group", ga.group)->required();
    s->add_option("--A", ga.A, "subset source")->required();
    const std::string n = name;
    if (n == "gamma" || n == "classbound" || n == "grow") s->add_option("--B", ga.B, "subset source")->required();
    if (n == "classbound") s->add_option("--class", ga.cls, "class index")->required();
    if (n == "globality") {
      s->add_option("--d-max", ga.d_max);
      s->add_option("--r", ga.r, "globality parameter");
    }
    if (n == "cover") {
      s->add_option("--m-max", ga.m_max);
      s->add_option("--restarts", ga.restarts);
    }
    s->callback([&, n] { action = [&, n] { return cmd_growth(gl, n, ga); }; });
  }
  auto* umv = growth->add_subcommand("umvirate", "sigma = sigma_I sigma_J sigma_K");
  umv->add_option("--n", ga.n)->required();
  umv->add_option("--sigma", ga.sigma)->required();
  umv->add_option("--I", ga.I);
  umv->add_option("--J", ga.J);
  umv->add_option("--K", ga.K);
  umv->callback([&] { action = [&] { return cmd_growth(gl, "umvirate", ga); }; });

  int pn = 5;
  std::string pmode = "virtual";
  auto* partitions = app.add_subcommand("partitions", "partition scans");
  partitions->require_subcommand(1);
  auto* pscan = partitions->add_subcommand("scan");
  pscan->add_option("--n", pn)->required();
  pscan->add_option("--mode", pmode, "virtual, lsbound or fixedpoints:<t>");
  pscan->callback([&] { action = [&] { return cmd_partitions(pn, pmode, gl.format.empty() || gl.format == "csv"); }; });

  FqArgs fa;
  auto* fqc = app.add_subcommand("fq", "matrix spaces over F_q");
  fqc->require_subcommand(1);
  for (const char* name : {"count", "nsum", "ratio-scan", "energy", "cover"}) {
    auto* s = fqc->add_subcommand(name);
    const std::string n = name;
    auto* nopt = s->add_option("--n", fa.n);
    s->add_option("--q", fa.q);
    if (n == "count" || n == "nsum" || n == "ratio-scan") nopt->required();
    if (n == "nsum") {
      s->add_option("--ranks", fa.ranks)->required();
      s->add_option("--t", fa.t)->required();
      s->add_option("--representative", fa.representative)->check(CLI::IsMember({"canonical", "random"}));
    }
    if (n == "ratio-scan") s->add_option("--r-min", fa.r_min);
    if (n == "energy" || n == "cover") s->add_option("--sets", fa.sets)->required();
    if (n == "cover") s->add_option("--mu-max", fa.mu_max);
    s->callback([&, n] {
      action = [&, n] {
        Output o = cmd_fq(gl, n, fa);
        if (n == "ratio-scan" && gl.format != "csv") o.text.reset();
        return o;
      };
    });
  }

  auto* sl = app.add_subcommand("sl", "unipotent factorizations in SL(2n+1, q)");
  sl->require_subcommand(1);
  auto* ak = sl->add_subcommand("akblcm", "solve T = A K B L C M");
  ak->add_option("--n", fa.n, "block size; matrices are (2n+1) x (2n+1)")->required();
  ak->add_option("--q", fa.q)->required();
  ak->add_option("--random", fa.random, "number of random matrices");
  ak->add_option("--matrix", fa.matrix, "matrix file");
  ak->callback([&] { action = [&] { return cmd_akblcm(gl, fa); }; });

  std::string level;
  auto* suite = app.add_subcommand("suite", "acceptance battery");
  suite->add_option("level", level)->required()->check(CLI::IsMember({"smoke", "full"}));
  suite->callback([&] {
    action = [&] {
      const auto s = run_suite(level == "full" ? SuiteLevel::Full : SuiteLevel::Smoke, gl.seed);
      Output o{Json::parse(s.report)};
      o.claim_ok = s.failed.empty();
      return o;
    };
  });

  std::string report_path;
  auto* verify = app.add_subcommand("verify-witness", "recheck every witness in a report");
  verify->add_option("report", report_path)->required();
  verify->callback([&] { action = [&] { return cmd_verify(report_path); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << PRODLAB_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!action) {
    err << "usage error: no command\n";
    return kExitUsage;
  }

  try {
    if (gl.workers > 0) set_worker_count(gl.workers);
    const auto t0 = std::chrono::steady_clock::now();
    Output o = action();
    if (gl.timing) o.report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string body;
    if (o.text && gl.format != "json") {
      body = *o.text;
    } else if (gl.format == "csv") {
      usage("csv output is available for chartable, partitions scan and fq ratio-scan");
    } else if (gl.format == "text") {
      body = render_text(o.report);
    } else {
      body = o.report.dump(2) + "\n";
    }
    if (gl.out.empty()) {
      out << body;
    } else {
      std::ofstream f(gl.out);
      if (!f) throw Error(ErrorKind::InvalidParameters, "cannot write " + gl.out);
      f << body;
    }
    if (!o.claim_ok) {
      err << "claim failed";
      if (o.report["command"] == "suite") err << ": criteria " << o.report["results"]["failed"].dump();
      err << "\n";
      return kExitClaimFailed;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e);
  } catch (const std::invalid_argument& e) {
    err << "usage error: bad number (" << e.what() << ")\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace prodlab
