#include "prodlab/char_table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "prodlab/error.hpp"

namespace prodlab {

std::vector<std::vector<std::vector<std::uint32_t>>> class_structure_constants(const Group& group) {
  const std::size_t k = group.class_count();
  // Stored per l so that each worker writes its own slice.
  std::vector<std::vector<std::uint32_t>> per_l(k, std::vector<std::uint32_t>(k * k, 0));
  parallel_for(k, [&](std::size_t l) {
    const Element g = group.classes()[l].representative;
    auto& slot = per_l[l];
    for (Element x = 0; x < group.order(); ++x) {
      const std::size_t j = group.class_of(x);
      const std::size_t i = group.class_of(group.multiply(group.inverse(x), g));
      ++slot[j * k + i];
    }
  });
  std::vector<std::vector<std::vector<std::uint32_t>>> a(k, std::vector<std::vector<std::uint32_t>>(k, std::vector<std::uint32_t>(k)));
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < k; ++i) a[j][i][l] = per_l[l][j * k + i];
  return a;
}

namespace {

struct Attempt {
  bool separated = false;
  std::vector<Eigen::VectorXcd> omegas;
};

Attempt diagonalize(const std::vector<std::vector<std::vector<std::uint32_t>>>& a, std::size_t k, Rng& rng) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    const double r = rng.unit() * 2.0 - 1.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) += r * a[j][i][l];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, true);
  Attempt out;
  if (solver.info() != Eigen::Success) return out;
  const Eigen::VectorXcd lambda = solver.eigenvalues();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  for (Eigen::Index x = 0; x < lambda.size(); ++x)
    for (Eigen::Index y = x + 1; y < lambda.size(); ++y)
      if (std::abs(lambda(x) - lambda(y)) < 1e-6 * scale) return out;
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    const Complex head = vectors(0, c);
    if (std::abs(head) < 1e-12) return out;
    out.omegas.push_back(vectors.col(c) / head);
  }
  out.separated = true;
  return out;
}

}  // namespace

CharacterTable character_table(const GroupPtr& group, const CharacterTableOptions& options) {
  if (!(options.tolerance >= 1e-12 && options.tolerance <= 1e-6))
    throw Error(ErrorKind::InvalidParameters, "tolerance must lie in [1e-12, 1e-6]");
  const Group& g = *group;
  const std::size_t k = g.class_count();
  options.budget.require(static_cast<std::uint64_t>(k) * g.order() + static_cast<std::uint64_t>(k) * k * k * 10, "character table");
  const auto a = class_structure_constants(g);
  const double order = static_cast<double>(g.order());
  std::vector<double> h(k);
  for (std::size_t j = 0; j < k; ++j) h[j] = static_cast<double>(g.classes()[j].size);

  Rng rng(options.seed);
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    Attempt at = diagonalize(a, k, rng);
    if (!at.separated) continue;
    std::vector<Character> chars;
    chars.reserve(k);
    for (const auto& raw : at.omegas) {
      const Eigen::VectorXcd& omega = raw;
      double denom = 0;
      for (std::size_t j = 0; j < k; ++j) denom += std::norm(omega(static_cast<Eigen::Index>(j))) / h[j];
      const double d = std::sqrt(order / denom);
      const double snapped = std::round(d);
      if (snapped < 1 || std::abs(d - snapped) > options.tolerance * snapped)
        throw Error(ErrorKind::ToleranceViolation, "degree " + std::to_string(d) + " is not close to an integer");
      Character c;
      c.degree = static_cast<int>(snapped);
      c.values.resize(k);
      for (std::size_t j = 0; j < k; ++j) c.values[j] = omega(static_cast<Eigen::Index>(j)) * snapped / h[j];
      chars.push_back(std::move(c));
    }
    long long sum_sq = 0;
    for (const auto& c : chars) sum_sq += static_cast<long long>(c.degree) * c.degree;
    if (sum_sq != static_cast<long long>(g.order()))
      throw Error(ErrorKind::ToleranceViolation, "sum of squared degrees " + std::to_string(sum_sq) + " != |G|");

    auto is_trivial = [&](const Character& c) {
      if (c.degree != 1) return false;
      for (const auto& v : c.values)
        if (std::abs(v - 1.0) > 1e-6) return false;
      return true;
    };
    auto key = [](const Character& c) {
      std::vector<long long> kk{c.degree};
      for (const auto& v : c.values) {
        kk.push_back(std::llround(v.real() * 1e6));
        kk.push_back(std::llround(v.imag() * 1e6));
      }
      return kk;
    };
    std::sort(chars.begin(), chars.end(), [&](const Character& x, const Character& y) {
      const bool tx = is_trivial(x), ty = is_trivial(y);
      if (tx != ty) return tx;
      return key(x) < key(y);
    });
    if (!is_trivial(chars.front())) throw Error(ErrorKind::ToleranceViolation, "trivial character missing");

    // Row orthogonality certificate.
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = x; y < k; ++y) {
        Complex s = 0;
        for (std::size_t j = 0; j < k; ++j) s += h[j] * chars[x].values[j] * std::conj(chars[y].values[j]);
        s /= order;
        const double expect = x == y ? 1.0 : 0.0;
        if (std::abs(s - expect) > options.tolerance)
          throw Error(ErrorKind::ToleranceViolation, "row orthogonality defect " + std::to_string(std::abs(s - expect)) + " for rows " +
                                                         std::to_string(x) + "," + std::to_string(y));
      }
    return CharacterTable(group, std::move(chars), options.tolerance);
  }
  throw Error(ErrorKind::EigenSplitFailure, "random class-algebra combinations failed to separate eigenspaces after " +
                                                std::to_string(options.max_attempts) + " attempts");
}

double witten_zeta(const CharacterTable& table, double s, bool include_trivial) {
  if (!(s > 0)) throw Error(ErrorKind::InvalidParameters, "zeta argument must be positive");
  double total = 0;
  for (std::size_t i = include_trivial ? 0 : 1; i < table.size(); ++i) total += std::pow(static_cast<double>(table[i].degree), -s);
  return total;
}

}  // namespace prodlab
