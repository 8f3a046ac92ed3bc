#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prodlab/bigint.hpp"
#include "prodlab/fq_matrix.hpp"
#include "prodlab/runtime.hpp"

namespace prodlab::fq {

constexpr int kMaxAdditiveField = 9;

using Code = std::uint32_t;

/// All n x n matrices over F_q, indexed by code = sum of entry (i, j) times
/// q^(i n + j). Since field codes are base-p coefficient vectors, matrix
/// addition is digitwise addition mod p of the base-p expansion of codes.
class MatrixSpace {
 public:
  static constexpr std::size_t kMaxSize = std::size_t{1} << 22;

  /// Throws InvalidParameters for q > 9 and BudgetExceeded above kMaxSize.
  MatrixSpace(const Field& field, int n);

  const Field& field() const { return *field_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }

  Code add(Code a, Code b) const;
  Code neg(Code a) const;
  Code sub(Code a, Code b) const { return add(a, neg(b)); }

  int rank(Code a) const { return rank_[a]; }
  const std::vector<Code>& of_rank(int r) const { return by_rank_[static_cast<std::size_t>(r)]; }

  Matrix matrix(Code a) const;
  Code code(const Matrix& m) const;

 private:
  const Field* field_;
  int n_;
  std::size_t size_;
  int chunk_radix_ = 1;
  int chunks_ = 0;
  std::vector<std::uint16_t> chunk_add_;
  std::vector<std::uint16_t> chunk_neg_;
  std::vector<std::uint8_t> rank_;
  std::vector<std::vector<Code>> by_rank_;
};

/// Number of injective linear maps F_q^d -> F_q^D.
BigInt count_injections(int d, int D, int q);
/// Number of d-dimensional subspaces of F_q^D.
BigInt count_subspaces(int d, int D, int q);
/// Number of n x n matrices of rank r.
BigInt count_rank(int r, int n, int q);

struct Sandwich {
  BigInt value;
  Rational lower;
  Rational upper;
  bool holds = false;
};

/// q^(dD)/4 <= I <= q^(dD).
Sandwich injection_bounds(int d, int D, int q);
/// q^(d(D-d)) <= S <= 4 q^(d(D-d)).
Sandwich subspace_bounds(int d, int D, int q);
/// q^(r(2n-r))/4 <= R(r) <= 4 q^(r(2n-r)).
Sandwich rank_bounds(int r, int n, int q);

/// Brute-force count of matrices of each rank 0..n.
std::vector<BigInt> rank_census(const MatrixSpace& space);

enum class Representative { Canonical, RandomConjugate };

/// Rank-t matrix: [I_t 0; 0 0], or g [I_t 0; 0 0] h for random invertible g, h.
Code rank_representative(const MatrixSpace& space, int t, Representative kind, std::uint64_t seed = 0);

/// Number of tuples (a_1..a_k) with rank(a_i) = ranks[i] and sum m. Refuses
/// n > 4 for q = 2 and n > 3 for q >= 3.
BigInt nsum_bruteforce(const MatrixSpace& space, std::span<const int> ranks, Code m, const Budget& budget = {});
BigInt nsum_bruteforce(const MatrixSpace& space, std::span<const int> ranks, int t, const Budget& budget = {});

struct Conservation {
  BigInt lhs;  // sum over t of N(r, s; t) R(t)
  BigInt rhs;  // R(r) R(s)
  bool holds = false;
};

Conservation nsum_conservation(const MatrixSpace& space, int r, int s, const Budget& budget = {});

struct RatioRow3 {
  int r1 = 0, r2 = 0, r3 = 0, t = 0;
  BigInt count;
  Rational ratio;  // N q^(n^2) / (R(r1) R(r2) R(r3))
};

struct RatioRow2 {
  int r = 0, s = 0, t = 0;
  BigInt count;
  Rational ratio;  // N q^(n^2) / (R(r) R(s))
  double envelope_ratio = 0;  // ratio / q^((2n-r-s-t)^2 / 4)
  bool vanishing = false;  // t < |r-s| or t > r+s
};

struct RatioScan {
  int n = 0, q = 0, r_min = 0;
  std::vector<RatioRow3> k3;
  Rational max_ratio;
  std::vector<RatioRow2> k2;
  double max_envelope_ratio = 0;
};

/// Tabulates the k = 3 ratios for r_min <= r_i <= n and all t, plus every
/// k = 2 ratio. r_min < 0 selects ceil(2n/3).
RatioScan nsum_ratio_scan(const MatrixSpace& space, int r_min = -1, const Budget& budget = {});

struct QuadricSum {
  long double sum = 0;
  long double bound = 0;
  bool holds = false;
};

/// Sum of q^F(x) over integers a <= x <= b for F(x) = c x^2 + lin x + cst,
/// against 2 q^M / (1 - 2^c). Throws PreconditionViolated unless c < 0 and
/// F <= M on the range.
QuadricSum quadric_series_bound(long long a, long long b, double c, double lin, double cst, double M, int q);

/// Finite abelian group Z/m_1 x ... x Z/m_d in mixed radix.
class AdditiveGroup {
 public:
  explicit AdditiveGroup(std::vector<int> moduli);
  static AdditiveGroup of_matrices(const MatrixSpace& space);

  std::size_t size() const { return size_; }
  Code add(Code a, Code b) const;
  Code neg(Code a) const;
  const std::vector<int>& moduli() const { return moduli_; }

 private:
  std::vector<int> moduli_;
  std::size_t size_ = 1;
};

using CodeSet = std::vector<Code>;

/// #{(x_1, x_1', ..., x_k, x_k') : sum x_i = sum x_i'} from the histogram of
/// sums.
BigInt additive_energy(const AdditiveGroup& group, const std::vector<CodeSet>& sets, const Budget& budget = {});

struct SumsetCheck {
  std::size_t sumset = 0;
  BigInt energy;
  Rational lower_bound;  // prod |X_i|^2 / E
  bool holds = false;
};

SumsetCheck sumset_energy_check(const AdditiveGroup& group, const std::vector<CodeSet>& sets, const Budget& budget = {});

struct GlPair {
  Matrix g;
  Matrix h;
};

/// g^-1 a h; throws SingularInput unless g and h are invertible.
Matrix un_tn_action(const Matrix& g, const Matrix& h, const Matrix& a);

/// Block matrices of SL(2n+1, q): U(a) and T(g, h) = diag(g, 1/det(gh), h).
Matrix un_element(const Matrix& a);
Matrix tn_element(const Matrix& g, const Matrix& h);

/// True when T(g,h)^-1 U(a) T(g,h) = U(g^-1 a h).
bool un_tn_block_check(const Matrix& g, const Matrix& h, const Matrix& a);

/// Uniform invertible matrix by rejection.
Matrix random_invertible(const Field& field, int n, Rng& rng);

/// True when the only GL x GL invariant additive subgroups are 0 and Mat,
/// checked by spanning each rank orbit over F_p.
bool invariant_subgroups_trivial(const MatrixSpace& space);

struct AutomorphismGrowth {
  std::vector<GlPair> t;
  std::size_t sumset = 0;
  std::size_t min_size = 0;
  /// |sum t_i X_i| >= (l/2) min |X_i|.
  bool growth = false;
  /// The sumset is a union of cosets of an invariant N with |N| >= min |X_i|.
  bool filling = false;
  std::size_t coset_subgroup = 0;  // |N| witnessing filling, 0 if none
  bool invariant_subgroups_trivial = false;
};

/// Greedy over seeded pools of GL x GL pairs maximizing |sum t_i X_i|.
AutomorphismGrowth automorphism_growth_search(const MatrixSpace& space, const std::vector<CodeSet>& sets,
                                              std::uint64_t seed, std::size_t pool = 64, const Budget& budget = {});

struct DilateCover {
  bool found = false;
  std::size_t mu = 0;
  std::vector<GlPair> pairs;  // (a_i, b_i); set i uses X_(i mod #sets)
};

/// Sum of a_i^-1 X_i b_i, with sets reused cyclically.
std::vector<bool> dilate_sum(const MatrixSpace& space, const std::vector<CodeSet>& sets, const std::vector<GlPair>& pairs);
bool verify_dilate_cover(const MatrixSpace& space, const std::vector<CodeSet>& sets, const std::vector<GlPair>& pairs);

/// Greedy residual coverage with 256 seeded candidate pairs per round
/// (every pair when GL x GL is smaller), over several restarts.
DilateCover dilate_cover_search(const MatrixSpace& space, const std::vector<CodeSet>& sets, std::size_t mu_max,
                                std::uint64_t seed, std::size_t restarts = 8);

enum class Graph { Alpha, Kappa, Upsilon };

/// Edge (i, j) of the graph on 2n+1 vertices, 1-based as in the pattern
/// definitions: alpha = {(2i-1, 2j)}, kappa = {(2i, 2j+1)} for i <= j, and
/// upsilon = {(i, j) : i <= n < n+1 < j}.
bool graph_edge(Graph g, int n, int i, int j);

/// Unit diagonal with off-diagonal support inside the edge set. Throws
/// SizeMismatch unless the matrix is square of odd size >= 3.
bool graph_matrix_membership(const Matrix& m, Graph g);

struct Akblcm {
  Matrix A, K, B, L, C, M;
};

/// Solves T = A K B L C M with A, B, C in CM(alpha) and K, L, M in CM(kappa).
/// Throws SolveFailed if an equation loses its designated variable.
Akblcm akblcm_solve(const Matrix& T);

/// Uniform unipotent upper triangular matrix.
Matrix random_unipotent(const Field& field, int size, Rng& rng);

/// Checks (CM(alpha) CM(kappa))^3 contains every unipotent upper triangular
/// matrix, by enumerating all products. Refuses more than 10^7 products.
bool cm_cube_covers_unipotent(const Field& field, int n);

}  // namespace prodlab::fq
