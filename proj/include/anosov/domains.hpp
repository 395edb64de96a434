#ifndef ANOSOV_DOMAINS_HPP
#define ANOSOV_DOMAINS_HPP

// Flag-variety points, incidence sets cut out by a sampled limit set,
// Monte-Carlo domain sampling on the complement, the explicit SL(n)
// lexicographic membership tests, and codimension arithmetic.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "anosov/dynamics.hpp"
#include "anosov/numlin.hpp"

namespace anosov {

// Default tolerance for exact-style incidence verdicts.
inline constexpr double kIncidenceTol = 1e-8;
// Monte-Carlo membership uses a thickened incidence set so that a finite
// sample cuts out a positive-measure region.
inline constexpr double kDomainThickening = 0.02;

enum class FlagKind { isotropic_line, maximal_isotropic, partial_flag, full_flag };

const char* flag_kind_name(FlagKind k);
FlagKind flag_kind_from_name(const std::string& s);

// A point of a flag variety: one subspace for the line and maximal isotropic
// kinds, a (k, n-k) nested pair for partial flags, dimensions 1..n-1 for full
// flags.  The form is carried only when isotropy constraints apply.
struct FlagPoint {
  FlagKind kind = FlagKind::isotropic_line;
  std::vector<Subspace> subspaces;
  std::optional<BilinearForm> form;
};

// Validates nesting, strictly increasing dimensions, kind-specific dimension
// counts, and isotropy against the carried form.
void validate_flag_point(const FlagPoint& x, double tol = kIncidenceTol);

FlagPoint make_flag_point(FlagKind kind, std::vector<Subspace> subspaces,
                          std::optional<BilinearForm> form = std::nullopt,
                          double tol = kIncidenceTol);

struct MembershipReport {
  bool member = false;
  int witness = -1;         // index of the first incident sample point
  int incidence_count = 0;  // number of incident sample points
};

// True iff some sample point is incident with x, where incidence means the
// lower-dimensional subspace is contained in the other (equality when the
// dimensions agree), decided at sine residual <= tol.
MembershipReport k_membership(const Subspace& x, const std::vector<Subspace>& sample,
                              double tol = kIncidenceTol);
MembershipReport k_membership(const Subspace& x, const LimitSetSample& sample,
                              double tol = kIncidenceTol);
MembershipReport k_membership(const FlagPoint& x, const LimitSetSample& sample,
                              double tol = kIncidenceTol);

struct DomainSampleReport {
  int trials = 0;
  int hits = 0;  // draws landing outside the thickened incidence set
  double fraction = 0.0;
  std::uint64_t seed = 0;
  double thickening = kDomainThickening;
  int sample_size = 0;
  int sample_depth = 0;  // longest word length backing the sample
  std::optional<Subspace> example_member;      // in the complement domain
  std::optional<Subspace> example_non_member;  // inside the incidence set
};

// Draws random points of the sample's own flag variety (isotropic when a form
// is supplied) and counts how many avoid every thickened incidence set.  The
// measured fraction is an upper bound for the true domain that shrinks as the
// sample deepens.  Deterministic for a fixed seed.
DomainSampleReport domain_sample(const LimitSetSample& sample, const BilinearForm* form,
                                 int trials, std::uint64_t seed,
                                 double thickening = kDomainThickening);

struct EquivarianceReport {
  bool baseline = false;
  int violations = 0;
  std::vector<char> verdicts;        // one membership verdict per word
  std::vector<int> violating_words;  // indices into the word list
};

// Membership of a fixed query against the sample pushed forward by each word.
// A genuinely invariant sample leaves every verdict at the baseline; a
// truncated sample shows up as violations.
EquivarianceReport equivariance_check(const LimitSetSample& sample,
                                      const RepresentationSpec& rep, const Subspace& x,
                                      const std::vector<ReducedWord>& words,
                                      double tol = kIncidenceTol);

struct PinchReport {
  bool member = false;
  int witness_level = -1;  // flag level k with line <= flag_k <= hyperplane
};

// Adjoint-domain test for SL(n): the (line, hyperplane) pair is cut out by a
// full flag iff some flag level pinches between the two.
PinchReport sln_K_Ad_membership(const Subspace& line, const Subspace& hyperplane,
                                const std::vector<Subspace>& full_flag,
                                double tol = kIncidenceTol);

struct LexSequencesReport {
  bool member = false;
  std::vector<int> i_seq;  // i_l = min { i : dim(F_i cap xi_k) = l }
  std::vector<int> j_seq;  // j_l = max { j : dim(F_j cap xi_nk) = j - l + 1 }
};

// Membership of a full flag in the incidence set of a nested pair
// (xi_k, xi_nk) of dimensions (k, n-k): computes both index sequences and
// compares them lexicographically.  Throws malformed_flag when the
// intersection dimensions fail to grow one step at a time, which signals a
// tolerance failure rather than a legitimate verdict.
LexSequencesReport sln_Kprime_k_membership(const std::vector<Subspace>& full_flag,
                                           const Subspace& xi_k, const Subspace& xi_nk,
                                           double tol = kIncidenceTol);

// True iff some sampled line lies inside the half-dimensional subspace P.
MembershipReport grassmannian_membership(const Subspace& P,
                                         const std::vector<Subspace>& lines,
                                         double tol = kIncidenceTol);

enum class GroupFamily { Opq, SpR, SpC, OC, Upq, Sppq, SOstar };

const char* group_family_name(GroupFamily f);
GroupFamily group_family_from_name(const std::string& s);

// Codimension excess of the compact-quotient obstruction for each classical
// family: Opq(p,q) gives q - vcd, Upq 2q - vcd, Sppq 4q - vcd, OC(m) uses the
// even cover 2*ceil(m/2) - vcd, SpR(2n) gives n + 1 - vcd, SpC(2n) gives
// 2n + 2 - vcd, SOstar(2n) gives 4n - 2 - vcd.  First parameter is p for the
// (p, q) families and the matrix size for the single-parameter ones.
int codim_delta(GroupFamily family, int p_or_size, int q, int vcd);

struct SchubertMin {
  int value = 0;
  int s = 1;
  int u = 1;
};

// Minimizes n - k + (k-1)(s-1) + k(u-s) over 1 <= s <= u <= n-1 and reports
// the first minimizer; the minimum is n - k, attained at (1, 1).
SchubertMin schubert_codim_min(int n, int k);

// Uniform random dim-dimensional subspace via QR of a Gaussian matrix.
Subspace random_grassmannian_point(int ambient, int dim, std::mt19937_64& rng);

// Random isotropic subspace of a symmetric nondegenerate form: orthonormal
// frames in the two definite blocks of an eigenbasis, glued as the graph of
// the isometry matching them.  Covers every isotropic dimension up to the
// Witt index; the distribution is smooth but not exactly invariant.
Subspace random_isotropic_point(const BilinearForm& form, int dim, std::mt19937_64& rng);

}  // namespace anosov

#endif
