#ifndef ANOSOV_NUMLIN_HPP
#define ANOSOV_NUMLIN_HPP

// Dense numerical kernel: Cartan/Jordan projections, orthonormal subspaces,
// bilinear forms, principal-angle geometry.  Everything is double precision;
// subspaces are always stored with orthonormalized basis columns.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "anosov/errors.hpp"

namespace anosov {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kOrthoResidualTol = 1e-10;
inline constexpr double kFormKindTol = 1e-12;
inline constexpr double kFormDegenerateTol = 1e-8;
inline constexpr double kRankTol = 1e-8;
inline constexpr double kSingularFloor = 1e-300;
inline constexpr double kEigenResidualTol = 1e-9;

// A k-dimensional subspace of R^n, held as an n x k matrix with orthonormal
// columns.  Constructors re-orthonormalize and then check the residual.
class Subspace {
 public:
  Subspace() = default;

  // Span of the columns; expected_dim < 0 means "use the numerical rank".
  static Subspace from_span(const Matrix& span, int expected_dim = -1, double tol = kRankTol);
  // Columns already orthonormal (still verified against kOrthoResidualTol).
  static Subspace from_orthonormal(const Matrix& basis);

  int ambient() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

  double orthonormality_residual() const;

 private:
  Matrix basis_;
};

enum class FormKind { symmetric, antisymmetric };

// A nondegenerate bilinear form F(u,v) = u^T G v with G (anti)symmetric.
class BilinearForm {
 public:
  BilinearForm() = default;
  static BilinearForm from_matrix(const Matrix& gram);

  int ambient() const { return static_cast<int>(gram_.rows()); }
  const Matrix& gram() const { return gram_; }
  FormKind kind() const { return kind_; }

  double apply(const Vector& u, const Vector& v) const { return u.dot(gram_ * v); }

 private:
  Matrix gram_;
  FormKind kind_ = FormKind::symmetric;
};

struct Signature {
  int positive = 0;
  int negative = 0;
  int null = 0;
};

// Sorted (descending) logarithms of the singular values of g.
Vector cartan_projection(const Matrix& g);

// Sorted (descending) logarithms of the eigenvalue moduli of g.
Vector jordan_projection(const Matrix& g);

// log |det g| via LU, stable for badly scaled inputs.
double log_abs_det(const Matrix& g);

// Cosines of the principal angles between P and Q, descending.
std::vector<double> principal_cosines(const Subspace& P, const Subspace& Q);

// Number of principal angles with cosine > 1 - tol.
int intersection_dim(const Subspace& P, const Subspace& Q, double tol = kRankTol);

// Sine of the smallest principal angle between P and Q; the projective
// metric for lines.  Vanishes whenever the two subspaces share a direction.
double sine_distance(const Subspace& P, const Subspace& Q);

// Largest sine of the principal angles from S to its projection onto B;
// zero exactly when S is contained in B.
double containment_residual(const Subspace& S, const Subspace& B);

// { v : F(v, p) = 0 for all p in P }, dimension n - dim P.
Subspace form_perp(const Subspace& P, const BilinearForm& F);

// True iff P meets the F-perp of Q only in 0.
bool is_transverse(const Subspace& P, const Subspace& Q, const BilinearForm& F,
                   double tol = kRankTol);

// Smallest singular value of [basis(P) | basis(Q)]; positive iff the two
// subspaces span a direct sum.
double direct_sum_margin(const Subspace& P, const Subspace& Q);

// Eigenvalue signature of a symmetric matrix, with null band at
// 1e-8 * (largest eigenvalue modulus).  Rejects antisymmetric input.
Signature signature_of(const Matrix& gram);

// Orthonormal basis of the null space of A (right null space), with the rank
// decided at tol * (largest singular value).
Matrix null_space(const Matrix& A, double tol = kRankTol);

// k-th exterior power (matrix of k x k minors, subsets in lexicographic
// order); refuses compound dimensions above 500.
Matrix compound_matrix(const Matrix& A, int k);

// Cartan projection of g^m computed through exterior powers with per-step
// rescaling, which stays accurate where a plain SVD of the power underflows.
Vector cartan_projection_power(const Matrix& g, std::int64_t m);

}  // namespace anosov

#endif
