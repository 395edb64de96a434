#include "anosov/numlin.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace anosov {

namespace {

void require_square(const Matrix& g, const char* who) {
  if (g.rows() != g.cols() || g.rows() == 0)
    fail(errc::dimension_mismatch, std::string(who) + ": matrix must be square and nonempty");
  if (!g.allFinite()) fail(errc::invalid_params, std::string(who) + ": non-finite entries");
}

Eigen::JacobiSVD<Matrix> svd_of(const Matrix& a, unsigned opts = 0) {
  return Eigen::JacobiSVD<Matrix>(a, opts);
}

}  // namespace

Subspace Subspace::from_span(const Matrix& span, int expected_dim, double tol) {
  if (span.rows() == 0 || span.cols() == 0)
    fail(errc::dimension_mismatch, "subspace: empty spanning set");
  if (!span.allFinite()) fail(errc::invalid_params, "subspace: non-finite entries");
  Eigen::JacobiSVD<Matrix> svd = svd_of(span, Eigen::ComputeThinU);
  double smax = svd.singularValues()(0);
  if (smax == 0.0) fail(errc::singular_input, "subspace: zero spanning set");
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol * smax) ++rank;
  if (expected_dim >= 0 && rank != expected_dim)
    fail(errc::rank_mismatch, "subspace: spanning set has rank " + std::to_string(rank) +
                                  ", expected " + std::to_string(expected_dim));
  Subspace s;
  s.basis_ = svd.matrixU().leftCols(rank);
  return s;
}

Subspace Subspace::from_orthonormal(const Matrix& basis) {
  Subspace s;
  s.basis_ = basis;
  if (s.orthonormality_residual() > kOrthoResidualTol)
    fail(errc::invalid_params, "subspace: basis is not orthonormal");
  return s;
}

double Subspace::orthonormality_residual() const {
  if (basis_.cols() == 0) return 0.0;
  Matrix g = basis_.transpose() * basis_;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

BilinearForm BilinearForm::from_matrix(const Matrix& gram) {
  require_square(gram, "bilinear form");
  double scale = gram.cwiseAbs().maxCoeff();
  if (scale == 0.0) fail(errc::degenerate_form, "bilinear form: zero matrix");
  double sym = (gram - gram.transpose()).cwiseAbs().maxCoeff();
  double anti = (gram + gram.transpose()).cwiseAbs().maxCoeff();
  BilinearForm f;
  if (sym <= kFormKindTol * scale)
    f.kind_ = FormKind::symmetric;
  else if (anti <= kFormKindTol * scale)
    f.kind_ = FormKind::antisymmetric;
  else
    fail(errc::kind_mismatch, "bilinear form: neither symmetric nor antisymmetric");
  Eigen::JacobiSVD<Matrix> svd = svd_of(gram);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= kFormDegenerateTol * sv(0))
    fail(errc::degenerate_form, "bilinear form: numerically degenerate");
  f.gram_ = gram;
  return f;
}

Vector cartan_projection(const Matrix& g) {
  require_square(g, "cartan projection");
  Eigen::JacobiSVD<Matrix> svd = svd_of(g);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < kSingularFloor)
    fail(errc::singular_input, "cartan projection: singular value underflow");
  Vector mu(sv.size());
  for (int i = 0; i < sv.size(); ++i) mu(i) = std::log(sv(i));
  return mu;  // singular values already descend
}

Vector jordan_projection(const Matrix& g) {
  require_square(g, "jordan projection");
  Eigen::RealSchur<Matrix> schur(g);
  if (schur.info() != Eigen::Success)
    fail(errc::nonconvergent_eigen, "jordan projection: Schur iteration failed");
  const Matrix& T = schur.matrixT();
  const Matrix& U = schur.matrixU();
  double scale = g.cwiseAbs().maxCoeff();
  double resid = (U * T * U.transpose() - g).cwiseAbs().maxCoeff();
  if (scale > 0 && resid > kEigenResidualTol * scale * g.rows())
    fail(errc::nonconvergent_eigen, "jordan projection: Schur residual too large");

  int n = static_cast<int>(g.rows());
  std::vector<double> moduli;
  moduli.reserve(n);
  for (int i = 0; i < n;) {
    if (i + 1 < n && T(i + 1, i) != 0.0) {
      // 2x2 block: complex pair with |lambda|^2 = |det|
      double det = T(i, i) * T(i + 1, i + 1) - T(i, i + 1) * T(i + 1, i);
      double m = std::sqrt(std::abs(det));
      moduli.push_back(m);
      moduli.push_back(m);
      i += 2;
    } else {
      moduli.push_back(std::abs(T(i, i)));
      i += 1;
    }
  }
  for (double m : moduli)
    if (m < kSingularFloor) fail(errc::singular_input, "jordan projection: eigenvalue underflow");
  std::sort(moduli.begin(), moduli.end(), std::greater<double>());
  Vector lam(n);
  for (int i = 0; i < n; ++i) lam(i) = std::log(moduli[i]);
  return lam;
}

double log_abs_det(const Matrix& g) {
  require_square(g, "log det");
  Eigen::PartialPivLU<Matrix> lu(g);
  double acc = 0.0;
  for (int i = 0; i < g.rows(); ++i) {
    double d = std::abs(lu.matrixLU()(i, i));
    if (d < kSingularFloor) fail(errc::singular_input, "log det: singular matrix");
    acc += std::log(d);
  }
  return acc;
}

std::vector<double> principal_cosines(const Subspace& P, const Subspace& Q) {
  if (P.ambient() != Q.ambient())
    fail(errc::dimension_mismatch, "principal angles: ambient dimensions differ");
  Matrix m = P.basis().transpose() * Q.basis();
  Eigen::JacobiSVD<Matrix> svd = svd_of(m);
  std::vector<double> cosines(svd.singularValues().size());
  for (std::size_t i = 0; i < cosines.size(); ++i)
    cosines[i] = std::min(1.0, svd.singularValues()(static_cast<int>(i)));
  return cosines;
}

int intersection_dim(const Subspace& P, const Subspace& Q, double tol) {
  int count = 0;
  for (double c : principal_cosines(P, Q))
    if (c > 1.0 - tol) ++count;
  return count;
}

double sine_distance(const Subspace& P, const Subspace& Q) {
  // Sine of the smallest principal angle; cosines come back sorted
  // descending, so the first entry is the relevant one.
  if (P.dim() == 1 && Q.dim() == 1) {
    if (P.ambient() != Q.ambient())
      fail(errc::dimension_mismatch, "principal angles: ambient dimensions differ");
    double c = std::min(1.0, std::abs(P.basis().col(0).dot(Q.basis().col(0))));
    return std::sqrt(std::max(0.0, 1.0 - c * c));
  }
  std::vector<double> cosines = principal_cosines(P, Q);
  double cmax = cosines.empty() ? 0.0 : cosines.front();
  return std::sqrt(std::max(0.0, 1.0 - cmax * cmax));
}

double containment_residual(const Subspace& S, const Subspace& B) {
  if (S.ambient() != B.ambient())
    fail(errc::dimension_mismatch, "containment: ambient dimensions differ");
  Matrix rest = S.basis() - B.basis() * (B.basis().transpose() * S.basis());
  Eigen::JacobiSVD<Matrix> svd = svd_of(rest);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

Subspace form_perp(const Subspace& P, const BilinearForm& F) {
  if (P.ambient() != F.ambient())
    fail(errc::dimension_mismatch, "form perp: ambient dimensions differ");
  // F(v, p) = v^T G p for all columns p, so solve (G P)^T v = 0.
  Matrix a = (F.gram() * P.basis()).transpose();
  Matrix ker = null_space(a);
  if (ker.cols() != P.ambient() - P.dim())
    fail(errc::degenerate_form, "form perp: unexpected kernel dimension");
  return Subspace::from_orthonormal(ker);
}

bool is_transverse(const Subspace& P, const Subspace& Q, const BilinearForm& F, double tol) {
  return intersection_dim(P, form_perp(Q, F), tol) == 0;
}

double direct_sum_margin(const Subspace& P, const Subspace& Q) {
  if (P.ambient() != Q.ambient())
    fail(errc::dimension_mismatch, "direct sum margin: ambient dimensions differ");
  // With orthonormal blocks the stacked Gram matrix is I plus an off-diagonal
  // coupling, so the smallest stacked singular value is sqrt(1 - c) where c
  // is the largest principal cosine.
  double cmax;
  if (P.dim() == 1) {
    cmax = std::min(1.0, (Q.basis().transpose() * P.basis().col(0)).norm());
  } else if (Q.dim() == 1) {
    cmax = std::min(1.0, (P.basis().transpose() * Q.basis().col(0)).norm());
  } else {
    std::vector<double> cosines = principal_cosines(P, Q);
    cmax = cosines.empty() ? 0.0 : cosines.front();
  }
  return std::sqrt(std::max(0.0, 1.0 - cmax));
}

Signature signature_of(const Matrix& gram) {
  require_square(gram, "signature");
  double scale = gram.cwiseAbs().maxCoeff();
  if (scale == 0.0) return Signature{0, 0, static_cast<int>(gram.rows())};
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > kFormKindTol * scale)
    fail(errc::kind_mismatch, "signature: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  if (es.info() != Eigen::Success)
    fail(errc::nonconvergent_eigen, "signature: eigensolver failed");
  double emax = es.eigenvalues().cwiseAbs().maxCoeff();
  double band = kRankTol * emax;
  Signature s;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double e = es.eigenvalues()(i);
    if (e > band)
      ++s.positive;
    else if (e < -band)
      ++s.negative;
    else
      ++s.null;
  }
  return s;
}

Matrix null_space(const Matrix& A, double tol) {
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (smax > 0 && sv(i) > tol * smax) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

namespace {

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Divides out the largest entry magnitude and returns its log.
double rescale_inplace(Matrix& m) {
  const double c = m.cwiseAbs().maxCoeff();
  if (!(c > 0.0)) fail(errc::singular_input, "matrix power collapsed to zero");
  m /= c;
  return std::log(c);
}

double top_singular_log(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd = svd_of(m);
  const double s = svd.singularValues()(0);
  if (s < kSingularFloor) fail(errc::singular_input, "vanishing singular value");
  return std::log(s);
}

}  // namespace

Matrix compound_matrix(const Matrix& A, int k) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) fail(errc::invalid_params, "compound of non-square matrix");
  if (k < 0 || k > n) fail(errc::invalid_params, "compound order out of range");
  if (k == 0) return Matrix::Ones(1, 1);
  const std::vector<std::vector<int>> subsets = k_subsets(n, k);
  const int d = static_cast<int>(subsets.size());
  if (d > 500) fail(errc::too_large, "compound dimension above 500");
  Matrix out(d, d);
  Matrix minor(k, k);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          minor(i, j) = A(subsets[static_cast<std::size_t>(a)]
                                 [static_cast<std::size_t>(i)],
                          subsets[static_cast<std::size_t>(b)]
                                 [static_cast<std::size_t>(j)]);
      out(a, b) = minor.determinant();
    }
  }
  return out;
}

Vector cartan_projection_power(const Matrix& g, std::int64_t m) {
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n || n == 0) fail(errc::invalid_params, "cartan: non-square input");
  if (m < 1) fail(errc::invalid_params, "cartan power: exponent must be >= 1");

  // log sigma_1(...k) of g^m for each k, via square-and-multiply on the k-th
  // compound with running rescaling.
  std::vector<double> s(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    Matrix base = compound_matrix(g, k);
    double log_base = rescale_inplace(base);
    Matrix result;
    double log_result = 0.0;
    bool have_result = false;
    std::int64_t e = m;
    while (e > 0) {
      if (e & 1) {
        if (have_result) {
          result = (result * base).eval();
          log_result += log_base;
        } else {
          result = base;
          log_result = log_base;
          have_result = true;
        }
        log_result += rescale_inplace(result);
      }
      e >>= 1;
      if (e > 0) {
        base = (base * base).eval();
        log_base *= 2;
        log_base += rescale_inplace(base);
      }
    }
    s[static_cast<std::size_t>(k)] = log_result + top_singular_log(result);
  }

  Vector mu(n);
  for (int k = 1; k <= n; ++k)
    mu(k - 1) = s[static_cast<std::size_t>(k)] - s[static_cast<std::size_t>(k - 1)];
  return mu;
}

}  // namespace anosov
