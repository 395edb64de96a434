#include <cmath>
#include <random>

#include "doctest.h"

#include "anosov/errors.hpp"
#include "anosov/numlin.hpp"

using anosov::BilinearForm;
using anosov::Matrix;
using anosov::Subspace;
using anosov::Vector;

namespace {

Matrix random_matrix(std::mt19937& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
  return m;
}

// Random SL(n) matrix with distinct eigenvalue moduli.
Matrix random_unimodular(std::mt19937& rng, int n, double min_gap) {
  while (true) {
    Matrix m = random_matrix(rng, n);
    const double det = m.determinant();
    if (std::abs(det) < 0.1) continue;
    m /= std::copysign(std::pow(std::abs(det), 1.0 / n), 1.0);
    if (det < 0) m.row(0) *= -1.0;
    const Vector lambda = anosov::jordan_projection(m);
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i)
      if (lambda(i) - lambda(i + 1) < min_gap) ok = false;
    if (ok) return m;
  }
}

Vector reverse_negate(const Vector& v) {
  Vector out(v.size());
  for (int i = 0; i < v.size(); ++i) out(i) = -v(v.size() - 1 - i);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("numlin");

TEST_CASE("cartan projection of a diagonal matrix") {
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = std::exp(3.0);
  g(1, 1) = 1.0;
  g(2, 2) = std::exp(-3.0);
  const Vector mu = anosov::cartan_projection(g);
  CHECK(mu(0) == doctest::Approx(3.0));
  CHECK(mu(1) == doctest::Approx(0.0));
  CHECK(mu(2) == doctest::Approx(-3.0));
}

TEST_CASE("cartan projection is sorted, sums to log-det, flips under inverse") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 3;
    Matrix g = random_matrix(rng, n);
    if (std::abs(g.determinant()) < 1e-3) continue;
    const Vector mu = anosov::cartan_projection(g);
    for (int i = 0; i + 1 < n; ++i) CHECK(mu(i) >= mu(i + 1) - 1e-12);
    CHECK(mu.sum() == doctest::Approx(anosov::log_abs_det(g)).epsilon(1e-9));
    const Vector mu_inv = anosov::cartan_projection(g.inverse());
    CHECK((mu_inv - reverse_negate(mu)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("jordan projection closed forms") {
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = std::exp(1.5);
  g(1, 1) = std::exp(0.25);
  g(2, 2) = std::exp(-1.75);
  const Vector lambda = anosov::jordan_projection(g);
  CHECK(lambda(0) == doctest::Approx(1.5));
  CHECK(lambda(1) == doctest::Approx(0.25));
  CHECK(lambda(2) == doctest::Approx(-1.75));

  Matrix rot(2, 2);
  rot << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  const Vector rot_lambda = anosov::jordan_projection(rot);
  CHECK(rot_lambda.cwiseAbs().maxCoeff() < 1e-12);

  Matrix fib(2, 2);
  fib << 2, 1, 1, 1;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const Vector fib_lambda = anosov::jordan_projection(fib);
  CHECK(fib_lambda(0) == doctest::Approx(2.0 * std::log(phi)));
  CHECK(fib_lambda(1) == doctest::Approx(-2.0 * std::log(phi)));
}

TEST_CASE("jordan equals the power limit of cartan") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix g = random_unimodular(rng, 3, 0.15);
    const Vector lambda = anosov::jordan_projection(g);
    const Vector mu64 = anosov::cartan_projection_power(g, 64) / 64.0;
    CHECK((mu64 - lambda).cwiseAbs().maxCoeff() < 0.05);
  }
}

TEST_CASE("jordan partial sums stay below cartan partial sums of powers") {
  // The top entry obeys lambda_1 <= mu_1(g^m)/m for every m; lower entries
  // only obey the partial-sum (majorization) form, since they approach the
  // limit from below along powers.
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix g = random_matrix(rng, 3);
    if (std::abs(g.determinant()) < 1e-2) continue;
    const Vector lambda = anosov::jordan_projection(g);
    for (std::int64_t m : {1, 2, 4, 8, 16, 32}) {
      const Vector mu = anosov::cartan_projection_power(g, m) / double(m);
      double lambda_sum = 0.0;
      double mu_sum = 0.0;
      for (int i = 0; i < 3; ++i) {
        lambda_sum += lambda(i);
        mu_sum += mu(i);
        CHECK(lambda_sum <= mu_sum + 1e-6);
      }
      CHECK(lambda(0) <= mu(0) + 1e-6);
    }
  }
}

TEST_CASE("compound matrices multiply and track singular values") {
  std::mt19937 rng(47);
  const Matrix a = random_matrix(rng, 4);
  const Matrix b = random_matrix(rng, 4);
  const Matrix lhs = anosov::compound_matrix(a * b, 2);
  const Matrix rhs = anosov::compound_matrix(a, 2) * anosov::compound_matrix(b, 2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9 * rhs.cwiseAbs().maxCoeff());

  const Vector mu = anosov::cartan_projection(a);
  Eigen::JacobiSVD<Matrix> svd(anosov::compound_matrix(a, 2));
  CHECK(std::log(svd.singularValues()(0)) == doctest::Approx(mu(0) + mu(1)));
}

TEST_CASE("cartan power route agrees with the plain route at exponent one") {
  std::mt19937 rng(53);
  const Matrix g = random_matrix(rng, 4);
  const Vector a = anosov::cartan_projection(g);
  const Vector b = anosov::cartan_projection_power(g, 1);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("cartan power route survives extreme conditioning") {
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = std::exp(3.0);
  g(1, 1) = 1.0;
  g(2, 2) = std::exp(-3.0);
  Matrix rot(3, 3);
  rot << 0.36, 0.48, -0.8, -0.8, 0.6, 0.0, 0.48, 0.64, 0.6;
  const Matrix conj = rot * g * rot.transpose();
  const Vector mu = anosov::cartan_projection_power(conj, 64);
  CHECK(mu(0) == doctest::Approx(192.0).epsilon(1e-6));
  CHECK(mu(2) == doctest::Approx(-192.0).epsilon(1e-6));
}

TEST_CASE("subspace construction orthonormalizes and detects rank") {
  Matrix span(3, 3);
  span << 1, 2, 1, 0, 0, 1, 0, 0, 1;
  span.col(1) = 2.0 * span.col(0);
  const Subspace s = Subspace::from_span(span);
  CHECK(s.dim() == 2);
  CHECK(s.orthonormality_residual() < 1e-12);
  CHECK_THROWS_AS(Subspace::from_span(span, 3), anosov::error);

  Matrix skew(3, 1);
  skew << 1, 1, 0;
  CHECK_THROWS_AS(Subspace::from_orthonormal(skew), anosov::error);
}

TEST_CASE("principal angles, intersection, containment") {
  Matrix xy(3, 2), xz(3, 2);
  xy << 1, 0, 0, 1, 0, 0;
  xz << 1, 0, 0, 0, 0, 1;
  const Subspace p = Subspace::from_orthonormal(xy);
  const Subspace q = Subspace::from_orthonormal(xz);
  const std::vector<double> cos = anosov::principal_cosines(p, q);
  CHECK(cos.size() == 2);
  CHECK(cos[0] == doctest::Approx(1.0));
  CHECK(cos[1] == doctest::Approx(0.0));
  CHECK(anosov::intersection_dim(p, q) == 1);
  CHECK(anosov::sine_distance(p, q) == doctest::Approx(0.0));

  Matrix e1(3, 1), diag(3, 1);
  e1 << 1, 0, 0;
  diag << std::sqrt(0.5), std::sqrt(0.5), 0;
  const Subspace line = Subspace::from_orthonormal(e1);
  const Subspace tilted = Subspace::from_orthonormal(diag);
  CHECK(anosov::sine_distance(line, tilted) == doctest::Approx(std::sqrt(0.5)));
  CHECK(anosov::containment_residual(line, p) == doctest::Approx(0.0));
  CHECK(anosov::containment_residual(tilted, q) > 0.5);
}

TEST_CASE("sine distance between a line and a hyperplane") {
  Matrix e3(3, 1);
  e3 << 0, 0, 1;
  Matrix xy(3, 2);
  xy << 1, 0, 0, 1, 0, 0;
  CHECK(anosov::sine_distance(Subspace::from_orthonormal(e3),
                              Subspace::from_orthonormal(xy)) ==
        doctest::Approx(1.0));
}

TEST_CASE("bilinear forms classify kind and reject degenerate ones") {
  Matrix sym = Matrix::Identity(3, 3);
  sym(2, 2) = -1.0;
  CHECK(BilinearForm::from_matrix(sym).kind() == anosov::FormKind::symmetric);

  Matrix omega = Matrix::Zero(4, 4);
  omega.block(0, 2, 2, 2) = Matrix::Identity(2, 2);
  omega.block(2, 0, 2, 2) = -Matrix::Identity(2, 2);
  CHECK(BilinearForm::from_matrix(omega).kind() ==
        anosov::FormKind::antisymmetric);

  Matrix mixed(2, 2);
  mixed << 1, 2, 0, 1;
  CHECK_THROWS_AS(BilinearForm::from_matrix(mixed), anosov::error);

  Matrix degenerate = Matrix::Zero(2, 2);
  degenerate(0, 0) = 1.0;
  CHECK_THROWS_AS(BilinearForm::from_matrix(degenerate), anosov::error);
}

TEST_CASE("form perp and transversality in a symplectic space") {
  Matrix omega = Matrix::Zero(4, 4);
  omega.block(0, 2, 2, 2) = Matrix::Identity(2, 2);
  omega.block(2, 0, 2, 2) = -Matrix::Identity(2, 2);
  const BilinearForm form = BilinearForm::from_matrix(omega);

  Matrix l1(4, 2), l2(4, 2);
  l1 << 1, 0, 0, 1, 0, 0, 0, 0;  // span(e1, e2): Lagrangian
  l2 << 0, 0, 0, 0, 1, 0, 0, 1;  // span(e3, e4): complementary Lagrangian
  const Subspace p = Subspace::from_orthonormal(l1);
  const Subspace q = Subspace::from_orthonormal(l2);

  const Subspace p_perp = anosov::form_perp(p, form);
  CHECK(p_perp.dim() == 2);
  CHECK(anosov::intersection_dim(p, p_perp) == 2);
  CHECK(anosov::is_transverse(p, q, form));
  CHECK_FALSE(anosov::is_transverse(p, p, form));
}

TEST_CASE("signatures with margins") {
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = 2.0;
  g(1, 1) = -3.0;
  g(2, 2) = 5.0;
  const anosov::Signature sig = anosov::signature_of(g);
  CHECK(sig.positive == 2);
  CHECK(sig.negative == 1);
  CHECK(sig.null == 0);

  Matrix with_kernel = Matrix::Zero(3, 3);
  with_kernel(0, 0) = 1.0;
  with_kernel(2, 2) = -1.0;
  CHECK(anosov::signature_of(with_kernel).null == 1);
}

TEST_CASE("null space and direct sum margins") {
  Matrix a(3, 3);
  a << 1, 2, 3, 2, 4, 6, -1, -2, -3;
  const Matrix ns = anosov::null_space(a);
  CHECK(ns.cols() == 2);
  CHECK((a * ns).cwiseAbs().maxCoeff() < 1e-10);

  Matrix e1(3, 1), e2(3, 1);
  e1 << 1, 0, 0;
  e2 << 0, 1, 0;
  CHECK(anosov::direct_sum_margin(Subspace::from_orthonormal(e1),
                                  Subspace::from_orthonormal(e2)) ==
        doctest::Approx(1.0));
}

TEST_SUITE_END();
