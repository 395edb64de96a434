// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "anosov/domains.hpp"
#include "anosov/dynamics.hpp"
#include "anosov/errors.hpp"
#include "anosov/numlin.hpp"
#include "doctest.h"

namespace {

using anosov::BilinearForm;
using anosov::FlagKind;
using anosov::FlagPoint;
using anosov::FlagType;
using anosov::LimitPoint;
using anosov::LimitSetSample;
using anosov::Matrix;
using anosov::ReducedWord;
using anosov::RepresentationSpec;
using anosov::Subspace;
using anosov::Vector;

anosov::errc run_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const anosov::error& e) {
    return e.code();
  }
  return anosov::errc::ok;
}

Subspace line_through(std::initializer_list<double> coords) {
  Vector v(static_cast<int>(coords.size()));
  int i = 0;
  for (double c : coords) v(i++) = c;
  return Subspace::from_span(v, 1);
}

// Span of the listed coordinate axes (0-based).
Subspace coord_span(int n, std::initializer_list<int> axes) {
  Matrix m = Matrix::Zero(n, static_cast<int>(axes.size()));
  int col = 0;
  for (int axis : axes) m(axis, col++) = 1.0;
  return Subspace::from_orthonormal(m);
}

Matrix diagonal(std::initializer_list<double> entries) {
  Matrix m = Matrix::Zero(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
  int i = 0;
  for (double e : entries) m(i, i) = e, ++i;
  return m;
}

// Symplectic form pairing (e1, e3) and (e2, e4).
Matrix sp4_gram() {
  Matrix j = Matrix::Zero(4, 4);
  j(0, 2) = 1.0;
  j(1, 3) = 1.0;
  j(2, 0) = -1.0;
  j(3, 1) = -1.0;
  return j;
}

LimitSetSample synthetic_sample(FlagType type, int ambient, const std::vector<Subspace>& points) {
  LimitSetSample sample;
  sample.type = type;
  sample.ambient = ambient;
  for (const Subspace& s : points) {
    LimitPoint p;
    p.attract = s;
    p.corepel = s;
    sample.points.push_back(p);
  }
  return sample;
}

anosov::SchottkyData good_schottky() {
  return anosov::schottky_sl2(2, 3.0, {0.0, M_PI / 4.0});
}

RepresentationSpec z_rep() {
  RepresentationSpec rep;
  rep.family = anosov::RepFamily::SLnR;
  rep.n = 2;
  anosov::GeneratorSpec g;
  g.name = "a";
  g.matrix = Matrix::Zero(2, 2);
  g.matrix(0, 0) = std::exp(1.0);
  g.matrix(1, 1) = std::exp(-1.0);
  rep.generators.push_back(g);
  anosov::complete_representation(rep);
  return rep;
}

// Exact rank of integer row vectors by fraction-free elimination.
int exact_rank(std::vector<std::array<long long, 4>> rows) {
  int rank = 0;
  for (int col = 0; col < 4 && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      long long a = rows[r][col];
      if (a == 0) continue;
      long long b = rows[rank][col];
      for (int c = 0; c < 4; ++c) rows[r][c] = rows[r][c] * b - rows[rank][c] * a;
      long long g = 0;
      for (int c = 0; c < 4; ++c) g = std::gcd(g, std::abs(rows[r][c]));
      if (g > 1)
        for (int c = 0; c < 4; ++c) rows[r][c] /= g;
    }
    ++rank;
  }
  return rank;
}

Matrix int_columns(const std::vector<std::array<long long, 4>>& cols) {
  Matrix m(4, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < 4; ++i) m(i, static_cast<int>(j)) = static_cast<double>(cols[j][i]);
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("domains");

TEST_CASE("flag point validation") {
  BilinearForm form12 = BilinearForm::from_matrix(diagonal({1.0, -1.0, -1.0}));
  BilinearForm form23 = BilinearForm::from_matrix(diagonal({1.0, 1.0, -1.0, -1.0, -1.0}));
  BilinearForm sp4 = BilinearForm::from_matrix(sp4_gram());

  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::isotropic_line, {line_through({1.0, 1.0, 0.0})},
                                  form12);
        }) == anosov::errc::ok);
  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::isotropic_line, {line_through({1.0, 0.0, 0.0})},
                                  form12);
        }) == anosov::errc::invalid_params);

  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::maximal_isotropic, {coord_span(4, {0, 1})}, sp4);
        }) == anosov::errc::ok);
  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::maximal_isotropic, {coord_span(4, {0})}, sp4);
        }) == anosov::errc::invalid_params);
  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::maximal_isotropic, {coord_span(4, {0, 1})});
        }) == anosov::errc::invalid_params);

  Matrix witt2 = Matrix::Zero(5, 2);
  witt2(0, 0) = witt2(2, 0) = 1.0;
  witt2(1, 1) = witt2(3, 1) = 1.0;
  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::maximal_isotropic,
                                  {Subspace::from_span(witt2, 2)}, form23);
        }) == anosov::errc::ok);

  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::partial_flag,
                                  {coord_span(4, {0}), coord_span(4, {0, 1, 2})});
        }) == anosov::errc::ok);
  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::partial_flag,
                                  {coord_span(4, {0}), coord_span(4, {1, 2, 3})});
        }) == anosov::errc::invalid_params);
  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::partial_flag,
                                  {coord_span(4, {0}), coord_span(4, {0, 1})});
        }) == anosov::errc::invalid_params);

  std::vector<Subspace> flag;
  Matrix generic(4, 4);
  generic << 1, 2, 0, 1, 0, 1, 3, 1, 2, 0, 1, 1, 1, 1, 1, 0;
  for (int i = 1; i <= 3; ++i) flag.push_back(Subspace::from_span(generic.leftCols(i), i));
  CHECK(run_code([&] { anosov::make_flag_point(FlagKind::full_flag, flag); }) ==
        anosov::errc::ok);
  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::full_flag, {flag[1], flag[0], flag[2]});
        }) == anosov::errc::invalid_params);
  CHECK(run_code([&] { anosov::make_flag_point(FlagKind::full_flag, {flag[0], flag[1]}); }) ==
        anosov::errc::invalid_params);
  CHECK(run_code([&] {
          anosov::make_flag_point(FlagKind::partial_flag,
                                  {coord_span(3, {0}), coord_span(4, {0, 1, 2})});
        }) == anosov::errc::dimension_mismatch);

  CHECK(std::string(anosov::flag_kind_name(FlagKind::partial_flag)) == "partial_flag");
  CHECK(anosov::flag_kind_from_name("full_flag") == FlagKind::full_flag);
  CHECK(run_code([] { anosov::flag_kind_from_name("circle"); }) == anosov::errc::parse_error);
}

TEST_CASE("incidence membership basics") {
  Subspace lagrangian = coord_span(4, {0, 1});

  auto hit = anosov::k_membership(lagrangian, {coord_span(4, {0})});
  CHECK(hit.member);
  CHECK(hit.witness == 0);
  CHECK(hit.incidence_count == 1);
  CHECK_FALSE(anosov::k_membership(lagrangian, {coord_span(4, {2})}).member);

  auto second = anosov::k_membership(lagrangian, {coord_span(4, {2}), coord_span(4, {0})});
  CHECK(second.member);
  CHECK(second.witness == 1);
  CHECK(second.incidence_count == 1);

  auto equal_dim =
      anosov::k_membership(coord_span(4, {0}), {coord_span(4, {1}), coord_span(4, {0})});
  CHECK(equal_dim.member);
  CHECK(equal_dim.witness == 1);

  Subspace tilted = line_through({1.0, 0.0, 1e-3, 0.0});
  CHECK(anosov::k_membership(tilted, {coord_span(4, {0})}, 0.01).member);
  CHECK_FALSE(anosov::k_membership(tilted, {coord_span(4, {0})}, 1e-8).member);

  LimitSetSample lines = synthetic_sample(FlagType::line, 4, {coord_span(4, {0})});
  BilinearForm sp4 = BilinearForm::from_matrix(sp4_gram());
  FlagPoint point = anosov::make_flag_point(FlagKind::maximal_isotropic, {lagrangian}, sp4);
  CHECK(anosov::k_membership(point, lines).member);

  FlagPoint pair = anosov::make_flag_point(
      FlagKind::partial_flag, {coord_span(4, {0}), coord_span(4, {0, 1, 2})});
  CHECK(run_code([&] { anosov::k_membership(pair, lines); }) == anosov::errc::kind_mismatch);
  CHECK(run_code([&] { anosov::k_membership(coord_span(3, {0}), lines); }) ==
        anosov::errc::dimension_mismatch);
  CHECK(run_code([&] { anosov::k_membership(lagrangian, lines, -1.0); }) ==
        anosov::errc::invalid_params);
}

TEST_CASE("incidence counts are side independent") {
  std::mt19937_64 rng(404);
  std::vector<Subspace> lines, planes;
  for (int i = 0; i < 6; ++i) lines.push_back(anosov::random_grassmannian_point(4, 1, rng));
  for (int i = 0; i < 6; ++i) planes.push_back(anosov::random_grassmannian_point(4, 2, rng));

  double tol = 0.35;
  int forward = 0, backward = 0;
  for (const Subspace& p : planes) forward += anosov::k_membership(p, lines, tol).incidence_count;
  for (const Subspace& d : lines) backward += anosov::k_membership(d, planes, tol).incidence_count;
  CHECK(forward == backward);
  CHECK(forward > 0);

  for (const Subspace& p : planes) {
    for (const Subspace& d : lines) {
      CHECK(anosov::k_membership(p, {d}, tol).member ==
            anosov::k_membership(d, {p}, tol).member);
    }
  }
}

TEST_CASE("random flag variety points") {
  std::mt19937_64 rng(11);
  BilinearForm form23 = BilinearForm::from_matrix(diagonal({1.0, 1.0, -1.0, -1.0, -1.0}));
  std::vector<Subspace> draws;
  for (int i = 0; i < 50; ++i) {
    Subspace s = anosov::random_isotropic_point(form23, 2, rng);
    CHECK(s.dim() == 2);
    CHECK(s.orthonormality_residual() < 1e-12);
    Matrix residual = s.basis().transpose() * form23.gram() * s.basis();
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-10);
    draws.push_back(s);
  }
  double max_distance = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i)
    for (std::size_t j = i + 1; j < draws.size(); ++j)
      max_distance = std::max(max_distance, anosov::sine_distance(draws[i], draws[j]));
  CHECK(max_distance > 0.5);

  BilinearForm form12 = BilinearForm::from_matrix(diagonal({1.0, -1.0, -1.0}));
  for (int i = 0; i < 20; ++i) {
    Subspace line = anosov::random_isotropic_point(form12, 1, rng);
    Vector v = line.basis().col(0);
    CHECK(std::abs(form12.apply(v, v)) < 1e-10);
  }

  // A non-diagonal symmetric form exercises the eigenbasis split.
  BilinearForm wedge = BilinearForm::from_matrix(anosov::sym_power_form(3));
  Subspace iso = anosov::random_isotropic_point(wedge, 1, rng);
  Vector w = iso.basis().col(0);
  CHECK(std::abs(wedge.apply(w, w)) < 1e-10);

  std::mt19937_64 replay_a(99), replay_b(99);
  Subspace first = anosov::random_isotropic_point(form23, 2, replay_a);
  Subspace again = anosov::random_isotropic_point(form23, 2, replay_b);
  CHECK((first.basis() - again.basis()).cwiseAbs().maxCoeff() == 0.0);

  CHECK(run_code([&] { anosov::random_isotropic_point(form23, 3, rng); }) ==
        anosov::errc::invalid_params);
  CHECK(run_code([&] {
          anosov::random_isotropic_point(BilinearForm::from_matrix(sp4_gram()), 2, rng);
        }) == anosov::errc::invalid_params);
  CHECK(run_code([&] { anosov::random_grassmannian_point(4, 5, rng); }) ==
        anosov::errc::invalid_params);
}

TEST_CASE("membership against a boundary sample") {
  auto data = good_schottky();
  RepresentationSpec so12 = anosov::adjoint_o12(data.rep);
  BilinearForm form = BilinearForm::from_matrix(so12.form_matrix);
  LimitSetSample sample = anosov::limit_set_sample(so12, FlagType::line, 4);
  REQUIRE(sample.points.size() >= 4);

  // A random isotropic line agrees with the exact verdict: off the finite
  // sample with probability one.
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    Subspace x = anosov::random_isotropic_point(form, 1, rng);
    CHECK_FALSE(anosov::k_membership(x, sample).member);
  }
  auto self_hit = anosov::k_membership(sample.points[2].attract, sample);
  CHECK(self_hit.member);
  CHECK(self_hit.witness == 2);
}

TEST_CASE("domain fractions shrink as the sample deepens") {
  auto data = good_schottky();
  LimitSetSample shallow = anosov::limit_set_sample(data.rep, FlagType::line, 4);
  LimitSetSample middle = anosov::limit_set_sample(data.rep, FlagType::line, 6);
  LimitSetSample deep = anosov::limit_set_sample(data.rep, FlagType::line, 8);
  CHECK(shallow.points.size() <= middle.points.size());
  CHECK(middle.points.size() <= deep.points.size());

  // Shallow representatives reappear verbatim in the deeper sample; the
  // sine metric itself has a sqrt(eps) floor at zero.
  for (const LimitPoint& p : shallow.points) {
    double nearest = 1.0;
    for (const LimitPoint& q : middle.points)
      nearest = std::min(nearest, anosov::sine_distance(p.attract, q.attract));
    CHECK(nearest < 1e-7);
  }

  auto shallow_report = anosov::domain_sample(shallow, nullptr, 2000, 7);
  auto middle_report = anosov::domain_sample(middle, nullptr, 2000, 7);
  auto deep_report = anosov::domain_sample(deep, nullptr, 2000, 7);
  CHECK(shallow_report.fraction >= middle_report.fraction);
  CHECK(middle_report.fraction >= deep_report.fraction);
  CHECK(deep_report.fraction > 0.0);
  CHECK(shallow_report.sample_depth <= 4);
  CHECK(deep_report.sample_depth <= 8);

  auto replay = anosov::domain_sample(middle, nullptr, 2000, 7);
  CHECK(replay.hits == middle_report.hits);
  CHECK(replay.fraction == middle_report.fraction);
  REQUIRE(replay.example_member.has_value());
  REQUIRE(middle_report.example_member.has_value());
  CHECK((replay.example_member->basis() - middle_report.example_member->basis())
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("split form sampling sees both verdict classes") {
  BilinearForm form = BilinearForm::from_matrix(diagonal({1.0, 1.0, -1.0, -1.0}));
  LimitSetSample sample = synthetic_sample(
      FlagType::line, 4, {line_through({1.0, 0.0, 1.0, 0.0}), line_through({1.0, 0.0, -1.0, 0.0})});
  auto report = anosov::domain_sample(sample, &form, 10000, 52);
  CHECK(report.trials == 10000);
  CHECK(report.hits > 0);
  CHECK(report.hits < report.trials);
  CHECK(report.fraction > 0.0);
  CHECK(report.fraction < 1.0);
  REQUIRE(report.example_member.has_value());
  REQUIRE(report.example_non_member.has_value());
  Vector member = report.example_member->basis().col(0);
  CHECK(std::abs(form.apply(member, member)) < 1e-10);
}

TEST_CASE("adjoint domain keeps more than half the boundary") {
  auto data = good_schottky();
  RepresentationSpec so12 = anosov::adjoint_o12(data.rep);
  BilinearForm form = BilinearForm::from_matrix(so12.form_matrix);
  LimitSetSample sample = anosov::limit_set_sample(so12, FlagType::line, 6);
  auto report = anosov::domain_sample(sample, &form, 10000, 23);
  CHECK(report.fraction > 0.5);
  CHECK(report.hits + (report.trials - report.hits) == report.trials);
  // The sample's own points witness that the complement is proper.
  CHECK(anosov::k_membership(sample.points[0].attract, sample).member);
  CHECK(report.example_non_member.has_value());
}

TEST_CASE("empty sample leaves everything in the domain") {
  LimitSetSample empty = synthetic_sample(FlagType::line, 3, {});
  auto report = anosov::domain_sample(empty, nullptr, 50, 3);
  CHECK(report.fraction == 1.0);
  CHECK(report.hits == 50);
  CHECK(report.sample_depth == 0);
  CHECK(report.example_member.has_value());
  CHECK_FALSE(report.example_non_member.has_value());
  CHECK(run_code([&] { anosov::domain_sample(empty, nullptr, 0, 3); }) ==
        anosov::errc::invalid_params);
}

TEST_CASE("transverse sample points cut disjoint incidence sets") {
  BilinearForm form = BilinearForm::from_matrix(diagonal({1.0, 1.0, -1.0, -1.0, -1.0}));
  Subspace l1 = line_through({1.0, 0.0, 1.0, 0.0, 0.0});
  Subspace l2 = line_through({1.0, 0.0, -1.0, 0.0, 0.0});
  Subspace l3 = line_through({0.0, 1.0, 0.0, 1.0, 0.0});
  CHECK(anosov::is_transverse(l1, l2, form));
  CHECK_FALSE(anosov::is_transverse(l1, l3, form));

  std::mt19937_64 rng(606);
  double thick = anosov::kDomainThickening;
  for (int i = 0; i < 1000; ++i) {
    Subspace p = anosov::random_isotropic_point(form, 2, rng);
    bool both = anosov::k_membership(p, {l1}, thick).member &&
                anosov::k_membership(p, {l2}, thick).member;
    CHECK_FALSE(both);
  }

  // The non-transverse pair shares an incidence witness: the isotropic plane
  // through both lines.
  Matrix span(5, 2);
  span << 1, 0, 0, 1, 1, 0, 0, 1, 0, 0;
  Subspace common = Subspace::from_span(span, 2);
  CHECK(anosov::k_membership(common, {l1}).member);
  CHECK(anosov::k_membership(common, {l3}).member);
}

TEST_CASE("equivariance holds exactly for invariant samples") {
  RepresentationSpec rep = z_rep();
  LimitSetSample sample = anosov::limit_set_sample(rep, FlagType::line, 5);
  REQUIRE(sample.points.size() == 2);
  std::vector<ReducedWord> words = anosov::enumerate_reduced_words(1, 3);

  auto off = anosov::equivariance_check(sample, rep, line_through({3.0, 1.0}), words);
  CHECK_FALSE(off.baseline);
  CHECK(off.violations == 0);
  auto on = anosov::equivariance_check(sample, rep, coord_span(2, {0}), words);
  CHECK(on.baseline);
  CHECK(on.violations == 0);
  CHECK(on.verdicts.size() == words.size());
}

TEST_CASE("equivariance of deep and truncated schottky samples") {
  auto data = good_schottky();
  LimitSetSample deep = anosov::limit_set_sample(data.rep, FlagType::line, 8);
  std::vector<ReducedWord> all = anosov::enumerate_reduced_words(2, 4);
  std::vector<ReducedWord> words(all.begin() + 1, all.begin() + 21);

  Subspace far = line_through({1.0, 2.0});
  auto clean = anosov::equivariance_check(deep, data.rep, far, words);
  CHECK_FALSE(clean.baseline);
  CHECK(clean.violations == 0);

  // A short sample misses the deep boundary points, so pushing it around
  // moves the incidence set visibly at exact tolerance.  The push word must
  // not be a power of a short word, or the probe would converge back onto a
  // shallow sample point.
  anosov::SchottkyData mild = anosov::schottky_sl2(2, 2.5, {0.0, M_PI / 4.0});
  LimitSetSample truncated = anosov::limit_set_sample(mild.rep, FlagType::line, 2);
  ReducedWord push;
  push.letters = {1, 1, 2, 1};
  Matrix g = anosov::evaluate_word(mild.rep, push);
  Subspace probe = Subspace::from_span(g * truncated.points[0].attract.basis(), 1);
  auto broken = anosov::equivariance_check(truncated, mild.rep, probe, {push});
  CHECK_FALSE(broken.baseline);
  CHECK(broken.violations == 1);
  CHECK(broken.verdicts[0] == 1);
  CHECK(broken.violating_words == std::vector<int>{0});
}

TEST_CASE("pinched flag membership") {
  std::vector<Subspace> standard;
  for (int i = 1; i <= 3; ++i) {
    std::initializer_list<int> axes[] = {{0}, {0, 1}, {0, 1, 2}};
    standard.push_back(coord_span(4, axes[i - 1]));
  }

  auto pinched = anosov::sln_K_Ad_membership(coord_span(4, {0}), coord_span(4, {0, 1, 2}),
                                             standard);
  CHECK(pinched.member);
  CHECK(pinched.witness_level == 1);
  CHECK_FALSE(
      anosov::sln_K_Ad_membership(coord_span(4, {3}), coord_span(4, {1, 2, 3}), standard)
          .member);
  CHECK(run_code([&] {
          anosov::sln_K_Ad_membership(coord_span(4, {0, 1}), coord_span(4, {0, 1, 2}), standard);
        }) == anosov::errc::kind_mismatch);
  CHECK(run_code([&] {
          anosov::sln_K_Ad_membership(coord_span(4, {0}), coord_span(4, {0, 1, 2}),
                                      {standard[0], standard[1]});
        }) == anosov::errc::kind_mismatch);

  // Random draws against exact integer ranks.
  std::mt19937_64 rng(321);
  std::uniform_int_distribution<int> entry(-4, 4);
  std::uniform_int_distribution<int> coeff(-2, 2);
  auto draw_vector = [&] {
    std::array<long long, 4> v{};
    for (auto& c : v) c = entry(rng);
    return v;
  };
  auto nonzero_vector = [&] {
    std::array<long long, 4> v{};
    do {
      v = draw_vector();
    } while (v == std::array<long long, 4>{});
    return v;
  };

  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::array<long long, 4>> basis;
    do {
      basis.clear();
      for (int i = 0; i < 4; ++i) basis.push_back(nonzero_vector());
    } while (exact_rank(basis) != 4);
    std::vector<Subspace> flag;
    for (int i = 1; i <= 3; ++i)
      flag.push_back(Subspace::from_span(
          int_columns({basis.begin(), basis.begin() + i}), i));

    std::array<long long, 4> line_vec{};
    std::vector<std::array<long long, 4>> hyper;
    if (trial % 2 == 0) {
      line_vec = nonzero_vector();
      do {
        hyper.clear();
        for (int i = 0; i < 3; ++i) hyper.push_back(nonzero_vector());
      } while (exact_rank(hyper) != 3);
    } else {
      // Force an incidence at a random level.
      int level = 1 + trial % 3;
      do {
        line_vec = {};
        for (int i = 0; i < level; ++i) {
          long long c = coeff(rng);
          for (int j = 0; j < 4; ++j) line_vec[j] += c * basis[i][j];
        }
      } while (line_vec == std::array<long long, 4>{});
      do {
        hyper.assign(basis.begin(), basis.begin() + level);
        while (static_cast<int>(hyper.size()) < 3) hyper.push_back(nonzero_vector());
      } while (exact_rank(hyper) != 3);
    }

    bool expected = false;
    for (int level = 1; level <= 3 && !expected; ++level) {
      std::vector<std::array<long long, 4>> with_line(basis.begin(), basis.begin() + level);
      with_line.push_back(line_vec);
      if (exact_rank(with_line) != level) continue;
      std::vector<std::array<long long, 4>> with_level = hyper;
      with_level.insert(with_level.end(), basis.begin(), basis.begin() + level);
      expected = exact_rank(with_level) == 3;
    }

    Subspace line = Subspace::from_span(int_columns({line_vec}), 1);
    Subspace hyperplane = Subspace::from_span(int_columns(hyper), 3);
    CHECK(anosov::sln_K_Ad_membership(line, hyperplane, flag).member == expected);
  }
}

TEST_CASE("lexicographic sequences match exact counting") {
  // Spot check: maximal incidence with the standard flag.
  std::vector<Subspace> standard5;
  for (int i = 1; i <= 4; ++i) {
    Matrix m = Matrix::Identity(5, 5).leftCols(i);
    standard5.push_back(Subspace::from_orthonormal(m));
  }
  auto top = anosov::sln_Kprime_k_membership(standard5, coord_span(5, {0, 1}),
                                             coord_span(5, {0, 1, 2}));
  CHECK(top.member);
  CHECK(top.i_seq == std::vector<int>{1, 2});
  CHECK(top.j_seq == std::vector<int>{3, 4});

  for (int n = 2; n <= 5; ++n) {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<Matrix> axis_cols(n);
    for (int i = 0; i < n; ++i) axis_cols[i] = Matrix::Identity(n, n).col(i);

    do {
      std::vector<Subspace> flag;
      Matrix cols(n, n);
      for (int i = 0; i < n; ++i) cols.col(i) = Matrix::Identity(n, n).col(sigma[i]);
      for (int i = 1; i <= n - 1; ++i) flag.push_back(Subspace::from_span(cols.leftCols(i), i));

      for (int k = 1; 2 * k <= n; ++k) {
        for (int mask1 = 0; mask1 < (1 << n); ++mask1) {
          if (__builtin_popcount(static_cast<unsigned>(mask1)) != n - k) continue;
          for (int mask0 = mask1;; mask0 = (mask0 - 1) & mask1) {
            if (__builtin_popcount(static_cast<unsigned>(mask0)) == k) {
              // Exact staircases by counting coordinates.
              std::vector<int> d0(n + 1, 0), d1(n + 1, 0);
              for (int i = 1; i <= n; ++i) {
                int bit = 1 << sigma[i - 1];
                d0[i] = d0[i - 1] + ((mask0 & bit) ? 1 : 0);
                d1[i] = d1[i - 1] + ((mask1 & bit) ? 1 : 0);
              }
              std::vector<int> want_i(k, 0), want_j(k, 0);
              for (int l = 1; l <= k; ++l)
                for (int i = 1; i <= n; ++i)
                  if (d0[i] == l) {
                    want_i[l - 1] = i;
                    break;
                  }
              for (int j = 0; j <= n; ++j) {
                int l = j - d1[j] + 1;
                if (l >= 1 && l <= k) want_j[l - 1] = j;
              }
              bool want = true;
              for (int l = 0; l < k; ++l)
                if (want_i[l] != want_j[l]) {
                  want = want_i[l] < want_j[l];
                  break;
                }

              Matrix m0(n, k), m1(n, n - k);
              int c0 = 0, c1 = 0;
              for (int a = 0; a < n; ++a) {
                if (mask0 & (1 << a)) m0.col(c0++) = axis_cols[a];
                if (mask1 & (1 << a)) m1.col(c1++) = axis_cols[a];
              }
              auto got = anosov::sln_Kprime_k_membership(
                  flag, Subspace::from_span(m0, k), Subspace::from_span(m1, n - k));
              CHECK(got.member == want);
              CHECK(got.i_seq == want_i);
              CHECK(got.j_seq == want_j);
            }
            if (mask0 == 0) break;
          }
        }
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
}

TEST_CASE("lexicographic sequences reject bad input") {
  // A broken nesting makes the intersection staircase jump by two.
  std::vector<Subspace> broken = {coord_span(4, {0}), coord_span(4, {1, 2}),
                                  coord_span(4, {0, 1, 2})};
  CHECK(run_code([&] {
          anosov::sln_Kprime_k_membership(broken, coord_span(4, {1, 2}), coord_span(4, {1, 2}));
        }) == anosov::errc::malformed_flag);

  std::vector<Subspace> standard;
  for (int i = 1; i <= 3; ++i)
    standard.push_back(Subspace::from_orthonormal(Matrix::Identity(4, 4).leftCols(i)));
  CHECK(run_code([&] {
          anosov::sln_Kprime_k_membership(standard, coord_span(4, {2, 3}),
                                          coord_span(4, {1, 2, 3}));
        }) == anosov::errc::invalid_params);
  CHECK(run_code([&] {
          anosov::sln_Kprime_k_membership(standard, coord_span(4, {0, 1}),
                                          coord_span(4, {2, 3}));
        }) == anosov::errc::invalid_params);

  // Verdicts with clear margins survive small perturbations.
  Matrix generic(4, 4);
  generic << 1, 1, 0, 1, 1, -1, 2, 0, 0, 1, 1, 1, 2, 0, 1, 1;
  std::vector<Subspace> flag;
  for (int i = 1; i <= 3; ++i) flag.push_back(Subspace::from_span(generic.leftCols(i), i));
  auto base = anosov::sln_Kprime_k_membership(flag, coord_span(4, {0, 1}), coord_span(4, {0, 1}));

  Matrix rot = Matrix::Identity(4, 4);
  double angle = 1e-3;
  rot(0, 0) = rot(1, 1) = std::cos(angle);
  rot(0, 1) = -std::sin(angle);
  rot(1, 0) = std::sin(angle);
  std::vector<Subspace> nudged;
  for (int i = 1; i <= 3; ++i)
    nudged.push_back(Subspace::from_span(rot * generic.leftCols(i), i));
  auto moved =
      anosov::sln_Kprime_k_membership(nudged, coord_span(4, {0, 1}), coord_span(4, {0, 1}));
  CHECK(moved.member == base.member);
  CHECK(moved.i_seq == base.i_seq);
  CHECK(moved.j_seq == base.j_seq);
}

TEST_CASE("grassmannian line membership") {
  Subspace p12 = coord_span(4, {0, 1});
  auto direct = anosov::grassmannian_membership(p12, {coord_span(4, {0})});
  CHECK(direct.member);
  CHECK(direct.witness == 0);
  CHECK_FALSE(anosov::grassmannian_membership(p12, {coord_span(4, {2})}).member);
  CHECK_FALSE(anosov::grassmannian_membership(coord_span(4, {2, 3}),
                                              {coord_span(4, {0}), coord_span(4, {1})})
                  .member);
  CHECK(run_code([&] { anosov::grassmannian_membership(coord_span(4, {0}), {}); }) ==
        anosov::errc::kind_mismatch);
  CHECK(run_code([&] { anosov::grassmannian_membership(coord_span(3, {0}), {}); }) ==
        anosov::errc::kind_mismatch);
  CHECK(run_code([&] { anosov::grassmannian_membership(p12, {coord_span(4, {0, 1})}); }) ==
        anosov::errc::kind_mismatch);

  auto data = good_schottky();
  RepresentationSpec sym3 = anosov::principal_embed(data.rep, 4);
  LimitSetSample sample = anosov::limit_set_sample(sym3, FlagType::line, 3);
  REQUIRE(sample.points.size() >= 4);
  std::vector<Subspace> lines;
  for (const LimitPoint& p : sample.points) lines.push_back(p.attract);

  std::mt19937_64 rng(84);
  for (int i = 0; i < 100; ++i) {
    Subspace p = anosov::random_grassmannian_point(4, 2, rng);
    CHECK_FALSE(anosov::grassmannian_membership(p, lines).member);
  }
  Matrix span(4, 2);
  span.col(0) = lines[0].basis().col(0);
  span.col(1) = Matrix::Identity(4, 4).col(3);
  Subspace through = Subspace::from_span(span, 2);
  auto hit = anosov::grassmannian_membership(through, lines);
  CHECK(hit.member);
  CHECK(hit.witness == 0);
}

TEST_CASE("codimension table") {
  using anosov::GroupFamily;
  CHECK(anosov::codim_delta(GroupFamily::Opq, 1, 5, 5) == 0);
  CHECK(anosov::codim_delta(GroupFamily::Opq, 2, 7, 6) == 1);
  CHECK(anosov::codim_delta(GroupFamily::Upq, 2, 3, 1) == 5);
  CHECK(anosov::codim_delta(GroupFamily::Sppq, 1, 2, 2) == 6);
  CHECK(anosov::codim_delta(GroupFamily::SpR, 6, 0, 1) == 3);
  CHECK(anosov::codim_delta(GroupFamily::SpR, 4, 0, 1) == 2);
  CHECK(anosov::codim_delta(GroupFamily::SpC, 4, 0, 1) == 5);
  CHECK(anosov::codim_delta(GroupFamily::OC, 6, 0, 2) == 4);
  CHECK(anosov::codim_delta(GroupFamily::OC, 5, 0, 2) == 4);
  CHECK(anosov::codim_delta(GroupFamily::SOstar, 8, 0, 3) == 11);

  CHECK(run_code([] { anosov::codim_delta(GroupFamily::Opq, 1, 5, 0); }) ==
        anosov::errc::invalid_params);
  CHECK(run_code([] { anosov::codim_delta(GroupFamily::Opq, 3, 2, 1); }) ==
        anosov::errc::invalid_params);
  CHECK(run_code([] { anosov::codim_delta(GroupFamily::SpR, 5, 0, 1); }) ==
        anosov::errc::invalid_params);
  CHECK(run_code([] { anosov::codim_delta(GroupFamily::OC, 6, 1, 1); }) ==
        anosov::errc::invalid_params);

  CHECK(std::string(anosov::group_family_name(GroupFamily::SOstar)) == "SOstar");
  CHECK(anosov::group_family_from_name("Sppq") == GroupFamily::Sppq);
  CHECK(run_code([] { anosov::group_family_from_name("E8"); }) == anosov::errc::parse_error);
}

TEST_CASE("schubert codimension minimum") {
  for (int n = 2; n <= 16; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      auto result = anosov::schubert_codim_min(n, k);
      CHECK(result.value == n - k);
      CHECK(result.s == 1);
      CHECK(result.u == 1);
      int brute = 1 << 20;
      for (int s = 1; s <= n - 1; ++s)
        for (int u = s; u <= n - 1; ++u)
          brute = std::min(brute, (n - k) + (k - 1) * (s - 1) + k * (u - s));
      CHECK(brute == result.value);
    }
  }
  CHECK(anosov::schubert_codim_min(2, 1).value == 1);
  CHECK(run_code([] { anosov::schubert_codim_min(4, 3); }) == anosov::errc::invalid_params);
  CHECK(run_code([] { anosov::schubert_codim_min(4, 0); }) == anosov::errc::invalid_params);
}

TEST_SUITE_END();
