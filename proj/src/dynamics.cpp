// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.

#include "anosov/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "anosov/errors.hpp"

namespace anosov {

namespace {

constexpr double kUnimodularTol = 1e-6;
constexpr double kInverseTol = 1e-8;
constexpr double kFormPreservationTol = 1e-8;
constexpr double kEigenvalueGapTol = 1e-6;
constexpr double kPingPongRadius = 0.1;
constexpr int kPingPongGrid = 10000;
constexpr std::uint64_t kWordCountCap = 10000000;

double top_singular(const Matrix& m) {
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

// Divides out the largest entry magnitude and returns its log.
double rescale(Matrix& m) {
  double scale = m.cwiseAbs().maxCoeff();
  if (scale <= 0.0 || !std::isfinite(scale))
    fail(errc::singular_input, "word product collapsed to zero or overflowed");
  m /= scale;
  return std::log(scale);
}

int letter_id(int letter) {
  return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0);
}

int id_letter(int id) {
  int gen = id / 2 + 1;
  return (id % 2) ? -gen : gen;
}

bool word_less(const ReducedWord& a, const ReducedWord& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (int i = 0; i < a.length(); ++i) {
    int ia = letter_id(a.letters[i]);
    int ib = letter_id(b.letters[i]);
    if (ia != ib) return ia < ib;
  }
  return false;
}

// Split w as wing * core * wing^{-1} with the core cyclically reduced.  A
// conjugate's product matrix has norm far above its spectral radius, which
// wrecks a dense eigensolve; the core is the similar matrix whose norm
// matches its spectrum, so its eigenspaces can be solved accurately and
// pushed through the wing afterwards.
void split_cyclic(const ReducedWord& w, ReducedWord& wing, ReducedWord& core) {
  int lo = 0;
  int hi = w.length();
  while (hi - lo >= 2 && w.letters[static_cast<std::size_t>(lo)] ==
                             -w.letters[static_cast<std::size_t>(hi - 1)]) {
    ++lo;
    --hi;
  }
  wing.letters.assign(w.letters.begin(), w.letters.begin() + lo);
  core.letters.assign(w.letters.begin() + lo, w.letters.begin() + hi);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  double range = 0.0;
};

// Least squares over (lengths lo..hi, values[l-1]).
LineFit fit_window(const std::vector<double>& values, int lo, int hi) {
  LineFit fit;
  int m = hi - lo + 1;
  double lowest = values[lo - 1], highest = values[lo - 1];
  for (int l = lo; l <= hi; ++l) {
    lowest = std::min(lowest, values[l - 1]);
    highest = std::max(highest, values[l - 1]);
  }
  fit.range = highest - lowest;
  if (m < 2) {
    fit.intercept = values[lo - 1];
    return fit;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int l = lo; l <= hi; ++l) {
    sx += l;
    sy += values[l - 1];
    sxx += double(l) * l;
    sxy += l * values[l - 1];
  }
  double denom = m * sxx - sx * sx;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss = 0;
  for (int l = lo; l <= hi; ++l) {
    double resid = values[l - 1] - (fit.slope * l + fit.intercept);
    ss += resid * resid;
  }
  fit.rms = std::sqrt(ss / m);
  return fit;
}

}  // namespace

const char* rep_family_name(RepFamily f) {
  switch (f) {
    case RepFamily::SLnR: return "SLnR";
    case RepFamily::SpR: return "SpR";
    case RepFamily::Opq: return "Opq";
  }
  fail(errc::invalid_params, "unknown representation family");
}

RepFamily rep_family_from_name(const std::string& s) {
  if (s == "SLnR") return RepFamily::SLnR;
  if (s == "SpR") return RepFamily::SpR;
  if (s == "Opq") return RepFamily::Opq;
  fail(errc::parse_error, "unknown representation family '" + s + "'");
}

const char* flag_type_name(FlagType t) {
  switch (t) {
    case FlagType::line: return "line";
    case FlagType::maximal_isotropic: return "maximal_isotropic";
  }
  fail(errc::invalid_params, "unknown flag type");
}

FlagType flag_type_from_name(const std::string& s) {
  if (s == "line") return FlagType::line;
  if (s == "maximal_isotropic") return FlagType::maximal_isotropic;
  fail(errc::parse_error, "unknown flag type '" + s + "'");
}

void validate_representation(const RepresentationSpec& rep) {
  if (rep.n < 2) fail(errc::invalid_params, "representation dimension must be at least 2");
  if (rep.generators.empty())
    fail(errc::invalid_params, "representation needs at least one generator");
  if (rep.family == RepFamily::Opq) {
    if (rep.p < 1 || rep.q < rep.p || rep.p + rep.q != rep.n)
      fail(errc::invalid_params, "Opq requires 1 <= p <= q with p + q = n");
  }
  if (rep.family != RepFamily::SLnR && !rep.has_form)
    fail(errc::invalid_params,
         std::string(rep_family_name(rep.family)) + " representation needs a form");
  if (rep.has_form) {
    if (rep.form_matrix.rows() != rep.n || rep.form_matrix.cols() != rep.n)
      fail(errc::dimension_mismatch, "form matrix size does not match n");
    BilinearForm F = BilinearForm::from_matrix(rep.form_matrix);
    if (rep.family == RepFamily::SpR && F.kind() != FormKind::antisymmetric)
      fail(errc::kind_mismatch, "SpR needs an antisymmetric form");
    if (rep.family == RepFamily::Opq) {
      if (F.kind() != FormKind::symmetric)
        fail(errc::kind_mismatch, "Opq needs a symmetric form");
      Signature sig = signature_of(rep.form_matrix);
      bool match = (sig.positive == rep.p && sig.negative == rep.q) ||
                   (sig.positive == rep.q && sig.negative == rep.p);
      if (!match || sig.null != 0)
        fail(errc::invalid_params, "form signature does not match (p, q)");
    }
  }
  double form_scale =
      rep.has_form ? std::max(1.0, rep.form_matrix.cwiseAbs().maxCoeff()) : 1.0;
  for (const GeneratorSpec& g : rep.generators) {
    if (g.matrix.rows() != rep.n || g.matrix.cols() != rep.n)
      fail(errc::dimension_mismatch, "generator '" + g.name + "' is not n by n");
    if (!g.matrix.allFinite())
      fail(errc::invalid_params, "generator '" + g.name + "' has nonfinite entries");
    double det = g.matrix.determinant();
    if (std::abs(std::abs(det) - 1.0) > kUnimodularTol)
      fail(errc::invalid_params,
           "generator '" + g.name + "' is not unimodular (|det| = " +
               std::to_string(std::abs(det)) + ")");
    if (g.inverse.size() != 0) {
      if (g.inverse.rows() != rep.n || g.inverse.cols() != rep.n)
        fail(errc::dimension_mismatch, "inverse of '" + g.name + "' is not n by n");
      Matrix resid = g.matrix * g.inverse - Matrix::Identity(rep.n, rep.n);
      if (resid.cwiseAbs().maxCoeff() > kInverseTol * std::max(1.0, g.matrix.cwiseAbs().maxCoeff()))
        fail(errc::invalid_params, "inverse of '" + g.name + "' does not invert it");
    }
    if (rep.has_form) {
      Matrix resid =
          g.matrix.transpose() * rep.form_matrix * g.matrix - rep.form_matrix;
      double gscale = std::max(1.0, g.matrix.cwiseAbs().maxCoeff());
      if (resid.cwiseAbs().maxCoeff() > kFormPreservationTol * form_scale * gscale * gscale)
        fail(errc::invalid_params, "generator '" + g.name + "' does not preserve the form");
    }
  }
}

void complete_representation(RepresentationSpec& rep) {
  for (GeneratorSpec& g : rep.generators) {
    if (g.inverse.size() != 0) continue;
    if (g.matrix.rows() != g.matrix.cols() || g.matrix.rows() == 0)
      fail(errc::dimension_mismatch, "generator '" + g.name + "' is not square");
    Eigen::FullPivLU<Matrix> lu(g.matrix);
    if (!lu.isInvertible())
      fail(errc::singular_input, "generator '" + g.name + "' is not invertible");
    g.inverse = lu.inverse();
  }
  validate_representation(rep);
}

ReducedWord ReducedWord::inverse() const {
  ReducedWord out;
  out.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    out.letters.push_back(-*it);
  return out;
}

std::string ReducedWord::text(const RepresentationSpec& rep) const {
  if (letters.empty()) return "e";
  std::ostringstream out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out << ' ';
    int gen = std::abs(letters[i]) - 1;
    out << rep.generators[static_cast<std::size_t>(gen)].name;
    if (letters[i] < 0) out << "^-1";
  }
  return out.str();
}

std::uint64_t free_group_word_count(int k, int L) {
  if (k < 1 || L < 0) fail(errc::invalid_params, "word count needs k >= 1, L >= 0");
  std::uint64_t total = 0;
  std::uint64_t level = 2 * static_cast<std::uint64_t>(k);
  for (int l = 1; l <= L; ++l) {
    total += level;
    if (total > (std::uint64_t(1) << 62)) return total;
    level *= (2 * static_cast<std::uint64_t>(k) - 1);
  }
  return total;
}

std::vector<ReducedWord> enumerate_reduced_words(int k, int L) {
  if (k < 1 || L < 0) fail(errc::invalid_params, "word enumeration needs k >= 1, L >= 0");
  if (free_group_word_count(k, L) > kWordCountCap)
    fail(errc::too_large, "reduced word count exceeds the cap");
  std::vector<ReducedWord> out;
  out.push_back(ReducedWord{});
  std::size_t level_begin = 0, level_end = 1;
  for (int l = 1; l <= L; ++l) {
    for (std::size_t w = level_begin; w < level_end; ++w) {
      for (int id = 0; id < 2 * k; ++id) {
        int letter = id_letter(id);
        const std::vector<int>& prev = out[w].letters;
        if (!prev.empty() && prev.back() == -letter) continue;
        ReducedWord next;
        next.letters = prev;
        next.letters.push_back(letter);
        out.push_back(std::move(next));
      }
    }
    level_begin = level_end;
    level_end = out.size();
  }
  return out;
}

Matrix evaluate_word(const RepresentationSpec& rep, const ReducedWord& w) {
  int k = static_cast<int>(rep.generators.size());
  Matrix acc = Matrix::Identity(rep.n, rep.n);
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    int letter = w.letters[i];
    if (letter == 0 || std::abs(letter) > k)
      fail(errc::invalid_params, "word letter out of range");
    if (i > 0 && w.letters[i - 1] == -letter)
      fail(errc::invalid_params, "word has an adjacent cancellation");
    const GeneratorSpec& g = rep.generators[static_cast<std::size_t>(std::abs(letter) - 1)];
    acc = acc * (letter > 0 ? g.matrix : g.inverse);
  }
  return acc;
}

void scan_words(
    const RepresentationSpec& rep, int L,
    const std::function<void(const ReducedWord&, const Matrix&, const Vector&)>&
        cb) {
  validate_representation(rep);
  int k = static_cast<int>(rep.generators.size());
  int n = rep.n;
  if (L < 1) fail(errc::invalid_params, "scan depth must be at least 1");
  if (free_group_word_count(k, L) > kWordCountCap)
    fail(errc::too_large, "reduced word count exceeds the cap");

  // Letter matrices together with all their exterior powers; products of the
  // latter give every partial singular-value sum without conditioning loss.
  std::vector<Matrix> raw(static_cast<std::size_t>(2 * k));
  std::vector<std::vector<Matrix>> comp(static_cast<std::size_t>(2 * k));
  for (int id = 0; id < 2 * k; ++id) {
    const GeneratorSpec& g = rep.generators[static_cast<std::size_t>(id / 2)];
    raw[static_cast<std::size_t>(id)] = (id % 2) ? g.inverse : g.matrix;
    if (raw[static_cast<std::size_t>(id)].size() == 0)
      fail(errc::invalid_params, "generator inverse missing; validate first");
    comp[static_cast<std::size_t>(id)].resize(static_cast<std::size_t>(n));
    for (int kk = 1; kk <= n; ++kk)
      comp[static_cast<std::size_t>(id)][static_cast<std::size_t>(kk - 1)] =
          compound_matrix(raw[static_cast<std::size_t>(id)], kk);
  }

  struct Level {
    Matrix m;
    double logscale = 0.0;
  };
  std::vector<std::vector<Level>> state(static_cast<std::size_t>(L + 1));
  std::vector<Matrix> plain(static_cast<std::size_t>(L + 1));
  state[0].resize(static_cast<std::size_t>(n));
  for (int kk = 1; kk <= n; ++kk) {
    int d = static_cast<int>(comp[0][static_cast<std::size_t>(kk - 1)].rows());
    state[0][static_cast<std::size_t>(kk - 1)].m = Matrix::Identity(d, d);
  }
  plain[0] = Matrix::Identity(n, n);

  std::vector<int> word;
  Vector mu(n);
  std::function<void(int)> visit = [&](int depth) {
    if (depth > 0) {
      double s_prev = 0.0;
      for (int kk = 1; kk <= n; ++kk) {
        const Level& lv = state[static_cast<std::size_t>(depth)][static_cast<std::size_t>(kk - 1)];
        double s = std::log(top_singular(lv.m)) + lv.logscale;
        mu(kk - 1) = s - s_prev;
        s_prev = s;
      }
      ReducedWord w;
      w.letters = word;
      cb(w, plain[static_cast<std::size_t>(depth)], mu);
    }
    if (depth == L) return;
    for (int id = 0; id < 2 * k; ++id) {
      int letter = id_letter(id);
      if (!word.empty() && word.back() == -letter) continue;
      auto& next = state[static_cast<std::size_t>(depth + 1)];
      next.resize(static_cast<std::size_t>(n));
      for (int kk = 1; kk <= n; ++kk) {
        const Level& cur = state[static_cast<std::size_t>(depth)][static_cast<std::size_t>(kk - 1)];
        Level& dst = next[static_cast<std::size_t>(kk - 1)];
        dst.m = cur.m * comp[static_cast<std::size_t>(id)][static_cast<std::size_t>(kk - 1)];
        dst.logscale = cur.logscale + rescale(dst.m);
      }
      plain[static_cast<std::size_t>(depth + 1)] =
          plain[static_cast<std::size_t>(depth)] * raw[static_cast<std::size_t>(id)];
      word.push_back(letter);
      visit(depth + 1);
      word.pop_back();
    }
  };
  visit(0);
}

SchottkyData schottky_sl2(int k, double t, const std::vector<double>& angles) {
  if (k < 2) fail(errc::invalid_params, "Schottky construction needs k >= 2");
  if (!(t > 0.0)) fail(errc::invalid_params, "translation parameter must be positive");
  if (static_cast<int>(angles.size()) != k)
    fail(errc::invalid_params, "need one axis angle per generator");

  SchottkyData data;
  data.rep.family = RepFamily::SLnR;
  data.rep.n = 2;
  data.disk_radius = kPingPongRadius;
  double et = std::exp(t), emt = std::exp(-t);
  for (int i = 0; i < k; ++i) {
    double c = std::cos(angles[static_cast<std::size_t>(i)]);
    double s = std::sin(angles[static_cast<std::size_t>(i)]);
    GeneratorSpec g;
    g.name = (k <= 26) ? std::string(1, static_cast<char>('a' + i))
                       : "g" + std::to_string(i + 1);
    g.matrix.resize(2, 2);
    g.matrix << c * c * et + s * s * emt, c * s * (et - emt),
        c * s * (et - emt), s * s * et + c * c * emt;
    g.inverse.resize(2, 2);
    g.inverse << c * c * emt + s * s * et, c * s * (emt - et),
        c * s * (emt - et), s * s * emt + c * c * et;
    data.rep.generators.push_back(std::move(g));
    Vector a(2), r(2);
    a << c, s;
    r << -s, c;
    data.attract.push_back(Subspace::from_orthonormal(a));
    data.repel.push_back(Subspace::from_orthonormal(r));
  }

  auto line_sine = [](const Vector& u, const Vector& v) {
    double c = std::min(1.0, std::abs(u.dot(v)) / (u.norm() * v.norm()));
    return std::sqrt(std::max(0.0, 1.0 - c * c));
  };

  std::vector<const Subspace*> centers;
  std::vector<std::string> center_names;
  for (int i = 0; i < k; ++i) {
    centers.push_back(&data.attract[static_cast<std::size_t>(i)]);
    center_names.push_back(data.rep.generators[static_cast<std::size_t>(i)].name + "+");
    centers.push_back(&data.repel[static_cast<std::size_t>(i)]);
    center_names.push_back(data.rep.generators[static_cast<std::size_t>(i)].name + "-");
  }
  data.min_center_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      double d = line_sine(centers[i]->basis().col(0), centers[j]->basis().col(0));
      data.min_center_separation = std::min(data.min_center_separation, d);
      if (d <= 2.0 * kPingPongRadius)
        fail(errc::ping_pong_failed,
             "endpoint disks " + center_names[i] + " and " + center_names[j] +
                 " overlap (separation " + std::to_string(d) + ")");
    }
  }

  // Each letter must send the complement of its repelling disk into its
  // attracting disk; checked on a uniform grid of the circle.
  data.worst_image_distance = 0.0;
  for (int id = 0; id < 2 * k; ++id) {
    int i = id / 2;
    const Matrix& m = (id % 2) ? data.rep.generators[static_cast<std::size_t>(i)].inverse
                               : data.rep.generators[static_cast<std::size_t>(i)].matrix;
    const Vector& src = ((id % 2) ? data.attract : data.repel)[static_cast<std::size_t>(i)]
                            .basis()
                            .col(0);
    const Vector& dst = ((id % 2) ? data.repel : data.attract)[static_cast<std::size_t>(i)]
                            .basis()
                            .col(0);
    std::string label = data.rep.generators[static_cast<std::size_t>(i)].name +
                        ((id % 2) ? "^-1" : "");
    for (int jg = 0; jg < kPingPongGrid; ++jg) {
      double phi = M_PI * jg / kPingPongGrid;
      Vector x(2);
      x << std::cos(phi), std::sin(phi);
      if (line_sine(x, src) < kPingPongRadius) continue;
      Vector y = m * x;
      double d = line_sine(y, dst);
      data.worst_image_distance = std::max(data.worst_image_distance, d);
      if (d >= kPingPongRadius)
        fail(errc::ping_pong_failed,
             "letter " + label + " does not contract into its disk (distance " +
                 std::to_string(d) + " at grid point " + std::to_string(jg) + ")");
    }
  }
  return data;
}

Matrix sym_power(const Matrix& g, int n) {
  if (g.rows() != 2 || g.cols() != 2)
    fail(errc::dimension_mismatch, "symmetric power acts on 2 by 2 matrices");
  if (n < 2) fail(errc::invalid_params, "symmetric power target dimension must be >= 2");
  int m = n - 1;
  std::vector<std::vector<double>> binom(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) {
    binom[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), 1.0);
    for (int j = 1; j < i; ++j)
      binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          binom[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
  }
  Matrix out = Matrix::Zero(n, n);
  // Column a is (g00 x + g10 y)^(m-a) (g01 x + g11 y)^a expanded in the
  // monomial basis x^(m-b) y^b.
  for (int a = 0; a <= m; ++a) {
    std::vector<double> p1(static_cast<std::size_t>(m - a + 1));
    for (int j = 0; j <= m - a; ++j)
      p1[static_cast<std::size_t>(j)] = binom[static_cast<std::size_t>(m - a)][static_cast<std::size_t>(j)] *
                                        std::pow(g(0, 0), m - a - j) * std::pow(g(1, 0), j);
    std::vector<double> p2(static_cast<std::size_t>(a + 1));
    for (int j = 0; j <= a; ++j)
      p2[static_cast<std::size_t>(j)] = binom[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] *
                                        std::pow(g(0, 1), a - j) * std::pow(g(1, 1), j);
    for (int j1 = 0; j1 <= m - a; ++j1)
      for (int j2 = 0; j2 <= a; ++j2)
        out(j1 + j2, a) += p1[static_cast<std::size_t>(j1)] * p2[static_cast<std::size_t>(j2)];
  }
  return out;
}

Matrix sym_power_form(int n) {
  if (n < 2) fail(errc::invalid_params, "form needs dimension >= 2");
  int m = n - 1;
  Matrix F = Matrix::Zero(n, n);
  double c = 1.0;
  for (int a = 0; a <= m; ++a) {
    // c = C(m, a); antidiagonal entry (-1)^a / C(m, a).
    F(a, m - a) = ((a % 2) ? -1.0 : 1.0) / c;
    c = c * (m - a) / (a + 1);
  }
  return F;
}

RepresentationSpec principal_embed(const RepresentationSpec& rep, int n) {
  validate_representation(rep);
  if (rep.n != 2)
    fail(errc::dimension_mismatch, "principal embedding starts from 2 by 2 generators");
  RepresentationSpec out;
  out.family = RepFamily::SLnR;
  out.n = n;
  for (const GeneratorSpec& g : rep.generators) {
    GeneratorSpec h;
    h.name = g.name;
    h.matrix = sym_power(g.matrix, n);
    h.inverse = sym_power(g.inverse.size() ? g.inverse : Matrix(g.matrix.inverse()), n);
    out.generators.push_back(std::move(h));
  }
  out.has_form = true;
  out.form_matrix = sym_power_form(n);
  return out;
}

RepresentationSpec adjoint_o12(const RepresentationSpec& rep) {
  validate_representation(rep);
  if (rep.n != 2)
    fail(errc::dimension_mismatch, "adjoint realization starts from 2 by 2 generators");
  // Basis A = [[0,1],[-1,0]], H = [[1,0],[0,-1]], S = [[0,1],[1,0]] of the
  // traceless matrices; -tr(XY)/2 is diag(1,-1,-1) there.
  auto to_coords = [](const Matrix& X) {
    Vector v(3);
    v << (X(0, 1) - X(1, 0)) / 2.0, X(0, 0), (X(0, 1) + X(1, 0)) / 2.0;
    return v;
  };
  std::vector<Matrix> basis(3, Matrix(2, 2));
  basis[0] << 0, 1, -1, 0;
  basis[1] << 1, 0, 0, -1;
  basis[2] << 0, 1, 1, 0;
  auto adjoint = [&](const Matrix& g, const Matrix& ginv) {
    Matrix out(3, 3);
    for (int j = 0; j < 3; ++j)
      out.col(j) = to_coords(g * basis[static_cast<std::size_t>(j)] * ginv);
    return out;
  };
  RepresentationSpec out;
  out.family = RepFamily::Opq;
  out.n = 3;
  out.p = 1;
  out.q = 2;
  for (const GeneratorSpec& g : rep.generators) {
    Matrix ginv = g.inverse.size() ? g.inverse : Matrix(g.matrix.inverse());
    GeneratorSpec h;
    h.name = g.name;
    h.matrix = adjoint(g.matrix, ginv);
    h.inverse = adjoint(ginv, g.matrix);
    out.generators.push_back(std::move(h));
  }
  out.has_form = true;
  out.form_matrix = Matrix::Zero(3, 3);
  out.form_matrix(0, 0) = 1.0;
  out.form_matrix(1, 1) = -1.0;
  out.form_matrix(2, 2) = -1.0;
  return out;
}

std::vector<RootFunctional> default_root_functionals(const RepresentationSpec& rep) {
  std::vector<RootFunctional> roots;
  int n = rep.n;
  auto gap = [&](int i) {
    RootFunctional f;
    f.label = "mu" + std::to_string(i + 1) + "-mu" + std::to_string(i + 2);
    f.coeffs = Vector::Zero(n);
    f.coeffs(i) = 1.0;
    f.coeffs(i + 1) = -1.0;
    return f;
  };
  switch (rep.family) {
    case RepFamily::SLnR:
      for (int i = 0; i + 1 < n; ++i) roots.push_back(gap(i));
      break;
    case RepFamily::SpR: {
      int l = n / 2;
      for (int i = 0; i + 1 < l; ++i) roots.push_back(gap(i));
      RootFunctional last;
      last.label = "2*mu" + std::to_string(l);
      last.coeffs = Vector::Zero(n);
      last.coeffs(l - 1) = 2.0;
      roots.push_back(std::move(last));
      break;
    }
    case RepFamily::Opq: {
      int l = rep.p;
      for (int i = 0; i + 1 < l; ++i) roots.push_back(gap(i));
      RootFunctional last;
      last.coeffs = Vector::Zero(n);
      if (rep.q > rep.p) {
        last.label = "mu" + std::to_string(l);
        last.coeffs(l - 1) = 1.0;
      } else {
        last.label = "mu" + std::to_string(l - 1) + "+mu" + std::to_string(l);
        last.coeffs(l - 2) = 1.0;
        last.coeffs(l - 1) = 1.0;
      }
      roots.push_back(std::move(last));
      break;
    }
  }
  return roots;
}

DivergenceScanReport divergence_scan(const RepresentationSpec& rep,
                                     const std::vector<RootFunctional>& roots,
                                     int L, double slope_min) {
  if (roots.empty()) fail(errc::invalid_params, "no root functionals given");
  for (const RootFunctional& f : roots)
    if (f.coeffs.size() != rep.n)
      fail(errc::dimension_mismatch, "root functional length does not match n");
  DivergenceScanReport report;
  report.k = static_cast<int>(rep.generators.size());
  report.L = L;
  report.slope_min = slope_min;
  report.word_counts.assign(static_cast<std::size_t>(L), 0);

  std::size_t nf = roots.size();
  std::vector<std::vector<double>> mins(nf, std::vector<double>(static_cast<std::size_t>(L), std::numeric_limits<double>::infinity()));
  std::vector<std::vector<double>> maxs(nf, std::vector<double>(static_cast<std::size_t>(L), -std::numeric_limits<double>::infinity()));
  std::vector<std::vector<double>> sums(nf, std::vector<double>(static_cast<std::size_t>(L), 0.0));

  scan_words(rep, L, [&](const ReducedWord& w, const Matrix&, const Vector& mu) {
    std::size_t len = static_cast<std::size_t>(w.length()) - 1;
    report.word_counts[len] += 1;
    for (std::size_t f = 0; f < nf; ++f) {
      double v = roots[f].coeffs.dot(mu);
      mins[f][len] = std::min(mins[f][len], v);
      maxs[f][len] = std::max(maxs[f][len], v);
      sums[f][len] += v;
    }
  });

  int lo = std::max(1, L / 2);
  for (std::size_t f = 0; f < nf; ++f) {
    ScanSeries s;
    s.label = roots[f].label;
    s.min_values = mins[f];
    s.max_values = maxs[f];
    s.mean_values.resize(static_cast<std::size_t>(L));
    for (int l = 1; l <= L; ++l)
      s.mean_values[static_cast<std::size_t>(l - 1)] =
          sums[f][static_cast<std::size_t>(l - 1)] /
          static_cast<double>(report.word_counts[static_cast<std::size_t>(l - 1)]);
    LineFit fit = fit_window(s.min_values, lo, L);
    s.slope = fit.slope;
    s.intercept = fit.intercept;
    s.rms = fit.rms;
    s.pass = fit.slope > slope_min && fit.rms < 0.1 * fit.range;
    report.series.push_back(std::move(s));
  }
  return report;
}

QiReport qi_constants(const RepresentationSpec& rep, int L, double slope_min) {
  QiReport report;
  report.min_norms.assign(static_cast<std::size_t>(L), std::numeric_limits<double>::infinity());
  report.max_norms.assign(static_cast<std::size_t>(L), -std::numeric_limits<double>::infinity());
  scan_words(rep, L, [&](const ReducedWord& w, const Matrix&, const Vector& mu) {
    std::size_t len = static_cast<std::size_t>(w.length()) - 1;
    double v = mu.norm();
    report.min_norms[len] = std::min(report.min_norms[len], v);
    report.max_norms[len] = std::max(report.max_norms[len], v);
  });

  int lo = std::max(1, L / 2);
  LineFit fit = fit_window(report.min_norms, lo, L);
  report.lower_slope = fit.slope;
  report.fail = !(fit.slope > slope_min);

  // Additive slack zero is always optimal when the lower envelope is
  // positive; the multiplicative constant then absorbs both envelopes.
  bool positive = true;
  for (double v : report.min_norms)
    if (!(v > 1e-12)) positive = false;
  report.C_hat = 0.0;
  report.K_hat = 1.0;
  for (int l = 1; l <= L; ++l) {
    report.K_hat = std::max(report.K_hat, report.max_norms[static_cast<std::size_t>(l - 1)] / l);
    if (positive)
      report.K_hat = std::max(report.K_hat, l / report.min_norms[static_cast<std::size_t>(l - 1)]);
  }
  if (!positive) report.fail = true;
  return report;
}

namespace {

struct ProxCore {
  Subspace x_plus;
  Subspace x_minus;
  double gap = 0.0;
  double r = 0.0;
};

int isotropy_rank(const BilinearForm& F) {
  if (F.kind() == FormKind::antisymmetric) return F.ambient() / 2;
  Signature sig = signature_of(F.gram());
  return std::min(sig.positive, sig.negative);
}

// Real basis of the invariant subspace spanned by the eigenvectors at the
// given positions of the modulus-sorted spectrum.
Subspace eigen_subspace(const Eigen::EigenSolver<Matrix>& es,
                        const std::vector<int>& order, int from, int count,
                        const Matrix& g) {
  int n = static_cast<int>(g.rows());
  Matrix cols(n, count);
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  int filled = 0;
  for (int pos = from; pos < from + count; ++pos) {
    int j = order[static_cast<std::size_t>(pos)];
    if (taken[static_cast<std::size_t>(j)]) continue;
    taken[static_cast<std::size_t>(j)] = true;
    std::complex<double> lam = es.eigenvalues()(j);
    Eigen::VectorXcd v = es.eigenvectors().col(j);
    double scale = std::max(1.0, std::abs(lam));
    if (std::abs(lam.imag()) <= 1e-9 * scale) {
      int imax = 0;
      v.cwiseAbs().maxCoeff(&imax);
      v *= std::conj(v(imax)) / std::abs(v(imax));
      if (v.imag().norm() > 1e-6 * v.norm())
        fail(errc::nonconvergent_eigen, "real eigenvalue has a complex eigenvector");
      cols.col(filled++) = v.real();
    } else {
      // Complex pair: find the conjugate inside the same window so both
      // real coordinates land in the subspace.
      int partner = -1;
      for (int pos2 = from; pos2 < from + count; ++pos2) {
        int j2 = order[static_cast<std::size_t>(pos2)];
        if (taken[static_cast<std::size_t>(j2)]) continue;
        if (std::abs(es.eigenvalues()(j2) - std::conj(lam)) <= 1e-6 * scale) {
          partner = j2;
          break;
        }
      }
      if (partner < 0)
        fail(errc::not_proximal, "complex eigenvalue pair straddles the spectral cut");
      taken[static_cast<std::size_t>(partner)] = true;
      cols.col(filled++) = v.real();
      cols.col(filled++) = v.imag();
    }
  }
  Subspace S = Subspace::from_span(cols, count);
  Matrix img = g * S.basis();
  Matrix resid = img - S.basis() * (S.basis().transpose() * img);
  double scale = std::max(1.0, img.cwiseAbs().maxCoeff());
  if (resid.cwiseAbs().maxCoeff() > 1e-7 * scale)
    fail(errc::nonconvergent_eigen, "eigenspace is not numerically invariant");
  return S;
}

ProxCore proximal_core(const Matrix& g, FlagType type, const BilinearForm* form,
                       bool want_minus = true) {
  int n = static_cast<int>(g.rows());
  if (g.cols() != n || n < 2) fail(errc::dimension_mismatch, "proximality needs a square matrix");
  int l = 1;
  if (type == FlagType::maximal_isotropic) {
    if (form == nullptr)
      fail(errc::invalid_params, "maximal isotropic proximality needs a form");
    if (form->ambient() != n)
      fail(errc::dimension_mismatch, "form size does not match the matrix");
    l = isotropy_rank(*form);
    if (l < 1) fail(errc::degenerate_form, "form has no isotropic directions");
  }
  if (l >= n) fail(errc::invalid_params, "isotropy rank leaves no spectral gap");

  // Long collapsed products push the bottom of the spectrum below what the
  // dense solver can resolve, so computed moduli may round to zero even
  // though the matrix is invertible.  Clamping at the rounding floor makes
  // the certified gap an underestimate instead of an overflow.
  double entry_scale = g.cwiseAbs().maxCoeff();
  if (entry_scale <= kSingularFloor)
    fail(errc::singular_input, "matrix is numerically zero");
  double modulus_floor = entry_scale * std::numeric_limits<double>::epsilon();

  Eigen::EigenSolver<Matrix> es(g);
  if (es.info() != Eigen::Success)
    fail(errc::nonconvergent_eigen, "eigenvalue computation failed");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> logmod(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double m = std::max(std::abs(es.eigenvalues()(i)), modulus_floor);
    logmod[static_cast<std::size_t>(i)] = std::log(m);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return logmod[static_cast<std::size_t>(a)] > logmod[static_cast<std::size_t>(b)];
  });

  ProxCore core;
  core.gap = logmod[static_cast<std::size_t>(order[static_cast<std::size_t>(l - 1)])] -
             logmod[static_cast<std::size_t>(order[static_cast<std::size_t>(l)])];
  if (core.gap < kEigenvalueGapTol)
    fail(errc::not_proximal,
         "eigenvalue modulus gap " + std::to_string(core.gap) + " is below 1e-6");

  core.x_plus = eigen_subspace(es, order, 0, l, g);
  if (type == FlagType::maximal_isotropic) {
    Matrix rest = core.x_plus.basis().transpose() * form->gram() * core.x_plus.basis();
    double fs = std::max(1.0, form->gram().cwiseAbs().maxCoeff());
    if (rest.cwiseAbs().maxCoeff() > 1e-8 * fs)
      fail(errc::not_proximal, "attracting subspace is not isotropic");
    if (want_minus) core.x_minus = eigen_subspace(es, order, n - l, l, g);
  } else if (want_minus) {
    // Repelling hyperplane: orthogonal complement of the top eigenvector of
    // the transpose.
    Eigen::EigenSolver<Matrix> est(Matrix(g.transpose()));
    if (est.info() != Eigen::Success)
      fail(errc::nonconvergent_eigen, "eigenvalue computation failed");
    std::vector<int> ordert(static_cast<std::size_t>(n));
    std::iota(ordert.begin(), ordert.end(), 0);
    std::vector<double> logmodt(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      logmodt[static_cast<std::size_t>(i)] =
          std::log(std::max(std::abs(est.eigenvalues()(i)), modulus_floor));
    std::stable_sort(ordert.begin(), ordert.end(), [&](int a, int b) {
      return logmodt[static_cast<std::size_t>(a)] > logmodt[static_cast<std::size_t>(b)];
    });
    Subspace left = eigen_subspace(est, ordert, 0, 1, Matrix(g.transpose()));
    Eigen::HouseholderQR<Matrix> qr(left.basis());
    Matrix Q = qr.householderQ();
    core.x_minus = Subspace::from_orthonormal(Q.rightCols(n - 1));
  }
  if (want_minus) core.r = sine_distance(core.x_plus, core.x_minus);
  return core;
}

double lipschitz_epsilon(const Matrix& g, const ProxCore& core) {
  int n = static_cast<int>(g.rows());
  int l = core.x_plus.dim();
  std::mt19937 rng(9001);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Largest measured stretch of the induced action over points at distance
  // at least eps from the repelling set.
  auto lipschitz = [&](double eps) {
    double worst = 0.0;
    int found = 0;
    for (int attempt = 0; attempt < 50000 && found < 1000; ++attempt) {
      Matrix b(n, l);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < l; ++j) b(i, j) = gauss(rng);
      Subspace x = Subspace::from_span(b, l);
      if (sine_distance(x, core.x_minus) < eps) continue;
      ++found;
      Matrix pb = x.basis();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < l; ++j) pb(i, j) += 1e-5 * gauss(rng);
      Subspace y = Subspace::from_span(pb, l);
      double base = sine_distance(x, y);
      if (base < 1e-9) continue;
      Subspace gx = Subspace::from_span(Matrix(g * x.basis()), l);
      Subspace gy = Subspace::from_span(Matrix(g * y.basis()), l);
      worst = std::max(worst, sine_distance(gx, gy) / base);
    }
    return worst;
  };
  // The repelling set genuinely stretches its neighbourhood, so the map is
  // only eps-contracting once eps clears a threshold; bisect for the
  // smallest self-consistent value.
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 20; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (lipschitz(mid) <= mid)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

ProximalityReport proximal_data(const Matrix& g, FlagType type,
                                const BilinearForm* form) {
  ProxCore core = proximal_core(g, type, form);
  ProximalityReport report;
  report.x_plus = core.x_plus;
  report.x_minus = core.x_minus;
  report.gap = core.gap;
  report.r = core.r;
  report.epsilon = lipschitz_epsilon(g, core);
  return report;
}

LimitSetSample limit_set_sample(const RepresentationSpec& rep, FlagType type,
                                int L) {
  validate_representation(rep);
  BilinearForm form;
  bool have_form = rep.has_form;
  if (have_form) form = BilinearForm::from_matrix(rep.form_matrix);
  if (type == FlagType::maximal_isotropic && !have_form)
    fail(errc::invalid_params, "maximal isotropic sampling needs a form");

  LimitSetSample sample;
  sample.type = type;
  sample.ambient = rep.n;

  scan_words(rep, L, [&](const ReducedWord& w, const Matrix& g, const Vector&) {
    ReducedWord wing, cyc;
    split_cyclic(w, wing, cyc);
    bool conj = wing.length() > 0;
    Matrix gcyc = conj ? evaluate_word(rep, cyc) : g;
    Matrix push;
    if (conj) push = evaluate_word(rep, wing);

    ProxCore core;
    try {
      core = proximal_core(gcyc, type, have_form ? &form : nullptr, false);
    } catch (const error& e) {
      if (e.code() == errc::not_proximal) return;
      throw;
    }
    Subspace attract = conj ? Subspace::from_span(
                                  Matrix(push * core.x_plus.basis()),
                                  core.x_plus.dim())
                            : core.x_plus;

    // The partner each other attractor must stay transverse to: for lines it
    // is the attracting hyperplane, recovered from the inverse word so the
    // bottom of the spectrum stays well conditioned; isotropic subspaces are
    // tested against their own form complement, so they partner themselves.
    Subspace corepel;
    if (type == FlagType::line) {
      Matrix gcinv = evaluate_word(rep, cyc.inverse());
      Subspace hyper;
      try {
        hyper = proximal_core(gcinv, FlagType::line, nullptr, true).x_minus;
      } catch (const error& e) {
        if (e.code() == errc::not_proximal) return;
        throw;
      }
      if (conj) {
        // Pushing the basis directly can lose numerical rank when the
        // conjugating word contracts strongly; the normal vector pulled back
        // through the transpose stays well conditioned.
        int n = hyper.ambient();
        Eigen::HouseholderQR<Matrix> basis_qr(hyper.basis());
        Matrix full = basis_qr.householderQ();
        Vector normal = push.transpose().partialPivLu().solve(
            Vector(full.col(n - 1)));
        normal /= normal.norm();
        Eigen::HouseholderQR<Matrix> normal_qr{Matrix(normal)};
        Matrix completed = normal_qr.householderQ();
        corepel = Subspace::from_orthonormal(completed.rightCols(n - 1));
      } else {
        corepel = hyper;
      }
    } else {
      corepel = attract;
    }

    for (LimitPoint& kept : sample.points) {
      double d;
      if (attract.dim() == 1) {
        double c = std::min(1.0, std::abs(attract.basis().col(0).dot(
                                     kept.attract.basis().col(0))));
        d = std::sqrt(std::max(0.0, 1.0 - c * c));
      } else {
        d = sine_distance(attract, kept.attract);
      }
      if (d <= kDedupRadius) {
        ReducedWord cand = w;
        if (word_less(cand, kept.word)) {
          kept.attract = attract;
          kept.corepel = corepel;
          kept.word = cand;
        }
        return;
      }
    }
    LimitPoint pt;
    pt.attract = attract;
    pt.corepel = corepel;
    pt.word = w;
    sample.points.push_back(std::move(pt));
  });

  if (sample.points.empty())
    fail(errc::empty_sample, "no proximal words up to the requested length");
  std::sort(sample.points.begin(), sample.points.end(),
            [](const LimitPoint& a, const LimitPoint& b) {
              return word_less(a.word, b.word);
            });
  return sample;
}

TransversalityReport transversality_margin(const LimitSetSample& sample,
                                           const BilinearForm* form,
                                           double sep) {
  std::size_t m = sample.points.size();
  if (m < 2) fail(errc::no_pairs, "need at least two limit points");
  int n = sample.ambient;

  // Each point contributes the subspace its partner's attractor must avoid;
  // complements through the form when the stored partner is not already of
  // complementary dimension.
  std::vector<Subspace> partner(m);
  for (std::size_t i = 0; i < m; ++i) {
    const LimitPoint& pt = sample.points[i];
    if (pt.attract.dim() + pt.corepel.dim() == n) {
      partner[i] = pt.corepel;
    } else if (form != nullptr &&
               pt.attract.dim() + (n - pt.corepel.dim()) == n) {
      partner[i] = form_perp(pt.corepel, *form);
    } else {
      fail(errc::kind_mismatch,
           "limit point dimensions do not combine into a transversality test");
    }
  }

  TransversalityReport report;
  report.histogram.assign(20, 0);
  report.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double d = sine_distance(sample.points[i].attract, sample.points[j].attract);
      if (d <= sep) continue;
      double margin = std::min(
          direct_sum_margin(sample.points[i].attract, partner[j]),
          direct_sum_margin(sample.points[j].attract, partner[i]));
      report.pair_count += 1;
      report.min_margin = std::min(report.min_margin, margin);
      int bin = std::min(19, static_cast<int>(std::max(0.0, margin) * 20.0));
      report.histogram[static_cast<std::size_t>(bin)] += 1;
    }
  }
  if (report.pair_count == 0)
    fail(errc::no_pairs, "no limit point pairs are separated beyond sep");
  return report;
}

}  // namespace anosov
