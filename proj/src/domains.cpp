#include "anosov/domains.hpp"

#include <algorithm>
#include <limits>

namespace anosov {

namespace {

// Incidence between subspaces of possibly different dimensions: the smaller
// one must sit inside the larger, equality when the dimensions agree.  The
// residual is symmetric in the two arguments.
double incidence_residual(const Subspace& a, const Subspace& b) {
  if (a.dim() <= b.dim()) return containment_residual(a, b);
  return containment_residual(b, a);
}

Matrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

void check_tol(double tol) {
  if (!(tol > 0.0)) fail(errc::invalid_params, "tolerance must be positive");
}

// Witt index of a nondegenerate form: the largest isotropic dimension.
int witt_index(const BilinearForm& form) {
  if (form.kind() == FormKind::antisymmetric) return form.ambient() / 2;
  Signature sig = signature_of(form.gram());
  return std::min(sig.positive, sig.negative);
}

void check_full_flag_shape(const std::vector<Subspace>& flag, int n, errc code) {
  if (static_cast<int>(flag.size()) != n - 1)
    fail(code, "a full flag in dimension " + std::to_string(n) + " has " +
                   std::to_string(n - 1) + " subspaces");
  for (int i = 0; i < n - 1; ++i) {
    if (flag[i].ambient() != n) fail(errc::dimension_mismatch, "flag ambient dimension differs");
    if (flag[i].dim() != i + 1)
      fail(code, "full flag dimensions must run 1.." + std::to_string(n - 1));
  }
}

}  // namespace

const char* flag_kind_name(FlagKind k) {
  switch (k) {
    case FlagKind::isotropic_line: return "isotropic_line";
    case FlagKind::maximal_isotropic: return "maximal_isotropic";
    case FlagKind::partial_flag: return "partial_flag";
    case FlagKind::full_flag: return "full_flag";
  }
  fail(errc::invalid_params, "unknown flag kind");
}

FlagKind flag_kind_from_name(const std::string& s) {
  if (s == "isotropic_line") return FlagKind::isotropic_line;
  if (s == "maximal_isotropic") return FlagKind::maximal_isotropic;
  if (s == "partial_flag") return FlagKind::partial_flag;
  if (s == "full_flag") return FlagKind::full_flag;
  fail(errc::parse_error, "unknown flag kind '" + s + "'");
}

void validate_flag_point(const FlagPoint& x, double tol) {
  check_tol(tol);
  if (x.subspaces.empty()) fail(errc::invalid_params, "flag point has no subspaces");
  int n = x.subspaces.front().ambient();
  for (const Subspace& s : x.subspaces) {
    if (s.ambient() != n) fail(errc::dimension_mismatch, "flag point mixes ambient dimensions");
    if (s.dim() < 1) fail(errc::invalid_params, "flag point contains a zero subspace");
  }
  for (std::size_t i = 0; i + 1 < x.subspaces.size(); ++i) {
    const Subspace& lo = x.subspaces[i];
    const Subspace& hi = x.subspaces[i + 1];
    if (lo.dim() >= hi.dim())
      fail(errc::invalid_params, "flag point dimensions must strictly increase");
    if (intersection_dim(lo, hi) != lo.dim())
      fail(errc::invalid_params, "flag point subspaces are not nested");
  }
  if (x.form && x.form->ambient() != n)
    fail(errc::dimension_mismatch, "flag point form has the wrong ambient dimension");

  switch (x.kind) {
    case FlagKind::isotropic_line:
      if (x.subspaces.size() != 1 || x.subspaces[0].dim() != 1)
        fail(errc::invalid_params, "an isotropic line point is a single line");
      break;
    case FlagKind::maximal_isotropic: {
      if (x.subspaces.size() != 1)
        fail(errc::invalid_params, "a maximal isotropic point is a single subspace");
      if (!x.form) fail(errc::invalid_params, "maximal isotropic points carry a form");
      int witt = witt_index(*x.form);
      if (x.subspaces[0].dim() != witt)
        fail(errc::invalid_params, "maximal isotropic dimension must equal the Witt index " +
                                       std::to_string(witt));
      break;
    }
    case FlagKind::partial_flag:
      if (x.subspaces.size() != 2 || x.subspaces[0].dim() + x.subspaces[1].dim() != n)
        fail(errc::invalid_params, "a partial flag point is a nested (k, n-k) pair");
      break;
    case FlagKind::full_flag:
      check_full_flag_shape(x.subspaces, n, errc::invalid_params);
      break;
  }

  if (x.form && (x.kind == FlagKind::isotropic_line || x.kind == FlagKind::maximal_isotropic)) {
    const Matrix& b = x.subspaces[0].basis();
    double residual = (b.transpose() * x.form->gram() * b).cwiseAbs().maxCoeff();
    if (residual > tol)
      fail(errc::invalid_params,
           "flag point is not isotropic: residual " + std::to_string(residual));
  }
}

FlagPoint make_flag_point(FlagKind kind, std::vector<Subspace> subspaces,
                          std::optional<BilinearForm> form, double tol) {
  FlagPoint x;
  x.kind = kind;
  x.subspaces = std::move(subspaces);
  x.form = std::move(form);
  validate_flag_point(x, tol);
  return x;
}

MembershipReport k_membership(const Subspace& x, const std::vector<Subspace>& sample,
                              double tol) {
  check_tol(tol);
  MembershipReport report;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (incidence_residual(x, sample[i]) <= tol) {
      ++report.incidence_count;
      if (report.witness < 0) report.witness = static_cast<int>(i);
    }
  }
  report.member = report.incidence_count > 0;
  return report;
}

MembershipReport k_membership(const Subspace& x, const LimitSetSample& sample, double tol) {
  check_tol(tol);
  if (x.ambient() != sample.ambient)
    fail(errc::dimension_mismatch, "query and sample ambient dimensions differ");
  MembershipReport report;
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    if (incidence_residual(x, sample.points[i].attract) <= tol) {
      ++report.incidence_count;
      if (report.witness < 0) report.witness = static_cast<int>(i);
    }
  }
  report.member = report.incidence_count > 0;
  return report;
}

MembershipReport k_membership(const FlagPoint& x, const LimitSetSample& sample, double tol) {
  if (x.kind != FlagKind::isotropic_line && x.kind != FlagKind::maximal_isotropic)
    fail(errc::kind_mismatch,
         std::string("no single-subspace incidence test for kind ") + flag_kind_name(x.kind));
  validate_flag_point(x, std::max(tol, kIncidenceTol));
  return k_membership(x.subspaces[0], sample, tol);
}

DomainSampleReport domain_sample(const LimitSetSample& sample, const BilinearForm* form,
                                 int trials, std::uint64_t seed, double thickening) {
  if (trials < 1) fail(errc::invalid_params, "domain sampling needs at least one trial");
  check_tol(thickening);
  int n = sample.ambient;
  if (n < 2) fail(errc::invalid_params, "ambient dimension must be at least 2");
  if (form && form->ambient() != n)
    fail(errc::dimension_mismatch, "form ambient dimension differs from the sample");

  int dim = 1;
  if (sample.type == FlagType::maximal_isotropic) {
    if (!form) fail(errc::invalid_params, "maximal isotropic draws need the bilinear form");
    dim = witt_index(*form);
  }
  // Every line is isotropic for an antisymmetric form, so the projective
  // space itself is the right variety there.
  bool isotropic_draws =
      form != nullptr && !(dim == 1 && form->kind() == FormKind::antisymmetric);

  DomainSampleReport report;
  report.trials = trials;
  report.seed = seed;
  report.thickening = thickening;
  report.sample_size = static_cast<int>(sample.points.size());
  for (const LimitPoint& p : sample.points)
    report.sample_depth = std::max(report.sample_depth, p.word.length());

  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Subspace x = isotropic_draws ? random_isotropic_point(*form, dim, rng)
                                 : random_grassmannian_point(n, dim, rng);
    bool inside_k = false;
    for (const LimitPoint& p : sample.points) {
      if (incidence_residual(x, p.attract) <= thickening) {
        inside_k = true;
        break;
      }
    }
    if (inside_k) {
      if (!report.example_non_member) report.example_non_member = x;
    } else {
      ++report.hits;
      if (!report.example_member) report.example_member = x;
    }
  }
  report.fraction = static_cast<double>(report.hits) / static_cast<double>(trials);
  return report;
}

EquivarianceReport equivariance_check(const LimitSetSample& sample,
                                      const RepresentationSpec& rep, const Subspace& x,
                                      const std::vector<ReducedWord>& words, double tol) {
  check_tol(tol);
  if (rep.n != sample.ambient)
    fail(errc::dimension_mismatch, "representation and sample ambient dimensions differ");

  EquivarianceReport report;
  report.baseline = k_membership(x, sample, tol).member;
  report.verdicts.reserve(words.size());
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    Matrix g = evaluate_word(rep, words[wi]);
    std::vector<Subspace> pushed;
    pushed.reserve(sample.points.size());
    for (const LimitPoint& p : sample.points)
      pushed.push_back(Subspace::from_span(g * p.attract.basis(), p.attract.dim()));
    bool verdict = k_membership(x, pushed, tol).member;
    report.verdicts.push_back(verdict ? 1 : 0);
    if (verdict != report.baseline) {
      ++report.violations;
      report.violating_words.push_back(static_cast<int>(wi));
    }
  }
  return report;
}

PinchReport sln_K_Ad_membership(const Subspace& line, const Subspace& hyperplane,
                                const std::vector<Subspace>& full_flag, double tol) {
  check_tol(tol);
  int n = line.ambient();
  if (hyperplane.ambient() != n)
    fail(errc::dimension_mismatch, "line and hyperplane ambient dimensions differ");
  if (line.dim() != 1 || hyperplane.dim() != n - 1)
    fail(errc::kind_mismatch, "query must be a (line, hyperplane) pair");
  check_full_flag_shape(full_flag, n, errc::kind_mismatch);

  PinchReport report;
  for (int k = 1; k <= n - 1; ++k) {
    const Subspace& level = full_flag[k - 1];
    if (containment_residual(line, level) <= tol &&
        containment_residual(level, hyperplane) <= tol) {
      report.member = true;
      report.witness_level = k;
      return report;
    }
  }
  return report;
}

LexSequencesReport sln_Kprime_k_membership(const std::vector<Subspace>& full_flag,
                                           const Subspace& xi_k, const Subspace& xi_nk,
                                           double tol) {
  check_tol(tol);
  int n = xi_k.ambient();
  int k = xi_k.dim();
  if (xi_nk.ambient() != n)
    fail(errc::dimension_mismatch, "nested pair ambient dimensions differ");
  if (xi_nk.dim() != n - k)
    fail(errc::invalid_params, "nested pair must have dimensions (k, n-k)");
  if (k > n - k) fail(errc::invalid_params, "need k <= n - k");
  if (containment_residual(xi_k, xi_nk) > tol)
    fail(errc::invalid_params, "nested pair is not nested");
  check_full_flag_shape(full_flag, n, errc::invalid_params);

  // Intersection dimensions with each flag level form a staircase that climbs
  // by zero or one per level; anything else means the numerical ranks are
  // inconsistent, not that the flag is outside the incidence set.
  auto staircase = [&](const Subspace& xi) {
    std::vector<int> d(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 1; j <= n - 1; ++j) d[j] = intersection_dim(full_flag[j - 1], xi);
    d[n] = xi.dim();
    for (int j = 1; j <= n; ++j) {
      int step = d[j] - d[j - 1];
      if (step < 0 || step > 1)
        fail(errc::malformed_flag, "intersection dimensions must climb one step at a time");
    }
    return d;
  };
  std::vector<int> d0 = staircase(xi_k);
  std::vector<int> d1 = staircase(xi_nk);

  LexSequencesReport report;
  report.i_seq.resize(k, 0);
  for (int l = 1; l <= k; ++l) {
    for (int i = 1; i <= n; ++i) {
      if (d0[i] == l) {
        report.i_seq[l - 1] = i;
        break;
      }
    }
  }
  report.j_seq.resize(k, 0);
  for (int j = 0; j <= n; ++j) {
    int l = j - d1[j] + 1;  // level whose defect this flag step realizes
    if (l >= 1 && l <= k) report.j_seq[l - 1] = j;
  }

  report.member = true;
  for (int l = 0; l < k; ++l) {
    if (report.i_seq[l] != report.j_seq[l]) {
      report.member = report.i_seq[l] < report.j_seq[l];
      break;
    }
  }
  return report;
}

MembershipReport grassmannian_membership(const Subspace& P, const std::vector<Subspace>& lines,
                                         double tol) {
  check_tol(tol);
  int n = P.ambient();
  if (n % 2 != 0 || 2 * P.dim() != n)
    fail(errc::kind_mismatch, "query must be half-dimensional");
  MembershipReport report;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].dim() != 1) fail(errc::kind_mismatch, "sample must consist of lines");
    if (incidence_residual(lines[i], P) <= tol) {
      ++report.incidence_count;
      if (report.witness < 0) report.witness = static_cast<int>(i);
    }
  }
  report.member = report.incidence_count > 0;
  return report;
}

const char* group_family_name(GroupFamily f) {
  switch (f) {
    case GroupFamily::Opq: return "Opq";
    case GroupFamily::SpR: return "SpR";
    case GroupFamily::SpC: return "SpC";
    case GroupFamily::OC: return "OC";
    case GroupFamily::Upq: return "Upq";
    case GroupFamily::Sppq: return "Sppq";
    case GroupFamily::SOstar: return "SOstar";
  }
  fail(errc::invalid_params, "unknown group family");
}

GroupFamily group_family_from_name(const std::string& s) {
  if (s == "Opq") return GroupFamily::Opq;
  if (s == "SpR") return GroupFamily::SpR;
  if (s == "SpC") return GroupFamily::SpC;
  if (s == "OC") return GroupFamily::OC;
  if (s == "Upq") return GroupFamily::Upq;
  if (s == "Sppq") return GroupFamily::Sppq;
  if (s == "SOstar") return GroupFamily::SOstar;
  fail(errc::parse_error, "unknown group family '" + s + "'");
}

int codim_delta(GroupFamily family, int p_or_size, int q, int vcd) {
  if (vcd < 1) fail(errc::invalid_params, "vcd must be at least 1");
  switch (family) {
    case GroupFamily::Opq:
    case GroupFamily::Upq:
    case GroupFamily::Sppq: {
      if (p_or_size < 1 || q < p_or_size)
        fail(errc::invalid_params, "need 1 <= p <= q");
      int mult = family == GroupFamily::Opq ? 1 : family == GroupFamily::Upq ? 2 : 4;
      return mult * q - vcd;
    }
    case GroupFamily::OC: {
      if (q != 0) fail(errc::invalid_params, "OC takes a single size parameter");
      if (p_or_size < 2) fail(errc::invalid_params, "OC size must be at least 2");
      return p_or_size + (p_or_size % 2) - vcd;
    }
    case GroupFamily::SpR:
    case GroupFamily::SpC:
    case GroupFamily::SOstar: {
      if (q != 0) fail(errc::invalid_params, "family takes a single size parameter");
      if (p_or_size < 2 || p_or_size % 2 != 0)
        fail(errc::invalid_params, "size must be even and at least 2");
      int half = p_or_size / 2;
      if (family == GroupFamily::SpR) return half + 1 - vcd;
      if (family == GroupFamily::SpC) return 2 * half + 2 - vcd;
      return 4 * half - 2 - vcd;
    }
  }
  fail(errc::invalid_params, "unknown group family");
}

SchubertMin schubert_codim_min(int n, int k) {
  if (n < 2 || k < 1 || 2 * k > n) fail(errc::invalid_params, "need 1 <= k <= n/2");
  SchubertMin best;
  best.value = std::numeric_limits<int>::max();
  for (int s = 1; s <= n - 1; ++s) {
    for (int u = s; u <= n - 1; ++u) {
      int value = (n - k) + (k - 1) * (s - 1) + k * (u - s);
      if (value < best.value) {
        best.value = value;
        best.s = s;
        best.u = u;
      }
    }
  }
  return best;
}

Subspace random_grassmannian_point(int ambient, int dim, std::mt19937_64& rng) {
  if (ambient < 1 || dim < 1 || dim > ambient)
    fail(errc::invalid_params, "subspace dimension out of range");
  Matrix g = gaussian_matrix(ambient, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix basis = qr.householderQ() * Matrix::Identity(ambient, dim);
  return Subspace::from_orthonormal(basis);
}

Subspace random_isotropic_point(const BilinearForm& form, int dim, std::mt19937_64& rng) {
  if (form.kind() != FormKind::symmetric)
    fail(errc::invalid_params, "isotropic draws are implemented for symmetric forms");
  int n = form.ambient();
  Eigen::SelfAdjointEigenSolver<Matrix> es(form.gram());
  if (es.info() != Eigen::Success)
    fail(errc::nonconvergent_eigen, "eigendecomposition of the form failed");

  Matrix pos(n, n), neg(n, n);
  int p = 0, q = 0;
  for (int i = 0; i < n; ++i) {
    double lambda = es.eigenvalues()(i);
    Vector column = es.eigenvectors().col(i) / std::sqrt(std::abs(lambda));
    if (lambda > 0.0)
      pos.col(p++) = column;
    else
      neg.col(q++) = column;
  }
  if (dim < 1 || dim > std::min(p, q))
    fail(errc::invalid_params, "isotropic dimension exceeds the Witt index");

  // Graph of an isometry between the definite blocks: the frame in the
  // positive block is matched with a frame in the negative block, which kills
  // the form on the span.
  Matrix frame_pos = gaussian_matrix(p, dim, rng);
  Matrix frame_neg = gaussian_matrix(q, dim, rng);
  Eigen::HouseholderQR<Matrix> qr_pos(frame_pos);
  Eigen::HouseholderQR<Matrix> qr_neg(frame_neg);
  Matrix a = qr_pos.householderQ() * Matrix::Identity(p, dim);
  Matrix b = qr_neg.householderQ() * Matrix::Identity(q, dim);
  Matrix span = pos.leftCols(p) * a + neg.leftCols(q) * b;
  return Subspace::from_span(span, dim);
}

}  // namespace anosov
