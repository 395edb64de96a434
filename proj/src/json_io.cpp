// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.
#include "anosov/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>

#include "anosov/errors.hpp"
#include "anosov/version.hpp"

namespace anosov {

namespace {

// Shortest decimal that round-trips; integral values keep a trailing ".0" so
// CSV columns stay typed.
std::string double_text(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEnN") == std::string::npos) s += ".0";
  return s;
}

double finite_number(const Json& j, const char* where) {
  if (!j.is_number())
    fail(errc::parse_error, std::string(where) + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v))
    fail(errc::parse_error, std::string(where) + ": non-finite value");
  return v;
}

}  // namespace

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json envelope(const std::string& command, const Json& config, const Json& report) {
  Json out;
  out["command"] = command;
  out["config"] = config.is_null() ? Json::object() : config;
  out["version"] = kVersion;
  out["report"] = report;
  return out;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    fail(errc::parse_error, "matrix: expected a non-empty array of rows");
  std::size_t rows = j.size();
  std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail(errc::parse_error, "matrix: rows have inconsistent lengths");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          finite_number(j[i][c], "matrix entry");
  }
  return m;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json rat_json(const Rat& r) { return Json::array({r.num(), r.den()}); }

Json ratvec_json(const RatVec& v) {
  Json out = Json::array();
  for (const Rat& r : v) out.push_back(rat_json(r));
  return out;
}

Json subspace_json(const Subspace& s) {
  Json out;
  out["ambient"] = s.ambient();
  out["dim"] = s.dim();
  out["basis"] = matrix_json(s.basis());
  return out;
}

RepresentationSpec representation_from_json(const Json& j) {
  if (!j.is_object()) fail(errc::parse_error, "representation: expected an object");
  RepresentationSpec rep;
  rep.family = j.contains("family")
                   ? rep_family_from_name(j.at("family").get<std::string>())
                   : RepFamily::SLnR;
  if (!j.contains("n") || !j.at("n").is_number_integer())
    fail(errc::parse_error, "representation: integer field \"n\" is required");
  rep.n = j.at("n").get<int>();
  rep.p = j.value("p", 0);
  rep.q = j.value("q", 0);
  if (!j.contains("generators") || !j.at("generators").is_array() ||
      j.at("generators").empty())
    fail(errc::parse_error, "representation: non-empty \"generators\" array is required");
  for (const Json& gj : j.at("generators")) {
    if (!gj.is_object() || !gj.contains("matrix"))
      fail(errc::parse_error, "generator: expected an object with a \"matrix\"");
    GeneratorSpec gen;
    gen.name = gj.value("name", std::string());
    gen.matrix = matrix_from_json(gj.at("matrix"));
    if (gj.contains("inverse")) gen.inverse = matrix_from_json(gj.at("inverse"));
    rep.generators.push_back(std::move(gen));
  }
  if (j.contains("form") && !j.at("form").is_null()) {
    rep.has_form = true;
    rep.form_matrix = matrix_from_json(j.at("form"));
  }
  complete_representation(rep);
  return rep;
}

Json representation_json(const RepresentationSpec& rep) {
  Json out;
  out["family"] = rep_family_name(rep.family);
  out["n"] = rep.n;
  if (rep.family == RepFamily::Opq) {
    out["p"] = rep.p;
    out["q"] = rep.q;
  }
  Json gens = Json::array();
  for (const GeneratorSpec& g : rep.generators) {
    Json gj;
    gj["name"] = g.name;
    gj["matrix"] = matrix_json(g.matrix);
    gens.push_back(std::move(gj));
  }
  out["generators"] = std::move(gens);
  if (rep.has_form) out["form"] = matrix_json(rep.form_matrix);
  return out;
}

Json root_system_json(const RootSystemData& rs) {
  Json out;
  out["family"] = root_family_name(rs.family);
  out["rank"] = rs.rank;
  out["ambient"] = rs.ambient;
  Json simple = Json::array();
  for (const RatVec& r : rs.simple_roots) simple.push_back(ratvec_json(r));
  out["simple_roots"] = std::move(simple);
  Json positive = Json::array();
  for (const RatVec& r : rs.positive_roots) positive.push_back(ratvec_json(r));
  out["positive_roots"] = std::move(positive);
  out["half_sum"] = ratvec_json(rs.half_sum);
  out["cartan_matrix"] = rs.cartan;
  return out;
}

Json weyl_element_json(const WeylElement& w) {
  Json out;
  out["word"] = w.word;
  out["length"] = w.length;
  out["perm"] = w.perm;
  out["sign"] = w.sign;
  return out;
}

Json weyl_report_json(const RootSystemData& rs) {
  Json out;
  out["root_system"] = root_system_json(rs);
  out["order"] = static_cast<std::uint64_t>(weyl_order(rs));
  Json elements = Json::array();
  for (const WeylElement& w : weyl_enumerate(rs)) elements.push_back(weyl_element_json(w));
  out["elements"] = std::move(elements);
  out["longest"] = weyl_element_json(longest_element(rs));
  out["opposition_involution"] = opposition_involution(rs);
  return out;
}

Json sphi_report_json(const ModuleFamily& fam, const SplitReport& split,
                      const SPhiSet& sphi, const CertificateReport& cert) {
  Json out;
  out["module"] = fam.name();
  out["family"] = root_family_name(fam.rs.family);
  out["rank"] = fam.rs.rank;
  out["n"] = fam.n;
  out["k"] = fam.k;
  out["highest_weight"] = ratvec_json(sphi.highest_weight);
  out["theta"] = sphi.theta;
  Json members = Json::array();
  for (const WeylElement& w : sphi.members) members.push_back(weyl_element_json(w));
  out["members"] = std::move(members);
  out["member_count"] = static_cast<int>(sphi.members.size());
  WeylElement w0 = longest_element(fam.rs);
  bool excluded = true;
  for (const WeylElement& w : sphi.members)
    if (same_element(w, w0)) excluded = false;
  out["w0_excluded"] = excluded;
  out["split"] = {{"dim_positive", split.dim_positive},
                  {"dim_zero", split.dim_zero},
                  {"dim_negative", split.dim_negative},
                  {"has_form", split.has_form},
                  {"parity", split.parity == FormParity::symmetric ? "symmetric"
                                                                   : "antisymmetric"}};
  out["certificate"] = {{"certified", cert.certified},
                        {"not_applicable", cert.not_applicable},
                        {"failing_alphas", cert.failing_alphas}};
  return out;
}

Json scan_report_json(const DivergenceScanReport& r) {
  Json out;
  out["k"] = r.k;
  out["L"] = r.L;
  out["slope_min"] = r.slope_min;
  out["word_counts"] = r.word_counts;
  bool all_pass = !r.series.empty();
  Json series = Json::array();
  for (const ScanSeries& s : r.series) {
    Json sj;
    sj["label"] = s.label;
    sj["min"] = s.min_values;
    sj["mean"] = s.mean_values;
    sj["max"] = s.max_values;
    sj["slope"] = s.slope;
    sj["intercept"] = s.intercept;
    sj["rms"] = s.rms;
    sj["pass"] = s.pass;
    series.push_back(std::move(sj));
    all_pass = all_pass && s.pass;
  }
  out["series"] = std::move(series);
  out["verdict"] = all_pass ? "PASS" : "FAIL";
  return out;
}

std::string scan_report_csv(const DivergenceScanReport& r) {
  std::string csv = "length,words";
  for (const ScanSeries& s : r.series)
    csv += "," + s.label + "_min," + s.label + "_mean," + s.label + "_max";
  csv += "\n";
  for (int L = 1; L <= r.L; ++L) {
    std::size_t i = static_cast<std::size_t>(L - 1);
    csv += std::to_string(L) + "," + std::to_string(r.word_counts[i]);
    for (const ScanSeries& s : r.series)
      csv += "," + double_text(s.min_values[i]) + "," + double_text(s.mean_values[i]) +
             "," + double_text(s.max_values[i]);
    csv += "\n";
  }
  return csv;
}

Json qi_report_json(const QiReport& r) {
  Json out;
  out["K_hat"] = r.K_hat;
  out["C_hat"] = r.C_hat;
  out["fail"] = r.fail;
  out["lower_slope"] = r.lower_slope;
  out["min_norms"] = r.min_norms;
  out["max_norms"] = r.max_norms;
  return out;
}

Json proximality_json(const ProximalityReport& r) {
  Json out;
  out["x_plus"] = subspace_json(r.x_plus);
  out["x_minus"] = subspace_json(r.x_minus);
  out["gap"] = r.gap;
  out["r"] = r.r;
  out["epsilon"] = r.epsilon;
  return out;
}

Json limit_set_json(const LimitSetSample& s, const RepresentationSpec& rep) {
  Json out;
  out["flag_type"] = flag_type_name(s.type);
  out["ambient"] = s.ambient;
  out["count"] = static_cast<int>(s.points.size());
  int depth = 0;
  Json points = Json::array();
  for (const LimitPoint& p : s.points) {
    Json pj;
    pj["word"] = p.word.text(rep);
    pj["length"] = p.word.length();
    pj["attract"] = subspace_json(p.attract);
    pj["corepel"] = subspace_json(p.corepel);
    points.push_back(std::move(pj));
    depth = std::max(depth, p.word.length());
  }
  out["points"] = std::move(points);
  out["depth"] = depth;
  return out;
}

std::string limit_set_csv(const LimitSetSample& s, const RepresentationSpec& rep) {
  int n = s.ambient;
  int d = s.points.empty() ? 1 : s.points.front().attract.dim();
  std::string csv = "index,word,length";
  for (int c = 0; c < d; ++c)
    for (int i = 0; i < n; ++i)
      csv += ",b" + std::to_string(c) + "_" + std::to_string(i);
  csv += "\n";
  for (std::size_t idx = 0; idx < s.points.size(); ++idx) {
    const LimitPoint& p = s.points[idx];
    csv += std::to_string(idx) + "," + p.word.text(rep) + "," +
           std::to_string(p.word.length());
    for (int c = 0; c < d; ++c)
      for (int i = 0; i < n; ++i) csv += "," + double_text(p.attract.basis()(i, c));
    csv += "\n";
  }
  return csv;
}

Json membership_json(const MembershipReport& r) {
  Json out;
  out["member"] = r.member;
  out["witness"] = r.witness;
  out["incidence_count"] = r.incidence_count;
  return out;
}

Json domain_report_json(const DomainSampleReport& r) {
  Json out;
  out["trials"] = r.trials;
  out["hits"] = r.hits;
  out["fraction"] = r.fraction;
  out["seed"] = r.seed;
  out["thickening"] = r.thickening;
  out["sample_size"] = r.sample_size;
  out["sample_depth"] = r.sample_depth;
  out["example_member"] =
      r.example_member ? subspace_json(*r.example_member) : Json();
  out["example_non_member"] =
      r.example_non_member ? subspace_json(*r.example_non_member) : Json();
  return out;
}

std::string domain_report_csv(const DomainSampleReport& r) {
  std::string csv = "trials,hits,fraction,seed,thickening,sample_size,sample_depth\n";
  csv += std::to_string(r.trials) + "," + std::to_string(r.hits) + "," +
         double_text(r.fraction) + "," + std::to_string(r.seed) + "," +
         double_text(r.thickening) + "," + std::to_string(r.sample_size) + "," +
         std::to_string(r.sample_depth) + "\n";
  return csv;
}

Json equivariance_json(const EquivarianceReport& r, const RepresentationSpec& rep,
                       const std::vector<ReducedWord>& words) {
  Json out;
  out["baseline"] = r.baseline;
  out["violations"] = r.violations;
  Json verdicts = Json::array();
  for (char v : r.verdicts) verdicts.push_back(v != 0);
  out["verdicts"] = std::move(verdicts);
  out["violating_words"] = r.violating_words;
  Json texts = Json::array();
  for (const ReducedWord& w : words) texts.push_back(w.text(rep));
  out["words"] = std::move(texts);
  return out;
}

}  // namespace anosov
