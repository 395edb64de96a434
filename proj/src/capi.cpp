// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.
#include "anosov_c.h"

#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "anosov/domains.hpp"
#include "anosov/dynamics.hpp"
#include "anosov/errors.hpp"
#include "anosov/json_io.hpp"
#include "anosov/lie.hpp"
#include "anosov/modules.hpp"
#include "anosov/numlin.hpp"
#include "anosov/version.hpp"

struct anosov_rep {
  anosov::RepresentationSpec spec;
};

namespace {

using anosov::Json;

std::string& last_error_slot() {
  thread_local std::string message;
  return message;
}

char* heap_copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs the body, converting exceptions into stable codes and stashing the
// message for anosov_last_error.
template <typename F>
int guarded(F&& body) {
  last_error_slot().clear();
  try {
    body();
    return 0;
  } catch (const anosov::error& e) {
    last_error_slot() = e.what();
    return static_cast<int>(e.code());
  } catch (const Json::exception& e) {
    last_error_slot() = e.what();
    return static_cast<int>(anosov::errc::parse_error);
  } catch (const std::exception& e) {
    last_error_slot() = e.what();
    return static_cast<int>(anosov::errc::invalid_params);
  }
}

void require(bool ok, const char* what) {
  if (!ok) anosov::fail(anosov::errc::invalid_params, what);
}

Json parse_config(const char* config_json) {
  if (config_json == nullptr || *config_json == '\0') return Json::object();
  Json j = Json::parse(config_json);
  require(j.is_object(), "config_json must be a JSON object");
  return j;
}

void emit(char** out, const std::string& text) {
  require(out != nullptr, "output pointer is null");
  *out = heap_copy(text);
  require(*out != nullptr, "allocation failed");
}

// Distinct pseudo-random reduced words of length 1..4, deterministic in the
// seed; used as the push set for the equivariance summary.
std::vector<anosov::ReducedWord> pseudo_random_words(int k, int count,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  std::uniform_int_distribution<int> len_dist(1, 4);
  std::uniform_int_distribution<int> first_dist(0, 2 * k - 1);
  std::uniform_int_distribution<int> next_dist(0, 2 * k - 2);
  auto nth_letter = [](int id) {
    int gen = id / 2 + 1;
    return (id % 2) ? -gen : gen;
  };
  std::vector<anosov::ReducedWord> words;
  int attempts = 0;
  while (static_cast<int>(words.size()) < count && attempts < 100 * count) {
    ++attempts;
    anosov::ReducedWord w;
    int len = len_dist(rng);
    w.letters.push_back(nth_letter(first_dist(rng)));
    while (w.length() < len) {
      // Draw over the 2k-1 letters that do not cancel the previous one.
      int prev = w.letters.back();
      int forbidden = 2 * (std::abs(prev) - 1) + (prev > 0 ? 1 : 0);
      int id = next_dist(rng);
      if (id >= forbidden) ++id;
      w.letters.push_back(nth_letter(id));
    }
    bool seen = false;
    for (const anosov::ReducedWord& u : words)
      if (u.letters == w.letters) seen = true;
    if (!seen) words.push_back(std::move(w));
  }
  return words;
}

// A fixed query for the equivariance summary: a random point of the same
// flag variety, rejected until it clears the sample by a safe margin, so an
// exactly invariant sample keeps every pushed verdict at the baseline.
anosov::Subspace pick_query(const anosov::LimitSetSample& sample,
                            const anosov::BilinearForm* form, int dim,
                            std::uint64_t seed, double margin) {
  std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc909ULL);
  bool isotropic = form != nullptr &&
                   !(dim == 1 && form->kind() == anosov::FormKind::antisymmetric);
  anosov::Subspace x;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    x = isotropic ? anosov::random_isotropic_point(*form, dim, rng)
                  : anosov::random_grassmannian_point(sample.ambient, dim, rng);
    if (!anosov::k_membership(x, sample, margin).member) return x;
  }
  return x;
}

const anosov::RepresentationSpec& spec_of(const anosov_rep* rep) {
  require(rep != nullptr, "representation handle is null");
  return rep->spec;
}

}  // namespace

extern "C" {

const char* anosov_version(void) { return anosov::kVersion; }

const char* anosov_last_error(void) { return last_error_slot().c_str(); }

int anosov_exit_code(int status) {
  return anosov::error_category(static_cast<anosov::errc>(status));
}

void anosov_free_string(char* text) { std::free(text); }

int anosov_rep_parse(const char* json_text, anosov_rep** out_rep) {
  return guarded([&] {
    require(json_text != nullptr, "representation text is null");
    require(out_rep != nullptr, "output pointer is null");
    auto holder = new anosov_rep;
    try {
      holder->spec = anosov::representation_from_json(Json::parse(json_text));
    } catch (...) {
      delete holder;
      throw;
    }
    *out_rep = holder;
  });
}

void anosov_rep_free(anosov_rep* rep) { delete rep; }

int anosov_rep_adjoint_o12(const anosov_rep* rep, anosov_rep** out_rep) {
  return guarded([&] {
    require(out_rep != nullptr, "output pointer is null");
    auto holder = new anosov_rep;
    try {
      holder->spec = anosov::adjoint_o12(spec_of(rep));
    } catch (...) {
      delete holder;
      throw;
    }
    *out_rep = holder;
  });
}

int anosov_rep_describe(const anosov_rep* rep, char** out_json) {
  return guarded([&] {
    emit(out_json, anosov::dump_json(anosov::representation_json(spec_of(rep))));
  });
}

int anosov_weyl_json(const char* family, int rank, const char* config_json,
                     char** out_json) {
  return guarded([&] {
    require(family != nullptr, "family is null");
    anosov::RootSystemData rs =
        anosov::build_root_system(anosov::root_family_from_name(family), rank);
    Json config = parse_config(config_json);
    config["family"] = family;
    config["rank"] = rank;
    emit(out_json, anosov::dump_json(anosov::envelope(
                       "weyl", config, anosov::weyl_report_json(rs))));
  });
}

int anosov_sphi_json(const char* module, int n, int k, int vcd,
                     const char* config_json, char** out_json) {
  return guarded([&] {
    require(module != nullptr, "module is null");
    anosov::ModuleFamily fam =
        anosov::module_family(anosov::module_tag_from_name(module), n, k);
    anosov::WeightMultiset ms = anosov::weight_multiset(fam);
    anosov::SplitReport split = anosov::split_by_order(ms, fam.rs);
    anosov::SPhiSet sphi = anosov::s_phi(fam, fam.rs);
    anosov::CertificateReport cert =
        anosov::nonemptiness_certificate(sphi, fam.rs, vcd);
    Json config = parse_config(config_json);
    config["module"] = module;
    config["n"] = n;
    config["k"] = k;
    config["vcd"] = vcd;
    emit(out_json,
         anosov::dump_json(anosov::envelope(
             "sphi", config, anosov::sphi_report_json(fam, split, sphi, cert))));
  });
}

int anosov_scan_json(const anosov_rep* rep, int max_length, double slope_min,
                     const char* config_json, char** out_json, char** out_csv) {
  return guarded([&] {
    const anosov::RepresentationSpec& spec = spec_of(rep);
    anosov::DivergenceScanReport report = anosov::divergence_scan(
        spec, anosov::default_root_functionals(spec), max_length, slope_min);
    Json config = parse_config(config_json);
    config["L"] = max_length;
    config["slope_min"] = slope_min;
    emit(out_json, anosov::dump_json(anosov::envelope(
                       "scan", config, anosov::scan_report_json(report))));
    if (out_csv != nullptr) emit(out_csv, anosov::scan_report_csv(report));
  });
}

int anosov_qi_json(const anosov_rep* rep, int max_length, double slope_min,
                   const char* config_json, char** out_json) {
  return guarded([&] {
    anosov::QiReport report =
        anosov::qi_constants(spec_of(rep), max_length, slope_min);
    Json config = parse_config(config_json);
    config["L"] = max_length;
    config["slope_min"] = slope_min;
    emit(out_json, anosov::dump_json(anosov::envelope(
                       "qi", config, anosov::qi_report_json(report))));
  });
}

int anosov_prox_json(const char* input_json, const char* flag_type,
                     const char* config_json, char** out_json) {
  return guarded([&] {
    require(input_json != nullptr, "input is null");
    require(flag_type != nullptr, "flag type is null");
    Json j = Json::parse(input_json);
    anosov::Matrix g;
    anosov::BilinearForm form;
    bool have_form = false;
    if (j.is_object()) {
      require(j.contains("matrix"), "expected a \"matrix\" field");
      g = anosov::matrix_from_json(j.at("matrix"));
      if (j.contains("form") && !j.at("form").is_null()) {
        form = anosov::BilinearForm::from_matrix(anosov::matrix_from_json(j.at("form")));
        have_form = true;
      }
    } else {
      g = anosov::matrix_from_json(j);
    }
    anosov::FlagType type = anosov::flag_type_from_name(flag_type);
    anosov::ProximalityReport report =
        anosov::proximal_data(g, type, have_form ? &form : nullptr);
    Json config = parse_config(config_json);
    config["flag_type"] = flag_type;
    emit(out_json, anosov::dump_json(anosov::envelope(
                       "prox", config, anosov::proximality_json(report))));
  });
}

int anosov_limitset_json(const anosov_rep* rep, const char* flag_type,
                         int max_length, const char* config_json,
                         char** out_json, char** out_csv) {
  return guarded([&] {
    require(flag_type != nullptr, "flag type is null");
    const anosov::RepresentationSpec& spec = spec_of(rep);
    anosov::LimitSetSample sample = anosov::limit_set_sample(
        spec, anosov::flag_type_from_name(flag_type), max_length);
    Json config = parse_config(config_json);
    config["flag_type"] = flag_type;
    config["L"] = max_length;
    emit(out_json, anosov::dump_json(anosov::envelope(
                       "limitset", config, anosov::limit_set_json(sample, spec))));
    if (out_csv != nullptr) emit(out_csv, anosov::limit_set_csv(sample, spec));
  });
}

int anosov_domain_json(const anosov_rep* rep, const char* flag_type,
                       int max_length, int trials, unsigned long long seed,
                       double thickening, int equivariance_words,
                       const char* config_json, char** out_json,
                       char** out_csv) {
  return guarded([&] {
    require(flag_type != nullptr, "flag type is null");
    require(equivariance_words >= 0, "equivariance word count is negative");
    const anosov::RepresentationSpec& spec = spec_of(rep);
    anosov::FlagType type = anosov::flag_type_from_name(flag_type);
    anosov::LimitSetSample sample = anosov::limit_set_sample(spec, type, max_length);

    anosov::BilinearForm form;
    const anosov::BilinearForm* form_ptr = nullptr;
    if (spec.has_form) {
      form = anosov::BilinearForm::from_matrix(spec.form_matrix);
      form_ptr = &form;
    }
    anosov::DomainSampleReport dom =
        anosov::domain_sample(sample, form_ptr, trials, seed, thickening);

    int k = static_cast<int>(spec.generators.size());
    std::vector<anosov::ReducedWord> words =
        pseudo_random_words(k, equivariance_words, seed);
    int query_dim = sample.points.empty() ? 1 : sample.points.front().attract.dim();
    anosov::Subspace query =
        pick_query(sample, form_ptr, query_dim, seed, std::max(thickening, 0.05));
    anosov::EquivarianceReport eq =
        anosov::equivariance_check(sample, spec, query, words);

    Json report;
    report["limit_set"] = {{"flag_type", anosov::flag_type_name(type)},
                           {"count", static_cast<int>(sample.points.size())},
                           {"depth", dom.sample_depth}};
    report["domain"] = anosov::domain_report_json(dom);
    report["equivariance"] = anosov::equivariance_json(eq, spec, words);
    report["query"] = anosov::subspace_json(query);

    Json config = parse_config(config_json);
    config["flag_type"] = flag_type;
    config["L"] = max_length;
    config["trials"] = trials;
    config["seed"] = static_cast<std::uint64_t>(seed);
    config["thickening"] = thickening;
    config["equivariance_words"] = equivariance_words;
    emit(out_json, anosov::dump_json(anosov::envelope("domain", config, report)));
    if (out_csv != nullptr) emit(out_csv, anosov::limit_set_csv(sample, spec));
  });
}

int anosov_codim_json(const char* family, int p_or_size, int q, int vcd,
                      const char* config_json, char** out_json) {
  return guarded([&] {
    require(family != nullptr, "family is null");
    anosov::GroupFamily fam = anosov::group_family_from_name(family);
    int delta = anosov::codim_delta(fam, p_or_size, q, vcd);
    Json report;
    report["family"] = family;
    report["p_or_size"] = p_or_size;
    report["q"] = q;
    report["vcd"] = vcd;
    report["delta"] = delta;
    report["empty_obstruction"] = delta <= 0;
    Json config = parse_config(config_json);
    config["family"] = family;
    config["p_or_size"] = p_or_size;
    config["q"] = q;
    config["vcd"] = vcd;
    emit(out_json, anosov::dump_json(anosov::envelope("codim", config, report)));
  });
}

int anosov_schubert_json(int n, int k, const char* config_json,
                         char** out_json) {
  return guarded([&] {
    anosov::SchubertMin m = anosov::schubert_codim_min(n, k);
    Json report;
    report["n"] = n;
    report["k"] = k;
    report["value"] = m.value;
    report["s"] = m.s;
    report["u"] = m.u;
    Json config = parse_config(config_json);
    config["n"] = n;
    config["k"] = k;
    emit(out_json, anosov::dump_json(anosov::envelope("schubert", config, report)));
  });
}

int anosov_signature_json(int p, int q, const char* config_json,
                          char** out_json) {
  return guarded([&] {
    anosov::V0Signature sig = anosov::v0_signature(p, q);
    Json report;
    report["p"] = p;
    report["q"] = q;
    report["signature"] = {{"positive", sig.positive},
                           {"negative", sig.negative},
                           {"null", sig.null}};
    Json config = parse_config(config_json);
    config["p"] = p;
    config["q"] = q;
    emit(out_json, anosov::dump_json(anosov::envelope("signature", config, report)));
  });
}

}  // extern "C"
