// The anosov command line: each pipeline is a subcommand that prints its
// JSON artifact to stdout and, given --out, writes the JSON and CSV files
// there.  All computation goes through the C API; this file only parses
// flags, moves file contents, and maps status codes to process exits.
//
// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "anosov_c.h"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;

struct CommonOpts {
  std::string out;
  std::string format = "both";
  std::optional<unsigned long long> seed;
  std::optional<double> tol;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out, "Directory for the JSON/CSV artifacts");
  cmd->add_option("--format", opts.format, "Artifacts to write under --out")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  cmd->add_option("--seed", opts.seed, "Seed for stochastic draws");
  cmd->add_option("--tol", opts.tol, "Tolerance override")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", opts.threads, "Worker cap")
      ->check(CLI::PositiveNumber);
}

// The command-level configuration echoed into every artifact.
json common_config(const CommonOpts& opts) {
  json config = json::object();
  if (!opts.out.empty()) config["out"] = opts.out;
  config["format"] = opts.format;
  config["threads"] = opts.threads;
  return config;
}

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << text;
  return bool(out);
}

// Prints the JSON artifact and writes the requested files; the CSV is only
// ever written to --out since stdout carries the canonical JSON.
int deliver(const CommonOpts& opts, const std::string& name, char* json_text,
            char* csv_text) {
  int status = 0;
  if (json_text != nullptr) std::fputs(json_text, stdout);
  if (!opts.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(opts.out, ec);
    bool want_json = opts.format != "csv";
    bool want_csv = opts.format != "json" && csv_text != nullptr;
    if (want_json && json_text != nullptr &&
        !write_file(opts.out + "/" + name + ".json", json_text)) {
      std::fprintf(stderr, "error: cannot write %s/%s.json\n", opts.out.c_str(),
                   name.c_str());
      status = kExitValidation;
    }
    if (want_csv && !write_file(opts.out + "/" + name + ".csv", csv_text)) {
      std::fprintf(stderr, "error: cannot write %s/%s.csv\n", opts.out.c_str(),
                   name.c_str());
      status = kExitValidation;
    }
  }
  anosov_free_string(json_text);
  anosov_free_string(csv_text);
  return status;
}

int report_failure(int status) {
  std::fprintf(stderr, "error: %s\n", anosov_last_error());
  return anosov_exit_code(status);
}

// Loads the representation file, optionally lifting SL(2,R) input through
// the adjoint action into O(1,2).
int load_rep(const std::string& path, bool adjoint, anosov_rep** out) {
  std::string text;
  if (!read_file(path, text)) {
    std::fprintf(stderr, "error: cannot read %s\n", path.c_str());
    return kExitValidation;
  }
  anosov_rep* rep = nullptr;
  int status = anosov_rep_parse(text.c_str(), &rep);
  if (status != 0) return report_failure(status);
  if (adjoint) {
    anosov_rep* lifted = nullptr;
    status = anosov_rep_adjoint_o12(rep, &lifted);
    anosov_rep_free(rep);
    if (status != 0) return report_failure(status);
    rep = lifted;
  }
  *out = rep;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cartan projections, Weyl combinatorics, limit sets, and "
               "domain sampling for matrix representations of free groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", anosov_version());

  int exit_status = 0;

  // weyl
  {
    auto* cmd = app.add_subcommand("weyl", "Root system and Weyl group dump");
    auto opts = std::make_shared<CommonOpts>();
    auto family = std::make_shared<std::string>();
    auto rank = std::make_shared<int>(0);
    cmd->add_option("--family", *family, "Root system family (A, B, C, D)")
        ->required();
    cmd->add_option("--rank", *rank, "Root system rank")->required();
    add_common(cmd, *opts);
    cmd->callback([=, &exit_status] {
      json config = common_config(*opts);
      char* text = nullptr;
      int status =
          anosov_weyl_json(family->c_str(), *rank, config.dump().c_str(), &text);
      exit_status = status != 0 ? report_failure(status)
                                : deliver(*opts, "weyl", text, nullptr);
    });
  }

  // sphi
  {
    auto* cmd = app.add_subcommand(
        "sphi", "Module split, S_phi set, and nonemptiness certificate");
    auto opts = std::make_shared<CommonOpts>();
    auto module_name = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto k = std::make_shared<int>(0);
    auto vcd = std::make_shared<int>(1);
    cmd->add_option("--module", *module_name, "Module family tag")->required();
    cmd->add_option("--n", *n, "Standard module dimension")->required();
    cmd->add_option("--k", *k, "Wedge degree where applicable");
    cmd->add_option("--vcd", *vcd, "Virtual cohomological dimension");
    add_common(cmd, *opts);
    cmd->callback([=, &exit_status] {
      json config = common_config(*opts);
      char* text = nullptr;
      int status = anosov_sphi_json(module_name->c_str(), *n, *k, *vcd,
                                    config.dump().c_str(), &text);
      exit_status = status != 0 ? report_failure(status)
                                : deliver(*opts, "sphi", text, nullptr);
    });
  }

  // scan
  {
    auto* cmd = app.add_subcommand(
        "scan", "Divergence scan of root functionals over reduced words");
    auto opts = std::make_shared<CommonOpts>();
    auto rep_file = std::make_shared<std::string>();
    auto length = std::make_shared<int>(8);
    auto slope_min = std::make_shared<double>(0.05);
    cmd->add_option("--rep", *rep_file, "Representation file")->required();
    cmd->add_option("-L,--length", *length, "Maximum word length");
    cmd->add_option("--slope-min", *slope_min, "PASS threshold for the slope");
    add_common(cmd, *opts);
    cmd->callback([=, &exit_status] {
      anosov_rep* rep = nullptr;
      exit_status = load_rep(*rep_file, false, &rep);
      if (exit_status != 0) return;
      json config = common_config(*opts);
      config["rep_file"] = *rep_file;
      char* text = nullptr;
      char* csv = nullptr;
      int status = anosov_scan_json(rep, *length, *slope_min,
                                    config.dump().c_str(), &text, &csv);
      anosov_rep_free(rep);
      exit_status = status != 0 ? report_failure(status)
                                : deliver(*opts, "scan", text, csv);
    });
  }

  // qi
  {
    auto* cmd = app.add_subcommand(
        "qi", "Quasi-isometry envelope constants over the word scan");
    auto opts = std::make_shared<CommonOpts>();
    auto rep_file = std::make_shared<std::string>();
    auto length = std::make_shared<int>(10);
    auto slope_min = std::make_shared<double>(0.05);
    cmd->add_option("--rep", *rep_file, "Representation file")->required();
    cmd->add_option("-L,--length", *length, "Maximum word length");
    cmd->add_option("--slope-min", *slope_min, "FAIL threshold for the lower envelope");
    add_common(cmd, *opts);
    cmd->callback([=, &exit_status] {
      anosov_rep* rep = nullptr;
      exit_status = load_rep(*rep_file, false, &rep);
      if (exit_status != 0) return;
      json config = common_config(*opts);
      config["rep_file"] = *rep_file;
      char* text = nullptr;
      int status =
          anosov_qi_json(rep, *length, *slope_min, config.dump().c_str(), &text);
      anosov_rep_free(rep);
      exit_status = status != 0 ? report_failure(status)
                                : deliver(*opts, "qi", text, nullptr);
    });
  }

  // prox
  {
    auto* cmd = app.add_subcommand(
        "prox", "Proximality data for a single matrix");
    auto opts = std::make_shared<CommonOpts>();
    auto matrix_file = std::make_shared<std::string>();
    auto flag_type = std::make_shared<std::string>("line");
    cmd->add_option("--matrix", *matrix_file,
                    "JSON file with the matrix (and an optional form)")
        ->required();
    cmd->add_option("--flag-type", *flag_type, "line or maximal_isotropic");
    add_common(cmd, *opts);
    cmd->callback([=, &exit_status] {
      std::string text;
      if (!read_file(*matrix_file, text)) {
        std::fprintf(stderr, "error: cannot read %s\n", matrix_file->c_str());
        exit_status = kExitValidation;
        return;
      }
      json config = common_config(*opts);
      config["matrix_file"] = *matrix_file;
      char* out = nullptr;
      int status = anosov_prox_json(text.c_str(), flag_type->c_str(),
                                    config.dump().c_str(), &out);
      exit_status = status != 0 ? report_failure(status)
                                : deliver(*opts, "prox", out, nullptr);
    });
  }

  // limitset
  {
    auto* cmd = app.add_subcommand(
        "limitset", "Attracting fixed points of all short reduced words");
    auto opts = std::make_shared<CommonOpts>();
    auto rep_file = std::make_shared<std::string>();
    auto flag_type = std::make_shared<std::string>("line");
    auto length = std::make_shared<int>(6);
    auto adjoint = std::make_shared<bool>(false);
    cmd->add_option("--rep", *rep_file, "Representation file")->required();
    cmd->add_option("--flag-type", *flag_type, "line or maximal_isotropic");
    cmd->add_option("-L,--length", *length, "Maximum word length");
    cmd->add_flag("--adjoint", *adjoint, "Lift SL(2,R) input into O(1,2) first");
    add_common(cmd, *opts);
    cmd->callback([=, &exit_status] {
      anosov_rep* rep = nullptr;
      exit_status = load_rep(*rep_file, *adjoint, &rep);
      if (exit_status != 0) return;
      json config = common_config(*opts);
      config["rep_file"] = *rep_file;
      config["adjoint"] = *adjoint;
      char* text = nullptr;
      char* csv = nullptr;
      int status = anosov_limitset_json(rep, flag_type->c_str(), *length,
                                        config.dump().c_str(), &text, &csv);
      anosov_rep_free(rep);
      exit_status = status != 0 ? report_failure(status)
                                : deliver(*opts, "limitset", text, csv);
    });
  }

  // domain
  {
    auto* cmd = app.add_subcommand(
        "domain",
        "Monte-Carlo domain fraction and equivariance summary for a sampled "
        "limit set");
    auto opts = std::make_shared<CommonOpts>();
    auto rep_file = std::make_shared<std::string>();
    auto flag_type = std::make_shared<std::string>("line");
    auto length = std::make_shared<int>(6);
    auto trials = std::make_shared<int>(10000);
    auto words = std::make_shared<int>(20);
    auto adjoint = std::make_shared<bool>(false);
    cmd->add_option("--rep", *rep_file, "Representation file")->required();
    cmd->add_option("--flag-type", *flag_type, "line or maximal_isotropic");
    cmd->add_option("-L,--length", *length, "Maximum word length");
    cmd->add_option("--trials", *trials, "Monte-Carlo draw count");
    cmd->add_option("--words", *words, "Equivariance word count");
    cmd->add_flag("--adjoint", *adjoint, "Lift SL(2,R) input into O(1,2) first");
    add_common(cmd, *opts);
    // The draw sequence depends on the seed, so it cannot be defaulted.
    cmd->callback([=, &exit_status] {
      if (!opts->seed) {
        std::fprintf(stderr, "error: domain is stochastic; --seed is required\n");
        exit_status = kExitValidation;
        return;
      }
      anosov_rep* rep = nullptr;
      exit_status = load_rep(*rep_file, *adjoint, &rep);
      if (exit_status != 0) return;
      double thickening = opts->tol.value_or(0.02);
      json config = common_config(*opts);
      config["rep_file"] = *rep_file;
      config["adjoint"] = *adjoint;
      char* text = nullptr;
      char* csv = nullptr;
      int status = anosov_domain_json(rep, flag_type->c_str(), *length, *trials,
                                      *opts->seed, thickening, *words,
                                      config.dump().c_str(), &text, &csv);
      anosov_rep_free(rep);
      exit_status = status != 0 ? report_failure(status)
                                : deliver(*opts, "domain", text, csv);
    });
  }

  // codim
  {
    auto* cmd = app.add_subcommand(
        "codim", "Codimension excess per classical family, or the Schubert "
                 "minimum with --schubert");
    auto opts = std::make_shared<CommonOpts>();
    auto family = std::make_shared<std::string>();
    auto p = std::make_shared<int>(0);
    auto q = std::make_shared<int>(0);
    auto vcd = std::make_shared<int>(1);
    auto schubert = std::make_shared<bool>(false);
    auto n = std::make_shared<int>(0);
    auto k = std::make_shared<int>(0);
    cmd->add_option("--family", *family, "Group family tag");
    cmd->add_option("--p", *p, "p, or the matrix size for one-parameter families");
    cmd->add_option("--q", *q, "q for the (p, q) families");
    cmd->add_option("--vcd", *vcd, "Virtual cohomological dimension");
    cmd->add_flag("--schubert", *schubert, "Minimize the Schubert codimension instead");
    cmd->add_option("--n", *n, "Ambient dimension for --schubert");
    cmd->add_option("--k", *k, "Subspace dimension for --schubert");
    add_common(cmd, *opts);
    cmd->callback([=, &exit_status] {
      json config = common_config(*opts);
      char* text = nullptr;
      int status;
      if (*schubert) {
        status = anosov_schubert_json(*n, *k, config.dump().c_str(), &text);
      } else if (family->empty()) {
        std::fprintf(stderr, "error: --family is required without --schubert\n");
        exit_status = kExitValidation;
        return;
      } else {
        status = anosov_codim_json(family->c_str(), *p, *q, *vcd,
                                   config.dump().c_str(), &text);
      }
      exit_status = status != 0 ? report_failure(status)
                                : deliver(*opts, "codim", text, nullptr);
    });
  }

  // signature
  {
    auto* cmd = app.add_subcommand(
        "signature", "Signature of the invariant form on the zero-weight space "
                     "of the two-form module");
    auto opts = std::make_shared<CommonOpts>();
    auto p = std::make_shared<int>(0);
    auto q = std::make_shared<int>(0);
    cmd->add_option("--p", *p, "Positive index of the underlying form")->required();
    cmd->add_option("--q", *q, "Negative index of the underlying form")->required();
    add_common(cmd, *opts);
    cmd->callback([=, &exit_status] {
      json config = common_config(*opts);
      char* text = nullptr;
      int status = anosov_signature_json(*p, *q, config.dump().c_str(), &text);
      exit_status = status != 0 ? report_failure(status)
                                : deliver(*opts, "signature", text, nullptr);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  return exit_status;
}
