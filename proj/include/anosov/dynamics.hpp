// Free-group words and matrix representations: Schottky and principal
// constructors with their certificates, divergence and quasi-isometry scans
// over all reduced words, proximality measurements, and limit-set sampling.
//
// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "anosov/numlin.hpp"

namespace anosov {

enum class RepFamily { SLnR, SpR, Opq };

const char* rep_family_name(RepFamily f);
RepFamily rep_family_from_name(const std::string& s);

struct GeneratorSpec {
  std::string name;
  Matrix matrix;
  Matrix inverse;
};

struct RepresentationSpec {
  RepFamily family = RepFamily::SLnR;
  int n = 0;
  int p = 0;  // Opq only
  int q = 0;
  std::vector<GeneratorSpec> generators;
  bool has_form = false;
  Matrix form_matrix;
};

// Checks sizes, unimodularity, inverse consistency, and form preservation.
void validate_representation(const RepresentationSpec& rep);

// Fills in any missing generator inverses, then validates.
void complete_representation(RepresentationSpec& rep);

// Letters are signed generator indices: +i is generator i (1-based), -i its
// inverse.  The empty word is the identity.
struct ReducedWord {
  std::vector<int> letters;

  int length() const { return static_cast<int>(letters.size()); }
  ReducedWord inverse() const;
  std::string text(const RepresentationSpec& rep) const;
};

std::uint64_t free_group_word_count(int k, int L);

// Every reduced word of length <= L exactly once, in length-then-lex order
// with a < a^{-1} < b < b^{-1} < ...; includes the identity.
std::vector<ReducedWord> enumerate_reduced_words(int k, int L);

Matrix evaluate_word(const RepresentationSpec& rep, const ReducedWord& w);

// Calls back once per nontrivial reduced word with the word, its matrix, and
// its Cartan projection (computed through exterior powers, so long words stay
// accurate).
void scan_words(
    const RepresentationSpec& rep, int L,
    const std::function<void(const ReducedWord&, const Matrix&, const Vector&)>&
        cb);

struct SchottkyData {
  RepresentationSpec rep;
  std::vector<Subspace> attract;  // one line per generator
  std::vector<Subspace> repel;
  double disk_radius = 0.0;
  double min_center_separation = 0.0;
  double worst_image_distance = 0.0;
};

// Generator i is R(theta_i) diag(e^t, e^{-t}) R(theta_i)^{-1}; fails with
// PingPongFailed unless the 2k endpoint disks of radius 0.1 are pairwise
// disjoint and every letter maps the complement of its repelling disk into
// its attracting disk (verified on a 10^4-point grid of the circle).
SchottkyData schottky_sl2(int k, double t, const std::vector<double>& angles);

// Symmetric-power image of a 2x2 matrix on degree-(n-1) binary forms in the
// monomial basis x^{n-1}, x^{n-2}y, ..., y^{n-1}.
Matrix sym_power(const Matrix& g, int n);

// The SL(2)-invariant pairing on that basis: antidiagonal entries
// (-1)^a / C(n-1, a); symmetric for odd n, antisymmetric for even n.
Matrix sym_power_form(int n);

// Lifts every generator through sym_power; attaches the invariant form.
RepresentationSpec principal_embed(const RepresentationSpec& rep, int n);

// Adjoint action of SL(2,R) on its Lie algebra in a basis where the
// invariant form is diag(1, -1, -1); lands in O(1,2).
RepresentationSpec adjoint_o12(const RepresentationSpec& rep);

struct RootFunctional {
  std::string label;
  Vector coeffs;  // applied to the Cartan projection
};

std::vector<RootFunctional> default_root_functionals(const RepresentationSpec& rep);

struct ScanSeries {
  std::string label;
  std::vector<double> min_values;   // index = length - 1
  std::vector<double> mean_values;
  std::vector<double> max_values;
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  bool pass = false;
};

struct DivergenceScanReport {
  int k = 0;
  int L = 0;
  double slope_min = 0.0;
  std::vector<std::uint64_t> word_counts;  // index = length - 1
  std::vector<ScanSeries> series;
};

inline constexpr double kDefaultSlopeMin = 0.05;

DivergenceScanReport divergence_scan(const RepresentationSpec& rep,
                                     const std::vector<RootFunctional>& roots,
                                     int L,
                                     double slope_min = kDefaultSlopeMin);

struct QiReport {
  double K_hat = 1.0;
  double C_hat = 0.0;
  bool fail = false;          // lower envelope does not grow
  double lower_slope = 0.0;   // fitted on the upper half of the range
  std::vector<double> min_norms;  // index = length - 1
  std::vector<double> max_norms;
};

// Smallest K >= 1, C >= 0 with K^{-1} l - C <= |mu| <= K l + C over the scan;
// C is minimized first, then K.
QiReport qi_constants(const RepresentationSpec& rep, int L,
                      double slope_min = kDefaultSlopeMin);

enum class FlagType { line, maximal_isotropic };

const char* flag_type_name(FlagType t);
FlagType flag_type_from_name(const std::string& s);

struct ProximalityReport {
  Subspace x_plus;   // attracting point (line or top isotropic subspace)
  Subspace x_minus;  // repelling hyperplane, or the bottom invariant subspace
  double gap = 0.0;  // log ratio at the relevant eigenvalue position
  double r = 0.0;    // sine distance from x_plus to the repelling locus
  double epsilon = 0.0;  // self-consistent contraction estimate
};

ProximalityReport proximal_data(const Matrix& g, FlagType type,
                                const BilinearForm* form = nullptr);

struct LimitPoint {
  Subspace attract;
  // Transverse partner at the same boundary point: the attracting hyperplane
  // for line type; for maximal isotropic type the attracting subspace itself,
  // since those points are tested against form complements.
  Subspace corepel;
  ReducedWord word;
};

struct LimitSetSample {
  FlagType type = FlagType::line;
  int ambient = 0;
  std::vector<LimitPoint> points;
};

inline constexpr double kDedupRadius = 1e-6;

// Attracting fixed points of every proximal word of length <= L,
// deduplicated at sine distance 1e-6, each tagged with a shortest word.
LimitSetSample limit_set_sample(const RepresentationSpec& rep, FlagType type,
                                int L);

struct TransversalityReport {
  double min_margin = 0.0;
  std::uint64_t pair_count = 0;
  std::vector<std::uint64_t> histogram;  // 20 bins over [0, 1]
};

inline constexpr double kDefaultSep = 0.05;

TransversalityReport transversality_margin(const LimitSetSample& sample,
                                           const BilinearForm* form,
                                           double sep = kDefaultSep);

}  // namespace anosov
