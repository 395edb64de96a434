// Weight multisets of the concrete module families, the order-driven
// splitting into positive/zero/negative parts, the invariant form on the
// zero-weight space of the two-form modules, and the S_phi sets with their
// nonemptiness certificates.
//
// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.
#pragma once

#include <string>
#include <vector>

#include "anosov/lie.hpp"
#include "anosov/rational.hpp"

namespace anosov {

enum class ModuleTag {
  Standard,
  WedgeK,
  EndStd,
  EndWedgeK,
  WedgeMiddle,
  WedgeTwoOrth,
};

const char* module_tag_name(ModuleTag t);
ModuleTag module_tag_from_name(const std::string& s);

// A module family instance together with the root system it is a module
// over.  n is the dimension of the underlying standard module (so n = rank+1
// for type A, 2*rank or 2*rank+1 for the split forms); k indexes wedge
// degrees; p, q are the two-orthogonal signature parameters.
struct ModuleFamily {
  ModuleTag tag = ModuleTag::Standard;
  RootSystemData rs;
  int n = 0;
  int k = 0;
  int p = 0;
  int q = 0;

  std::string name() const;
};

// Type-A instance over SL(n); n, k as applicable.
ModuleFamily module_family(ModuleTag tag, int n, int k = 0);

// Instance over an arbitrary root system; the standard dimension is derived
// from the family and rank.
ModuleFamily module_family_for(const RootSystemData& rs, ModuleTag tag,
                               int k = 0);

// Lambda^2 R^{p+q} over the split orthogonal group; root system B_p for
// q > p, D_p for q = p.
ModuleFamily wedge_two_orth(int p, int q);

struct WeightEntry {
  RatVec weight;
  int multiplicity = 0;
};

enum class FormParity { symmetric, antisymmetric };

struct WeightMultiset {
  std::vector<WeightEntry> entries;
  // Parity of the invariant bilinear form, for the families that carry one.
  bool has_form = false;
  FormParity parity = FormParity::symmetric;

  int total_dimension() const;
};

struct SplitReport {
  int dim_positive = 0;
  int dim_zero = 0;
  int dim_negative = 0;
  RatVec highest_weight;
  bool has_form = false;
  FormParity parity = FormParity::symmetric;
};

struct V0Signature {
  int positive = 0;
  int negative = 0;
  int null = 0;
};

struct SPhiSet {
  std::vector<WeylElement> members;
  RatVec highest_weight;
  std::vector<int> theta;  // simple roots orthogonal to the highest weight
};

struct CertificateReport {
  bool certified = false;
  bool not_applicable = false;
  std::vector<int> failing_alphas;  // simple indices with w0 s_a in S_phi
};

// Exact weights with multiplicities; rejects parameter combinations whose
// module is not self-dual (the split into positive and negative parts must
// balance).
WeightMultiset weight_multiset(const ModuleFamily& fam);

SplitReport split_by_order(const WeightMultiset& ms, const RootSystemData& rs);

// Signature of the invariant form restricted to the zero-weight space of
// Lambda^2 R^{p+q}; computed directly from the split basis.
V0Signature v0_signature(int p, int q);

SPhiSet s_phi(const ModuleFamily& fam, const RootSystemData& rs);

CertificateReport nonemptiness_certificate(const SPhiSet& sphi,
                                           const RootSystemData& rs, int vcd);

// The module instances exercised by the exhaustive family sweeps: every
// self-dual instance with wedge degree <= 3 over the given root system.
std::vector<ModuleFamily> implemented_families(const RootSystemData& rs);

}  // namespace anosov
