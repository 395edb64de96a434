// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.
#include "anosov/modules.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "anosov/errors.hpp"
#include "anosov/numlin.hpp"

namespace anosov {
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
      cur[static_cast<std::size_t>(j)] =
          cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

bool rat_less(const Rat& a, const Rat& b) { return a < b; }

bool vec_less(const RatVec& a, const RatVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (rat_less(a[i], b[i])) return true;
    if (rat_less(b[i], a[i])) return false;
  }
  return false;
}

bool vec_eq(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

int standard_dimension(const RootSystemData& rs) {
  switch (rs.family) {
    case RootFamily::A: return rs.rank + 1;
    case RootFamily::B: return 2 * rs.rank + 1;
    case RootFamily::C:
    case RootFamily::D: return 2 * rs.rank;
  }
  return 0;
}

// Standard-module weights in split order: for A the canonicalized coordinate
// functionals, for B/C/D the diagonal functionals e_1..e_r, (0,) -e_r..-e_1.
std::vector<RatVec> standard_weights(const RootSystemData& rs) {
  std::vector<RatVec> out;
  const int m = rs.ambient;
  if (rs.family == RootFamily::A) {
    for (int i = 0; i < m; ++i) {
      RatVec v(static_cast<std::size_t>(m), Rat(0));
      v[static_cast<std::size_t>(i)] = Rat(1);
      out.push_back(canonical_weight(rs, v));
    }
    return out;
  }
  for (int i = 0; i < m; ++i) {
    RatVec v(static_cast<std::size_t>(m), Rat(0));
    v[static_cast<std::size_t>(i)] = Rat(1);
    out.push_back(v);
  }
  if (rs.family == RootFamily::B)
    out.push_back(RatVec(static_cast<std::size_t>(m), Rat(0)));
  for (int i = m - 1; i >= 0; --i) {
    RatVec v(static_cast<std::size_t>(m), Rat(0));
    v[static_cast<std::size_t>(i)] = Rat(-1);
    out.push_back(v);
  }
  return out;
}

std::vector<RatVec> wedge_sums(const std::vector<RatVec>& base, int k) {
  std::vector<RatVec> out;
  const int n = static_cast<int>(base.size());
  for (const std::vector<int>& subset : k_subsets(n, k)) {
    RatVec sum(base[0].size(), Rat(0));
    for (int idx : subset) sum = sum + base[static_cast<std::size_t>(idx)];
    out.push_back(sum);
  }
  return out;
}

std::vector<RatVec> end_differences(const std::vector<RatVec>& base) {
  std::vector<RatVec> out;
  for (const RatVec& a : base)
    for (const RatVec& b : base) out.push_back(a - b);
  return out;
}

WeightMultiset collapse(std::vector<RatVec> expanded) {
  std::sort(expanded.begin(), expanded.end(), vec_less);
  WeightMultiset ms;
  for (std::size_t i = 0; i < expanded.size();) {
    std::size_t j = i;
    while (j < expanded.size() && vec_eq(expanded[i], expanded[j])) ++j;
    ms.entries.push_back({expanded[i], static_cast<int>(j - i)});
    i = j;
  }
  return ms;
}

bool is_self_dual(const WeightMultiset& ms) {
  for (const WeightEntry& e : ms.entries) {
    const RatVec neg = negated(e.weight);
    bool found = false;
    for (const WeightEntry& o : ms.entries) {
      if (o.multiplicity == e.multiplicity && vec_eq(o.weight, neg)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

void check_common_params(const ModuleFamily& fam) {
  if (fam.n < 1 || fam.n > 16)
    fail(errc::unsupported_family,
         fam.name() + ": standard dimension must be between 1 and 16");
  if ((fam.tag == ModuleTag::WedgeK || fam.tag == ModuleTag::EndWedgeK ||
       fam.tag == ModuleTag::WedgeMiddle) &&
      (fam.k < 1 || fam.k > fam.n))
    fail(errc::unsupported_family,
         fam.name() + ": wedge degree must be between 1 and n");
}

bool internal_s_phi_member(const RootSystemData& rs, const WeylElement& w,
                           const RatVec& lambda) {
  return orderA_key(rs, act_on_weight(w, lambda)).sign() > 0;
}

}  // namespace

const char* module_tag_name(ModuleTag t) {
  switch (t) {
    case ModuleTag::Standard: return "Standard";
    case ModuleTag::WedgeK: return "WedgeK";
    case ModuleTag::EndStd: return "EndStd";
    case ModuleTag::EndWedgeK: return "EndWedgeK";
    case ModuleTag::WedgeMiddle: return "WedgeMiddle";
    case ModuleTag::WedgeTwoOrth: return "WedgeTwoOrth";
  }
  return "?";
}

ModuleTag module_tag_from_name(const std::string& s) {
  if (s == "Standard") return ModuleTag::Standard;
  if (s == "WedgeK") return ModuleTag::WedgeK;
  if (s == "EndStd") return ModuleTag::EndStd;
  if (s == "EndWedgeK") return ModuleTag::EndWedgeK;
  if (s == "WedgeMiddle") return ModuleTag::WedgeMiddle;
  if (s == "WedgeTwoOrth") return ModuleTag::WedgeTwoOrth;
  fail(errc::unsupported_family, "unknown module family '" + s + "'");
}

std::string ModuleFamily::name() const {
  const std::string t = module_tag_name(tag);
  switch (tag) {
    case ModuleTag::Standard:
    case ModuleTag::EndStd:
    case ModuleTag::WedgeMiddle:
      return t + "(" + std::to_string(n) + ")";
    case ModuleTag::WedgeK:
    case ModuleTag::EndWedgeK:
      return t + "(" + std::to_string(n) + "," + std::to_string(k) + ")";
    case ModuleTag::WedgeTwoOrth:
      return t + "(" + std::to_string(p) + "," + std::to_string(q) + ")";
  }
  return t;
}

ModuleFamily module_family(ModuleTag tag, int n, int k) {
  if (tag == ModuleTag::WedgeTwoOrth)
    fail(errc::invalid_params, "WedgeTwoOrth takes (p, q), not (n, k)");
  if (n < 2) fail(errc::unsupported_family, "standard dimension must be >= 2");
  ModuleFamily fam;
  fam.tag = tag;
  fam.n = n;
  fam.k = k;
  if (tag == ModuleTag::WedgeMiddle) {
    if (n % 2 != 0)
      fail(errc::unsupported_family, "WedgeMiddle needs an even dimension");
    fam.k = n / 2;
  }
  fam.rs = build_root_system(RootFamily::A, n - 1);
  check_common_params(fam);
  return fam;
}

ModuleFamily module_family_for(const RootSystemData& rs, ModuleTag tag, int k) {
  if (tag == ModuleTag::WedgeTwoOrth)
    fail(errc::invalid_params, "WedgeTwoOrth takes (p, q); use wedge_two_orth");
  ModuleFamily fam;
  fam.tag = tag;
  fam.rs = rs;
  fam.n = standard_dimension(rs);
  fam.k = k;
  if (tag == ModuleTag::WedgeMiddle) {
    if (rs.family != RootFamily::A || fam.n % 2 != 0)
      fail(errc::unsupported_family,
           "WedgeMiddle needs type A with even dimension");
    fam.k = fam.n / 2;
  }
  check_common_params(fam);
  return fam;
}

ModuleFamily wedge_two_orth(int p, int q) {
  if (p < 1 || q < p)
    fail(errc::unsupported_family, "WedgeTwoOrth needs 1 <= p <= q");
  ModuleFamily fam;
  fam.tag = ModuleTag::WedgeTwoOrth;
  fam.p = p;
  fam.q = q;
  fam.n = p + q;
  fam.k = 2;
  fam.rs = build_root_system(q > p ? RootFamily::B : RootFamily::D, p);
  if (fam.n > 16)
    fail(errc::unsupported_family, "WedgeTwoOrth: p + q must be <= 16");
  return fam;
}

int WeightMultiset::total_dimension() const {
  int d = 0;
  for (const WeightEntry& e : entries) d += e.multiplicity;
  return d;
}

WeightMultiset weight_multiset(const ModuleFamily& fam) {
  check_common_params(fam);

  std::vector<RatVec> base;
  if (fam.tag == ModuleTag::WedgeTwoOrth) {
    // O(p, q) standard weights in split order: e_1..e_p, 0^{q-p}, -e_p..-e_1.
    const int m = fam.rs.ambient;
    for (int i = 0; i < fam.p; ++i) {
      RatVec v(static_cast<std::size_t>(m), Rat(0));
      v[static_cast<std::size_t>(i)] = Rat(1);
      base.push_back(v);
    }
    for (int a = 0; a < fam.q - fam.p; ++a)
      base.push_back(RatVec(static_cast<std::size_t>(m), Rat(0)));
    for (int i = fam.p - 1; i >= 0; --i) {
      RatVec v(static_cast<std::size_t>(m), Rat(0));
      v[static_cast<std::size_t>(i)] = Rat(-1);
      base.push_back(v);
    }
  } else {
    base = standard_weights(fam.rs);
    if (static_cast<int>(base.size()) != fam.n)
      fail(errc::rank_mismatch,
           fam.name() + ": dimension does not match the root system");
  }

  std::vector<RatVec> expanded;
  switch (fam.tag) {
    case ModuleTag::Standard:
      expanded = base;
      break;
    case ModuleTag::WedgeK:
    case ModuleTag::WedgeMiddle:
      if (binomial(fam.n, fam.k) > 2000000)
        fail(errc::too_large, fam.name() + ": weight count above the cap");
      expanded = wedge_sums(base, fam.k);
      break;
    case ModuleTag::EndStd:
      expanded = end_differences(base);
      break;
    case ModuleTag::EndWedgeK: {
      const std::uint64_t c = binomial(fam.n, fam.k);
      if (c * c > 2000000)
        fail(errc::too_large, fam.name() + ": weight count above the cap");
      expanded = end_differences(wedge_sums(base, fam.k));
      break;
    }
    case ModuleTag::WedgeTwoOrth:
      expanded = wedge_sums(base, 2);
      break;
  }

  WeightMultiset ms = collapse(std::move(expanded));
  if (!is_self_dual(ms))
    fail(errc::unsupported_family,
         fam.name() + ": not self-dual, positive and negative parts would "
                      "not balance");
  switch (fam.tag) {
    case ModuleTag::EndStd:
    case ModuleTag::EndWedgeK:
    case ModuleTag::WedgeTwoOrth:
      ms.has_form = true;
      ms.parity = FormParity::symmetric;
      break;
    case ModuleTag::WedgeMiddle:
      ms.has_form = true;
      ms.parity = (fam.k % 2 == 0) ? FormParity::symmetric
                                   : FormParity::antisymmetric;
      break;
    case ModuleTag::Standard:
    case ModuleTag::WedgeK:
      break;
  }
  return ms;
}

SplitReport split_by_order(const WeightMultiset& ms, const RootSystemData& rs) {
  SplitReport report;
  report.has_form = ms.has_form;
  report.parity = ms.parity;
  bool have_max = false;
  OrderKey max_key;
  for (const WeightEntry& e : ms.entries) {
    const OrderKey key = orderA_key(rs, e.weight);
    const int s = key.sign();
    if (s > 0) report.dim_positive += e.multiplicity;
    else if (s < 0) report.dim_negative += e.multiplicity;
    else report.dim_zero += e.multiplicity;
    if (!have_max || max_key < key) {
      max_key = key;
      report.highest_weight = e.weight;
      have_max = true;
    }
  }
  return report;
}

V0Signature v0_signature(int p, int q) {
  if (p < 1 || q <= p)
    fail(errc::invalid_params, "v0_signature needs 1 <= p < q");
  const int k = q - p;
  const int n = p + q;

  // Split basis: x_0..x_{p-1} = e_i, x_p..x_{2p-1} = f_i, then k definite
  // directions u_a.  F pairs e_i with f_i and is -1 on the u block.
  Matrix F = Matrix::Zero(n, n);
  for (int i = 0; i < p; ++i) {
    F(i, p + i) = 1.0;
    F(p + i, i) = 1.0;
  }
  for (int a = 0; a < k; ++a) F(2 * p + a, 2 * p + a) = -1.0;

  // Zero-weight basis of the wedge square: e_i ^ f_i then u_a ^ u_b (a < b).
  std::vector<std::pair<int, int>> basis;
  for (int i = 0; i < p; ++i) basis.emplace_back(i, p + i);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) basis.emplace_back(2 * p + a, 2 * p + b);

  const int d = static_cast<int>(basis.size());
  Matrix gram(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const auto [x, y] = basis[static_cast<std::size_t>(r)];
      const auto [z, w] = basis[static_cast<std::size_t>(c)];
      gram(r, c) = F(x, z) * F(y, w) - F(x, w) * F(y, z);
    }
  }

  const Signature sig = signature_of(gram);
  if (sig.null > 0)
    fail(errc::degenerate_form,
         "restriction of the form to the zero-weight space is degenerate");
  return {sig.positive, sig.negative, sig.null};
}

SPhiSet s_phi(const ModuleFamily& fam, const RootSystemData& rs) {
  if (fam.rs.family != rs.family || fam.rs.rank != rs.rank)
    fail(errc::rank_mismatch,
         fam.name() + ": module and root system disagree");
  const WeightMultiset ms = weight_multiset(fam);
  const SplitReport split = split_by_order(ms, rs);

  SPhiSet out;
  out.highest_weight = split.highest_weight;
  for (const WeylElement& w : weyl_enumerate(rs)) {
    if (internal_s_phi_member(rs, w, out.highest_weight))
      out.members.push_back(w);
  }
  for (int i = 0; i < rs.rank; ++i) {
    if (dot(out.highest_weight,
            rs.simple_roots[static_cast<std::size_t>(i)]).is_zero())
      out.theta.push_back(i);
  }
  return out;
}

CertificateReport nonemptiness_certificate(const SPhiSet& sphi,
                                           const RootSystemData& rs, int vcd) {
  if (vcd != 1 && vcd != 2)
    fail(errc::invalid_params, "certificate: vcd must be 1 or 2");

  CertificateReport report;
  const WeylElement w0 = longest_element(rs);
  const bool w0_excluded =
      !internal_s_phi_member(rs, w0, sphi.highest_weight);
  report.certified = w0_excluded;
  if (vcd == 2) {
    for (int i = 0; i < rs.rank; ++i) {
      const WeylElement ws = compose(w0, simple_reflection(rs, i));
      if (internal_s_phi_member(rs, ws, sphi.highest_weight)) {
        report.failing_alphas.push_back(i);
        report.certified = false;
      }
    }
    if (rs.rank == 1) {
      report.not_applicable = true;
      report.certified = false;
    }
  }
  return report;
}

std::vector<ModuleFamily> implemented_families(const RootSystemData& rs) {
  std::vector<ModuleFamily> out;
  const int n = standard_dimension(rs);
  if (rs.family == RootFamily::A) {
    if (n == 2) out.push_back(module_family_for(rs, ModuleTag::Standard));
    for (int k = 2; k <= 3 && k < n; ++k)
      if (n == 2 * k) out.push_back(module_family_for(rs, ModuleTag::WedgeK, k));
    out.push_back(module_family_for(rs, ModuleTag::EndStd));
    for (int k = 2; k <= 2 && k < n; ++k)
      out.push_back(module_family_for(rs, ModuleTag::EndWedgeK, k));
    if (n % 2 == 0)
      out.push_back(module_family_for(rs, ModuleTag::WedgeMiddle));
  } else {
    out.push_back(module_family_for(rs, ModuleTag::Standard));
    for (int k = 2; k <= 3 && k < n; ++k)
      out.push_back(module_family_for(rs, ModuleTag::WedgeK, k));
    out.push_back(module_family_for(rs, ModuleTag::EndStd));
    out.push_back(module_family_for(rs, ModuleTag::EndWedgeK, 2));
    if (rs.family == RootFamily::B) {
      out.push_back(wedge_two_orth(rs.rank, rs.rank + 1));
      out.push_back(wedge_two_orth(rs.rank, rs.rank + 3));
    } else if (rs.family == RootFamily::D) {
      out.push_back(wedge_two_orth(rs.rank, rs.rank));
    }
  }
  return out;
}

}  // namespace anosov
