// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.
#include "anosov/lie.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "anosov/errors.hpp"

namespace anosov {
namespace {

int first_nonzero_sign(const RatVec& v) {
  for (const Rat& x : v) {
    if (!x.is_zero()) return x.sign();
  }
  return 0;
}

bool vec_equal(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

RatVec unit_vec(int n, int i) {
  RatVec v(static_cast<std::size_t>(n), Rat(0));
  v[static_cast<std::size_t>(i)] = Rat(1);
  return v;
}

std::uint64_t factorial_capped(int n, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    f *= static_cast<std::uint64_t>(i);
    if (f > cap) return cap + 1;
  }
  return f;
}

constexpr std::uint64_t kWeylCap = 1000000;

}  // namespace

const char* root_family_name(RootFamily f) {
  switch (f) {
    case RootFamily::A: return "A";
    case RootFamily::B: return "B";
    case RootFamily::C: return "C";
    case RootFamily::D: return "D";
  }
  return "?";
}

RootFamily root_family_from_name(const std::string& s) {
  if (s == "A") return RootFamily::A;
  if (s == "B") return RootFamily::B;
  if (s == "C") return RootFamily::C;
  if (s == "D") return RootFamily::D;
  fail(errc::invalid_params, "unknown root family '" + s + "'");
}

int OrderKey::sign() const {
  int s = rho_pair.sign();
  if (s != 0) return s;
  return first_nonzero_sign(tie);
}

bool OrderKey::operator<(const OrderKey& other) const {
  if (rho_pair < other.rho_pair) return true;
  if (other.rho_pair < rho_pair) return false;
  for (std::size_t i = 0; i < tie.size() && i < other.tie.size(); ++i) {
    if (tie[i] < other.tie[i]) return true;
    if (other.tie[i] < tie[i]) return false;
  }
  return false;
}

bool OrderKey::operator==(const OrderKey& other) const {
  return rho_pair == other.rho_pair && vec_equal(tie, other.tie);
}

RootSystemData build_root_system(RootFamily family, int rank) {
  const int min_rank = family == RootFamily::A   ? 1
                       : family == RootFamily::D ? 3
                                                 : 2;
  if (rank < min_rank) {
    fail(errc::unsupported_rank,
         std::string(root_family_name(family)) + " requires rank >= " +
             std::to_string(min_rank) + ", got " + std::to_string(rank));
  }

  RootSystemData rs;
  rs.family = family;
  rs.rank = rank;
  rs.ambient = family == RootFamily::A ? rank + 1 : rank;
  const int m = rs.ambient;

  if (family == RootFamily::A) {
    for (int i = 0; i + 1 < m; ++i) {
      RatVec a = unit_vec(m, i);
      a[static_cast<std::size_t>(i + 1)] = Rat(-1);
      rs.simple_roots.push_back(a);
    }
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        RatVec a = unit_vec(m, i);
        a[static_cast<std::size_t>(j)] = Rat(-1);
        rs.positive_roots.push_back(a);
      }
    }
  } else {
    for (int i = 0; i + 1 < rank; ++i) {
      RatVec a = unit_vec(m, i);
      a[static_cast<std::size_t>(i + 1)] = Rat(-1);
      rs.simple_roots.push_back(a);
    }
    RatVec last(static_cast<std::size_t>(m), Rat(0));
    if (family == RootFamily::B) {
      last[static_cast<std::size_t>(rank - 1)] = Rat(1);
    } else if (family == RootFamily::C) {
      last[static_cast<std::size_t>(rank - 1)] = Rat(2);
    } else {
      last[static_cast<std::size_t>(rank - 2)] = Rat(1);
      last[static_cast<std::size_t>(rank - 1)] = Rat(1);
    }
    rs.simple_roots.push_back(last);

    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        RatVec diff = unit_vec(m, i);
        diff[static_cast<std::size_t>(j)] = Rat(-1);
        rs.positive_roots.push_back(diff);
        RatVec sum = unit_vec(m, i);
        sum[static_cast<std::size_t>(j)] = Rat(1);
        rs.positive_roots.push_back(sum);
      }
    }
    if (family == RootFamily::B) {
      for (int i = 0; i < m; ++i) rs.positive_roots.push_back(unit_vec(m, i));
    } else if (family == RootFamily::C) {
      for (int i = 0; i < m; ++i) {
        RatVec a = unit_vec(m, i);
        a[static_cast<std::size_t>(i)] = Rat(2);
        rs.positive_roots.push_back(a);
      }
    }
  }

  rs.half_sum.assign(static_cast<std::size_t>(m), Rat(0));
  for (const RatVec& a : rs.positive_roots) {
    for (int i = 0; i < m; ++i) {
      rs.half_sum[static_cast<std::size_t>(i)] =
          rs.half_sum[static_cast<std::size_t>(i)] +
          a[static_cast<std::size_t>(i)] * Rat(1, 2);
    }
  }

  rs.cartan.assign(static_cast<std::size_t>(rank),
                   std::vector<int>(static_cast<std::size_t>(rank), 0));
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) {
      Rat num = Rat(2) * dot(rs.simple_roots[static_cast<std::size_t>(i)],
                             rs.simple_roots[static_cast<std::size_t>(j)]);
      Rat den = dot(rs.simple_roots[static_cast<std::size_t>(j)],
                    rs.simple_roots[static_cast<std::size_t>(j)]);
      Rat q = num / den;
      if (q.den() != 1) fail(errc::invalid_params, "non-integral Cartan entry");
      rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          static_cast<int>(q.num());
    }
  }
  return rs;
}

std::size_t weyl_order(const RootSystemData& rs) {
  const std::uint64_t cap = kWeylCap;
  std::uint64_t f = factorial_capped(
      rs.family == RootFamily::A ? rs.rank + 1 : rs.rank, cap);
  if (f > cap) return static_cast<std::size_t>(cap + 1);
  int twos = 0;
  if (rs.family == RootFamily::B || rs.family == RootFamily::C) twos = rs.rank;
  if (rs.family == RootFamily::D) twos = rs.rank - 1;
  for (int i = 0; i < twos; ++i) {
    f *= 2;
    if (f > cap) return static_cast<std::size_t>(cap + 1);
  }
  return static_cast<std::size_t>(f);
}

WeylElement identity_element(const RootSystemData& rs) {
  WeylElement w;
  w.perm.resize(static_cast<std::size_t>(rs.ambient));
  std::iota(w.perm.begin(), w.perm.end(), 0);
  w.sign.assign(static_cast<std::size_t>(rs.ambient), 1);
  w.length = 0;
  return w;
}

WeylElement simple_reflection(const RootSystemData& rs, int i) {
  if (i < 0 || i >= rs.rank) fail(errc::invalid_params, "bad reflection index");
  WeylElement w = identity_element(rs);
  const int m = rs.ambient;
  const bool last = (i == rs.rank - 1);
  if (rs.family == RootFamily::A || !last) {
    std::swap(w.perm[static_cast<std::size_t>(i)],
              w.perm[static_cast<std::size_t>(i + 1)]);
  } else if (rs.family == RootFamily::B || rs.family == RootFamily::C) {
    w.sign[static_cast<std::size_t>(m - 1)] = -1;
  } else {
    std::swap(w.perm[static_cast<std::size_t>(m - 2)],
              w.perm[static_cast<std::size_t>(m - 1)]);
    w.sign[static_cast<std::size_t>(m - 2)] = -1;
    w.sign[static_cast<std::size_t>(m - 1)] = -1;
  }
  w.word = {i};
  w.length = 1;
  return w;
}

WeylElement compose(const WeylElement& u, const WeylElement& v) {
  if (u.perm.size() != v.perm.size()) {
    fail(errc::rank_mismatch, "composing elements of different ranks");
  }
  WeylElement w;
  const std::size_t n = u.perm.size();
  w.perm.resize(n);
  w.sign.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int vi = v.perm[i];
    w.perm[i] = u.perm[static_cast<std::size_t>(vi)];
    w.sign[i] = u.sign[static_cast<std::size_t>(vi)] * v.sign[i];
  }
  w.length = -1;
  return w;
}

WeylElement inverse(const WeylElement& w) {
  WeylElement inv;
  const std::size_t n = w.perm.size();
  inv.perm.resize(n);
  inv.sign.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv.perm[static_cast<std::size_t>(w.perm[i])] = static_cast<int>(i);
    inv.sign[static_cast<std::size_t>(w.perm[i])] = w.sign[i];
  }
  inv.length = -1;
  return inv;
}

bool same_element(const WeylElement& u, const WeylElement& v) {
  return u.perm == v.perm && u.sign == v.sign;
}

int length_of(const RootSystemData& rs, const WeylElement& w) {
  int len = 0;
  for (const RatVec& a : rs.positive_roots) {
    if (first_nonzero_sign(act_on_weight(w, a)) < 0) ++len;
  }
  return len;
}

std::vector<int> reduced_word(const RootSystemData& rs, const WeylElement& w) {
  std::vector<int> collected;
  WeylElement cur = w;
  WeylElement id = identity_element(rs);
  while (!same_element(cur, id)) {
    int descent = -1;
    for (int i = 0; i < rs.rank; ++i) {
      const RatVec image =
          act_on_weight(cur, rs.simple_roots[static_cast<std::size_t>(i)]);
      if (first_nonzero_sign(image) < 0) {
        descent = i;
        break;
      }
    }
    if (descent < 0) fail(errc::invalid_params, "no descent on non-identity");
    cur = compose(cur, simple_reflection(rs, descent));
    collected.push_back(descent);
  }
  std::reverse(collected.begin(), collected.end());
  return collected;
}

WeylElement element_from_word(const RootSystemData& rs,
                              const std::vector<int>& word) {
  WeylElement w = identity_element(rs);
  for (int i : word) w = compose(w, simple_reflection(rs, i));
  w.word = reduced_word(rs, w);
  w.length = static_cast<int>(w.word.size());
  return w;
}

std::vector<WeylElement> weyl_enumerate(const RootSystemData& rs) {
  const std::size_t order = weyl_order(rs);
  if (order > kWeylCap) {
    fail(errc::too_large, "Weyl group exceeds the one-million-element cap");
  }
  std::vector<WeylElement> out;
  out.reserve(order);

  const int m = rs.ambient;
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  const bool has_signs = rs.family != RootFamily::A;
  const int sign_bits = has_signs ? rs.rank : 0;

  do {
    for (std::uint32_t mask = 0; mask < (1u << sign_bits); ++mask) {
      if (rs.family == RootFamily::D &&
          (__builtin_popcount(mask) % 2) != 0) {
        continue;
      }
      WeylElement w;
      w.perm = perm;
      w.sign.assign(static_cast<std::size_t>(m), 1);
      for (int b = 0; b < sign_bits; ++b) {
        if (mask & (1u << b)) w.sign[static_cast<std::size_t>(b)] = -1;
      }
      w.word = reduced_word(rs, w);
      w.length = static_cast<int>(w.word.size());
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

WeylElement longest_element(const RootSystemData& rs) {
  WeylElement w = identity_element(rs);
  const int m = rs.ambient;
  switch (rs.family) {
    case RootFamily::A:
      for (int i = 0; i < m; ++i) w.perm[static_cast<std::size_t>(i)] = m - 1 - i;
      break;
    case RootFamily::B:
    case RootFamily::C:
      w.sign.assign(static_cast<std::size_t>(m), -1);
      break;
    case RootFamily::D:
      if (rs.rank % 2 == 0) {
        w.sign.assign(static_cast<std::size_t>(m), -1);
      } else {
        w.sign.assign(static_cast<std::size_t>(m), -1);
        w.sign[static_cast<std::size_t>(m - 1)] = 1;
      }
      break;
  }
  w.word = reduced_word(rs, w);
  w.length = static_cast<int>(w.word.size());
  return w;
}

std::vector<int> opposition_involution(const RootSystemData& rs) {
  const WeylElement w0 = longest_element(rs);
  std::vector<int> iota(static_cast<std::size_t>(rs.rank), -1);
  for (int i = 0; i < rs.rank; ++i) {
    RatVec image =
        act_on_weight(w0, rs.simple_roots[static_cast<std::size_t>(i)]);
    const RatVec target = negated(image);
    for (int j = 0; j < rs.rank; ++j) {
      if (vec_equal(target, rs.simple_roots[static_cast<std::size_t>(j)])) {
        iota[static_cast<std::size_t>(i)] = j;
        break;
      }
    }
    if (iota[static_cast<std::size_t>(i)] < 0) {
      fail(errc::invalid_params, "w0 image of a simple root is not -simple");
    }
  }
  return iota;
}

RatVec half_sum_positive(const RootSystemData& rs) { return rs.half_sum; }

RatVec canonical_weight(const RootSystemData& rs, const RatVec& mu) {
  if (rs.family != RootFamily::A) return mu;
  Rat sum(0);
  for (const Rat& x : mu) sum = sum + x;
  const Rat mean = sum * Rat(1, static_cast<std::int64_t>(mu.size()));
  RatVec out = mu;
  for (Rat& x : out) x = x - mean;
  return out;
}

OrderKey orderA_key(const RootSystemData& rs, const RatVec& mu) {
  if (static_cast<int>(mu.size()) != rs.ambient) {
    fail(errc::rank_mismatch, "weight dimension does not match root system");
  }
  OrderKey key;
  key.rho_pair = dot(rs.half_sum, mu);
  key.tie = canonical_weight(rs, mu);
  return key;
}

RatVec act_on_weight(const WeylElement& w, const RatVec& mu) {
  if (mu.size() != w.perm.size()) {
    fail(errc::rank_mismatch, "weight dimension does not match Weyl element");
  }
  RatVec out(mu.size(), Rat(0));
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out[static_cast<std::size_t>(w.perm[i])] =
        (w.sign[i] > 0) ? mu[i] : -mu[i];
  }
  return out;
}

bool weight_equal(const RootSystemData& rs, const RatVec& a, const RatVec& b) {
  return vec_equal(canonical_weight(rs, a), canonical_weight(rs, b));
}

std::vector<Rat> simple_root_coordinates(const RootSystemData& rs,
                                         const RatVec& v) {
  // Exact Gaussian elimination on the ambient x (rank + 1) augmented system.
  const int rows = rs.ambient;
  const int cols = rs.rank;
  std::vector<RatVec> a(static_cast<std::size_t>(rows),
                        RatVec(static_cast<std::size_t>(cols + 1), Rat(0)));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          rs.simple_roots[static_cast<std::size_t>(j)]
                         [static_cast<std::size_t>(i)];
    }
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] =
        v[static_cast<std::size_t>(i)];
  }

  std::vector<int> pivot_row(static_cast<std::size_t>(cols), -1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]
               .is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(r)]);
    const Rat piv =
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    for (int j = c; j <= cols; ++j) {
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] / piv;
    }
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Rat f =
          a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f.is_zero()) continue;
      for (int j = c; j <= cols; ++j) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
            f * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
      }
    }
    pivot_row[static_cast<std::size_t>(c)] = r;
    ++r;
  }
  for (int i = r; i < rows; ++i) {
    if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)]
             .is_zero()) {
      fail(errc::invalid_params, "vector outside the root span");
    }
  }
  std::vector<Rat> coords(static_cast<std::size_t>(cols), Rat(0));
  for (int c = 0; c < cols; ++c) {
    if (pivot_row[static_cast<std::size_t>(c)] >= 0) {
      coords[static_cast<std::size_t>(c)] =
          a[static_cast<std::size_t>(pivot_row[static_cast<std::size_t>(c)])]
           [static_cast<std::size_t>(cols)];
    }
  }
  return coords;
}

}  // namespace anosov
