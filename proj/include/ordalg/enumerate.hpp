#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordalg/colimit.hpp"
#include "ordalg/poset.hpp"

namespace ordalg {

namespace detail {

inline std::vector<std::string> default_names(std::size_t n) {
  static const char* pool = "abcdefgh";
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, pool[i]));
  return names;
}

}  // namespace detail

/// All labeled posets on n elements (n <= 6), elements named a, b, c, ...
/// Enumerates every relation on the off-diagonal pairs and keeps the ones
/// that are transitive and antisymmetric as given.
inline const std::vector<FinitePoset>& all_posets(std::size_t n) {
  static std::vector<std::vector<FinitePoset>> cache(7);
  if (n >= cache.size()) throw Error(Errc::ArityOutOfRange, "poset enumeration capped at 6 elements");
  if (!cache[n].empty() || n == 0) {
    if (n == 0 && cache[0].empty()) cache[0].push_back(FinitePoset{});
    return cache[n];
  }
  const std::size_t bits = n * (n - 1);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  const auto names = detail::default_names(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    std::vector<std::uint8_t> le(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) le[i * n + i] = 1;
    for (std::size_t b = 0; b < bits; ++b)
      if ((mask >> b) & 1) le[slots[b].first * n + slots[b].second] = 1;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && le[i * n + j] && le[j * n + i]) ok = false;
        if (le[i * n + j])
          for (std::size_t k = 0; k < n && ok; ++k)
            if (le[j * n + k] && !le[i * n + k]) ok = false;
      }
    if (ok) cache[n].emplace_back(names, le);
  }
  return cache[n];
}

/// All labeled posets of sizes 1..n.
inline std::vector<FinitePoset> all_posets_upto(std::size_t n) {
  std::vector<FinitePoset> out;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& ps = all_posets(k);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

inline std::vector<MonotoneMap> all_monotone_maps(const FinitePoset& dom, const FinitePoset& cod) {
  std::vector<MonotoneMap> out;
  for (auto& a : all_monotone_assignments(dom, cod)) out.emplace_back(dom, cod, std::move(a));
  return out;
}

/// All parallel pairs f0, f1 : A -> B with |A|, |B| <= size.
template <typename Fn>
void for_all_parallel_pairs(std::size_t size, Fn&& fn) {
  const auto posets = all_posets_upto(size);
  for (const auto& a : posets)
    for (const auto& b : posets) {
      const auto maps = all_monotone_assignments(a, b);
      for (const auto& f0 : maps)
        for (const auto& f1 : maps)
          fn(ParallelPair(MonotoneMap(a, b, f0), MonotoneMap(a, b, f1)));
    }
}

/// All reflexive pairs (f0, f1, δ) with |A|, |B| <= size.
template <typename Fn>
void for_all_reflexive_pairs(std::size_t size, Fn&& fn) {
  const auto posets = all_posets_upto(size);
  for (const auto& a : posets)
    for (const auto& b : posets) {
      const auto maps = all_monotone_assignments(a, b);
      const auto sections = all_monotone_assignments(b, a);
      for (const auto& d : sections) {
        // candidates must split both legs
        for (const auto& f0 : maps) {
          bool s0 = true;
          for (std::size_t i = 0; i < b.size() && s0; ++i) s0 = f0[d[i]] == i;
          if (!s0) continue;
          for (const auto& f1 : maps) {
            bool s1 = true;
            for (std::size_t i = 0; i < b.size() && s1; ++i) s1 = f1[d[i]] == i;
            if (!s1) continue;
            fn(ParallelPair(MonotoneMap(a, b, f0), MonotoneMap(a, b, f1), MonotoneMap(b, a, d)));
          }
        }
      }
    }
}

namespace detail {

/// First reflexive pair on (a, b), preferring distinct legs. Distinct legs
/// need |A| > |B|: a splitting pins f0 and f1 on the section's image.
inline std::optional<ParallelPair> pick_reflexive_pair(const FinitePoset& a, const FinitePoset& b) {
  const auto maps = all_monotone_assignments(a, b);
  const auto sections = all_monotone_assignments(b, a);
  std::optional<ParallelPair> same_leg;
  for (const auto& d : sections) {
    std::vector<const std::vector<std::size_t>*> split;
    for (const auto& f : maps) {
      bool s = true;
      for (std::size_t i = 0; i < b.size() && s; ++i) s = f[d[i]] == i;
      if (s) split.push_back(&f);
    }
    if (split.empty()) continue;
    if (!same_leg)
      same_leg = ParallelPair(MonotoneMap(a, b, *split[0]), MonotoneMap(a, b, *split[0]),
                              MonotoneMap(b, a, d));
    if (split.size() >= 2)
      return ParallelPair(MonotoneMap(a, b, *split[0]), MonotoneMap(a, b, *split[1]), MonotoneMap(b, a, d));
  }
  return same_leg;
}

}  // namespace detail

/// A fixed, deterministic library of reflexive pairs over posets of size
/// <= max_size, at least min_count strong, spread across sizes.
inline const std::vector<ParallelPair>& reflexive_pair_library(std::size_t max_size = 4,
                                                               std::size_t min_count = 50) {
  static std::vector<ParallelPair> lib;
  if (!lib.empty()) return lib;
  const std::size_t per_bucket = 8;
  for (std::size_t sa = max_size; sa >= 1; --sa)
    for (std::size_t sb = max_size; sb >= 1; --sb) {
      std::size_t taken = 0;
      const auto& pas = all_posets(sa);
      const auto& pbs = all_posets(sb);
      // stride through the poset lists to vary shapes
      for (std::size_t ia = 0; ia < pas.size() && ia < 12 && taken < per_bucket; ++ia) {
        const FinitePoset& a = pas[(ia * 7) % pas.size()];
        for (std::size_t ib = 0; ib < pbs.size() && ib < 12; ++ib) {
          const FinitePoset& b = pbs[(ib * 5 + ia) % pbs.size()];
          if (auto p = detail::pick_reflexive_pair(a, b)) {
            lib.push_back(std::move(*p));
            ++taken;
            break;
          }
        }
      }
    }
  if (lib.size() < min_count) throw Error(Errc::InvariantViolation, "reflexive pair library came up short");
  return lib;
}

}  // namespace ordalg
