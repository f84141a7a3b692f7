#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordalg/error.hpp"
#include "ordalg/poset.hpp"

namespace ordalg {

/// An ordered parallel pair f0, f1 : A -> B, optionally with a joint
/// splitting δ : B -> A satisfying f0∘δ = f1∘δ = id.
struct ParallelPair {
  MonotoneMap f0;
  MonotoneMap f1;
  std::optional<MonotoneMap> splitting;

  ParallelPair(MonotoneMap f0_, MonotoneMap f1_) : f0(std::move(f0_)), f1(std::move(f1_)) {
    if (f0.dom() != f1.dom() || f0.cod() != f1.cod())
      throw Error(Errc::DomainMismatch, "pair is not parallel");
  }

  ParallelPair(MonotoneMap f0_, MonotoneMap f1_, MonotoneMap delta)
      : ParallelPair(std::move(f0_), std::move(f1_)) {
    if (delta.dom() != f0.cod() || delta.cod() != f0.dom())
      throw Error(Errc::DomainMismatch, "splitting endpoints disagree");
    const MonotoneMap id = MonotoneMap::identity(f0.cod());
    if (compose(f0, delta) != id || compose(f1, delta) != id)
      throw Error(Errc::InvariantViolation, "splitting laws fail");
    splitting = std::move(delta);
  }

  const FinitePoset& dom() const { return f0.dom(); }
  const FinitePoset& cod() const { return f0.cod(); }
};

struct CoinserterResult {
  FinitePoset apex;
  MonotoneMap c;  // cod(c) = apex; always surjective by construction
};

/// Coinserter of f0, f1 : A -> B: posetal reflection of the least preorder
/// on |B| containing B's order and all pairs (f0(a), f1(a)).
inline CoinserterResult coinserter(const ParallelPair& p) {
  const FinitePoset& b = p.cod();
  const std::size_t n = b.size();
  std::vector<std::uint8_t> rel = b.matrix();
  for (std::size_t a = 0; a < p.dom().size(); ++a) rel[p.f0(a) * n + p.f1(a)] = 1;
  detail::closure(rel, n);
  FinitePreorder pre(b.elements(), std::move(rel));
  PosetalReflection refl = posetal_reflection(pre);
  MonotoneMap c(b, refl.poset, std::move(refl.class_of));
  return CoinserterResult{std::move(refl.poset), std::move(c)};
}

/// True iff `candidate` is a coinserter of the pair: it must satisfy
/// candidate∘f0 ⊑ candidate∘f1, and the canonical comparison from the
/// computed apex must be a well-defined order-isomorphism. Sound and
/// complete on finite data.
inline bool is_coinserter(const ParallelPair& p, const MonotoneMap& candidate) {
  if (candidate.dom() != p.cod()) throw Error(Errc::DomainMismatch, "candidate domain is not the pair codomain");
  for (std::size_t a = 0; a < p.dom().size(); ++a)
    if (!candidate.cod().le(candidate(p.f0(a)), candidate(p.f1(a)))) return false;
  CoinserterResult canon = coinserter(p);
  const std::size_t m = canon.apex.size();
  // comparison h with h∘c = candidate, defined classwise
  std::vector<std::size_t> h(m, candidate.cod().size());
  for (std::size_t b = 0; b < p.cod().size(); ++b) {
    const std::size_t cls = canon.c(b);
    if (h[cls] == candidate.cod().size())
      h[cls] = candidate(b);
    else if (h[cls] != candidate(b))
      return false;  // candidate merges less than the coinserter
  }
  if (candidate.cod().size() != m) return false;
  std::vector<std::uint8_t> hit(m, 0);
  for (std::size_t x : h) hit[x] = 1;
  for (std::uint8_t v : hit)
    if (!v) return false;
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      if (canon.apex.le(x, y) != candidate.cod().le(h[x], h[y])) return false;
  return true;
}

/// Conical coequalizer of f, g : X -> Y, computed as the reflexive
/// coinserter of [f,g,id], [g,f,id] : X+X+Y -> Y split by the Y injection.
inline CoinserterResult coequalizer(const MonotoneMap& f, const MonotoneMap& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod()) throw Error(Errc::DomainMismatch, "pair is not parallel");
  const FinitePoset& x = f.dom();
  const FinitePoset& y = f.cod();
  Coproduct xx = coproduct(x, x);
  Coproduct s = coproduct(xx.poset, y);
  const std::size_t nx = x.size();
  std::vector<std::size_t> u(s.poset.size()), v(s.poset.size());
  for (std::size_t i = 0; i < nx; ++i) {
    u[s.inl(xx.inl(i))] = f(i);
    u[s.inl(xx.inr(i))] = g(i);
    v[s.inl(xx.inl(i))] = g(i);
    v[s.inl(xx.inr(i))] = f(i);
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    u[s.inr(j)] = j;
    v[s.inr(j)] = j;
  }
  MonotoneMap mu(s.poset, y, std::move(u));
  MonotoneMap mv(s.poset, y, std::move(v));
  ParallelPair pair(std::move(mu), std::move(mv), s.inr);
  return coinserter(pair);
}

namespace detail {

/// Copower: one copy of X per index name, no cross order. Copy i of
/// element x sits at index i*|X| + x.
inline FinitePoset copower(const std::vector<std::string>& index_names, const FinitePoset& x) {
  const std::size_t r = index_names.size(), nx = x.size(), n = r * nx;
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t e = 0; e < nx; ++e) names.push_back(index_names[i] + ":" + x.element(e));
  std::vector<std::uint8_t> le(n * n, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t e = 0; e < nx; ++e)
      for (std::size_t e2 = 0; e2 < nx; ++e2)
        le[(i * nx + e) * n + (i * nx + e2)] = x.le(e, e2) ? 1 : 0;
  return FinitePoset(std::move(names), std::move(le));
}

}  // namespace detail

/// Tensor P ⊗ X built as the reflexive coinserter of
/// π0⊗id, π1⊗id : R⊗X -> |P|⊗X, where copowers are iterated coproducts.
/// In Pos the result is order-isomorphic to P × X.
inline FinitePoset tensor_via_coinserter(const FinitePoset& p, const FinitePoset& x) {
  OrderPairs r = order_pairs(p);
  FinitePoset rx = detail::copower(r.pairs.elements(), x);
  FinitePoset px = detail::copower(p.elements(), x);
  const std::size_t nx = x.size();
  std::vector<std::size_t> a0(rx.size()), a1(rx.size());
  for (std::size_t i = 0; i < r.pairs.size(); ++i)
    for (std::size_t e = 0; e < nx; ++e) {
      a0[i * nx + e] = r.pi0(i) * nx + e;
      a1[i * nx + e] = r.pi1(i) * nx + e;
    }
  MonotoneMap m0(rx, px, std::move(a0));
  MonotoneMap m1(rx, px, std::move(a1));
  // split by the diagonal copies (p,p)
  std::vector<std::size_t> d(px.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t diag = r.pairs.index_of_checked("(" + p.element(i) + "," + p.element(i) + ")");
    for (std::size_t e = 0; e < nx; ++e) d[i * nx + e] = diag * nx + e;
  }
  MonotoneMap delta(px, rx, std::move(d));
  ParallelPair pair(std::move(m0), std::move(m1), std::move(delta));
  return coinserter(pair).apex;
}

// ---- finite chain colimits -----------------------------------------------

struct FiniteChainDiagram {
  std::vector<FinitePoset> objects;
  std::vector<MonotoneMap> connecting;

  FiniteChainDiagram(std::vector<FinitePoset> objs, std::vector<MonotoneMap> maps)
      : objects(std::move(objs)), connecting(std::move(maps)) {
    if (objects.empty()) throw Error(Errc::EmptyDiagram, "chain has no objects");
    if (connecting.size() + 1 != objects.size())
      throw Error(Errc::DomainMismatch, "chain needs one connecting map per consecutive pair");
    for (std::size_t k = 0; k < connecting.size(); ++k)
      if (connecting[k].dom() != objects[k] || connecting[k].cod() != objects[k + 1])
        throw Error(Errc::DomainMismatch, "connecting map " + std::to_string(k) + " does not fit the chain");
  }
};

struct ChainColimit {
  FinitePoset apex;
  std::vector<MonotoneMap> cocone;
};

/// Colimit of a finite chain: posetal reflection of the coproduct of all
/// stages modulo identifying each element with its image along the chain.
inline ChainColimit chain_colimit(const FiniteChainDiagram& d) {
  std::vector<std::string> names;
  std::vector<std::size_t> offset(d.objects.size());
  for (std::size_t k = 0; k < d.objects.size(); ++k) {
    offset[k] = names.size();
    for (const auto& e : d.objects[k].elements()) names.push_back(std::to_string(k) + ":" + e);
  }
  const std::size_t n = names.size();
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t k = 0; k < d.objects.size(); ++k) {
    const FinitePoset& o = d.objects[k];
    for (std::size_t i = 0; i < o.size(); ++i)
      for (std::size_t j = 0; j < o.size(); ++j)
        if (o.le(i, j)) rel[(offset[k] + i) * n + (offset[k] + j)] = 1;
  }
  for (std::size_t k = 0; k < d.connecting.size(); ++k)
    for (std::size_t i = 0; i < d.objects[k].size(); ++i) {
      const std::size_t from = offset[k] + i;
      const std::size_t to = offset[k + 1] + d.connecting[k](i);
      rel[from * n + to] = 1;
      rel[to * n + from] = 1;
    }
  detail::closure(rel, n);
  FinitePreorder pre(std::move(names), std::move(rel));
  PosetalReflection refl = posetal_reflection(pre);
  std::vector<MonotoneMap> cocone;
  cocone.reserve(d.objects.size());
  for (std::size_t k = 0; k < d.objects.size(); ++k) {
    std::vector<std::size_t> a(d.objects[k].size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = refl.class_of[offset[k] + i];
    cocone.emplace_back(d.objects[k], refl.poset, std::move(a));
  }
  return ChainColimit{std::move(refl.poset), std::move(cocone)};
}

// ---- commutation checkers ------------------------------------------------

/// f × g on the products built by product().
inline MonotoneMap product_of_maps(const MonotoneMap& f, const MonotoneMap& g) {
  Product dp = product(f.dom(), g.dom());
  Product cp = product(f.cod(), g.cod());
  const std::size_t ngd = g.dom().size(), ngc = g.cod().size();
  std::vector<std::size_t> a(dp.poset.size());
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    for (std::size_t j = 0; j < ngd; ++j) a[i * ngd + j] = f(i) * ngc + g(j);
  return MonotoneMap(dp.poset, cp.poset, std::move(a));
}

inline MonotoneMap power_of_map(const MonotoneMap& f, std::size_t n) {
  MonotoneMap acc = MonotoneMap::identity(terminal_poset());
  for (std::size_t k = 0; k < n; ++k) acc = product_of_maps(acc, f);
  return acc;
}

/// n-fold product power of a poset; element ranks agree with the
/// lexicographic tuple rank used by operation tables.
inline FinitePoset power_poset(const FinitePoset& p, std::size_t n) {
  return power_of_map(MonotoneMap::identity(p), n).dom();
}

/// Whether the product of the two computed coinserters is again a
/// coinserter of the product pair. Splittings are required: reflexivity is
/// what makes this hold universally.
inline bool check_product_commutation(const ParallelPair& p, const ParallelPair& q) {
  if (!p.splitting || !q.splitting) throw Error(Errc::MissingSplitting, "both pairs need splittings");
  const MonotoneMap c = coinserter(p).c;
  const MonotoneMap cq = coinserter(q).c;
  ParallelPair prod(product_of_maps(p.f0, q.f0), product_of_maps(p.f1, q.f1),
                    product_of_maps(*p.splitting, *q.splitting));
  return is_coinserter(prod, product_of_maps(c, cq));
}

/// Whether (-)^n carries the computed coinserter to a coinserter.
inline bool check_power_preservation(std::size_t n, const ParallelPair& p) {
  if (!p.splitting) throw Error(Errc::MissingSplitting, "pair needs a splitting");
  const MonotoneMap c = coinserter(p).c;
  ParallelPair pow(power_of_map(p.f0, n), power_of_map(p.f1, n), power_of_map(*p.splitting, n));
  return is_coinserter(pow, power_of_map(c, n));
}

}  // namespace ordalg
