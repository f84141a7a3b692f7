#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordalg/error.hpp"

namespace ordalg {

namespace detail {

// Reflexive-transitive closure of a relation matrix, in place.
inline void closure(std::vector<std::uint8_t>& le, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) le[i * n + i] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k * n + j]) le[i * n + j] = 1;
}

inline void check_distinct(const std::vector<std::string>& elems) {
  std::set<std::string_view> seen;
  for (const auto& e : elems)
    if (!seen.insert(e).second) throw Error(Errc::DuplicateElement, "element '" + e + "' repeated");
}

}  // namespace detail

/// A finite preorder: named elements with a reflexive, transitive relation.
class FinitePreorder {
 public:
  FinitePreorder() = default;

  FinitePreorder(std::vector<std::string> elements, std::vector<std::uint8_t> le)
      : elems_(std::move(elements)), le_(std::move(le)) {
    detail::check_distinct(elems_);
    const std::size_t n = elems_.size();
    if (le_.size() != n * n) throw Error(Errc::InvariantViolation, "relation matrix size mismatch");
    for (std::size_t i = 0; i < n; ++i)
      if (!le_[i * n + i])
        throw Error(Errc::InvariantViolation, "relation not reflexive at '" + elems_[i] + "'");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le_[i * n + j])
          for (std::size_t k = 0; k < n; ++k)
            if (le_[j * n + k] && !le_[i * n + k])
              throw Error(Errc::InvariantViolation, "relation not transitive through '" + elems_[j] + "'");
  }

  std::size_t size() const { return elems_.size(); }
  const std::vector<std::string>& elements() const { return elems_; }
  const std::string& element(std::size_t i) const { return elems_[i]; }
  bool le(std::size_t i, std::size_t j) const { return le_[i * elems_.size() + j] != 0; }
  const std::vector<std::uint8_t>& matrix() const { return le_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (elems_[i] == name) return i;
    return std::nullopt;
  }

  std::size_t index_of_checked(std::string_view name) const {
    if (auto i = index_of(name)) return *i;
    throw Error(Errc::UnknownName, "no element named '" + std::string(name) + "'");
  }

  friend bool operator==(const FinitePreorder&, const FinitePreorder&) = default;

 private:
  std::vector<std::string> elems_;
  std::vector<std::uint8_t> le_;
};

/// A finite poset: a preorder whose relation is also antisymmetric.
/// Validated on every construction path.
class FinitePoset {
 public:
  FinitePoset() = default;

  FinitePoset(std::vector<std::string> elements, std::vector<std::uint8_t> le)
      : pre_(std::move(elements), std::move(le)) {
    const std::size_t n = pre_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (pre_.le(i, j) && pre_.le(j, i))
          throw Error(Errc::AntisymmetryViolation,
                      "'" + pre_.element(i) + "' and '" + pre_.element(j) + "' are order-equivalent");
  }

  std::size_t size() const { return pre_.size(); }
  const std::vector<std::string>& elements() const { return pre_.elements(); }
  const std::string& element(std::size_t i) const { return pre_.element(i); }
  bool le(std::size_t i, std::size_t j) const { return pre_.le(i, j); }
  const std::vector<std::uint8_t>& matrix() const { return pre_.matrix(); }
  std::optional<std::size_t> index_of(std::string_view name) const { return pre_.index_of(name); }
  std::size_t index_of_checked(std::string_view name) const { return pre_.index_of_checked(name); }

  const FinitePreorder& as_preorder() const { return pre_; }

  friend bool operator==(const FinitePoset&, const FinitePoset&) = default;

 private:
  FinitePreorder pre_;
};

/// Builds a preorder from generating pairs; the relation is their
/// reflexive-transitive closure.
inline FinitePreorder make_preorder(std::vector<std::string> elements,
                                    const std::vector<std::pair<std::string, std::string>>& pairs) {
  detail::check_distinct(elements);
  const std::size_t n = elements.size();
  std::vector<std::uint8_t> le(n * n, 0);
  FinitePreorder lookup(elements, [&] {
    std::vector<std::uint8_t> diag(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) diag[i * n + i] = 1;
    return diag;
  }());
  for (const auto& [a, b] : pairs) {
    const std::size_t i = lookup.index_of_checked(a);
    const std::size_t j = lookup.index_of_checked(b);
    le[i * n + j] = 1;
  }
  detail::closure(le, n);
  return FinitePreorder(std::move(elements), std::move(le));
}

/// Builds a poset from generating pairs. Fails with AntisymmetryViolation
/// if the closure relates two distinct elements both ways.
inline FinitePoset make_poset(std::vector<std::string> elements,
                              const std::vector<std::pair<std::string, std::string>>& pairs) {
  FinitePreorder pre = make_preorder(std::move(elements), pairs);
  const std::size_t n = pre.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (pre.le(i, j) && pre.le(j, i))
        throw Error(Errc::AntisymmetryViolation,
                    "cycle through '" + pre.element(i) + "' and '" + pre.element(j) + "'");
  std::vector<std::string> elems = pre.elements();
  std::vector<std::uint8_t> le = pre.matrix();
  return FinitePoset(std::move(elems), std::move(le));
}

/// The underlying discrete poset |P|.
inline FinitePoset discrete_of(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<std::uint8_t> le(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) le[i * n + i] = 1;
  return FinitePoset(p.elements(), std::move(le));
}

inline FinitePoset discrete_poset(std::vector<std::string> elements) {
  const std::size_t n = elements.size();
  std::vector<std::uint8_t> le(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) le[i * n + i] = 1;
  return FinitePoset(std::move(elements), std::move(le));
}

inline FinitePoset chain_poset(std::vector<std::string> elements) {
  const std::size_t n = elements.size();
  std::vector<std::uint8_t> le(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) le[i * n + j] = 1;
  return FinitePoset(std::move(elements), std::move(le));
}

/// A monotone map between finite posets. Totality and monotonicity are
/// checked on construction.
class MonotoneMap {
 public:
  MonotoneMap(FinitePoset dom, FinitePoset cod, std::vector<std::size_t> assign)
      : dom_(std::move(dom)), cod_(std::move(cod)), assign_(std::move(assign)) {
    if (assign_.size() != dom_.size())
      throw Error(Errc::InvariantViolation, "assignment not total on the domain");
    for (std::size_t i : assign_)
      if (i >= cod_.size()) throw Error(Errc::InvariantViolation, "assignment target out of range");
    for (std::size_t i = 0; i < dom_.size(); ++i)
      for (std::size_t j = 0; j < dom_.size(); ++j)
        if (dom_.le(i, j) && !cod_.le(assign_[i], assign_[j]))
          throw Error(Errc::NotMonotone, "violated at '" + dom_.element(i) + "' <= '" + dom_.element(j) + "'");
  }

  static MonotoneMap identity(const FinitePoset& p) {
    std::vector<std::size_t> a(p.size());
    std::iota(a.begin(), a.end(), std::size_t{0});
    return MonotoneMap(p, p, std::move(a));
  }

  static MonotoneMap constant(const FinitePoset& dom, const FinitePoset& cod, std::size_t value) {
    return MonotoneMap(dom, cod, std::vector<std::size_t>(dom.size(), value));
  }

  static MonotoneMap from_names(const FinitePoset& dom, const FinitePoset& cod,
                                const std::map<std::string, std::string>& assign) {
    std::vector<std::size_t> a(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
      auto it = assign.find(dom.element(i));
      if (it == assign.end())
        throw Error(Errc::InvariantViolation, "assignment missing for '" + dom.element(i) + "'");
      a[i] = cod.index_of_checked(it->second);
    }
    return MonotoneMap(dom, cod, std::move(a));
  }

  const FinitePoset& dom() const { return dom_; }
  const FinitePoset& cod() const { return cod_; }
  std::size_t operator()(std::size_t i) const { return assign_[i]; }
  const std::vector<std::size_t>& assignment() const { return assign_; }

  bool surjective() const {
    std::vector<std::uint8_t> hit(cod_.size(), 0);
    for (std::size_t i : assign_) hit[i] = 1;
    return std::all_of(hit.begin(), hit.end(), [](std::uint8_t b) { return b != 0; });
  }

  bool injective() const {
    std::set<std::size_t> seen(assign_.begin(), assign_.end());
    return seen.size() == assign_.size();
  }

  bool order_reflecting() const {
    for (std::size_t i = 0; i < dom_.size(); ++i)
      for (std::size_t j = 0; j < dom_.size(); ++j)
        if (cod_.le(assign_[i], assign_[j]) && !dom_.le(i, j)) return false;
    return true;
  }

  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;

 private:
  FinitePoset dom_;
  FinitePoset cod_;
  std::vector<std::size_t> assign_;
};

/// g after f.
inline MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (f.cod() != g.dom()) throw Error(Errc::DomainMismatch, "composition endpoints disagree");
  std::vector<std::size_t> a(f.dom().size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g(f(i));
  return MonotoneMap(f.dom(), g.cod(), std::move(a));
}

inline bool pointwise_le(const MonotoneMap& f, const MonotoneMap& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod())
    throw Error(Errc::DomainMismatch, "pointwise comparison of non-parallel maps");
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    if (!f.cod().le(f(i), g(i))) return false;
  return true;
}

// ---- posetal reflection -----------------------------------------------

/// Quotient of a preorder by the equivalence le ∩ ge, with the induced
/// order. class_of[i] is the quotient index of element i; class names are
/// the sorted, comma-joined member names.
struct PosetalReflection {
  FinitePoset poset;
  std::vector<std::size_t> class_of;
};

inline PosetalReflection posetal_reflection(const FinitePreorder& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> cls(n, n);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] != n) continue;
    const std::size_t c = members.size();
    members.push_back({});
    for (std::size_t j = i; j < n; ++j)
      if (cls[j] == n && p.le(i, j) && p.le(j, i)) {
        cls[j] = c;
        members[c].push_back(j);
      }
  }
  const std::size_t m = members.size();
  std::vector<std::string> names(m);
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<std::string> parts;
    parts.reserve(members[c].size());
    for (std::size_t j : members[c]) parts.push_back(p.element(j));
    std::sort(parts.begin(), parts.end());
    std::string name = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k) name += "," + parts[k];
    names[c] = std::move(name);
  }
  std::vector<std::uint8_t> le(m * m, 0);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t d = 0; d < m; ++d)
      le[c * m + d] = p.le(members[c].front(), members[d].front()) ? 1 : 0;
  return PosetalReflection{FinitePoset(std::move(names), std::move(le)), std::move(cls)};
}

/// Reflection of a poset is an isomorphism; returned as a MonotoneMap.
inline MonotoneMap posetal_reflection_map(const FinitePoset& p) {
  PosetalReflection r = posetal_reflection(p.as_preorder());
  return MonotoneMap(p, r.poset, std::move(r.class_of));
}

// ---- products and coproducts ------------------------------------------

struct Product {
  FinitePoset poset;
  MonotoneMap pi0;
  MonotoneMap pi1;
};

/// Componentwise order; element (i,j) sits at index i*|Q|+j.
inline Product product(const FinitePoset& p, const FinitePoset& q) {
  const std::size_t np = p.size(), nq = q.size(), n = np * nq;
  std::vector<std::string> names;
  names.reserve(n);
  std::vector<std::size_t> a0(n), a1(n);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nq; ++j) {
      names.push_back("(" + p.element(i) + "," + q.element(j) + ")");
      a0[i * nq + j] = i;
      a1[i * nq + j] = j;
    }
  std::vector<std::uint8_t> le(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      le[x * n + y] = (p.le(a0[x], a0[y]) && q.le(a1[x], a1[y])) ? 1 : 0;
  FinitePoset pr(std::move(names), std::move(le));
  MonotoneMap pi0(pr, p, std::move(a0));
  MonotoneMap pi1(pr, q, std::move(a1));
  return Product{std::move(pr), std::move(pi0), std::move(pi1)};
}

inline FinitePoset terminal_poset() { return discrete_poset({"()"}); }

struct Coproduct {
  FinitePoset poset;
  MonotoneMap inl;
  MonotoneMap inr;
};

/// Disjoint union with no cross order; injected names get a side tag.
inline Coproduct coproduct(const FinitePoset& p, const FinitePoset& q) {
  const std::size_t np = p.size(), nq = q.size(), n = np + nq;
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < np; ++i) names.push_back("0:" + p.element(i));
  for (std::size_t j = 0; j < nq; ++j) names.push_back("1:" + q.element(j));
  std::vector<std::uint8_t> le(n * n, 0);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < np; ++j) le[i * n + j] = p.le(i, j) ? 1 : 0;
  for (std::size_t i = 0; i < nq; ++i)
    for (std::size_t j = 0; j < nq; ++j) le[(np + i) * n + (np + j)] = q.le(i, j) ? 1 : 0;
  FinitePoset co(std::move(names), std::move(le));
  std::vector<std::size_t> al(np), ar(nq);
  std::iota(al.begin(), al.end(), std::size_t{0});
  std::iota(ar.begin(), ar.end(), np);
  MonotoneMap inl(p, co, std::move(al));
  MonotoneMap inr(q, co, std::move(ar));
  return Coproduct{std::move(co), std::move(inl), std::move(inr)};
}

// ---- chains and their joins -------------------------------------------

/// A finitely presented ω-chain: prefix followed by a constant tail.
struct OmegaChainSpec {
  std::vector<std::size_t> prefix;
  std::size_t tail = 0;
};

/// Join of the denoted chain. On a finite poset this is the tail element;
/// the weak increase of the whole sequence is what gets checked.
inline std::size_t chain_join(const FinitePoset& p, const OmegaChainSpec& c) {
  if (c.tail >= p.size()) throw Error(Errc::UnknownName, "chain tail out of range");
  std::optional<std::size_t> prev;
  for (std::size_t e : c.prefix) {
    if (e >= p.size()) throw Error(Errc::UnknownName, "chain element out of range");
    if (prev && !p.le(*prev, e))
      throw Error(Errc::NotAChain, "'" + p.element(*prev) + "' not below '" + p.element(e) + "'");
    prev = e;
  }
  if (prev && !p.le(*prev, c.tail))
    throw Error(Errc::NotAChain, "'" + p.element(*prev) + "' not below tail '" + p.element(c.tail) + "'");
  return c.tail;
}

// ---- order pairs (canonical parallel pair of a poset) ------------------

struct OrderPairs {
  FinitePoset pairs;          // discrete poset of all (x,y) with x <= y
  FinitePoset base_discrete;  // |P|
  MonotoneMap pi0;
  MonotoneMap pi1;
};

inline OrderPairs order_pairs(const FinitePoset& p) {
  std::vector<std::string> names;
  std::vector<std::size_t> a0, a1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.le(i, j)) {
        names.push_back("(" + p.element(i) + "," + p.element(j) + ")");
        a0.push_back(i);
        a1.push_back(j);
      }
  FinitePoset r = discrete_poset(std::move(names));
  FinitePoset base = discrete_of(p);
  MonotoneMap pi0(r, base, std::move(a0));
  MonotoneMap pi1(r, base, std::move(a1));
  return OrderPairs{std::move(r), std::move(base), std::move(pi0), std::move(pi1)};
}

// ---- ideal completion ---------------------------------------------------

struct IdealCompletion {
  FinitePoset ideals;
  MonotoneMap unit;
};

/// Poset of directed down-sets ordered by inclusion. Directedness requires
/// nonemptiness, so for a finite poset every ideal is principal and the
/// unit x |-> down-set of x is an isomorphism.
inline IdealCompletion ideal_completion(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<std::uint8_t>> ideals;  // membership masks
  std::vector<std::string> names;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::uint8_t> in(n, 0);
    for (std::size_t i = 0; i < n; ++i) in[i] = (mask >> i) & 1;
    bool down = true, directed = true;
    for (std::size_t i = 0; i < n && down; ++i)
      if (in[i])
        for (std::size_t j = 0; j < n; ++j)
          if (p.le(j, i) && !in[j]) down = false;
    if (!down) continue;
    for (std::size_t i = 0; i < n && directed; ++i)
      for (std::size_t j = 0; j < n && directed; ++j)
        if (in[i] && in[j]) {
          bool ub = false;
          for (std::size_t k = 0; k < n; ++k)
            if (in[k] && p.le(i, k) && p.le(j, k)) ub = true;
          directed = ub;
        }
    if (!directed) continue;
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < n; ++i)
      if (in[i]) parts.push_back(p.element(i));
    std::sort(parts.begin(), parts.end());
    std::string name = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k) name += "," + parts[k];
    ideals.push_back(std::move(in));
    names.push_back(std::move(name));
  }
  const std::size_t m = ideals.size();
  std::vector<std::uint8_t> le(m * m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      bool sub = true;
      for (std::size_t i = 0; i < n; ++i)
        if (ideals[a][i] && !ideals[b][i]) sub = false;
      le[a * m + b] = sub ? 1 : 0;
    }
  FinitePoset ip(std::move(names), std::move(le));
  std::vector<std::size_t> unit(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::uint8_t> down(n, 0);
    for (std::size_t i = 0; i < n; ++i) down[i] = p.le(i, x) ? 1 : 0;
    for (std::size_t a = 0; a < m; ++a)
      if (ideals[a] == down) unit[x] = a;
  }
  MonotoneMap u(p, ip, std::move(unit));
  return IdealCompletion{std::move(ip), std::move(u)};
}

// ---- (dense, embedding) factorization ----------------------------------

struct Factorization {
  FinitePoset image;
  MonotoneMap e;  // surjection onto the image
  MonotoneMap m;  // order-embedding into the codomain
};

/// f = m ∘ e. On a finite poset every subset is closed under ω-chain
/// joins, so the ω-join closure of the image is the image itself.
inline Factorization factorize(const MonotoneMap& f) {
  const FinitePoset& cod = f.cod();
  std::vector<std::size_t> img;  // sorted codomain indices in the image
  {
    std::set<std::size_t> s(f.assignment().begin(), f.assignment().end());
    img.assign(s.begin(), s.end());
  }
  const std::size_t m = img.size();
  std::vector<std::string> names(m);
  std::vector<std::uint8_t> le(m * m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    names[a] = cod.element(img[a]);
    for (std::size_t b = 0; b < m; ++b) le[a * m + b] = cod.le(img[a], img[b]) ? 1 : 0;
  }
  FinitePoset image(std::move(names), std::move(le));
  std::vector<std::size_t> ea(f.dom().size());
  for (std::size_t i = 0; i < ea.size(); ++i) {
    const std::size_t target = f(i);
    ea[i] = static_cast<std::size_t>(std::lower_bound(img.begin(), img.end(), target) - img.begin());
  }
  MonotoneMap e(f.dom(), image, std::move(ea));
  MonotoneMap incl(image, cod, std::move(img));
  return Factorization{std::move(image), std::move(e), std::move(incl)};
}

/// Unique diagonal for a square m∘u = u'∘e with e surjective and m an
/// order-embedding.
inline MonotoneMap diagonal_fill(const MonotoneMap& u, const MonotoneMap& e, const MonotoneMap& m,
                                 const MonotoneMap& uprime) {
  if (u.dom() != e.dom() || uprime.dom() != e.cod() || u.cod() != m.dom() || uprime.cod() != m.cod())
    throw Error(Errc::DomainMismatch, "square endpoints disagree");
  if (compose(m, u) != compose(uprime, e))
    throw Error(Errc::SquareNotCommuting, "m∘u differs from u'∘e");
  if (!e.surjective()) throw Error(Errc::NotDense, "e is not surjective");
  if (!(m.injective() && m.order_reflecting())) throw Error(Errc::NotEmbedding, "m is not an embedding");
  std::vector<std::size_t> d(e.cod().size());
  for (std::size_t i = 0; i < e.dom().size(); ++i) d[e(i)] = u(i);
  return MonotoneMap(e.cod(), m.dom(), std::move(d));
}

// ---- enumeration of monotone assignments ---------------------------------

namespace detail {

inline void all_monotone_assignments_rec(const FinitePoset& dom, const FinitePoset& cod,
                                         std::vector<std::size_t>& partial,
                                         std::vector<std::vector<std::size_t>>& out) {
  const std::size_t i = partial.size();
  if (i == dom.size()) {
    out.push_back(partial);
    return;
  }
  for (std::size_t cand = 0; cand < cod.size(); ++cand) {
    bool ok = true;
    for (std::size_t j = 0; j < i && ok; ++j) {
      if (dom.le(j, i) && !cod.le(partial[j], cand)) ok = false;
      if (dom.le(i, j) && !cod.le(cand, partial[j])) ok = false;
    }
    if (!ok) continue;
    partial.push_back(cand);
    all_monotone_assignments_rec(dom, cod, partial, out);
    partial.pop_back();
  }
}

}  // namespace detail

/// All monotone assignments dom -> cod, by backtracking.
inline std::vector<std::vector<std::size_t>> all_monotone_assignments(const FinitePoset& dom,
                                                                      const FinitePoset& cod) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> partial;
  detail::all_monotone_assignments_rec(dom, cod, partial, out);
  return out;
}

// ---- order isomorphism ---------------------------------------------------

/// Searches for an order-isomorphism P -> Q; returns the assignment if one
/// exists. Backtracking over degree-compatible candidates.
inline std::optional<std::vector<std::size_t>> find_order_isomorphism(const FinitePoset& p,
                                                                      const FinitePoset& q) {
  const std::size_t n = p.size();
  if (q.size() != n) return std::nullopt;
  std::vector<std::size_t> assign(n, n);
  std::vector<std::uint8_t> used(n, 0);
  auto compatible = [&](std::size_t i, std::size_t cand) {
    for (std::size_t j = 0; j < n; ++j) {
      if (assign[j] == n) continue;
      if (p.le(i, j) != q.le(cand, assign[j])) return false;
      if (p.le(j, i) != q.le(assign[j], cand)) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t cand = 0; cand < n; ++cand) {
      if (used[cand] || !compatible(i, cand)) continue;
      assign[i] = cand;
      used[cand] = 1;
      if (self(self, i + 1)) return true;
      assign[i] = n;
      used[cand] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return assign;
}

inline bool order_isomorphic(const FinitePoset& p, const FinitePoset& q) {
  return find_order_isomorphism(p, q).has_value();
}

}  // namespace ordalg
