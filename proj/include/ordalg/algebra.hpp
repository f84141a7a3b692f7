#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordalg/error.hpp"
#include "ordalg/poset.hpp"

namespace ordalg {

/// Operation symbols with arities.
using Signature = std::map<std::string, std::size_t>;

namespace detail {

// lexicographic rank of an argument tuple, args[0] most significant
inline std::size_t tuple_rank(std::span<const std::size_t> args, std::size_t base) {
  std::size_t r = 0;
  for (std::size_t a : args) r = r * base + a;
  return r;
}

inline std::vector<std::size_t> tuple_unrank(std::size_t rank, std::size_t arity, std::size_t base) {
  std::vector<std::size_t> args(arity, 0);
  for (std::size_t i = arity; i-- > 0;) {
    args[i] = rank % base;
    rank /= base;
  }
  return args;
}

inline std::size_t int_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace detail

/// A finite poset with a monotone operation per signature symbol, stored
/// as dense tables. On finite posets monotonicity is exactly continuity.
class ContinuousAlgebra {
 public:
  ContinuousAlgebra(Signature sig, FinitePoset carrier, std::map<std::string, std::vector<std::size_t>> ops)
      : sig_(std::move(sig)), carrier_(std::move(carrier)), ops_(std::move(ops)) {
    const std::size_t s = carrier_.size();
    for (const auto& [sym, arity] : sig_) {
      auto it = ops_.find(sym);
      if (it == ops_.end()) throw Error(Errc::SignatureMismatch, "no operation table for '" + sym + "'");
      const std::size_t expect = detail::int_pow(s, arity);
      if (it->second.size() != expect)
        throw Error(Errc::InvariantViolation, "table for '" + sym + "' has wrong size");
      for (std::size_t v : it->second)
        if (v >= s) throw Error(Errc::InvariantViolation, "table for '" + sym + "' leaves the carrier");
      if (arity == 0 && s == 0)
        throw Error(Errc::CarrierEmpty, "constant '" + sym + "' needs a nonempty carrier");
    }
    for (const auto& [sym, table] : ops_)
      if (!sig_.count(sym)) throw Error(Errc::SignatureMismatch, "table for unknown symbol '" + sym + "'");
    check_monotone();
  }

  const Signature& sig() const { return sig_; }
  const FinitePoset& carrier() const { return carrier_; }
  const std::vector<std::size_t>& table(const std::string& sym) const { return ops_.at(sym); }
  std::size_t arity(const std::string& sym) const {
    auto it = sig_.find(sym);
    if (it == sig_.end()) throw Error(Errc::SignatureMismatch, "unknown symbol '" + sym + "'");
    return it->second;
  }

  std::size_t apply(const std::string& sym, std::span<const std::size_t> args) const {
    if (args.size() != arity(sym)) throw Error(Errc::SignatureMismatch, "arity mismatch for '" + sym + "'");
    return ops_.at(sym)[detail::tuple_rank(args, carrier_.size())];
  }

  friend bool operator==(const ContinuousAlgebra&, const ContinuousAlgebra&) = default;

 private:
  void check_monotone() const {
    const std::size_t s = carrier_.size();
    for (const auto& [sym, arity] : sig_) {
      const auto& t = ops_.at(sym);
      const std::size_t count = t.size();
      for (std::size_t r1 = 0; r1 < count; ++r1) {
        const auto a1 = detail::tuple_unrank(r1, arity, s);
        for (std::size_t r2 = 0; r2 < count; ++r2) {
          const auto a2 = detail::tuple_unrank(r2, arity, s);
          bool below = true;
          for (std::size_t i = 0; i < arity && below; ++i) below = carrier_.le(a1[i], a2[i]);
          if (below && !carrier_.le(t[r1], t[r2]))
            throw Error(Errc::NotMonotone, "operation '" + sym + "' is not monotone");
        }
      }
    }
  }

  Signature sig_;
  FinitePoset carrier_;
  std::map<std::string, std::vector<std::size_t>> ops_;
};

// ---- classical terms -------------------------------------------------------

struct ClassicalTerm {
  bool is_var = true;
  std::string head;                 // variable name or symbol
  std::vector<ClassicalTerm> args;  // empty for variables

  static ClassicalTerm var(std::string name) { return ClassicalTerm{true, std::move(name), {}}; }
  static ClassicalTerm comp(std::string sym, std::vector<ClassicalTerm> args) {
    return ClassicalTerm{false, std::move(sym), std::move(args)};
  }

  friend bool operator==(const ClassicalTerm&, const ClassicalTerm&) = default;
};

inline std::string render(const ClassicalTerm& t) {
  if (t.is_var) return t.head;
  std::string s = t.head + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ",";
    s += render(t.args[i]);
  }
  return s + ")";
}

inline std::size_t depth(const ClassicalTerm& t) {
  if (t.is_var) return 0;
  std::size_t d = 0;
  for (const auto& a : t.args) d = std::max(d, depth(a));
  return d + 1;
}

inline std::size_t eval_classical(const ContinuousAlgebra& alg, const ClassicalTerm& t,
                                  const std::map<std::string, std::size_t>& env) {
  if (t.is_var) {
    auto it = env.find(t.head);
    if (it == env.end()) throw Error(Errc::UnboundVariable, "'" + t.head + "'");
    return it->second;
  }
  std::vector<std::size_t> vals;
  vals.reserve(t.args.size());
  for (const auto& a : t.args) vals.push_back(eval_classical(alg, a, env));
  return alg.apply(t.head, vals);
}

/// Same shape up to variables.
inline bool similar(const ClassicalTerm& t, const ClassicalTerm& u) {
  if (t.is_var || u.is_var) return t.is_var && u.is_var;
  if (t.head != u.head || t.args.size() != u.args.size()) return false;
  for (std::size_t i = 0; i < t.args.size(); ++i)
    if (!similar(t.args[i], u.args[i])) return false;
  return true;
}

/// Similarity order: similar terms compared variable-by-variable in P.
inline bool term_le(const FinitePoset& p, const ClassicalTerm& t, const ClassicalTerm& u) {
  if (t.is_var || u.is_var) {
    if (!(t.is_var && u.is_var)) return false;
    return p.le(p.index_of_checked(t.head), p.index_of_checked(u.head));
  }
  if (t.head != u.head || t.args.size() != u.args.size()) return false;
  for (std::size_t i = 0; i < t.args.size(); ++i)
    if (!term_le(p, t.args[i], u.args[i])) return false;
  return true;
}

// ---- homomorphisms ---------------------------------------------------------

inline bool is_homomorphism(const MonotoneMap& h, const ContinuousAlgebra& a, const ContinuousAlgebra& b) {
  if (a.sig() != b.sig()) throw Error(Errc::SignatureMismatch, "algebras have different signatures");
  if (h.dom() != a.carrier() || h.cod() != b.carrier())
    throw Error(Errc::DomainMismatch, "map endpoints are not the carriers");
  const std::size_t s = a.carrier().size();
  for (const auto& [sym, arity] : a.sig()) {
    const std::size_t count = detail::int_pow(s, arity);
    for (std::size_t r = 0; r < count; ++r) {
      const auto args = detail::tuple_unrank(r, arity, s);
      std::vector<std::size_t> mapped(arity);
      for (std::size_t i = 0; i < arity; ++i) mapped[i] = h(args[i]);
      if (h(a.apply(sym, args)) != b.apply(sym, mapped)) return false;
    }
  }
  return true;
}

struct AlgebraProduct {
  ContinuousAlgebra algebra;
  MonotoneMap pi0;
  MonotoneMap pi1;
};

/// Cartesian product with coordinate-wise order and operations.
inline AlgebraProduct product_algebra(const ContinuousAlgebra& a, const ContinuousAlgebra& b) {
  if (a.sig() != b.sig()) throw Error(Errc::SignatureMismatch, "algebras have different signatures");
  Product pr = product(a.carrier(), b.carrier());
  const std::size_t sb = b.carrier().size(), s = pr.poset.size();
  std::map<std::string, std::vector<std::size_t>> ops;
  for (const auto& [sym, arity] : a.sig()) {
    std::vector<std::size_t> table(detail::int_pow(s, arity));
    const std::size_t count = table.size();
    for (std::size_t r = 0; r < count; ++r) {
      const auto args = detail::tuple_unrank(r, arity, s);
      std::vector<std::size_t> la(arity), rb(arity);
      for (std::size_t i = 0; i < arity; ++i) {
        la[i] = pr.pi0(args[i]);
        rb[i] = pr.pi1(args[i]);
      }
      table[r] = a.apply(sym, la) * sb + b.apply(sym, rb);
    }
    ops[sym] = std::move(table);
  }
  ContinuousAlgebra alg(a.sig(), pr.poset, std::move(ops));
  return AlgebraProduct{std::move(alg), std::move(pr.pi0), std::move(pr.pi1)};
}

struct Subalgebra {
  ContinuousAlgebra algebra;
  MonotoneMap embedding;
};

/// Least subset containing X and closed under all operations, with the
/// restricted order. Closure under ω-chain joins is vacuous on a finite
/// carrier: every finite directed set has a maximum.
inline Subalgebra generated_subalgebra(const ContinuousAlgebra& a, const std::set<std::size_t>& x) {
  const std::size_t s = a.carrier().size();
  for (std::size_t i : x)
    if (i >= s) throw Error(Errc::UnknownName, "generator out of range");
  std::vector<std::uint8_t> in(s, 0);
  for (std::size_t i : x) in[i] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [sym, arity] : a.sig()) {
      const std::size_t count = detail::int_pow(s, arity);
      for (std::size_t r = 0; r < count; ++r) {
        const auto args = detail::tuple_unrank(r, arity, s);
        bool all = true;
        for (std::size_t i : args)
          if (!in[i]) all = false;
        if (!all) continue;
        const std::size_t v = a.apply(sym, args);
        if (!in[v]) {
          in[v] = 1;
          grew = true;
        }
      }
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s; ++i)
    if (in[i]) keep.push_back(i);
  const std::size_t m = keep.size();
  std::vector<std::string> names(m);
  std::vector<std::uint8_t> le(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    names[i] = a.carrier().element(keep[i]);
    for (std::size_t j = 0; j < m; ++j) le[i * m + j] = a.carrier().le(keep[i], keep[j]) ? 1 : 0;
  }
  FinitePoset sub(std::move(names), std::move(le));
  std::vector<std::size_t> back(s, m);
  for (std::size_t i = 0; i < m; ++i) back[keep[i]] = i;
  std::map<std::string, std::vector<std::size_t>> ops;
  for (const auto& [sym, arity] : a.sig()) {
    std::vector<std::size_t> table(detail::int_pow(m, arity));
    const std::size_t count = table.size();
    for (std::size_t r = 0; r < count; ++r) {
      auto args = detail::tuple_unrank(r, arity, m);
      for (auto& v : args) v = keep[v];
      table[r] = back[a.apply(sym, args)];
    }
    ops[sym] = std::move(table);
  }
  ContinuousAlgebra alg(a.sig(), sub, std::move(ops));
  MonotoneMap embed(alg.carrier(), a.carrier(), std::move(keep));
  return Subalgebra{std::move(alg), std::move(embed)};
}

struct ImageAlgebra {
  ContinuousAlgebra algebra;
  MonotoneMap onto;       // surjective homomorphism from the source
  MonotoneMap embedding;  // embedding into the target
};

/// Image factorization of a homomorphism; the image carries the induced
/// structure, which is closed because h is a homomorphism.
inline ImageAlgebra image_algebra(const MonotoneMap& h, const ContinuousAlgebra& a,
                                  const ContinuousAlgebra& b) {
  if (!is_homomorphism(h, a, b)) throw Error(Errc::NotHomomorphism, "map is not a homomorphism");
  Factorization f = factorize(h);
  const std::size_t m = f.image.size();
  std::vector<std::size_t> back(b.carrier().size(), m);
  for (std::size_t i = 0; i < m; ++i) back[f.m(i)] = i;
  std::map<std::string, std::vector<std::size_t>> ops;
  for (const auto& [sym, arity] : b.sig()) {
    std::vector<std::size_t> table(detail::int_pow(m, arity));
    const std::size_t count = table.size();
    for (std::size_t r = 0; r < count; ++r) {
      auto args = detail::tuple_unrank(r, arity, m);
      for (auto& v : args) v = f.m(v);
      const std::size_t v = b.apply(sym, args);
      if (back[v] == m) throw Error(Errc::InvariantViolation, "image not closed under '" + sym + "'");
      table[r] = back[v];
    }
    ops[sym] = std::move(table);
  }
  ContinuousAlgebra alg(b.sig(), f.image, std::move(ops));
  return ImageAlgebra{std::move(alg), std::move(f.e), std::move(f.m)};
}

/// Given homomorphisms h1 : A -> B1 (surjective) and h2 : A -> B2 and a
/// monotone p with p∘h1 = h2, reports whether p is a homomorphism; the
/// preconditions force it to be.
inline bool check_dense_triangle(const ContinuousAlgebra& a, const ContinuousAlgebra& b1,
                                 const ContinuousAlgebra& b2, const MonotoneMap& h1, const MonotoneMap& h2,
                                 const MonotoneMap& p) {
  if (!is_homomorphism(h1, a, b1) || !is_homomorphism(h2, a, b2))
    throw Error(Errc::PreconditionFailed, "h1 and h2 must be homomorphisms");
  if (!h1.surjective()) throw Error(Errc::PreconditionFailed, "h1 must have dense image");
  if (compose(p, h1) != h2) throw Error(Errc::PreconditionFailed, "p∘h1 differs from h2");
  return is_homomorphism(p, b1, b2);
}

// ---- truncated free algebras ------------------------------------------------

/// All classical terms over P of bounded depth, carried by the similarity
/// order. No total operations live here: applying a symbol raises depth,
/// so symbol application is exposed as a partial map into the next
/// truncation instead.
struct TruncatedFreeAlgebra {
  Signature sig;
  FinitePoset generators;
  std::size_t depth = 0;
  std::vector<ClassicalTerm> terms;
  FinitePoset carrier;  // element i names render(terms[i])
};

namespace detail {

inline void enumerate_terms(const Signature& sig, const std::vector<std::string>& vars, std::size_t depth,
                            std::vector<ClassicalTerm>& out) {
  std::vector<std::vector<ClassicalTerm>> layer(depth + 1);
  for (const auto& v : vars) layer[0].push_back(ClassicalTerm::var(v));
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<ClassicalTerm> pool;  // all terms of depth <= d-1
    for (std::size_t k = 0; k < d; ++k) pool.insert(pool.end(), layer[k].begin(), layer[k].end());
    for (const auto& [sym, arity] : sig) {
      const std::size_t count = int_pow(pool.size(), arity);
      for (std::size_t r = 0; r < count; ++r) {
        const auto tuple = tuple_unrank(r, arity, pool.size());
        std::size_t maxd = 0;
        std::vector<ClassicalTerm> args;
        args.reserve(arity);
        for (std::size_t i : tuple) {
          args.push_back(pool[i]);
          maxd = std::max(maxd, ordalg::depth(pool[i]));
        }
        if (arity > 0 && maxd != d - 1) continue;  // already listed at an earlier layer
        if (arity == 0 && d != 1) continue;        // constants live at depth 1 only
        layer[d].push_back(ClassicalTerm::comp(sym, std::move(args)));
      }
    }
  }
  for (auto& l : layer) out.insert(out.end(), l.begin(), l.end());
}

}  // namespace detail

inline TruncatedFreeAlgebra truncated_free(const Signature& sig, const FinitePoset& p, std::size_t depth) {
  std::vector<ClassicalTerm> terms;
  detail::enumerate_terms(sig, p.elements(), depth, terms);
  if (terms.empty()) throw Error(Errc::CarrierEmpty, "no generators and no constants");
  const std::size_t n = terms.size();
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = render(terms[i]);
  std::vector<std::uint8_t> le(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) le[i * n + j] = term_le(p, terms[i], terms[j]) ? 1 : 0;
  FinitePoset carrier(std::move(names), std::move(le));
  return TruncatedFreeAlgebra{sig, p, depth, std::move(terms), std::move(carrier)};
}

/// Symbol application on truncated carriers: lands one truncation higher.
inline ClassicalTerm apply_symbol(const TruncatedFreeAlgebra& f, const std::string& sym,
                                  const std::vector<std::size_t>& args) {
  auto it = f.sig.find(sym);
  if (it == f.sig.end()) throw Error(Errc::SignatureMismatch, "unknown symbol '" + sym + "'");
  if (args.size() != it->second) throw Error(Errc::SignatureMismatch, "arity mismatch for '" + sym + "'");
  std::vector<ClassicalTerm> ts;
  ts.reserve(args.size());
  for (std::size_t i : args) {
    if (i >= f.terms.size()) throw Error(Errc::UnknownName, "term index out of range");
    ts.push_back(f.terms[i]);
  }
  return ClassicalTerm::comp(sym, std::move(ts));
}

struct SimilarityClass {
  ClassicalTerm representative;  // variables are anonymous slots
  std::size_t slots = 0;
};

namespace detail {

inline ClassicalTerm relabel_slots(const ClassicalTerm& t, std::size_t& counter) {
  if (t.is_var) return ClassicalTerm::var("slot" + std::to_string(counter++));
  std::vector<ClassicalTerm> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(relabel_slots(a, counter));
  return ClassicalTerm::comp(t.head, std::move(args));
}

}  // namespace detail

/// One representative per similarity class of depth <= depth, with slots
/// numbered in left-to-right occurrence order. The class list does not
/// depend on any generator poset.
inline std::vector<SimilarityClass> similarity_classes(const Signature& sig, std::size_t depth) {
  std::vector<ClassicalTerm> shapes;
  detail::enumerate_terms(sig, {"slot"}, depth, shapes);
  std::vector<SimilarityClass> out;
  out.reserve(shapes.size());
  for (const auto& s : shapes) {
    std::size_t counter = 0;
    ClassicalTerm rep = detail::relabel_slots(s, counter);
    out.push_back(SimilarityClass{std::move(rep), counter});
  }
  return out;
}

}  // namespace ordalg
