#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ordalg/algebra.hpp"
#include "ordalg/error.hpp"
#include "ordalg/poset.hpp"

namespace ordalg {

struct OmegaFamily;

/// A term built from variables, symbol application and formal ω-joins of
/// finitely presented families. Hole nodes mark the plug position inside
/// an iteration context and are only legal there.
class ExtendedTerm {
 public:
  enum class Kind { Var, Comp, Join, Hole };

  static ExtendedTerm var(std::string name) {
    ExtendedTerm t;
    t.kind_ = Kind::Var;
    t.name_ = std::move(name);
    return t;
  }

  static ExtendedTerm comp(std::string sym, std::vector<ExtendedTerm> args) {
    ExtendedTerm t;
    t.kind_ = Kind::Comp;
    t.name_ = std::move(sym);
    t.args_ = std::move(args);
    return t;
  }

  static ExtendedTerm hole() {
    ExtendedTerm t;
    t.kind_ = Kind::Hole;
    return t;
  }

  static ExtendedTerm join_eventually_constant(std::vector<ExtendedTerm> prefix, ExtendedTerm tail);
  static ExtendedTerm join_iterated(ExtendedTerm base, ExtendedTerm context);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<ExtendedTerm>& args() const { return args_; }
  const OmegaFamily& family() const { return *family_; }

  friend bool operator==(const ExtendedTerm& a, const ExtendedTerm& b);

 private:
  Kind kind_ = Kind::Var;
  std::string name_;
  std::vector<ExtendedTerm> args_;
  std::shared_ptr<const OmegaFamily> family_;
};

/// A finitely presented ω-family of terms: either t0,..,tm-1,tail,tail,..
/// or the iterates context^k[base].
struct OmegaFamily {
  enum class Shape { EventuallyConstant, IteratedContext };
  Shape shape = Shape::EventuallyConstant;
  std::vector<ExtendedTerm> prefix;  // EventuallyConstant only
  ExtendedTerm tail;                 // tail, or the iteration base
  std::optional<ExtendedTerm> context;

  friend bool operator==(const OmegaFamily&, const OmegaFamily&) = default;
};

inline bool operator==(const ExtendedTerm& a, const ExtendedTerm& b) {
  if (a.kind_ != b.kind_ || a.name_ != b.name_ || a.args_ != b.args_) return false;
  if (!a.family_ && !b.family_) return true;
  if (!a.family_ || !b.family_) return false;
  return *a.family_ == *b.family_;
}

inline std::size_t count_holes(const ExtendedTerm& t) {
  switch (t.kind()) {
    case ExtendedTerm::Kind::Hole:
      return 1;
    case ExtendedTerm::Kind::Var:
      return 0;
    case ExtendedTerm::Kind::Comp: {
      std::size_t n = 0;
      for (const auto& a : t.args()) n += count_holes(a);
      return n;
    }
    case ExtendedTerm::Kind::Join:
      // members are hole-free and the context's hole is bound, both
      // enforced when the join was built
      return 0;
  }
  return 0;
}

inline ExtendedTerm ExtendedTerm::join_eventually_constant(std::vector<ExtendedTerm> prefix,
                                                           ExtendedTerm tail) {
  auto fam = std::make_shared<OmegaFamily>();
  fam->shape = OmegaFamily::Shape::EventuallyConstant;
  fam->prefix = std::move(prefix);
  fam->tail = std::move(tail);
  for (const auto& m : fam->prefix)
    if (count_holes(m)) throw Error(Errc::InvariantViolation, "family member contains a hole");
  if (count_holes(fam->tail)) throw Error(Errc::InvariantViolation, "family tail contains a hole");
  ExtendedTerm t;
  t.kind_ = Kind::Join;
  t.family_ = std::move(fam);
  return t;
}

inline ExtendedTerm ExtendedTerm::join_iterated(ExtendedTerm base, ExtendedTerm context) {
  if (count_holes(base)) throw Error(Errc::InvariantViolation, "iteration base contains a hole");
  if (count_holes(context) != 1)
    throw Error(Errc::InvariantViolation, "iteration context needs exactly one hole");
  auto fam = std::make_shared<OmegaFamily>();
  fam->shape = OmegaFamily::Shape::IteratedContext;
  fam->tail = std::move(base);
  fam->context = std::move(context);
  ExtendedTerm t;
  t.kind_ = Kind::Join;
  t.family_ = std::move(fam);
  return t;
}

inline std::string render(const ExtendedTerm& t) {
  switch (t.kind()) {
    case ExtendedTerm::Kind::Var:
      return t.name();
    case ExtendedTerm::Kind::Hole:
      return "<>";
    case ExtendedTerm::Kind::Comp: {
      std::string s = t.name() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) s += ",";
        s += render(t.args()[i]);
      }
      return s + ")";
    }
    case ExtendedTerm::Kind::Join: {
      const OmegaFamily& f = t.family();
      if (f.shape == OmegaFamily::Shape::EventuallyConstant) {
        std::string s = "join[";
        for (const auto& m : f.prefix) s += render(m) + ";";
        return s + render(f.tail) + "...]";
      }
      return "join[iter " + render(*f.context) + " from " + render(f.tail) + "]";
    }
  }
  return "";
}

inline void collect_support(const ExtendedTerm& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case ExtendedTerm::Kind::Var:
      out.insert(t.name());
      return;
    case ExtendedTerm::Kind::Hole:
      return;
    case ExtendedTerm::Kind::Comp:
      for (const auto& a : t.args()) collect_support(a, out);
      return;
    case ExtendedTerm::Kind::Join: {
      const OmegaFamily& f = t.family();
      for (const auto& m : f.prefix) collect_support(m, out);
      collect_support(f.tail, out);
      if (f.context) collect_support(*f.context, out);
      return;
    }
  }
}

/// Variables occurring anywhere in the term, including through family
/// members; finite because the presentation is finite.
inline std::set<std::string> variable_support(const ExtendedTerm& t) {
  std::set<std::string> s;
  collect_support(t, s);
  return s;
}

/// Every symbol used must exist in the signature with matching arity.
inline void check_symbols(const ExtendedTerm& t, const Signature& sig) {
  switch (t.kind()) {
    case ExtendedTerm::Kind::Var:
    case ExtendedTerm::Kind::Hole:
      return;
    case ExtendedTerm::Kind::Comp: {
      auto it = sig.find(t.name());
      if (it == sig.end()) throw Error(Errc::SignatureMismatch, "unknown symbol '" + t.name() + "'");
      if (it->second != t.args().size())
        throw Error(Errc::SignatureMismatch, "arity mismatch for '" + t.name() + "'");
      for (const auto& a : t.args()) check_symbols(a, sig);
      return;
    }
    case ExtendedTerm::Kind::Join: {
      const OmegaFamily& f = t.family();
      for (const auto& m : f.prefix) check_symbols(m, sig);
      check_symbols(f.tail, sig);
      if (f.context) check_symbols(*f.context, sig);
      return;
    }
  }
}

// ---- partial interpretation -------------------------------------------

namespace detail {

/// Recursive evaluator. Returns nullopt when a chain condition fails or a
/// member is undefined; throws only on contract violations.
template <typename Lookup>
std::optional<std::size_t> interpret_node(const ContinuousAlgebra& alg, const ExtendedTerm& t,
                                          const Lookup& lookup, const std::optional<std::size_t>& hole) {
  switch (t.kind()) {
    case ExtendedTerm::Kind::Var: {
      std::optional<std::size_t> v = lookup(t.name());
      if (!v) throw Error(Errc::UnboundVariable, "'" + t.name() + "'");
      if (*v >= alg.carrier().size()) throw Error(Errc::UnknownName, "environment value out of range");
      return v;
    }
    case ExtendedTerm::Kind::Hole:
      if (!hole) throw Error(Errc::InvariantViolation, "hole outside an iteration context");
      return hole;
    case ExtendedTerm::Kind::Comp: {
      std::vector<std::size_t> vals;
      vals.reserve(t.args().size());
      for (const auto& a : t.args()) {
        auto v = interpret_node(alg, a, lookup, hole);
        if (!v) return std::nullopt;
        vals.push_back(*v);
      }
      return alg.apply(t.name(), vals);
    }
    case ExtendedTerm::Kind::Join: {
      const OmegaFamily& f = t.family();
      const FinitePoset& carrier = alg.carrier();
      if (f.shape == OmegaFamily::Shape::EventuallyConstant) {
        std::optional<std::size_t> prev;
        for (const auto& m : f.prefix) {
          auto v = interpret_node(alg, m, lookup, hole);
          if (!v) return std::nullopt;
          if (prev && !carrier.le(*prev, *v)) return std::nullopt;
          prev = v;
        }
        auto tail = interpret_node(alg, f.tail, lookup, hole);
        if (!tail) return std::nullopt;
        if (prev && !carrier.le(*prev, *tail)) return std::nullopt;
        return tail;
      }
      // IteratedContext: the value sequence is deterministic, so once it
      // repeats it is constant; within |carrier| strict increases it must
      // either repeat or break the chain condition.
      auto v = interpret_node(alg, f.tail, lookup, hole);
      if (!v) return std::nullopt;
      for (std::size_t step = 0; step <= carrier.size(); ++step) {
        auto next = interpret_node(alg, *f.context, lookup, v);
        if (!next) return std::nullopt;
        if (!carrier.le(*v, *next)) return std::nullopt;
        if (*next == *v) return v;
        v = next;
      }
      throw Error(Errc::InvariantViolation, "iteration failed to stabilize on a finite carrier");
    }
  }
  return std::nullopt;
}

}  // namespace detail

using Env = std::map<std::string, std::size_t>;

/// Interpretation with a custom variable lookup (nullopt = unbound).
template <typename Lookup>
std::optional<std::size_t> interpret_with(const ContinuousAlgebra& alg, const ExtendedTerm& t,
                                          const Lookup& lookup) {
  return detail::interpret_node(alg, t, lookup, std::nullopt);
}

/// Partial interpretation of an extended term under an environment.
/// Undefinedness (a failed chain condition) is a value; an unbound
/// variable is an error.
inline std::optional<std::size_t> interpret(const ContinuousAlgebra& alg, const ExtendedTerm& t,
                                            const Env& env) {
  return interpret_with(alg, t, [&env](const std::string& name) -> std::optional<std::size_t> {
    auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  });
}

// ---- equations and varieties ---------------------------------------------

struct Equation {
  ExtendedTerm lhs;
  ExtendedTerm rhs;

  friend bool operator==(const Equation&, const Equation&) = default;
};

struct VarietyPresentation {
  Signature sig;
  std::vector<Equation> equations;

  VarietyPresentation(Signature s, std::vector<Equation> eqs) : sig(std::move(s)), equations(std::move(eqs)) {
    for (const auto& e : equations) {
      check_symbols(e.lhs, sig);
      check_symbols(e.rhs, sig);
      if (count_holes(e.lhs) || count_holes(e.rhs))
        throw Error(Errc::InvariantViolation, "equation contains a free hole");
    }
  }
};

namespace detail {

template <typename Fn>
bool for_all_envs(const ContinuousAlgebra& alg, const std::set<std::string>& vars, Fn&& fn) {
  std::vector<std::string> names(vars.begin(), vars.end());
  const std::size_t s = alg.carrier().size();
  const std::size_t count = int_pow(s, names.size());
  for (std::size_t r = 0; r < count; ++r) {
    const auto vals = tuple_unrank(r, names.size(), s);
    Env env;
    for (std::size_t i = 0; i < names.size(); ++i) env[names[i]] = vals[i];
    if (!fn(env)) return false;
  }
  return true;
}

}  // namespace detail

/// Defined under every environment on the variable support.
inline bool is_definable(const ContinuousAlgebra& alg, const ExtendedTerm& t) {
  check_symbols(t, alg.sig());
  return detail::for_all_envs(alg, variable_support(t),
                              [&](const Env& env) { return interpret(alg, t, env).has_value(); });
}

/// Both sides defined and equal under every environment.
inline bool satisfies(const ContinuousAlgebra& alg, const Equation& e) {
  check_symbols(e.lhs, alg.sig());
  check_symbols(e.rhs, alg.sig());
  std::set<std::string> vars = variable_support(e.lhs);
  for (const auto& v : variable_support(e.rhs)) vars.insert(v);
  return detail::for_all_envs(alg, vars, [&](const Env& env) {
    auto l = interpret(alg, e.lhs, env);
    auto r = interpret(alg, e.rhs, env);
    return l && r && *l == *r;
  });
}

/// The inequation t ⊑ t' as an equation: t' equated with the formal join
/// of the family t, t', t', ... — the join is defined exactly when the
/// values of t and t' form a chain.
inline Equation encode_inequation(const ExtendedTerm& t, const ExtendedTerm& tprime) {
  return Equation{tprime, ExtendedTerm::join_eventually_constant({t}, tprime)};
}

inline bool in_variety(const ContinuousAlgebra& alg, const VarietyPresentation& v) {
  if (alg.sig() != v.sig) throw Error(Errc::SignatureMismatch, "algebra signature differs from the variety's");
  for (const auto& e : v.equations)
    if (!satisfies(alg, e)) return false;
  return true;
}

/// Homomorphisms preserve definability: if t is defined at env in A, it is
/// defined at h∘env in B with value h of the former. Exposed as a check.
inline bool check_hom_definability(const ContinuousAlgebra& a, const ContinuousAlgebra& b,
                                   const MonotoneMap& h, const ExtendedTerm& t, const Env& env) {
  if (!is_homomorphism(h, a, b)) throw Error(Errc::PreconditionFailed, "h must be a homomorphism");
  auto va = interpret(a, t, env);
  if (!va) throw Error(Errc::PreconditionFailed, "term undefined at the given environment");
  Env mapped;
  for (const auto& [name, val] : env) mapped[name] = h(val);
  auto vb = interpret(b, t, mapped);
  return vb && *vb == h(*va);
}

}  // namespace ordalg
