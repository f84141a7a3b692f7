#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ordalg/algebra.hpp"
#include "ordalg/monad.hpp"
#include "ordalg/poset.hpp"
#include "ordalg/term.hpp"

namespace ordalg::fixtures {

// ---- posets -----------------------------------------------------------------

inline FinitePoset one() { return discrete_poset({"*"}); }
inline FinitePoset discrete2() { return discrete_poset({"a", "b"}); }
inline FinitePoset discrete3() { return discrete_poset({"a", "b", "c"}); }
inline FinitePoset two_chain() { return chain_poset({"0", "1"}); }
inline FinitePoset three_chain() { return chain_poset({"0", "1", "2"}); }
inline FinitePoset diamond() {
  return make_poset({"bot", "l", "r", "top"}, {{"bot", "l"}, {"bot", "r"}, {"l", "top"}, {"r", "top"}});
}
inline FinitePoset vee() { return make_poset({"l", "r", "top"}, {{"l", "top"}, {"r", "top"}}); }

inline std::map<std::string, FinitePoset> named_posets() {
  return {{"one", one()},           {"discrete2", discrete2()},     {"discrete3", discrete3()},
          {"two_chain", two_chain()}, {"three_chain", three_chain()}, {"diamond", diamond()},
          {"vee", vee()}};
}

// ---- terms ------------------------------------------------------------------

/// ⋁_k σ^k(x), presented as iterates of the context σ(<>) from x.
inline ExtendedTerm iterated_unary(const std::string& sym, const std::string& var) {
  return ExtendedTerm::join_iterated(ExtendedTerm::var(var),
                                     ExtendedTerm::comp(sym, {ExtendedTerm::hole()}));
}

/// ⋁_k x^k (k >= 1) for a binary symbol, as iterates of mul(<>, x).
inline ExtendedTerm iterated_power(const std::string& mul, const std::string& var) {
  return ExtendedTerm::join_iterated(
      ExtendedTerm::var(var), ExtendedTerm::comp(mul, {ExtendedTerm::hole(), ExtendedTerm::var(var)}));
}

// ---- signatures and algebras --------------------------------------------------

inline Signature sig_sigma_top() { return {{"s", 1}, {"top", 0}}; }
inline Signature sig_monoid() { return {{"mul", 2}, {"e", 0}}; }
inline Signature sig_semilattice() { return {{"meet", 2}}; }
inline Signature sig_unary() { return {{"s", 1}}; }

/// Two-chain with σ constantly the top element; satisfies ⋁σ^k(x) = ⊤.
inline ContinuousAlgebra algebra_sigma_const_top() {
  return ContinuousAlgebra(sig_sigma_top(), two_chain(), {{"s", {1, 1}}, {"top", {1}}});
}

/// Two-chain with σ the identity; fails the equation at x = 0.
inline ContinuousAlgebra algebra_sigma_identity() {
  return ContinuousAlgebra(sig_sigma_top(), two_chain(), {{"s", {0, 1}}, {"top", {1}}});
}

/// Discrete two points with σ the swap; ⋁σ^k(x) is undefined everywhere.
inline ContinuousAlgebra algebra_sigma_swap() {
  return ContinuousAlgebra(sig_unary(), discrete2(), {{"s", {1, 0}}});
}

/// Meet-semilattice monoid on the two-chain, unit = top.
inline ContinuousAlgebra algebra_meet_monoid() {
  // mul = min on {0 <= 1}
  return ContinuousAlgebra(sig_monoid(), two_chain(), {{"mul", {0, 0, 0, 1}}, {"e", {1}}});
}

/// Meet-semilattice monoid on the three-chain.
inline ContinuousAlgebra algebra_meet_monoid3() {
  std::vector<std::size_t> mul(9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) mul[i * 3 + j] = std::min(i, j);
  return ContinuousAlgebra(sig_monoid(), three_chain(), {{"mul", std::move(mul)}, {"e", {2}}});
}

/// One-point monoid.
inline ContinuousAlgebra algebra_trivial_monoid() {
  return ContinuousAlgebra(sig_monoid(), one(), {{"mul", {0}}, {"e", {0}}});
}

/// Meet on the diamond (a lattice, so meets exist).
inline ContinuousAlgebra algebra_diamond_meet() {
  const FinitePoset d = diamond();
  std::vector<std::size_t> meet(16);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      std::size_t best = 0;  // bot
      for (std::size_t k = 0; k < 4; ++k)
        if (d.le(k, i) && d.le(k, j) && d.le(best, k)) best = k;
      meet[i * 4 + j] = best;
    }
  return ContinuousAlgebra(sig_semilattice(), d, {{"meet", std::move(meet)}});
}

inline ContinuousAlgebra algebra_chain_meet(const FinitePoset& chain) {
  const std::size_t n = chain.size();
  std::vector<std::size_t> meet(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) meet[i * n + j] = std::min(i, j);
  return ContinuousAlgebra(sig_semilattice(), chain, {{"meet", std::move(meet)}});
}

// ---- variety presentations -----------------------------------------------------

/// Continuous-monoid presentation: associativity and two unit laws.
inline VarietyPresentation presentation_monoid() {
  auto x = ExtendedTerm::var("x"), y = ExtendedTerm::var("y"), z = ExtendedTerm::var("z");
  auto e = ExtendedTerm::comp("e", {});
  std::vector<Equation> eqs;
  eqs.push_back({ExtendedTerm::comp("mul", {ExtendedTerm::comp("mul", {x, y}), z}),
                 ExtendedTerm::comp("mul", {x, ExtendedTerm::comp("mul", {y, z})})});
  eqs.push_back({ExtendedTerm::comp("mul", {e, x}), x});
  eqs.push_back({ExtendedTerm::comp("mul", {x, e}), x});
  return VarietyPresentation(sig_monoid(), std::move(eqs));
}

/// Monoid presentation extended with ⋁ x^k = e.
inline VarietyPresentation presentation_monoid_power() {
  VarietyPresentation base = presentation_monoid();
  std::vector<Equation> eqs = base.equations;
  eqs.push_back({iterated_power("mul", "x"), ExtendedTerm::comp("e", {})});
  return VarietyPresentation(sig_monoid(), std::move(eqs));
}

/// Semilattice presentation: associative, commutative, idempotent meet,
/// plus the definable inequation meet(x,y) ⊑ x.
inline VarietyPresentation presentation_semilattice() {
  auto x = ExtendedTerm::var("x"), y = ExtendedTerm::var("y"), z = ExtendedTerm::var("z");
  auto meet = [](ExtendedTerm a, ExtendedTerm b) {
    return ExtendedTerm::comp("meet", {std::move(a), std::move(b)});
  };
  std::vector<Equation> eqs;
  eqs.push_back({meet(meet(x, y), z), meet(x, meet(y, z))});
  eqs.push_back({meet(x, y), meet(y, x)});
  eqs.push_back({meet(x, x), x});
  eqs.push_back(encode_inequation(meet(x, y), x));
  return VarietyPresentation(sig_semilattice(), std::move(eqs));
}

/// σ/⊤ presentation: ⋁ σ^k(x) = ⊤.
inline VarietyPresentation presentation_sigma_top() {
  std::vector<Equation> eqs;
  eqs.push_back({iterated_unary("s", "x"), ExtendedTerm::comp("top", {})});
  return VarietyPresentation(sig_sigma_top(), std::move(eqs));
}

/// Inflationary unary map: x ⊑ σ(x).
inline VarietyPresentation presentation_inflationary() {
  std::vector<Equation> eqs;
  eqs.push_back(encode_inequation(ExtendedTerm::var("x"),
                                  ExtendedTerm::comp("s", {ExtendedTerm::var("x")})));
  return VarietyPresentation(sig_unary(), std::move(eqs));
}

struct NamedPresentation {
  std::string name;
  VarietyPresentation presentation;
  std::vector<ContinuousAlgebra> members;  // small algebras known to lie in it
};

/// The fixture library backing the HSP, hom-definability and triangle
/// suites: each presentation with a few member algebras of size <= 3.
inline std::vector<NamedPresentation> presentation_library() {
  std::vector<NamedPresentation> lib;
  lib.push_back({"monoid",
                 presentation_monoid(),
                 {algebra_meet_monoid(), algebra_meet_monoid3(), algebra_trivial_monoid()}});
  lib.push_back({"monoid-power", presentation_monoid_power(), {algebra_trivial_monoid()}});
  lib.push_back({"semilattice",
                 presentation_semilattice(),
                 {algebra_chain_meet(two_chain()), algebra_chain_meet(three_chain())}});
  lib.push_back({"sigma-top",
                 presentation_sigma_top(),
                 {algebra_sigma_const_top(),
                  ContinuousAlgebra(sig_sigma_top(), one(), {{"s", {0}}, {"top", {0}}})}});
  lib.push_back({"inflationary",
                 presentation_inflationary(),
                 {ContinuousAlgebra(sig_unary(), two_chain(), {{"s", {1, 1}}}),
                  ContinuousAlgebra(sig_unary(), two_chain(), {{"s", {0, 1}}}),
                  ContinuousAlgebra(sig_unary(), three_chain(), {{"s", {1, 2, 2}}})}});
  return lib;
}

/// Extended terms exercised by the interpretation and definability suites.
inline std::vector<std::pair<std::string, ExtendedTerm>> term_library() {
  std::vector<std::pair<std::string, ExtendedTerm>> lib;
  lib.emplace_back("var", ExtendedTerm::var("x"));
  lib.emplace_back("sigma-iterate", iterated_unary("s", "x"));
  lib.emplace_back("const-family", ExtendedTerm::join_eventually_constant({}, ExtendedTerm::var("x")));
  lib.emplace_back("step-family", ExtendedTerm::join_eventually_constant(
                                      {ExtendedTerm::var("x")}, ExtendedTerm::comp("s", {ExtendedTerm::var("x")})));
  lib.emplace_back("nested-join",
                   ExtendedTerm::join_eventually_constant(
                       {ExtendedTerm::var("x")},
                       ExtendedTerm::comp("s", {ExtendedTerm::join_eventually_constant(
                                                   {ExtendedTerm::var("x")},
                                                   ExtendedTerm::comp("s", {ExtendedTerm::var("x")}))})));
  return lib;
}

// ---- monad presentations --------------------------------------------------------

/// T_n = V_n discrete, η the identity, u* = u.
inline SFMonadPresentation identity_monad(std::size_t max_arity = 2) {
  std::vector<FinitePoset> stages;
  std::vector<std::vector<std::size_t>> eta;
  for (std::size_t n = 0; n <= max_arity; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    stages.push_back(discrete_poset(std::move(names)));
    std::vector<std::size_t> e(n);
    std::iota(e.begin(), e.end(), std::size_t{0});
    eta.push_back(std::move(e));
  }
  return SFMonadPresentation(std::move(stages), std::move(eta),
                             [](std::size_t, std::size_t, std::span<const std::size_t> u) {
                               return std::vector<std::size_t>(u.begin(), u.end());
                             });
}

/// T_n = V_n plus a bottom ⊥ below every variable; u* preserves ⊥.
inline SFMonadPresentation lift_monad(std::size_t max_arity = 2) {
  std::vector<FinitePoset> stages;
  std::vector<std::vector<std::size_t>> eta;
  for (std::size_t n = 0; n <= max_arity; ++n) {
    std::vector<std::string> names{"bot"};
    std::vector<std::pair<std::string, std::string>> below;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("x" + std::to_string(i));
      below.emplace_back("bot", "x" + std::to_string(i));
    }
    stages.push_back(make_poset(std::move(names), below));
    std::vector<std::size_t> e(n);
    std::iota(e.begin(), e.end(), std::size_t{1});  // element 0 is bot
    eta.push_back(std::move(e));
  }
  return SFMonadPresentation(std::move(stages), std::move(eta),
                             [](std::size_t n, std::size_t, std::span<const std::size_t> u) {
                               std::vector<std::size_t> assign(n + 1);
                               assign[0] = 0;
                               for (std::size_t i = 0; i < n; ++i) assign[i + 1] = u[i];
                               return assign;
                             });
}

/// Two nested bottoms bot1 ⊑ bot0 ⊑ every variable, each preserved by u*.
inline SFMonadPresentation double_lift_monad(std::size_t max_arity = 2) {
  std::vector<FinitePoset> stages;
  std::vector<std::vector<std::size_t>> eta;
  for (std::size_t n = 0; n <= max_arity; ++n) {
    std::vector<std::string> names{"bot1", "bot0"};
    std::vector<std::pair<std::string, std::string>> below{{"bot1", "bot0"}};
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("x" + std::to_string(i));
      below.emplace_back("bot0", "x" + std::to_string(i));
    }
    stages.push_back(make_poset(std::move(names), below));
    std::vector<std::size_t> e(n);
    std::iota(e.begin(), e.end(), std::size_t{2});
    eta.push_back(std::move(e));
  }
  return SFMonadPresentation(std::move(stages), std::move(eta),
                             [](std::size_t n, std::size_t, std::span<const std::size_t> u) {
                               std::vector<std::size_t> assign(n + 2);
                               assign[0] = 0;
                               assign[1] = 1;
                               for (std::size_t i = 0; i < n; ++i) assign[i + 2] = u[i];
                               return assign;
                             });
}

/// One extra discrete point (an exception value), preserved by u*.
inline SFMonadPresentation exception_monad(std::size_t max_arity = 2) {
  std::vector<FinitePoset> stages;
  std::vector<std::vector<std::size_t>> eta;
  for (std::size_t n = 0; n <= max_arity; ++n) {
    std::vector<std::string> names{"err"};
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    stages.push_back(discrete_poset(std::move(names)));
    std::vector<std::size_t> e(n);
    std::iota(e.begin(), e.end(), std::size_t{1});
    eta.push_back(std::move(e));
  }
  return SFMonadPresentation(std::move(stages), std::move(eta),
                             [](std::size_t n, std::size_t, std::span<const std::size_t> u) {
                               std::vector<std::size_t> assign(n + 1);
                               assign[0] = 0;
                               for (std::size_t i = 0; i < n; ++i) assign[i + 1] = u[i];
                               return assign;
                             });
}

/// Lift stages with a deliberately wrong extension: every u* is constant
/// bot, so u*∘η = u fails (and the unit law with it) at stages >= 1.
inline SFMonadPresentation broken_lift_monad(std::size_t max_arity = 2) {
  std::vector<FinitePoset> stages;
  std::vector<std::vector<std::size_t>> eta;
  for (std::size_t n = 0; n <= max_arity; ++n) {
    std::vector<std::string> names{"bot"};
    std::vector<std::pair<std::string, std::string>> below;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("x" + std::to_string(i));
      below.emplace_back("bot", "x" + std::to_string(i));
    }
    stages.push_back(make_poset(std::move(names), below));
    std::vector<std::size_t> e(n);
    std::iota(e.begin(), e.end(), std::size_t{1});
    eta.push_back(std::move(e));
  }
  return SFMonadPresentation(std::move(stages), std::move(eta),
                             [](std::size_t n, std::size_t, std::span<const std::size_t>) {
                               return std::vector<std::size_t>(n + 1, 0);
                             });
}

/// Exception stages where u* absorbs the exception into u(x0); breaks the
/// unit law while every u* stays monotone (the stages are discrete).
inline SFMonadPresentation broken_exception_monad(std::size_t max_arity = 2) {
  std::vector<FinitePoset> stages;
  std::vector<std::vector<std::size_t>> eta;
  for (std::size_t n = 0; n <= max_arity; ++n) {
    std::vector<std::string> names{"err"};
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    stages.push_back(discrete_poset(std::move(names)));
    std::vector<std::size_t> e(n);
    std::iota(e.begin(), e.end(), std::size_t{1});
    eta.push_back(std::move(e));
  }
  return SFMonadPresentation(std::move(stages), std::move(eta),
                             [](std::size_t n, std::size_t, std::span<const std::size_t> u) {
                               std::vector<std::size_t> assign(n + 1);
                               assign[0] = n > 0 ? u[0] : 0;
                               for (std::size_t i = 0; i < n; ++i) assign[i + 1] = u[i];
                               return assign;
                             });
}

struct NamedMonad {
  std::string name;
  SFMonadPresentation presentation;
};

inline std::vector<NamedMonad> monad_library(std::size_t max_arity = 2) {
  std::vector<NamedMonad> lib;
  lib.push_back({"identity", identity_monad(max_arity)});
  lib.push_back({"lift", lift_monad(max_arity)});
  lib.push_back({"double_lift", double_lift_monad(max_arity)});
  lib.push_back({"exception", exception_monad(max_arity)});
  return lib;
}

}  // namespace ordalg::fixtures
