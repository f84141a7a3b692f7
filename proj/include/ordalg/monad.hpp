#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordalg/algebra.hpp"
#include "ordalg/error.hpp"
#include "ordalg/poset.hpp"
#include "ordalg/report.hpp"
#include "ordalg/term.hpp"

namespace ordalg {

/// A strongly finitary monad consumed through its finite-arity Kleisli
/// data: stage posets T_0..T_N, units η_n : V_n -> T_n, and an extension
/// table assigning to every u : V_n -> T_m a monotone u* : T_n -> T_m.
/// Structural well-formedness is enforced here; the monad laws are a
/// separate, reportable check so that broken presentations can be built.
class SFMonadPresentation {
 public:
  using Extender =
      std::function<std::vector<std::size_t>(std::size_t n, std::size_t m, std::span<const std::size_t> u)>;

  SFMonadPresentation(std::vector<FinitePoset> stages, std::vector<std::vector<std::size_t>> eta,
                      const Extender& extend)
      : stages_(std::move(stages)), eta_(std::move(eta)) {
    if (stages_.empty()) throw Error(Errc::InvariantViolation, "a presentation needs at least stage 0");
    if (eta_.size() != stages_.size()) throw Error(Errc::InvariantViolation, "one unit per stage required");
    for (std::size_t n = 0; n < stages_.size(); ++n) {
      if (eta_[n].size() != n) throw Error(Errc::InvariantViolation, "unit at stage " + std::to_string(n) +
                                                                        " must assign exactly the variables");
      for (std::size_t v : eta_[n])
        if (v >= stages_[n].size()) throw Error(Errc::InvariantViolation, "unit target out of range");
    }
    const std::size_t count = stages_.size();
    extend_.resize(count);
    for (std::size_t n = 0; n < count; ++n) {
      extend_[n].resize(count);
      for (std::size_t m = 0; m < count; ++m) {
        const std::size_t total = detail::int_pow(stages_[m].size(), n);
        extend_[n][m].reserve(total);
        for (std::size_t rank = 0; rank < total; ++rank) {
          const auto u = detail::tuple_unrank(rank, n, stages_[m].size());
          std::vector<std::size_t> assign = extend(n, m, u);
          extend_[n][m].emplace_back(stages_[n], stages_[m], std::move(assign));
        }
      }
    }
  }

  std::size_t max_arity() const { return stages_.size() - 1; }
  const FinitePoset& stage(std::size_t n) const {
    if (n >= stages_.size()) throw Error(Errc::ArityOutOfRange, "stage " + std::to_string(n));
    return stages_[n];
  }
  std::size_t eta(std::size_t n, std::size_t i) const {
    if (n >= stages_.size()) throw Error(Errc::ArityOutOfRange, "stage " + std::to_string(n));
    return eta_[n].at(i);
  }
  const std::vector<std::size_t>& eta_row(std::size_t n) const { return eta_[n]; }

  /// The presentation's u* for u : V_n -> T_m (indices into T_m).
  const MonotoneMap& extension(std::size_t n, std::size_t m, std::span<const std::size_t> u) const {
    if (n >= stages_.size() || m >= stages_.size())
      throw Error(Errc::ArityOutOfRange, "arity pair (" + std::to_string(n) + "," + std::to_string(m) + ")");
    if (u.size() != n) throw Error(Errc::InvariantViolation, "u must assign exactly the variables");
    for (std::size_t v : u)
      if (v >= stages_[m].size()) throw Error(Errc::UnknownName, "u target out of range");
    return extend_[n][m][detail::tuple_rank(u, stages_[m].size())];
  }

 private:
  std::vector<FinitePoset> stages_;
  std::vector<std::vector<std::size_t>> eta_;
  std::vector<std::vector<std::vector<MonotoneMap>>> extend_;  // [n][m][rank(u)]
};

inline const MonotoneMap& kleisli_extend(const SFMonadPresentation& mp, std::size_t n, std::size_t m,
                                         std::span<const std::size_t> u) {
  return mp.extension(n, m, u);
}

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string witness) {
    ok = false;
    violations.push_back(std::move(witness));
  }
};

/// Exhaustive check of the presentation laws over all arities <= N:
/// unit ((η_n)* = id), extension (u*∘η_n = u), associativity
/// ((v*∘u)* = v*∘u*), and enrichment (u ⊑ u' implies u* ⊑ u'*).
inline ValidationReport validate_presentation(const SFMonadPresentation& mp) {
  ValidationReport report;
  const std::size_t stages = mp.max_arity() + 1;
  for (std::size_t n = 0; n < stages; ++n) {
    const MonotoneMap& etaext = mp.extension(n, n, mp.eta_row(n));
    if (etaext != MonotoneMap::identity(mp.stage(n)))
      report.fail("unit law fails at stage " + std::to_string(n));
  }
  for (std::size_t n = 0; n < stages; ++n)
    for (std::size_t m = 0; m < stages; ++m) {
      const std::size_t total = detail::int_pow(mp.stage(m).size(), n);
      for (std::size_t rank = 0; rank < total; ++rank) {
        const auto u = detail::tuple_unrank(rank, n, mp.stage(m).size());
        const MonotoneMap& ext = mp.extension(n, m, u);
        for (std::size_t i = 0; i < n; ++i)
          if (ext(mp.eta(n, i)) != u[i])
            report.fail("extension law fails: u*∘η ≠ u at n=" + std::to_string(n) + " m=" +
                        std::to_string(m) + " x" + std::to_string(i));
        // enrichment against pointwise-larger u'
        for (std::size_t rank2 = 0; rank2 < total; ++rank2) {
          const auto u2 = detail::tuple_unrank(rank2, n, mp.stage(m).size());
          bool below = true;
          for (std::size_t i = 0; i < n && below; ++i) below = mp.stage(m).le(u[i], u2[i]);
          if (!below) continue;
          const MonotoneMap& ext2 = mp.extension(n, m, u2);
          if (!pointwise_le(ext, ext2))
            report.fail("enrichment fails between u ranks " + std::to_string(rank) + "," +
                        std::to_string(rank2) + " at n=" + std::to_string(n) + " m=" + std::to_string(m));
        }
      }
    }
  for (std::size_t n = 0; n < stages; ++n)
    for (std::size_t m = 0; m < stages; ++m)
      for (std::size_t p = 0; p < stages; ++p) {
        const std::size_t totalu = detail::int_pow(mp.stage(m).size(), n);
        const std::size_t totalv = detail::int_pow(mp.stage(p).size(), m);
        for (std::size_t ru = 0; ru < totalu; ++ru) {
          const auto u = detail::tuple_unrank(ru, n, mp.stage(m).size());
          for (std::size_t rv = 0; rv < totalv; ++rv) {
            const auto v = detail::tuple_unrank(rv, m, mp.stage(p).size());
            const MonotoneMap& vext = mp.extension(m, p, v);
            std::vector<std::size_t> vu(n);
            for (std::size_t i = 0; i < n; ++i) vu[i] = vext(u[i]);
            if (mp.extension(n, p, vu) != compose(vext, mp.extension(n, m, u)))
              report.fail("associativity fails at n=" + std::to_string(n) + " m=" + std::to_string(m) +
                          " p=" + std::to_string(p) + " u=" + std::to_string(ru) + " v=" + std::to_string(rv));
          }
        }
      }
  return report;
}

// ---- associated signature and variety -------------------------------------

/// Symbols are indexed by arity; the same element name at two arities
/// yields two distinct symbols.
inline std::string associated_symbol(std::size_t n, const std::string& element) {
  return std::to_string(n) + ":" + element;
}

/// n-ary symbols = elements of T_n, for n <= N.
inline Signature associated_signature(const SFMonadPresentation& mp) {
  Signature sig;
  for (std::size_t n = 0; n <= mp.max_arity(); ++n)
    for (const auto& e : mp.stage(n).elements()) sig[associated_symbol(n, e)] = n;
  return sig;
}

namespace detail {

inline std::vector<ExtendedTerm> variable_tuple(std::size_t m) {
  std::vector<ExtendedTerm> vars;
  vars.reserve(m);
  for (std::size_t i = 0; i < m; ++i) vars.push_back(ExtendedTerm::var("x" + std::to_string(i)));
  return vars;
}

inline ExtendedTerm symbol_on_vars(std::size_t n, const std::string& element, std::size_t m) {
  return ExtendedTerm::comp(associated_symbol(n, element), variable_tuple(m));
}

}  // namespace detail

/// The defining equations of the associated variety:
///  (1) the order of each T_n, as encoded inequations between symbols —
///      on a finite T_n every ω-chain is eventually constant with join the
///      eventual value, so the chain equations are generated by these;
///  (2) u*(σ)(x_i) = σ(u(x_0),...,u(x_{n-1})) for all u : V_n -> T_m;
///  (3) η_n(x_i) = x_i.
inline std::vector<Equation> associated_equations(const SFMonadPresentation& mp) {
  std::vector<Equation> eqs;
  const std::size_t stages = mp.max_arity() + 1;
  for (std::size_t n = 0; n < stages; ++n) {
    const FinitePoset& tn = mp.stage(n);
    for (std::size_t s = 0; s < tn.size(); ++s)
      for (std::size_t t = 0; t < tn.size(); ++t) {
        if (s == t || !tn.le(s, t)) continue;
        ExtendedTerm lo = ExtendedTerm::comp(associated_symbol(n, tn.element(s)), detail::variable_tuple(n));
        ExtendedTerm hi = ExtendedTerm::comp(associated_symbol(n, tn.element(t)), detail::variable_tuple(n));
        eqs.push_back(encode_inequation(lo, hi));
      }
  }
  for (std::size_t n = 0; n < stages; ++n)
    for (std::size_t m = 0; m < stages; ++m) {
      const FinitePoset& tn = mp.stage(n);
      const FinitePoset& tm = mp.stage(m);
      const std::size_t total = detail::int_pow(tm.size(), n);
      for (std::size_t rank = 0; rank < total; ++rank) {
        const auto u = detail::tuple_unrank(rank, n, tm.size());
        const MonotoneMap& ext = mp.extension(n, m, u);
        for (std::size_t s = 0; s < tn.size(); ++s) {
          ExtendedTerm lhs = detail::symbol_on_vars(m, tm.element(ext(s)), m);
          std::vector<ExtendedTerm> args;
          args.reserve(n);
          for (std::size_t i = 0; i < n; ++i) args.push_back(detail::symbol_on_vars(m, tm.element(u[i]), m));
          ExtendedTerm rhs = ExtendedTerm::comp(associated_symbol(n, tn.element(s)), std::move(args));
          eqs.push_back(Equation{std::move(lhs), std::move(rhs)});
        }
      }
    }
  for (std::size_t n = 0; n < stages; ++n)
    for (std::size_t i = 0; i < n; ++i) {
      ExtendedTerm lhs = detail::symbol_on_vars(n, mp.stage(n).element(mp.eta(n, i)), n);
      eqs.push_back(Equation{std::move(lhs), ExtendedTerm::var("x" + std::to_string(i))});
    }
  return eqs;
}

inline VarietyPresentation associated_presentation(const SFMonadPresentation& mp) {
  return VarietyPresentation(associated_signature(mp), associated_equations(mp));
}

/// The free algebra on V_n, as an algebra for the associated signature:
/// the m-ary symbol τ acts on a tuple a : V_m -> T_n by a*(τ).
inline ContinuousAlgebra tn_algebra(const SFMonadPresentation& mp, std::size_t n) {
  if (n > mp.max_arity()) throw Error(Errc::ArityOutOfRange, "stage " + std::to_string(n));
  const FinitePoset& tn = mp.stage(n);
  std::map<std::string, std::vector<std::size_t>> ops;
  for (std::size_t m = 0; m <= mp.max_arity(); ++m) {
    const FinitePoset& tm = mp.stage(m);
    for (std::size_t tau = 0; tau < tm.size(); ++tau) {
      const std::size_t count = detail::int_pow(tn.size(), m);
      std::vector<std::size_t> table(count);
      for (std::size_t r = 0; r < count; ++r) {
        const auto a = detail::tuple_unrank(r, m, tn.size());
        table[r] = mp.extension(m, n, a)(tau);
      }
      ops[associated_symbol(m, tm.element(tau))] = std::move(table);
    }
  }
  return ContinuousAlgebra(associated_signature(mp), tn, std::move(ops));
}

// ---- Eilenberg-Moore data ---------------------------------------------------

/// Finite-arity evaluation data for a monad algebra: ev[n] maps a pair
/// (σ in T_n, tuple a : V_n -> A) to an element of A, laid out as
/// σ * |A|^n + rank(a).
struct EMAlgebraData {
  FinitePoset carrier;
  std::vector<std::vector<std::size_t>> ev;
};

inline ValidationReport validate_em_data(const SFMonadPresentation& mp, const EMAlgebraData& d) {
  ValidationReport report;
  const std::size_t stages = mp.max_arity() + 1;
  const std::size_t s = d.carrier.size();
  if (d.ev.size() != stages) {
    report.fail("evaluation data must cover every stage");
    return report;
  }
  for (std::size_t n = 0; n < stages; ++n) {
    if (d.ev[n].size() != mp.stage(n).size() * detail::int_pow(s, n)) {
      report.fail("evaluation table size mismatch at stage " + std::to_string(n));
      return report;
    }
    for (std::size_t v : d.ev[n])
      if (v >= s) {
        report.fail("evaluation leaves the carrier at stage " + std::to_string(n));
        return report;
      }
  }
  auto ev = [&](std::size_t n, std::size_t sigma, std::span<const std::size_t> a) {
    return d.ev[n][sigma * detail::int_pow(s, n) + detail::tuple_rank(a, s)];
  };
  for (std::size_t n = 0; n < stages; ++n) {
    const std::size_t tuples = detail::int_pow(s, n);
    for (std::size_t r = 0; r < tuples; ++r) {
      const auto a = detail::tuple_unrank(r, n, s);
      for (std::size_t i = 0; i < n; ++i)
        if (ev(n, mp.eta(n, i), a) != a[i])
          report.fail("unit law fails at stage " + std::to_string(n) + " x" + std::to_string(i));
      // monotonicity in (σ, a)
      for (std::size_t r2 = 0; r2 < tuples; ++r2) {
        const auto a2 = detail::tuple_unrank(r2, n, s);
        bool below = true;
        for (std::size_t i = 0; i < n && below; ++i) below = d.carrier.le(a[i], a2[i]);
        if (!below) continue;
        for (std::size_t s1 = 0; s1 < mp.stage(n).size(); ++s1)
          for (std::size_t s2 = 0; s2 < mp.stage(n).size(); ++s2)
            if (mp.stage(n).le(s1, s2) && !d.carrier.le(ev(n, s1, a), ev(n, s2, a2)))
              report.fail("evaluation not monotone at stage " + std::to_string(n));
      }
    }
  }
  for (std::size_t n = 0; n < stages; ++n)
    for (std::size_t m = 0; m < stages; ++m) {
      const std::size_t totalu = detail::int_pow(mp.stage(m).size(), n);
      const std::size_t tuples = detail::int_pow(s, m);
      for (std::size_t ru = 0; ru < totalu; ++ru) {
        const auto u = detail::tuple_unrank(ru, n, mp.stage(m).size());
        const MonotoneMap& ext = mp.extension(n, m, u);
        for (std::size_t r = 0; r < tuples; ++r) {
          const auto a = detail::tuple_unrank(r, m, s);
          std::vector<std::size_t> inner(n);
          for (std::size_t j = 0; j < n; ++j) inner[j] = ev(m, u[j], a);
          for (std::size_t sigma = 0; sigma < mp.stage(n).size(); ++sigma)
            if (ev(m, ext(sigma), a) != ev(n, sigma, inner))
              report.fail("substitution law fails at n=" + std::to_string(n) + " m=" + std::to_string(m) +
                          " σ=" + mp.stage(n).element(sigma));
        }
      }
    }
  return report;
}

/// The Σ-algebra of an Eilenberg-Moore algebra: σ_A(a) = ev_n(σ, a).
inline ContinuousAlgebra em_to_sigma_algebra(const SFMonadPresentation& mp, const EMAlgebraData& d) {
  ValidationReport v = validate_em_data(mp, d);
  if (!v.ok) throw Error(Errc::InvalidEMData, v.violations.front());
  const std::size_t s = d.carrier.size();
  std::map<std::string, std::vector<std::size_t>> ops;
  for (std::size_t n = 0; n <= mp.max_arity(); ++n) {
    const std::size_t tuples = detail::int_pow(s, n);
    for (std::size_t sigma = 0; sigma < mp.stage(n).size(); ++sigma) {
      std::vector<std::size_t> table(tuples);
      for (std::size_t r = 0; r < tuples; ++r) table[r] = d.ev[n][sigma * tuples + r];
      ops[associated_symbol(n, mp.stage(n).element(sigma))] = std::move(table);
    }
  }
  return ContinuousAlgebra(associated_signature(mp), d.carrier, std::move(ops));
}

// ---- free extensions --------------------------------------------------------

/// The extension f̄ : T_n -> A of f : V_n -> A along η_n, given by
/// f̄(σ) = σ_A(f(x_0),...,f(x_{n-1})). Requires A in the associated
/// variety; membership is what makes f̄ monotone and homomorphic.
inline MonotoneMap free_extension(const SFMonadPresentation& mp, std::size_t n, const ContinuousAlgebra& a,
                                  const std::vector<std::size_t>& f) {
  if (n > mp.max_arity()) throw Error(Errc::ArityOutOfRange, "stage " + std::to_string(n));
  if (f.size() != n) throw Error(Errc::InvariantViolation, "f must assign exactly the variables");
  if (!in_variety(a, associated_presentation(mp)))
    throw Error(Errc::NotInVariety, "algebra does not satisfy the associated equations");
  const FinitePoset& tn = mp.stage(n);
  std::vector<std::size_t> assign(tn.size());
  for (std::size_t sigma = 0; sigma < tn.size(); ++sigma)
    assign[sigma] = a.apply(associated_symbol(n, tn.element(sigma)), f);
  return MonotoneMap(tn, a.carrier(), std::move(assign));
}

namespace detail {

inline bool extends_f(const SFMonadPresentation& mp, std::size_t n, const std::vector<std::size_t>& h,
                      const std::vector<std::size_t>& f) {
  for (std::size_t i = 0; i < n; ++i)
    if (h[mp.eta(n, i)] != f[i]) return false;
  return true;
}

inline bool is_sigma_hom_from_tn(const SFMonadPresentation& mp, std::size_t n, const ContinuousAlgebra& tnalg,
                                 const ContinuousAlgebra& a, const std::vector<std::size_t>& h) {
  const std::size_t tsize = mp.stage(n).size();
  for (std::size_t m = 0; m <= mp.max_arity(); ++m) {
    const FinitePoset& tm = mp.stage(m);
    const std::size_t tuples = int_pow(tsize, m);
    for (std::size_t tau = 0; tau < tm.size(); ++tau) {
      const std::string sym = associated_symbol(m, tm.element(tau));
      for (std::size_t r = 0; r < tuples; ++r) {
        const auto args = tuple_unrank(r, m, tsize);
        std::vector<std::size_t> mapped(m);
        for (std::size_t i = 0; i < m; ++i) mapped[i] = h[args[i]];
        if (h[tnalg.apply(sym, args)] != a.apply(sym, mapped)) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Desk-scale freeness check: for every listed algebra A (which must lie
/// in the associated variety) and every f : V_n -> A, the formula
/// extension exists, extends f, is a Σ-homomorphism, and is the unique
/// such monotone map (uniqueness by exhaustive enumeration).
inline Report verify_freeness(const SFMonadPresentation& mp, std::size_t n,
                              std::span<const ContinuousAlgebra> algebras) {
  if (n > mp.max_arity()) throw Error(Errc::ArityOutOfRange, "stage " + std::to_string(n));
  const VarietyPresentation variety = associated_presentation(mp);
  for (const auto& a : algebras)
    if (!in_variety(a, variety)) throw Error(Errc::NotInVariety, "a listed algebra fails the equations");
  Report report;
  report.suite = "monad-freeness(n=" + std::to_string(n) + ")";
  const ContinuousAlgebra tnalg = tn_algebra(mp, n);
  for (std::size_t ai = 0; ai < algebras.size(); ++ai) {
    const ContinuousAlgebra& a = algebras[ai];
    const std::size_t s = a.carrier().size();
    const auto candidates = all_monotone_assignments(mp.stage(n), a.carrier());
    const std::size_t total = detail::int_pow(s, n);
    for (std::size_t rf = 0; rf < total; ++rf) {
      const auto f = detail::tuple_unrank(rf, n, s);
      const std::string witness = "algebra #" + std::to_string(ai) + ", f rank " + std::to_string(rf);
      bool pass = true;
      std::optional<std::vector<std::size_t>> formula;
      try {
        MonotoneMap ext = free_extension(mp, n, a, f);
        formula = ext.assignment();
        if (!detail::extends_f(mp, n, *formula, f)) pass = false;
        if (pass && !detail::is_sigma_hom_from_tn(mp, n, tnalg, a, *formula)) pass = false;
      } catch (const Error&) {
        pass = false;
      }
      if (pass) {
        std::size_t hits = 0;
        for (const auto& h : candidates)
          if (detail::extends_f(mp, n, h, f) && detail::is_sigma_hom_from_tn(mp, n, tnalg, a, h)) {
            ++hits;
            if (h != *formula) pass = false;
          }
        if (hits != 1) pass = false;
      }
      report.record(pass, witness);
    }
  }
  return report;
}

}  // namespace ordalg
