#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ordalg/algebra.hpp"
#include "ordalg/colimit.hpp"
#include "ordalg/enumerate.hpp"
#include "ordalg/error.hpp"
#include "ordalg/fixtures.hpp"
#include "ordalg/monad.hpp"
#include "ordalg/poset.hpp"
#include "ordalg/report.hpp"
#include "ordalg/term.hpp"

namespace ordalg {

namespace detail {

inline std::string describe(const MonotoneMap& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    if (i) s += ",";
    s += f.dom().element(i) + "->" + f.cod().element(f(i));
  }
  return s + "]";
}

inline std::string describe(const ParallelPair& p) {
  return "f0=" + describe(p.f0) + " f1=" + describe(p.f1);
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

// ---- colimit suites ----------------------------------------------------------

/// Every exhaustively generated parallel pair has a surjective coinserter
/// passing its own universal-property check.
inline Report suite_coinserter_universal(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "coinserter-universal";
  for_all_parallel_pairs(size, [&](const ParallelPair& p) {
    CoinserterResult r = coinserter(p);
    const bool pass = r.c.surjective() && is_coinserter(p, r.c);
    report.record(pass, pass ? "" : detail::describe(p));
  });
  report.duration_ms = clock.ms();
  return report;
}

/// Reflexive coinserters commute with binary products: exhaustive over
/// pairs of reflexive pairs up to `size`, plus all combinations from the
/// fixed library.
inline Report suite_rci_products(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "rci-products";
  std::vector<ParallelPair> pairs;
  for_all_reflexive_pairs(size, [&](const ParallelPair& p) { pairs.push_back(p); });
  for (const auto& p : pairs)
    for (const auto& q : pairs) {
      const bool pass = check_product_commutation(p, q);
      report.record(pass, pass ? "" : detail::describe(p) + " x " + detail::describe(q));
    }
  const auto& lib = reflexive_pair_library();
  for (const auto& p : lib)
    for (const auto& q : lib) {
      const bool pass = check_product_commutation(p, q);
      report.record(pass, pass ? "" : "library: " + detail::describe(p) + " x " + detail::describe(q));
    }
  report.duration_ms = clock.ms();
  return report;
}

/// The endofunctors (-)^n preserve reflexive coinserters, n = 0..3.
inline Report suite_power_preservation(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "power-preservation";
  std::vector<ParallelPair> pairs;
  for_all_reflexive_pairs(std::min<std::size_t>(size, 2), [&](const ParallelPair& p) { pairs.push_back(p); });
  const auto& lib = reflexive_pair_library();
  pairs.insert(pairs.end(), lib.begin(), lib.end());
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& p : pairs) {
      const bool pass = check_power_preservation(n, p);
      report.record(pass, pass ? "" : "n=" + std::to_string(n) + " " + detail::describe(p));
    }
  report.duration_ms = clock.ms();
  return report;
}

/// P ⊗ X computed through the coinserter construction is order-isomorphic
/// to the product P × X.
inline Report suite_tensor_vs_product(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "tensor-vs-product";
  const auto posets = all_posets_upto(size);
  for (const auto& p : posets)
    for (const auto& x : posets) {
      FinitePoset tensor = tensor_via_coinserter(p, x);
      const bool pass = order_isomorphic(tensor, product(p, x).poset);
      report.record(pass, pass ? "" : "|P|=" + std::to_string(p.size()) + " |X|=" + std::to_string(x.size()));
    }
  report.duration_ms = clock.ms();
  return report;
}

/// Conical coequalizer universal property by exhaustive factorization
/// search: c∘f = c∘g, and every q merging f and g factors uniquely
/// through c.
inline Report suite_coequalizer_universal(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "coequalizer-universal";
  const auto posets = all_posets_upto(size);
  const std::size_t target_bound = std::min<std::size_t>(size, 2);
  const auto targets = all_posets_upto(target_bound);
  for (const auto& a : posets)
    for (const auto& b : posets) {
      const auto maps = all_monotone_assignments(a, b);
      for (const auto& fa : maps)
        for (const auto& ga : maps) {
          MonotoneMap f(a, b, fa), g(a, b, ga);
          CoinserterResult ce = coequalizer(f, g);
          bool pass = compose(ce.c, f) == compose(ce.c, g);
          for (const auto& d : targets) {
            if (!pass) break;
            for (const auto& qa : all_monotone_assignments(b, d)) {
              MonotoneMap q(b, d, qa);
              if (compose(q, f) != compose(q, g)) continue;
              std::size_t factorizations = 0;
              for (const auto& ha : all_monotone_assignments(ce.apex, d))
                if (compose(MonotoneMap(ce.apex, d, ha), ce.c) == q) ++factorizations;
              if (factorizations != 1) {
                pass = false;
                break;
              }
            }
          }
          report.record(pass, pass ? "" : "f=" + detail::describe(f) + " g=" + detail::describe(g));
        }
    }
  report.duration_ms = clock.ms();
  return report;
}

// ---- free-algebra decomposition -----------------------------------------------

/// The truncated free carrier is the coproduct over similarity classes of
/// the powers P^r: verified class by class through the canonical
/// variable-tuple bijection, plus the total count.
inline Report suite_free_decomposition(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "free-decomposition";
  const Signature sig{{"b", 2}};
  std::vector<std::pair<std::string, FinitePoset>> gens = {
      {"discrete2", fixtures::discrete2()}, {"two_chain", fixtures::two_chain()}};
  if (size >= 3) gens.emplace_back("three_chain", fixtures::three_chain());
  for (const auto& [pname, p] : gens)
    for (std::size_t depth = 0; depth <= 2; ++depth) {
      const TruncatedFreeAlgebra free = truncated_free(sig, p, depth);
      const auto classes = similarity_classes(sig, depth);
      bool pass = true;
      std::size_t expected_total = 0;
      for (const auto& cls : classes) {
        expected_total += detail::int_pow(p.size(), cls.slots);
        // members of this class, with their variable tuples in slot order
        std::vector<std::size_t> members;
        std::vector<std::vector<std::size_t>> tuples;
        for (std::size_t i = 0; i < free.terms.size(); ++i) {
          if (!similar(free.terms[i], cls.representative)) continue;
          members.push_back(i);
          std::vector<std::size_t> tuple;
          auto collect = [&](auto&& self, const ClassicalTerm& t) -> void {
            if (t.is_var) {
              tuple.push_back(p.index_of_checked(t.head));
              return;
            }
            for (const auto& arg : t.args) self(self, arg);
          };
          collect(collect, free.terms[i]);
          tuples.push_back(std::move(tuple));
        }
        if (members.size() != detail::int_pow(p.size(), cls.slots)) pass = false;
        std::set<std::vector<std::size_t>> distinct(tuples.begin(), tuples.end());
        if (distinct.size() != tuples.size()) pass = false;
        // the similarity order on the class must be the componentwise one
        for (std::size_t i = 0; i < members.size() && pass; ++i)
          for (std::size_t j = 0; j < members.size() && pass; ++j) {
            bool comp = true;
            for (std::size_t k = 0; k < cls.slots && comp; ++k) comp = p.le(tuples[i][k], tuples[j][k]);
            if (free.carrier.le(members[i], members[j]) != comp) pass = false;
          }
      }
      if (expected_total != free.terms.size()) pass = false;
      // distinct classes partition the carrier
      std::size_t covered = 0;
      for (const auto& cls : classes)
        for (const auto& t : free.terms)
          if (similar(t, cls.representative)) ++covered;
      if (covered != free.terms.size()) pass = false;
      report.record(pass, pass ? "" : pname + " depth " + std::to_string(depth));
    }
  report.duration_ms = clock.ms();
  return report;
}

// ---- HSP and homomorphism suites ------------------------------------------------

/// Varieties are closed under products, generated subalgebras and
/// homomorphic images, over the fixture library.
inline Report suite_hsp(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "hsp";
  for (const auto& fixture : fixtures::presentation_library()) {
    std::vector<const ContinuousAlgebra*> members;
    for (const auto& a : fixture.members)
      if (a.carrier().size() <= size) members.push_back(&a);
    for (const ContinuousAlgebra* a : members) {
      const bool member_ok = in_variety(*a, fixture.presentation);
      report.record(member_ok, member_ok ? "" : fixture.name + ": fixture member escapes the variety");
    }
    for (const ContinuousAlgebra* a : members)
      for (const ContinuousAlgebra* b : members) {
        const bool pass = in_variety(product_algebra(*a, *b).algebra, fixture.presentation);
        report.record(pass, pass ? "" : fixture.name + ": product escapes the variety");
      }
    for (const ContinuousAlgebra* a : members) {
      const std::size_t s = a->carrier().size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
        std::set<std::size_t> x;
        for (std::size_t i = 0; i < s; ++i)
          if ((mask >> i) & 1) x.insert(i);
        const bool pass = in_variety(generated_subalgebra(*a, x).algebra, fixture.presentation);
        report.record(pass, pass ? "" : fixture.name + ": subalgebra escapes the variety");
      }
    }
    for (const ContinuousAlgebra* a : members)
      for (const ContinuousAlgebra* b : members)
        for (const auto& assign : all_monotone_assignments(a->carrier(), b->carrier())) {
          MonotoneMap h(a->carrier(), b->carrier(), assign);
          if (!is_homomorphism(h, *a, *b)) continue;
          const bool pass = in_variety(image_algebra(h, *a, *b).algebra, fixture.presentation);
          report.record(pass, pass ? "" : fixture.name + ": image escapes the variety");
        }
  }
  report.duration_ms = clock.ms();
  return report;
}

/// Homomorphisms preserve definability: every precondition-satisfying
/// (A, B, h, t, env) instance passes check_hom_definability.
inline Report suite_hom_definability(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "hom-definability";
  for (const auto& fixture : fixtures::presentation_library()) {
    std::vector<const ContinuousAlgebra*> members;
    for (const auto& a : fixture.members)
      if (a.carrier().size() <= size) members.push_back(&a);
    std::vector<ExtendedTerm> terms;
    for (const auto& [name, t] : fixtures::term_library()) {
      try {
        check_symbols(t, fixture.presentation.sig);
        terms.push_back(t);
      } catch (const Error&) {
        continue;  // term uses symbols outside this signature
      }
    }
    for (const ContinuousAlgebra* a : members)
      for (const ContinuousAlgebra* b : members)
        for (const auto& assign : all_monotone_assignments(a->carrier(), b->carrier())) {
          MonotoneMap h(a->carrier(), b->carrier(), assign);
          if (!is_homomorphism(h, *a, *b)) continue;
          for (const auto& t : terms) {
            const auto vars = variable_support(t);
            detail::for_all_envs(*a, vars, [&](const Env& env) {
              if (interpret(*a, t, env)) {
                const bool pass = check_hom_definability(*a, *b, h, t, env);
                report.record(pass, pass ? "" : fixture.name + ": " + render(t));
              }
              return true;
            });
          }
        }
  }
  report.duration_ms = clock.ms();
  return report;
}

/// A continuous map completing a triangle under a dense (surjective)
/// homomorphism is itself a homomorphism.
inline Report suite_dense_triangle(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "dense-triangle";
  for (const auto& fixture : fixtures::presentation_library()) {
    std::vector<const ContinuousAlgebra*> members;
    for (const auto& a : fixture.members)
      if (a.carrier().size() <= size) members.push_back(&a);
    for (const ContinuousAlgebra* a : members)
      for (const ContinuousAlgebra* b1 : members)
        for (const auto& h1a : all_monotone_assignments(a->carrier(), b1->carrier())) {
          MonotoneMap h1(a->carrier(), b1->carrier(), h1a);
          if (!h1.surjective() || !is_homomorphism(h1, *a, *b1)) continue;
          for (const ContinuousAlgebra* b2 : members)
            for (const auto& pa : all_monotone_assignments(b1->carrier(), b2->carrier())) {
              MonotoneMap p(b1->carrier(), b2->carrier(), pa);
              MonotoneMap h2 = compose(p, h1);
              if (!is_homomorphism(h2, *a, *b2)) continue;
              const bool pass = check_dense_triangle(*a, *b1, *b2, h1, h2, p);
              report.record(pass, pass ? "" : fixture.name + ": triangle over " + detail::describe(h1));
            }
        }
  }
  report.duration_ms = clock.ms();
  return report;
}

// ---- factorization suite ---------------------------------------------------------

/// factorize splits every monotone map as a surjection onto the image
/// followed by an order-embedding, and diagonal_fill produces the unique
/// diagonal for squares over that factorization.
inline Report suite_factorization(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "factorization";
  const auto posets = all_posets_upto(std::min<std::size_t>(size, 3));
  for (const auto& a : posets)
    for (const auto& b : posets)
      for (const auto& fa : all_monotone_assignments(a, b)) {
        MonotoneMap f(a, b, fa);
        Factorization fac = factorize(f);
        bool pass = compose(fac.m, fac.e) == f && fac.e.surjective() && fac.m.injective() &&
                    fac.m.order_reflecting();
        // squares u : A -> I, u' : I -> B over (e, m) with m∘u = u'∘e
        for (const auto& ua : all_monotone_assignments(a, fac.image)) {
          if (!pass) break;
          MonotoneMap u(a, fac.image, ua);
          // u' is forced on the surjective e; skip candidates that do not
          // descend or whose induced map is not monotone
          std::vector<std::size_t> uprime_assign(fac.image.size());
          bool descends = true;
          std::vector<std::uint8_t> seen(fac.image.size(), 0);
          for (std::size_t i = 0; i < a.size() && descends; ++i) {
            const std::size_t cls = fac.e(i);
            const std::size_t val = fac.m(u(i));
            if (seen[cls] && uprime_assign[cls] != val) descends = false;
            uprime_assign[cls] = val;
            seen[cls] = 1;
          }
          if (!descends) continue;
          MonotoneMap uprime = [&]() -> MonotoneMap {
            try {
              return MonotoneMap(fac.image, b, uprime_assign);
            } catch (const Error&) {
              return MonotoneMap::identity(terminal_poset());  // sentinel
            }
          }();
          if (uprime.dom() != fac.image) continue;  // induced map was not monotone
          MonotoneMap d = diagonal_fill(u, fac.e, fac.m, uprime);
          if (compose(d, fac.e) != u || compose(fac.m, d) != uprime) pass = false;
          std::size_t diagonals = 0;
          for (const auto& da : all_monotone_assignments(fac.image, fac.image)) {
            MonotoneMap cand(fac.image, fac.image, da);
            if (compose(cand, fac.e) == u && compose(fac.m, cand) == uprime) ++diagonals;
          }
          if (diagonals != 1) pass = false;
        }
        report.record(pass, pass ? "" : detail::describe(f));
      }
  report.duration_ms = clock.ms();
  return report;
}

// ---- monad suites -----------------------------------------------------------------

/// Every algebra of the associated variety with carrier of at most `size`
/// elements, enumerated exhaustively. Unit symbols are forced to
/// projections and symbols reachable through variable renamings inherit
/// their tables, so only genuinely free symbols are enumerated; the final
/// membership filter keeps the enumeration sound.
inline std::vector<ContinuousAlgebra> enumerate_variety_algebras(const SFMonadPresentation& mp,
                                                                 std::size_t size) {
  const Signature sig = associated_signature(mp);
  const VarietyPresentation variety = associated_presentation(mp);
  std::vector<ContinuousAlgebra> out;

  struct SymbolPlan {
    std::string name;
    std::size_t arity = 0;
    enum { Projection, Derived, Generator } kind = Generator;
    std::size_t proj_index = 0;           // Projection
    std::string source;                   // Derived: symbol the table comes from
    std::vector<std::size_t> reindexing;  // Derived: argument selection
  };

  // plan tables stage by stage
  std::vector<SymbolPlan> plan;
  std::map<std::string, std::size_t> planned;  // symbol -> index in plan
  for (std::size_t n = 0; n <= mp.max_arity(); ++n) {
    const FinitePoset& tn = mp.stage(n);
    std::vector<std::optional<std::size_t>> eta_of(tn.size());
    for (std::size_t i = 0; i < n; ++i) eta_of[mp.eta(n, i)] = i;
    for (std::size_t s = 0; s < tn.size(); ++s) {
      SymbolPlan sp;
      sp.name = associated_symbol(n, tn.element(s));
      sp.arity = n;
      if (eta_of[s]) {
        sp.kind = SymbolPlan::Projection;
        sp.proj_index = *eta_of[s];
      } else {
        // a renaming derivation u*(tau) = s with u eta-valued pins this
        // table to an already-planned one, through laws (2) and (3)
        bool found = false;
        for (std::size_t k = 0; k <= mp.max_arity() && !found; ++k) {
          const FinitePoset& tk = mp.stage(k);
          const std::size_t total = detail::int_pow(n, k);
          for (std::size_t r = 0; r < total && !found; ++r) {
            const auto picks = detail::tuple_unrank(r, k, n);  // variable picks V_k -> V_n
            std::vector<std::size_t> u(k);
            for (std::size_t j = 0; j < k; ++j) u[j] = mp.eta(n, picks[j]);
            const MonotoneMap& ext = mp.extension(k, n, u);
            for (std::size_t tau = 0; tau < tk.size(); ++tau) {
              if (ext(tau) != s) continue;
              const std::string source = associated_symbol(k, tk.element(tau));
              if (!planned.count(source)) continue;
              sp.kind = SymbolPlan::Derived;
              sp.source = source;
              sp.reindexing = picks;
              found = true;
              break;
            }
          }
        }
      }
      planned[sp.name] = plan.size();
      plan.push_back(std::move(sp));
    }
  }

  for (const FinitePoset& carrier : all_posets_upto(size)) {
    const std::size_t s = carrier.size();
    // enumerate generator tables
    std::vector<std::size_t> generators;
    std::vector<std::vector<std::vector<std::size_t>>> choices;
    for (std::size_t i = 0; i < plan.size(); ++i)
      if (plan[i].kind == SymbolPlan::Generator) {
        generators.push_back(i);
        choices.push_back(all_monotone_assignments(power_poset(carrier, plan[i].arity), carrier));
      }
    std::vector<std::size_t> pick(generators.size(), 0);
    while (true) {
      std::map<std::string, std::vector<std::size_t>> ops;
      for (std::size_t g = 0; g < generators.size(); ++g) ops[plan[generators[g]].name] = choices[g][pick[g]];
      for (const auto& sp : plan) {
        if (sp.kind == SymbolPlan::Projection) {
          std::vector<std::size_t> table(detail::int_pow(s, sp.arity));
          for (std::size_t r = 0; r < table.size(); ++r)
            table[r] = detail::tuple_unrank(r, sp.arity, s)[sp.proj_index];
          ops[sp.name] = std::move(table);
        } else if (sp.kind == SymbolPlan::Derived) {
          const auto& src = ops.at(sp.source);
          std::vector<std::size_t> table(detail::int_pow(s, sp.arity));
          for (std::size_t r = 0; r < table.size(); ++r) {
            const auto args = detail::tuple_unrank(r, sp.arity, s);
            std::vector<std::size_t> selected(sp.reindexing.size());
            for (std::size_t j = 0; j < selected.size(); ++j) selected[j] = args[sp.reindexing[j]];
            table[r] = src[detail::tuple_rank(selected, s)];
          }
          ops[sp.name] = std::move(table);
        }
      }
      try {
        ContinuousAlgebra alg(sig, carrier, std::move(ops));
        if (in_variety(alg, variety)) out.push_back(std::move(alg));
      } catch (const Error&) {
        // non-monotone derived table: not a continuous algebra at all
      }
      // advance the odometer
      std::size_t g = 0;
      for (; g < generators.size(); ++g) {
        if (++pick[g] < choices[g].size()) break;
        pick[g] = 0;
      }
      if (g == generators.size()) break;
    }
  }
  return out;
}

/// Theorem-scale freeness for the fixture monads: the formula extension is
/// the unique homomorphic extension, against every variety algebra of
/// carrier size <= size.
inline Report suite_monad_freeness(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "monad-freeness";
  for (const auto& [name, monad] : fixtures::monad_library()) {
    const auto algebras = enumerate_variety_algebras(monad, size);
    for (std::size_t n = 0; n <= monad.max_arity(); ++n) {
      Report sub = verify_freeness(monad, n, algebras);
      report.instances += sub.instances;
      report.passes += sub.passes;
      for (const auto& c : sub.counterexamples) report.counterexamples.push_back(name + ": " + c);
    }
  }
  report.duration_ms = clock.ms();
  return report;
}

// ---- suite registry -----------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "coinserter-universal", "canonical-presentation", "rci-products", "power-preservation",
      "tensor-vs-product",    "coequalizer-universal",  "free-decomposition", "hsp",
      "hom-definability",     "dense-triangle",         "factorization",      "monad-freeness"};
  return names;
}

/// Every poset is the coinserter of its canonical pair of projections
/// from the discrete poset of order pairs.
inline Report suite_canonical_presentation(std::size_t size) {
  detail::Stopwatch clock;
  Report report;
  report.suite = "canonical-presentation";
  for (const auto& p : all_posets_upto(std::min<std::size_t>(size, 5))) {
    OrderPairs r = order_pairs(p);
    CoinserterResult c = coinserter(ParallelPair(r.pi0, r.pi1));
    const bool pass = order_isomorphic(c.apex, p);
    report.record(pass, pass ? "" : "|P|=" + std::to_string(p.size()));
  }
  report.duration_ms = clock.ms();
  return report;
}

inline Report run_suite(const std::string& name, std::size_t size) {
  if (name == "coinserter-universal") return suite_coinserter_universal(size);
  if (name == "canonical-presentation") return suite_canonical_presentation(size);
  if (name == "rci-products") return suite_rci_products(size);
  if (name == "power-preservation") return suite_power_preservation(size);
  if (name == "tensor-vs-product") return suite_tensor_vs_product(size);
  if (name == "coequalizer-universal") return suite_coequalizer_universal(size);
  if (name == "free-decomposition") return suite_free_decomposition(size);
  if (name == "hsp") return suite_hsp(size);
  if (name == "hom-definability") return suite_hom_definability(size);
  if (name == "dense-triangle") return suite_dense_triangle(size);
  if (name == "factorization") return suite_factorization(size);
  if (name == "monad-freeness") return suite_monad_freeness(size);
  throw Error(Errc::UnknownSuite, "'" + name + "'");
}

}  // namespace ordalg
