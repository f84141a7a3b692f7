#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ordalg/algebra.hpp"
#include "ordalg/colimit.hpp"
#include "ordalg/error.hpp"
#include "ordalg/fixtures.hpp"
#include "ordalg/monad.hpp"
#include "ordalg/poset.hpp"
#include "ordalg/report.hpp"
#include "ordalg/term.hpp"

namespace ordalg {

using json = nlohmann::json;

/// Named registry of loaded objects. Names come from file stems; built-in
/// fixtures are preloaded under their library names.
struct Workspace {
  std::map<std::string, FinitePoset> posets;
  std::map<std::string, MonotoneMap> maps;
  std::map<std::string, ParallelPair> pairs;
  std::map<std::string, ContinuousAlgebra> algebras;
  std::map<std::string, ExtendedTerm> terms;
  std::map<std::string, Equation> equations;
  std::map<std::string, VarietyPresentation> varieties;
  std::map<std::string, SFMonadPresentation> monads;

  template <typename T>
  static const T& lookup(const std::map<std::string, T>& reg, const std::string& name, const char* kind) {
    auto it = reg.find(name);
    if (it == reg.end()) throw Error(Errc::UnknownName, std::string(kind) + " '" + name + "'");
    return it->second;
  }
};

inline Workspace builtin_workspace() {
  Workspace ws;
  for (auto& [name, p] : fixtures::named_posets()) ws.posets.emplace(name, std::move(p));
  ws.algebras.emplace("sigma_const_top", fixtures::algebra_sigma_const_top());
  ws.algebras.emplace("sigma_identity", fixtures::algebra_sigma_identity());
  ws.algebras.emplace("sigma_swap", fixtures::algebra_sigma_swap());
  ws.algebras.emplace("meet_monoid", fixtures::algebra_meet_monoid());
  ws.algebras.emplace("meet_monoid3", fixtures::algebra_meet_monoid3());
  ws.algebras.emplace("trivial_monoid", fixtures::algebra_trivial_monoid());
  ws.algebras.emplace("diamond_meet", fixtures::algebra_diamond_meet());
  ws.varieties.emplace("monoid", fixtures::presentation_monoid());
  ws.varieties.emplace("monoid_power", fixtures::presentation_monoid_power());
  ws.varieties.emplace("semilattice", fixtures::presentation_semilattice());
  ws.varieties.emplace("sigma_top", fixtures::presentation_sigma_top());
  ws.varieties.emplace("inflationary", fixtures::presentation_inflationary());
  for (auto& [name, m] : fixtures::monad_library()) ws.monads.emplace(name, std::move(m));
  ws.monads.emplace("broken_lift", fixtures::broken_lift_monad());
  ws.monads.emplace("broken_exception", fixtures::broken_exception_monad());
  return ws;
}

// ---- serialization -----------------------------------------------------------

inline json poset_to_json(const FinitePoset& p) {
  json le = json::array();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (i != j && p.le(i, j)) le.push_back({p.element(i), p.element(j)});
  return json{{"kind", "poset"}, {"elements", p.elements()}, {"le", le}};
}

inline json map_to_json(const MonotoneMap& f) {
  json assign = json::object();
  for (std::size_t i = 0; i < f.dom().size(); ++i) assign[f.dom().element(i)] = f.cod().element(f(i));
  return json{{"kind", "map"}, {"assign", assign}};
}

inline json term_to_json(const ExtendedTerm& t) {
  switch (t.kind()) {
    case ExtendedTerm::Kind::Var:
      return json{{"var", t.name()}};
    case ExtendedTerm::Kind::Hole:
      return json{{"var", "□"}};
    case ExtendedTerm::Kind::Comp: {
      json args = json::array();
      for (const auto& a : t.args()) args.push_back(term_to_json(a));
      return json{{"op", t.name()}, {"args", args}};
    }
    case ExtendedTerm::Kind::Join: {
      const OmegaFamily& f = t.family();
      if (f.shape == OmegaFamily::Shape::EventuallyConstant) {
        json prefix = json::array();
        for (const auto& m : f.prefix) prefix.push_back(term_to_json(m));
        return json{{"join", {{"prefix", prefix}, {"tail", term_to_json(f.tail)}}}};
      }
      return json{{"join",
                   {{"base", term_to_json(f.tail)},
                    {"context", term_to_json(*f.context)},
                    {"hole", "□"}}}};
    }
  }
  return json{};
}

inline json report_to_json(const Report& r) {
  // wall-clock duration deliberately omitted: reports are byte-stable
  return json{{"suite", r.suite},
              {"instances", r.instances},
              {"passes", r.passes},
              {"counterexamples", r.counterexamples}};
}

// ---- parsing ------------------------------------------------------------------

namespace detail {

inline const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw Error(Errc::ParseError, std::string("missing field '") + name + "'");
  return *it;
}

inline std::vector<std::pair<std::string, std::string>> parse_pairs(const json& le) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!le.is_array()) throw Error(Errc::ParseError, "'le' must be an array of pairs");
  for (const auto& p : le) {
    if (!p.is_array() || p.size() != 2) throw Error(Errc::ParseError, "'le' entries must be [a, b] pairs");
    pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return pairs;
}

}  // namespace detail

inline FinitePoset poset_from_json(const json& j) {
  std::vector<std::string> elements = detail::field(j, "elements").get<std::vector<std::string>>();
  return make_poset(std::move(elements), detail::parse_pairs(detail::field(j, "le")));
}

inline MonotoneMap map_from_json(const json& j, const Workspace& ws) {
  const FinitePoset& dom = Workspace::lookup(ws.posets, detail::field(j, "dom").get<std::string>(), "poset");
  const FinitePoset& cod = Workspace::lookup(ws.posets, detail::field(j, "cod").get<std::string>(), "poset");
  std::map<std::string, std::string> assign;
  for (const auto& [k, v] : detail::field(j, "assign").items()) assign[k] = v.get<std::string>();
  return MonotoneMap::from_names(dom, cod, assign);
}

inline ParallelPair pair_from_json(const json& j, const Workspace& ws) {
  const MonotoneMap& f0 = Workspace::lookup(ws.maps, detail::field(j, "f0").get<std::string>(), "map");
  const MonotoneMap& f1 = Workspace::lookup(ws.maps, detail::field(j, "f1").get<std::string>(), "map");
  if (j.contains("delta"))
    return ParallelPair(f0, f1, Workspace::lookup(ws.maps, j["delta"].get<std::string>(), "map"));
  return ParallelPair(f0, f1);
}

inline Signature signature_from_json(const json& j) {
  Signature sig;
  for (const auto& [sym, arity] : j.items()) {
    if (!arity.is_number_unsigned()) throw Error(Errc::ParseError, "arity of '" + sym + "' must be >= 0");
    sig[sym] = arity.get<std::size_t>();
  }
  return sig;
}

inline ContinuousAlgebra algebra_from_json(const json& j, const Workspace& ws) {
  Signature sig = signature_from_json(detail::field(j, "signature"));
  const FinitePoset& carrier =
      Workspace::lookup(ws.posets, detail::field(j, "carrier").get<std::string>(), "poset");
  std::map<std::string, std::vector<std::size_t>> ops;
  for (const auto& [sym, rows] : detail::field(j, "ops").items()) {
    auto it = sig.find(sym);
    if (it == sig.end()) throw Error(Errc::ParseError, "table for unknown symbol '" + sym + "'");
    const std::size_t arity = it->second;
    std::vector<std::size_t> table(detail::int_pow(carrier.size(), arity), carrier.size());
    if (!rows.is_array()) throw Error(Errc::ParseError, "ops tables must be arrays of rows");
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != arity + 1)
        throw Error(Errc::ParseError, "row for '" + sym + "' must list " + std::to_string(arity) +
                                          " arguments and a result");
      std::vector<std::size_t> args(arity);
      for (std::size_t i = 0; i < arity; ++i) args[i] = carrier.index_of_checked(row[i].get<std::string>());
      table[detail::tuple_rank(args, carrier.size())] = carrier.index_of_checked(row[arity].get<std::string>());
    }
    for (std::size_t v : table)
      if (v >= carrier.size() && carrier.size() > 0)
        throw Error(Errc::ParseError, "table for '" + sym + "' does not cover every tuple");
    ops[sym] = std::move(table);
  }
  return ContinuousAlgebra(std::move(sig), carrier, std::move(ops));
}

inline ExtendedTerm term_from_json(const json& j, const std::string& hole_marker = "□") {
  if (j.contains("var")) {
    const std::string name = j["var"].get<std::string>();
    if (name == hole_marker) return ExtendedTerm::hole();
    return ExtendedTerm::var(name);
  }
  if (j.contains("op")) {
    std::vector<ExtendedTerm> args;
    for (const auto& a : detail::field(j, "args")) args.push_back(term_from_json(a, hole_marker));
    return ExtendedTerm::comp(j["op"].get<std::string>(), std::move(args));
  }
  if (j.contains("join")) {
    const json& join = j["join"];
    if (join.contains("prefix")) {
      std::vector<ExtendedTerm> prefix;
      for (const auto& m : join["prefix"]) prefix.push_back(term_from_json(m, hole_marker));
      return ExtendedTerm::join_eventually_constant(std::move(prefix),
                                                    term_from_json(detail::field(join, "tail"), hole_marker));
    }
    if (join.contains("base")) {
      const std::string marker =
          join.contains("hole") ? join["hole"].get<std::string>() : std::string("□");
      return ExtendedTerm::join_iterated(term_from_json(detail::field(join, "base"), hole_marker),
                                         term_from_json(detail::field(join, "context"), marker));
    }
    throw Error(Errc::ParseError, "join needs either 'prefix' or 'base'");
  }
  throw Error(Errc::ParseError, "term must be one of var / op / join");
}

inline Equation equation_from_json(const json& j) {
  return Equation{term_from_json(detail::field(j, "lhs")), term_from_json(detail::field(j, "rhs"))};
}

inline VarietyPresentation variety_from_json(const json& j) {
  Signature sig = signature_from_json(detail::field(j, "signature"));
  std::vector<Equation> eqs;
  for (const auto& e : detail::field(j, "equations")) eqs.push_back(equation_from_json(e));
  return VarietyPresentation(std::move(sig), std::move(eqs));
}

inline SFMonadPresentation monad_from_json(const json& j, const Workspace& ws) {
  const std::size_t max_arity = detail::field(j, "N").get<std::size_t>();
  const json& stages_json = detail::field(j, "stages");
  if (!stages_json.is_array() || stages_json.size() != max_arity + 1)
    throw Error(Errc::ParseError, "a monad with N=" + std::to_string(max_arity) + " needs " +
                                      std::to_string(max_arity + 1) + " stages");
  std::vector<FinitePoset> stages;
  std::vector<std::vector<std::size_t>> eta;
  for (std::size_t n = 0; n <= max_arity; ++n) {
    const json& st = stages_json[n];
    const FinitePoset& p =
        Workspace::lookup(ws.posets, detail::field(st, "poset").get<std::string>(), "poset");
    stages.push_back(p);
    std::vector<std::size_t> e(n);
    const json& eta_json = detail::field(st, "eta");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string var = "x" + std::to_string(i);
      if (!eta_json.contains(var)) throw Error(Errc::ParseError, "eta at stage " + std::to_string(n) +
                                                                     " missing '" + var + "'");
      e[i] = p.index_of_checked(eta_json[var].get<std::string>());
    }
    eta.push_back(std::move(e));
  }
  // extension tables keyed by "n->m:v0,v1,..."
  const json& extend_json = detail::field(j, "extend");
  auto extender = [&stages, &extend_json](std::size_t n, std::size_t m,
                                          std::span<const std::size_t> u) -> std::vector<std::size_t> {
    std::string key = std::to_string(n) + "->" + std::to_string(m) + ":";
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i) key += ",";
      key += stages[m].element(u[i]);
    }
    if (!extend_json.contains(key))
      throw Error(Errc::InvariantViolation, "extension table missing entry '" + key + "'");
    const json& table = extend_json[key];
    std::vector<std::size_t> assign(stages[n].size());
    for (std::size_t s = 0; s < stages[n].size(); ++s) {
      const std::string& name = stages[n].element(s);
      if (!table.contains(name))
        throw Error(Errc::InvariantViolation, "extension '" + key + "' missing '" + name + "'");
      assign[s] = stages[m].index_of_checked(table[name].get<std::string>());
    }
    return assign;
  };
  return SFMonadPresentation(std::move(stages), std::move(eta), extender);
}

// ---- file loading ----------------------------------------------------------------

inline json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
}

/// Loads one document into the workspace; the entry name is the file stem.
inline void load_file(Workspace& ws, const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  const std::string name = path.stem().string();
  const std::string kind = detail::field(j, "kind").get<std::string>();
  try {
    if (kind == "poset")
      ws.posets.insert_or_assign(name, poset_from_json(j));
    else if (kind == "map")
      ws.maps.insert_or_assign(name, map_from_json(j, ws));
    else if (kind == "pair")
      ws.pairs.insert_or_assign(name, pair_from_json(j, ws));
    else if (kind == "algebra")
      ws.algebras.insert_or_assign(name, algebra_from_json(j, ws));
    else if (kind == "term")
      ws.terms.insert_or_assign(name, term_from_json(detail::field(j, "term")));
    else if (kind == "equation")
      ws.equations.insert_or_assign(name, equation_from_json(j));
    else if (kind == "variety")
      ws.varieties.insert_or_assign(name, variety_from_json(j));
    else if (kind == "monad")
      ws.monads.insert_or_assign(name, monad_from_json(j, ws));
    else
      throw Error(Errc::ParseError, "unknown kind '" + kind + "'");
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError || e.code() == Errc::UnknownName) throw;
    throw Error(Errc::InvariantViolation, path.string() + ": " + e.what());
  }
}

/// Loads every .json file in a directory, resolving cross-references by
/// processing object kinds in dependency order and files alphabetically.
inline void load_directory(Workspace& ws, const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, std::filesystem::path>> entries;  // (kind, path)
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    const json j = parse_json_file(e.path());
    entries.emplace_back(detail::field(j, "kind").get<std::string>(), e.path());
  }
  const std::vector<std::string> order = {"poset", "map", "pair", "algebra", "term", "equation", "variety",
                                          "monad"};
  std::sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
    const auto rank = [&](const std::string& k) {
      for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] == k) return i;
      return order.size();
    };
    if (rank(a.first) != rank(b.first)) return rank(a.first) < rank(b.first);
    return a.second.filename() < b.second.filename();
  });
  for (const auto& [kind, path] : entries) load_file(ws, path);
}

}  // namespace ordalg
