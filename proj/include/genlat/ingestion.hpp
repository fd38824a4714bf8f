#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "genlat/builders.hpp"
#include "genlat/gen_lattice.hpp"
#include "genlat/poset.hpp"
#include "genlat/util.hpp"

namespace genlat {

using Json = nlohmann::json;

struct LoadedLattice {
  GenLattice lattice;
  std::string kind;
  std::vector<std::string> gen_names;          // display names, one per generator
  std::optional<FinitePoset> source_poset;     // for "poset" inputs: the ground poset
};

namespace detail {

inline GenSet parse_index_set(const Json& arr, int n, const char* what) {
  GenSet s;
  if (!arr.is_array()) fail(ErrorCode::ParseError, std::string(what) + " must be an array");
  for (const auto& v : arr) {
    if (!v.is_number_integer()) fail(ErrorCode::ParseError, std::string(what) + " entries must be integers");
    int i = v.get<int>();
    if (i < 1 || i > n)
      fail(ErrorCode::ParseError,
           std::string(what) + " index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    s.set(i - 1);
  }
  return s;
}

inline int require_int(const Json& j, const char* key, int lo, int hi) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(ErrorCode::ParseError, std::string("missing integer field \"") + key + "\"");
  int v = j[key].get<int>();
  if (v < lo || v > hi)
    fail(ErrorCode::ParseError, std::string("field \"") + key + "\" = " + std::to_string(v) +
                                    " outside " + std::to_string(lo) + ".." + std::to_string(hi));
  return v;
}

}  // namespace detail

inline LoadedLattice load_lattice(const Json& j, Limits limits = {}) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(ErrorCode::ParseError, "lattice spec must be an object with a \"kind\" string");
  std::string kind = j["kind"].get<std::string>();

  if (kind == "explicit") {
    int n = detail::require_int(j, "generators", 0, limits.max_generators);
    if (!j.contains("closed_sets") || !j["closed_sets"].is_array())
      fail(ErrorCode::ParseError, "explicit spec needs a \"closed_sets\" array");
    std::vector<GenSet> family;
    for (const auto& arr : j["closed_sets"])
      family.push_back(detail::parse_index_set(arr, n, "closed set"));
    {
      auto sorted = family;
      std::sort(sorted.begin(), sorted.end(), GenSet::canonical_less);
      for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
          fail(ErrorCode::ParseError, "closed set " + sorted[i].str() + " listed twice");
    }
    LoadedLattice out{explicit_lattice(n, std::move(family), limits), kind, {}, std::nullopt};
    if (j.contains("join_table")) {
      const auto& jt = j["join_table"];
      std::size_t N = out.lattice.size();
      if (!jt.is_array() || jt.size() != N)
        fail(ErrorCode::ParseError, "join_table must be a square array of element ids");
      for (std::size_t a = 0; a < N; ++a) {
        if (!jt[a].is_array() || jt[a].size() != N)
          fail(ErrorCode::ParseError, "join_table must be a square array of element ids");
        for (std::size_t b = 0; b < N; ++b) {
          long long v = jt[a][b].is_number_integer() ? jt[a][b].get<long long>() : -1;
          if (v != static_cast<long long>(out.lattice.join(static_cast<ElementId>(a),
                                                           static_cast<ElementId>(b))))
            fail(ErrorCode::ParseError, "join_table disagrees with the closed-set joins at (" +
                                            std::to_string(a) + "," + std::to_string(b) + ")");
        }
      }
    }
    for (int i = 0; i < n; ++i) out.gen_names.push_back(std::to_string(i + 1));
    return out;
  }

  if (kind == "graph") {
    int vertices = detail::require_int(j, "vertices", 0, 1 << 20);
    if (!j.contains("edges") || !j["edges"].is_array())
      fail(ErrorCode::ParseError, "graph spec needs an \"edges\" array");
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> names;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        fail(ErrorCode::ParseError, "each edge must be a pair of vertex numbers");
      int u = e[0].get<int>(), v = e[1].get<int>();
      if (u < 1 || v < 1 || u > vertices || v > vertices)
        fail(ErrorCode::ParseError, "edge endpoint outside 1.." + std::to_string(vertices));
      edges.push_back({u - 1, v - 1});
      names.push_back(std::to_string(u) + "-" + std::to_string(v));
    }
    return {graph_flat_lattice(vertices, edges, limits), kind, std::move(names), std::nullopt};
  }

  if (kind == "poset") {
    if (!j.contains("elements") || !j["elements"].is_array())
      fail(ErrorCode::ParseError, "poset spec needs an \"elements\" array of names");
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    for (const auto& v : j["elements"]) {
      if (!v.is_string()) fail(ErrorCode::ParseError, "poset element names must be strings");
      std::string s = v.get<std::string>();
      if (index.count(s)) fail(ErrorCode::ParseError, "poset element \"" + s + "\" listed twice");
      index.emplace(s, static_cast<int>(names.size()));
      names.push_back(s);
    }
    std::size_t n = names.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    if (j.contains("relations")) {
      if (!j["relations"].is_array()) fail(ErrorCode::ParseError, "\"relations\" must be an array");
      for (const auto& e : j["relations"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
          fail(ErrorCode::ParseError, "each relation must be a pair of element names");
        auto a = index.find(e[0].get<std::string>()), b = index.find(e[1].get<std::string>());
        if (a == index.end() || b == index.end())
          fail(ErrorCode::ParseError, "relation mentions an unknown element");
        rel[a->second][b->second] = true;
      }
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        if (rel[a][k])
          for (std::size_t b = 0; b < n; ++b)
            if (rel[k][b]) rel[a][b] = true;
    FinitePoset P = FinitePoset::from_leq(
        n, [&rel](int a, int b) { return rel[a][b]; }, names);
    return {ideal_lattice(P, limits), kind, std::move(names), std::move(P)};
  }

  if (kind == "builtin") {
    if (!j.contains("name") || !j["name"].is_string())
      fail(ErrorCode::ParseError, "builtin spec needs a \"name\" string");
    std::string name = j["name"].get<std::string>();
    if (name == "boolean") {
      int n = detail::require_int(j, "n", 0, limits.max_generators);
      LoadedLattice out{GenLattice::boolean_lattice(n, limits), kind, {}, std::nullopt};
      for (int i = 0; i < n; ++i) out.gen_names.push_back(std::to_string(i + 1));
      return out;
    }
    if (name == "chain") {
      int n = detail::require_int(j, "n", 0, limits.max_generators);
      LoadedLattice out{GenLattice::chain_lattice(n, limits), kind, {}, std::nullopt};
      for (int i = 0; i < n; ++i) out.gen_names.push_back(std::to_string(i + 1));
      return out;
    }
    if (name == "partition") {
      int n = detail::require_int(j, "n", 0, 16);
      std::vector<std::string> names;
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) names.push_back(std::to_string(a) + "-" + std::to_string(b));
      return {partition_lattice(n, limits), kind, std::move(names), std::nullopt};
    }
    if (name == "uniform") {
      int n = detail::require_int(j, "n", 0, limits.max_generators);
      int k = detail::require_int(j, "k", 1, 64);
      LoadedLattice out{uniform_lattice(k, n, limits), kind, {}, std::nullopt};
      for (int i = 0; i < n; ++i) out.gen_names.push_back(std::to_string(i + 1));
      return out;
    }
    fail(ErrorCode::ParseError, "unknown builtin \"" + name + "\"");
  }

  fail(ErrorCode::ParseError, "unknown lattice kind \"" + kind + "\"");
}

inline LoadedLattice load_lattice_text(const std::string& text, Limits limits = {}) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::ParseError, "input is not valid JSON");
  return load_lattice(j, limits);
}

inline LoadedLattice load_lattice_file(const std::string& path, Limits limits = {}) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_lattice_text(ss.str(), limits);
}

inline Json save_lattice(const GenLattice& L) {
  Json j;
  j["kind"] = "explicit";
  j["generators"] = L.gen_count();
  Json sets = Json::array();
  for (ElementId e = 0; e < L.size(); ++e) {
    Json arr = Json::array();
    for (int i : L.closed_set(e).indices()) arr.push_back(i + 1);
    sets.push_back(arr);
  }
  j["closed_sets"] = sets;
  return j;
}

inline Json poset_to_json(const FinitePoset& P) {
  Json j;
  Json elems = Json::array();
  for (std::size_t e = 0; e < P.size(); ++e) {
    Json o;
    o["id"] = e;
    o["rank"] = P.heights()[e];
    o["label"] = P.label(static_cast<int>(e));
    elems.push_back(o);
  }
  Json covers = Json::array();
  for (std::size_t e = 0; e < P.size(); ++e)
    for (int u : P.upper_covers(static_cast<int>(e))) covers.push_back(Json::array({e, u}));
  j["elements"] = elems;
  j["covers"] = covers;
  return j;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// mode "diagram": one arrow per generator join g ∨ x = y, labelled by the
// generator indices that produce it. mode "hasse": the cover relation.
inline std::string emit_dot(const GenLattice& L, const std::string& mode,
                            const std::vector<std::string>& gen_names = {}) {
  std::ostringstream out;
  out << "digraph genlat {\n  rankdir=BT;\n  node [shape=box];\n";
  for (ElementId e = 0; e < L.size(); ++e)
    out << "  e" << e << " [label=\"" << dot_escape(L.label(e)) << "\"];\n";
  if (mode == "hasse") {
    for (ElementId e = 0; e < L.size(); ++e)
      for (ElementId u : L.upper_covers(e)) out << "  e" << e << " -> e" << u << ";\n";
  } else if (mode == "diagram") {
    for (const auto& edge : L.diagram()) {
      out << "  e" << edge.from << " -> e" << edge.to << " [label=\"";
      for (std::size_t i = 0; i < edge.labels.size(); ++i) {
        if (i) out << ",";
        int g = edge.labels[i];
        if (g < static_cast<int>(gen_names.size()))
          out << dot_escape(gen_names[g]);
        else
          out << (g + 1);
      }
      out << "\"];\n";
    }
  } else {
    fail(ErrorCode::ParseError, "unknown dot mode \"" + mode + "\"");
  }
  out << "}\n";
  return out.str();
}

inline std::string emit_poset_dot(const FinitePoset& P) {
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t e = 0; e < P.size(); ++e)
    out << "  p" << e << " [label=\"" << dot_escape(P.label(static_cast<int>(e))) << "\"];\n";
  for (std::size_t e = 0; e < P.size(); ++e)
    for (int u : P.upper_covers(static_cast<int>(e))) out << "  p" << e << " -> p" << u << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace genlat
