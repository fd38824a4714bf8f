#include "corpus.hpp"
#include "genlat/genlat.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>

using namespace genlat;
using namespace genlat::testing;

namespace {

std::string data_path(const char* name) { return std::string(GENLAT_DATA_DIR) + "/" + name; }

void requires_error(const std::string& text, ErrorCode code) {
  try {
    load_lattice_text(text);
    FAIL("expected an error for: " << text);
  } catch (const Error& e) {
    REQUIRE(e.code() == code);
  }
}

}  // namespace

TEST_CASE("sample files match the embedded patterns") {
  const std::pair<const char*, const char*> files[] = {
      {"pattern_a.json", "a"},   {"pattern_b.json", "b"},     {"pattern_c.json", "c"},
      {"pattern_d.json", "d"},   {"pattern_lat.json", "lat"}, {"chain3.json", "chain3"},
      {"square.json", "square"}, {"f7.json", "f7"},
  };
  for (const auto& [file, pattern] : files) {
    INFO(file);
    auto loaded = load_lattice_file(data_path(file));
    REQUIRE(gel_isomorphic(loaded.lattice, pattern_lattice(pattern)).has_value());
  }
}

TEST_CASE("explicit kind") {
  auto loaded = load_lattice_text(R"({
    "kind": "explicit", "generators": 2,
    "closed_sets": [[], [1], [1, 2]]
  })");
  REQUIRE(loaded.lattice.size() == 3);
  REQUIRE(loaded.kind == "explicit");
  REQUIRE(loaded.gen_names == std::vector<std::string>{"1", "2"});

  requires_error(R"({"kind": "explicit", "generators": 2, "closed_sets": [[], [1], [1], [1,2]]})",
                 ErrorCode::ParseError);  // duplicate closed set
  requires_error(R"({"kind": "explicit", "generators": 2, "closed_sets": [[], [3], [1,2]]})",
                 ErrorCode::ParseError);  // index out of range
  requires_error(R"({"kind": "explicit", "generators": 2})", ErrorCode::ParseError);
}

TEST_CASE("join table cross-check") {
  // consistent table accepted
  auto ok = load_lattice_text(R"({
    "kind": "explicit", "generators": 2,
    "closed_sets": [[], [1], [1, 2]],
    "join_table": [[0,1,2],[1,1,2],[2,2,2]]
  })");
  REQUIRE(ok.lattice.size() == 3);
  // inconsistent table rejected
  requires_error(R"({
    "kind": "explicit", "generators": 2,
    "closed_sets": [[], [1], [1, 2]],
    "join_table": [[0,1,2],[1,1,1],[2,1,2]]
  })",
                 ErrorCode::ParseError);
}

TEST_CASE("graph kind builds the connected-partition lattice of the edge set") {
  auto loaded = load_lattice_file(data_path("triangle_graph.json"));
  REQUIRE(loaded.lattice.gen_count() == 3);
  REQUIRE(loaded.gen_names == std::vector<std::string>{"1-2", "1-3", "2-3"});
  // the triangle's cycle space makes any two edges span the third
  REQUIRE(gel_isomorphic(loaded.lattice, partition_lattice(3)).has_value());
  requires_error(R"({"kind": "graph", "vertices": 2, "edges": [[1, 3]]})", ErrorCode::ParseError);
}

TEST_CASE("poset kind builds the lattice of lower order ideals") {
  auto loaded = load_lattice_file(data_path("v_poset.json"));
  REQUIRE(loaded.source_poset.has_value());
  REQUIRE(loaded.source_poset->size() == 3);
  // ideals of a < c > b: {}, {a}, {b}, {a,b}, {a,b,c}
  REQUIRE(loaded.lattice.size() == 5);
  REQUIRE(loaded.lattice.gen_count() == 3);
  requires_error(R"({"kind": "poset", "elements": ["a", "a"]})", ErrorCode::ParseError);
  requires_error(R"({"kind": "poset", "elements": ["a"], "relations": [["a", "b"]]})",
                 ErrorCode::ParseError);
}

TEST_CASE("builtin kind") {
  auto b = load_lattice_text(R"({"kind": "builtin", "name": "boolean", "n": 3})");
  REQUIRE(b.lattice.size() == 8);
  auto c = load_lattice_text(R"({"kind": "builtin", "name": "chain", "n": 4})");
  REQUIRE(c.lattice.size() == 5);
  auto p = load_lattice_text(R"({"kind": "builtin", "name": "partition", "n": 4})");
  REQUIRE(p.lattice.size() == 15);
  REQUIRE(p.gen_names.size() == 6);
  auto u = load_lattice_text(R"({"kind": "builtin", "name": "uniform", "n": 4, "k": 2})");
  REQUIRE(u.lattice.size() == 6);
  requires_error(R"({"kind": "builtin", "name": "mystery"})", ErrorCode::ParseError);
  requires_error(R"({"kind": "wat"})", ErrorCode::ParseError);
  requires_error("not json at all", ErrorCode::ParseError);
}

TEST_CASE("save and reload round-trips every corpus host") {
  for (const auto& h : corpus_hosts()) {
    INFO(h.name);
    Json j = save_lattice(h.lattice);
    auto back = load_lattice(j);
    REQUIRE(back.lattice.size() == h.lattice.size());
    REQUIRE(back.lattice.gen_count() == h.lattice.gen_count());
    for (ElementId e = 0; e < h.lattice.size(); ++e)
      REQUIRE(back.lattice.closed_set(e) == h.lattice.closed_set(e));
  }
}

TEST_CASE("poset serialization lists elements with ranks and covers") {
  auto B2 = GenLattice::boolean_lattice(2);
  auto mp = MinorPoset::build(B2);
  Json j = poset_to_json(mp.to_finite_poset());
  REQUIRE(j["elements"].size() == 10);
  REQUIRE(j["covers"].is_array());
  REQUIRE(j["elements"][0]["rank"] == 0);
  REQUIRE(j["elements"][0]["label"] == "bot");
  // covers reference valid ids
  for (const auto& c : j["covers"]) {
    REQUIRE(c.size() == 2);
    REQUIRE(c[0].get<int>() < 10);
    REQUIRE(c[1].get<int>() < 10);
  }
}

TEST_CASE("dot output") {
  auto C2 = GenLattice::chain_lattice(2);
  auto dot = emit_dot(C2, "diagram", {"a", "b"});
  REQUIRE(dot.find("digraph") != std::string::npos);
  REQUIRE(dot.find("label=\"{1}\"") != std::string::npos);
  REQUIRE(dot.find("e0 -> e2 [label=\"b\"]") != std::string::npos);  // {} joins to top by b
  auto hasse = emit_dot(C2, "hasse");
  REQUIRE(hasse.find("e0 -> e2") == std::string::npos);  // top is not a cover of bottom
  REQUIRE(hasse.find("e0 -> e1") != std::string::npos);
  REQUIRE_THROWS_AS(emit_dot(C2, "sideways"), Error);
  auto pd = emit_poset_dot(cube_face_poset(1));
  REQUIRE(pd.find("digraph") != std::string::npos);
  REQUIRE(pd.find("empty") != std::string::npos);
}
