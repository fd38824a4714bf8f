#include "corpus.hpp"
#include "genlat/genlat.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

using namespace genlat;
using namespace genlat::testing;

namespace {

auto code_is(ErrorCode want) {
  return Catch::Matchers::Predicate<Error>([want](const Error& e) { return e.code() == want; });
}

// The subset order on {0,..,n-1}, with bitmask element ids.
FinitePoset boolean_poset(int n) {
  return FinitePoset::from_leq(std::size_t{1} << n, [](int a, int b) { return (a & b) == a; });
}

// Face lattice of a square: bot, four vertices, four edges, top.
FinitePoset square_faces() {
  return FinitePoset::from_covers(10, {{0, 1},
                                       {0, 2},
                                       {0, 3},
                                       {0, 4},
                                       {1, 5},
                                       {2, 5},
                                       {2, 6},
                                       {3, 6},
                                       {3, 7},
                                       {4, 7},
                                       {4, 8},
                                       {1, 8},
                                       {5, 9},
                                       {6, 9},
                                       {7, 9},
                                       {8, 9}});
}

// Reference implementation of the chain weights: enumerate every chain of the
// open interval and sum the position words directly.
AbPoly chain_weights_by_enumeration(const FinitePoset& P) {
  int bot = P.minimal_elements().at(0);
  int top = P.maximal_elements().at(0);
  const auto& h = P.heights();
  int n = h[top] - 1;
  std::vector<int> open;
  for (std::size_t e = 0; e < P.size(); ++e)
    if (static_cast<int>(e) != bot && static_cast<int>(e) != top) open.push_back(static_cast<int>(e));
  std::sort(open.begin(), open.end(), [&](int x, int y) { return h[x] < h[y]; });

  AbPoly amb = AbPoly::term("a", 1) + AbPoly::term("b", -1);
  AbPoly total;
  std::vector<int> chain;
  auto weight = [&] {
    std::set<int> ranks;
    for (int e : chain) ranks.insert(h[e]);
    AbPoly w = AbPoly::one();
    for (int i = 1; i <= n; ++i) w = w * (ranks.count(i) ? AbPoly::term("b", 1) : amb);
    return w;
  };
  auto rec = [&](auto&& self, std::size_t from) -> void {
    total += weight();
    for (std::size_t i = from; i < open.size(); ++i) {
      if (!chain.empty() && !P.lt(chain.back(), open[i])) continue;
      chain.push_back(open[i]);
      self(self, i + 1);
      chain.pop_back();
    }
  };
  rec(rec, 0);
  return total;
}

}  // namespace

TEST_CASE("cover input and order input build the same poset") {
  auto P = square_faces();
  auto Q = FinitePoset::from_leq(P.size(), [&](int a, int b) { return P.leq(a, b); });
  REQUIRE(Q.size() == P.size());
  for (std::size_t a = 0; a < P.size(); ++a) {
    for (std::size_t b = 0; b < P.size(); ++b)
      REQUIRE(P.leq(static_cast<int>(a), static_cast<int>(b)) ==
              Q.leq(static_cast<int>(a), static_cast<int>(b)));
    REQUIRE(P.upper_covers(static_cast<int>(a)) == Q.upper_covers(static_cast<int>(a)));
    REQUIRE(P.lower_covers(static_cast<int>(a)) == Q.lower_covers(static_cast<int>(a)));
  }
  REQUIRE(P.heights() == Q.heights());
  REQUIRE(P.minimal_elements() == std::vector<int>{0});
  REQUIRE(P.maximal_elements() == std::vector<int>{9});

  // every cover edge goes forward in the topological order
  const auto& topo = P.topo_order();
  std::vector<int> pos(P.size());
  for (std::size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = static_cast<int>(i);
  for (std::size_t e = 0; e < P.size(); ++e)
    for (int u : P.upper_covers(static_cast<int>(e))) REQUIRE(pos[e] < pos[u]);
}

TEST_CASE("poset construction rejects malformed input") {
  REQUIRE_THROWS_MATCHES(FinitePoset::from_covers(2, {{0, 5}}), Error, code_is(ErrorCode::BadIndex));
  REQUIRE_THROWS_MATCHES(FinitePoset::from_covers(2, {{0, 1}}, {"only-one"}), Error,
                         code_is(ErrorCode::BadIndex));
  REQUIRE_THROWS_MATCHES(FinitePoset::from_covers(2, {{0, 1}, {1, 0}}), Error,
                         code_is(ErrorCode::ParseError));
  REQUIRE_THROWS_MATCHES(FinitePoset::from_leq(2, [](int, int) { return true; }), Error,
                         code_is(ErrorCode::ParseError));
}

TEST_CASE("heights, intervals, and Mobius values") {
  auto B3 = boolean_poset(3);
  REQUIRE(B3.size() == 8);
  for (int m = 0; m < 8; ++m) REQUIRE(B3.heights()[m] == __builtin_popcount(m));
  REQUIRE(B3.open_interval_size(0, 7) == 6);
  REQUIRE(B3.interval_elements(0, 3) == std::vector<int>{0, 1, 2, 3});

  // the filter above a one-element set is a square
  auto I = B3.interval(1, 7);
  REQUIRE(I.size() == 4);
  auto st = I.structure();
  REQUIRE(st.eulerian);
  REQUIRE(st.rank == 2);
  REQUIRE(I.label(0) == "1");
  REQUIRE(I.label(3) == "7");

  auto mu0 = B3.mobius_row(0);
  for (int m = 0; m < 8; ++m) REQUIRE(mu0[m] == (__builtin_popcount(m) % 2 == 0 ? 1 : -1));
  auto mu1 = B3.mobius_row(1);
  for (int m = 0; m < 8; ++m) {
    if ((m & 1) == 0)
      REQUIRE(mu1[m] == 0);
    else
      REQUIRE(mu1[m] == (__builtin_popcount(m) % 2 == 1 ? 1 : -1));
  }

  auto C4 = FinitePoset::from_covers(4, {{0, 1}, {1, 2}, {2, 3}});
  REQUIRE(C4.mobius_row(0) == std::vector<long long>{1, -1, 0, 0});
  REQUIRE(C4.mobius_row(1) == std::vector<long long>{0, 1, -1, 0});
  REQUIRE(C4.heights() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("structure report classifies the standard examples") {
  auto diamond = segment_face_poset();
  auto rd = diamond.structure();
  REQUIRE(rd.eulerian);
  REQUIRE(rd.rank == 2);
  REQUIRE(rd.detail == "bounded, graded, thin, Eulerian of rank 2");

  auto rq = cube_face_poset(3).structure();
  REQUIRE(rq.eulerian);
  REQUIRE(rq.rank == 4);

  auto single = FinitePoset::from_covers(1, {});
  REQUIRE(single.structure().eulerian);
  REQUIRE(single.structure().rank == 0);

  auto chain3 = FinitePoset::from_covers(3, {{0, 1}, {1, 2}});
  auto rc = chain3.structure();
  REQUIRE(rc.graded);
  REQUIRE_FALSE(rc.thin);
  REQUIRE(rc.detail.find("interior") != std::string::npos);

  // three middle elements also break thinness
  auto wide = FinitePoset::from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  auto rw = wide.structure();
  REQUIRE(rw.graded);
  REQUIRE_FALSE(rw.thin);

  auto vee = FinitePoset::from_covers(3, {{0, 2}, {1, 2}});
  auto rv = vee.structure();
  REQUIRE_FALSE(rv.bounded);
  REQUIRE(rv.detail == "not bounded: 2 minimal and 1 maximal elements");

  // two maximal chains of different lengths
  auto skew = FinitePoset::from_covers(5, {{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}});
  REQUIRE(skew.heights() == std::vector<int>{0, 1, 1, 2, 3});
  auto rs = skew.structure();
  REQUIRE(rs.bounded);
  REQUIRE_FALSE(rs.graded);
  REQUIRE(rs.detail.find("jumps rank 1 to 3") != std::string::npos);
}

TEST_CASE("chain weight polynomial on small bounded posets") {
  REQUIRE(ab_index(FinitePoset::from_covers(1, {})) == AbPoly::one());
  REQUIRE(ab_index(two_chain_poset()) == AbPoly::one());
  REQUIRE(ab_index(segment_face_poset()) ==
          AbPoly::term("a", 1) + AbPoly::term("b", 1));

  auto C4 = FinitePoset::from_covers(4, {{0, 1}, {1, 2}, {2, 3}});
  REQUIRE(ab_index(C4) == AbPoly::term("aa", 1));

  // at a=b=1 only the full flags survive; at b=0 only the empty chain
  auto square = square_faces();
  REQUIRE(ab_index(square).eval(1, 1) == 8);
  REQUIRE(ab_index(square).eval(1, 0) == 1);
  REQUIRE(ab_index(boolean_poset(3)).eval(1, 1) == 6);
  REQUIRE(ab_index(square).degree() == 2);

  for (const FinitePoset& P : {segment_face_poset(), C4, square_faces(), boolean_poset(3),
                               cube_face_poset(2), cube_face_poset(3)})
    REQUIRE(ab_index(P) == chain_weights_by_enumeration(P));

  auto vee = FinitePoset::from_covers(3, {{0, 2}, {1, 2}});
  REQUIRE_THROWS_MATCHES(ab_index(vee), Error, code_is(ErrorCode::NoBounds));
  auto skew = FinitePoset::from_covers(5, {{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}});
  REQUIRE_THROWS_MATCHES(ab_index(skew), Error, code_is(ErrorCode::NotGraded));
}

TEST_CASE("cd expressions of the classical face lattices") {
  REQUIRE(cd_index(two_chain_poset()).str() == "1");
  REQUIRE(cd_index(segment_face_poset()).str() == "c");
  REQUIRE(cd_index(boolean_poset(3)).str() == "c^2 + d");
  REQUIRE(cd_index(square_faces()).str() == "c^2 + 2d");
  REQUIRE(cd_index(cube_face_poset(2)).str() == "c^2 + 2d");
  REQUIRE(cd_index(cube_face_poset(3)).str() == "c^3 + 4cd + 6dc");
  REQUIRE(cd_index(boolean_poset(4)).str() == "c^3 + 2cd + 2dc");

  // chains have ab-index a^(n-1), which no cd word combination reaches
  REQUIRE_THROWS_MATCHES(cd_index(FinitePoset::from_covers(3, {{0, 1}, {1, 2}})), Error,
                         code_is(ErrorCode::NotCd));
  REQUIRE_THROWS_MATCHES(cd_index(FinitePoset::from_covers(4, {{0, 1}, {1, 2}, {2, 3}})), Error,
                         code_is(ErrorCode::NotCd));

  REQUIRE(expand_cd_word("d") == AbPoly::term("ab", 1) + AbPoly::term("ba", 1));
  REQUIRE(expand_cd_word("cc").t.size() == 4);
  auto p = parse_cd("c^3 + 2cd + 3dc");
  REQUIRE(cd_index(expand_cd(p)) == p);
  REQUIRE(cd_words_of_degree(3) == std::vector<std::string>{"ccc", "cd", "dc"});
}

TEST_CASE("cd polynomial parsing and printing") {
  for (const char* text : {"1", "0", "c", "c^2 + 2d", "c^3 + 2cd + 3dc", "c^2 - 2d", "-c + d",
                           "5c^2dc^2"})
    REQUIRE(parse_cd(text).str() == text);
  REQUIRE(parse_cd("c^2 - 2d").t.at("d") == -2);
  REQUIRE(parse_cd("ccc").str() == "c^3");
  REQUIRE(AbPoly::term("aab", 2).str() == "2a^2b");
  REQUIRE(AbPoly::zero().str() == "0");

  for (const char* bad : {"", "c^", "c + ", "xq", "c * d"})
    REQUIRE_THROWS_MATCHES(parse_cd(bad), Error, code_is(ErrorCode::ParseError));
}

TEST_CASE("coefficientwise cd comparison") {
  auto small = parse_cd("c^2 + d");
  auto big = parse_cd("c^2 + 2d");
  REQUIRE(cd_compare(small, big, 0).leq);
  REQUIRE(cd_compare(big, big, 0).leq);
  auto r = cd_compare(big, small, 0);
  REQUIRE_FALSE(r.leq);
  REQUIRE(r.witness == "d");

  // padding multiplies the left side up to the right degree
  REQUIRE(cd_compare(parse_cd("c"), big, 1).leq);
  REQUIRE(cd_compare(parse_cd("d"), parse_cd("cd + dc"), 1).leq);
  auto rc = cd_compare(parse_cd("2"), parse_cd("1"), 0);
  REQUIRE_FALSE(rc.leq);
  REQUIRE(rc.witness == "1");

  REQUIRE_THROWS_MATCHES(cd_compare(parse_cd("c"), big, 0), Error,
                         code_is(ErrorCode::DegreeMismatch));
}

TEST_CASE("poset products give the face posets of prisms and pyramids") {
  auto seg = segment_face_poset();
  auto prod = poset_product(two_chain_poset(), two_chain_poset());
  REQUIRE(prod.size() == 4);
  REQUIRE(prod.label(1) == "(0,1)");
  REQUIRE(poset_isomorphic(prod, seg).has_value());

  // coning a polytope pairs every face with a flag of the new apex
  REQUIRE(poset_isomorphic(poset_pyr(seg), boolean_poset(3)).has_value());
  REQUIRE(cd_index(poset_pyr(boolean_poset(3))).str() == "c^3 + 2cd + 2dc");

  auto prism = poset_prism(seg);
  REQUIRE(prism.size() == 3 * (seg.size() - 1) + 1);
  REQUIRE(prism.label(0) == "bot");
  REQUIRE(poset_isomorphic(prism, cube_face_poset(2)).has_value());

  REQUIRE(poset_isomorphic(poset_diamond(cube_face_poset(1), cube_face_poset(1)),
                           cube_face_poset(2))
              .has_value());

  auto vee = FinitePoset::from_covers(3, {{0, 2}, {1, 2}});
  REQUIRE_THROWS_MATCHES(poset_diamond(vee, seg), Error, code_is(ErrorCode::NoBounds));
}

TEST_CASE("isomorphism search returns a checkable certificate") {
  auto Q2 = cube_face_poset(2);
  auto prism = poset_prism(segment_face_poset());
  auto iso = poset_isomorphic(prism, Q2);
  REQUIRE(iso.has_value());
  const auto& m = *iso;
  std::set<int> image(m.begin(), m.end());
  REQUIRE(image.size() == Q2.size());
  for (std::size_t a = 0; a < prism.size(); ++a)
    for (std::size_t b = 0; b < prism.size(); ++b)
      REQUIRE(prism.leq(static_cast<int>(a), static_cast<int>(b)) ==
              Q2.leq(m[a], m[b]));

  // a scrambled copy is still recognized
  std::vector<int> perm(Q2.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>((i * 7 + 3) % perm.size());
  auto scrambled = FinitePoset::from_leq(Q2.size(), [&](int a, int b) { return Q2.leq(perm[a], perm[b]); });
  REQUIRE(poset_isomorphic(scrambled, Q2).has_value());

  auto diamond4 = segment_face_poset();
  auto chain4 = FinitePoset::from_covers(4, {{0, 1}, {1, 2}, {2, 3}});
  REQUIRE_FALSE(poset_isomorphic(diamond4, chain4).has_value());
  REQUIRE_FALSE(poset_isomorphic(two_chain_poset(), diamond4).has_value());
}
