#include "corpus.hpp"
#include "genlat/genlat.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

using namespace genlat;
using namespace genlat::testing;

TEST_CASE("the minor poset of the three-generator Boolean lattice") {
  auto B3 = GenLattice::boolean_lattice(3);
  auto mp = MinorPoset::build(B3);
  REQUIRE(mp.size() == 28);
  REQUIRE(mp.rank_census() == std::vector<BigInt>{1, 8, 12, 6, 1});
  auto P = mp.to_finite_poset();
  auto st = P.structure();
  REQUIRE(st.bounded);
  REQUIRE(st.graded);
  REQUIRE(st.thin);
  REQUIRE(st.eulerian);
  REQUIRE(st.rank == 4);
}

TEST_CASE("ids round-trip through minors") {
  auto B3 = GenLattice::boolean_lattice(3);
  auto mp = MinorPoset::build(B3);
  REQUIRE(mp.label(0) == "bot");
  REQUIRE(mp.rank_of(0) == 0);
  for (std::size_t id = 1; id < mp.size(); ++id) {
    Minor m = mp.minor_of(id);
    REQUIRE(mp.id_of(m) == id);
    REQUIRE(mp.rank_of(id) == m.rank());
    REQUIRE(mp.label(id) == m.str());
  }
  REQUIRE_THROWS_AS(mp.minor_of(0), Error);
  REQUIRE_THROWS_AS(mp.minor_of(mp.size()), Error);
  auto other = GenLattice::boolean_lattice(2);
  REQUIRE_THROWS_MATCHES(mp.id_of(whole_lattice_minor(other)), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == ErrorCode::HostMismatch; }));
}

TEST_CASE("build respects the budget") {
  auto B5 = GenLattice::boolean_lattice(5);
  REQUIRE_THROWS_MATCHES(MinorPoset::build(B5, BigInt(100)), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::BudgetExceeded;
                         }));
}

TEST_CASE("covers agree with the raw minor order") {
  // oracle: transitive reduction of is_minor_of over all enumerated minors
  for (const char* name : {"a", "lat", "f7", "square"}) {
    INFO(name);
    auto L = pattern_lattice(name);
    auto mp = MinorPoset::build(L);
    auto minors = enumerate_minors(L);
    REQUIRE(minors.size() + 1 == mp.size());

    auto leq = [&](std::size_t a, std::size_t b) {
      if (a == b || a == 0) return true;
      if (b == 0) return false;
      return is_minor_of(minors[a - 1], minors[b - 1]);
    };
    // order the oracle index space the same way as the poset ids
    std::vector<std::size_t> to_id(mp.size());
    to_id[0] = 0;
    for (std::size_t i = 0; i < minors.size(); ++i) to_id[i + 1] = mp.id_of(minors[i]);

    std::set<std::pair<std::size_t, std::size_t>> oracle;
    for (std::size_t a = 0; a < mp.size(); ++a)
      for (std::size_t b = 0; b < mp.size(); ++b) {
        if (a == b || !leq(a, b)) continue;
        bool cover = true;
        for (std::size_t c = 0; c < mp.size() && cover; ++c)
          if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
        if (cover) oracle.insert({to_id[a], to_id[b]});
      }
    auto pairs = mp.cover_pairs();
    std::set<std::pair<std::size_t, std::size_t>> got(pairs.begin(), pairs.end());
    REQUIRE(got == oracle);
  }
}

TEST_CASE("sharded cover generation matches single-threaded") {
  auto L = pattern_lattice("square");
  auto mp = MinorPoset::build(L);
  REQUIRE(mp.cover_pairs(1) == mp.cover_pairs(4));
  REQUIRE(mp.cover_pairs(1) == mp.cover_pairs(3));
}

TEST_CASE("minor posets of chains are Boolean") {
  for (int n = 1; n <= 4; ++n) {
    auto C = GenLattice::chain_lattice(n);
    auto mp = MinorPoset::build(C);
    REQUIRE(mp.size() == (std::size_t{1} << (n + 1)));
    auto B = lattice_order_poset(GenLattice::boolean_lattice(n + 1));
    REQUIRE(poset_isomorphic(mp.to_finite_poset(), B).has_value());
  }
}

TEST_CASE("minor poset sizes across the corpus") {
  std::map<std::string, std::size_t> expect{
      {"boolean3", 28}, {"boolean4", 82}, {"partition3", 16}, {"uniform24", 26},
      {"square", 58},   {"pattern_a", 16}, {"pattern_lat", 18},
  };
  for (const auto& h : corpus_hosts()) {
    auto it = expect.find(h.name);
    if (it == expect.end()) continue;
    INFO(h.name);
    REQUIRE(MinorPoset::build(h.lattice).size() == it->second);
  }
}

TEST_CASE("boolean decomposition partitions the poset") {
  for (const char* name : {"a", "b", "lat", "f7", "square"}) {
    INFO(name);
    auto L = pattern_lattice(name);
    auto mp = MinorPoset::build(L);
    auto blocks = mp.boolean_decomposition();
    REQUIRE(blocks.size() == L.size());
    std::vector<bool> seen(mp.size(), false);
    seen[0] = true;  // the minimum sits outside every block
    auto P = mp.to_finite_poset();
    for (const auto& b : blocks) {
      REQUIRE(b.alpha == mp.alpha(b.l));
      REQUIRE(b.top_id - b.bottom_id + 1 == (std::size_t{1} << b.alpha));
      std::vector<int> ids;
      for (std::size_t id = b.bottom_id; id <= b.top_id; ++id) {
        REQUIRE_FALSE(seen[id]);
        seen[id] = true;
        ids.push_back(static_cast<int>(id));
      }
      // each block, under the poset order, is a Boolean lattice of rank alpha
      FinitePoset sub = induced_subposet(P, ids);
      auto st = sub.structure();
      REQUIRE(st.bounded);
      REQUIRE(st.graded);
      REQUIRE(st.rank == b.alpha);
      if (b.alpha >= 1) {
        auto Bq = lattice_order_poset(GenLattice::boolean_lattice(b.alpha));
        REQUIRE(poset_isomorphic(sub, Bq).has_value());
      }
    }
    REQUIRE(std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }));
  }
}

TEST_CASE("rank census equals the decomposition sum") {
  for (const auto& h : corpus_hosts()) {
    INFO(h.name);
    auto mp = MinorPoset::build(h.lattice);
    auto census = mp.rank_census();
    // census generating polynomial = 1 + q * sum over blocks of (1+q)^alpha
    QPoly sum = QPoly::zero();
    for (const auto& b : mp.boolean_decomposition()) sum = sum + one_plus_q_pow(b.alpha);
    QPoly expect = QPoly::one() + QPoly::q() * sum;
    for (std::size_t k = 0; k < census.size(); ++k) REQUIRE(census[k] == expect.coeff(k));
    BigInt total = 0;
    for (const auto& c : census) total += c;
    REQUIRE(total == BigInt(mp.size()));
  }
}

TEST_CASE("rank generating function by all three methods") {
  auto agree = [](const GenLattice& L, RankGenMethod m) {
    return rank_gen(L, RankGenMethod::Direct) == rank_gen(L, m);
  };
  // geometric hosts: geometric evaluation applies
  REQUIRE(agree(GenLattice::boolean_lattice(3), RankGenMethod::Geometric));
  REQUIRE(agree(partition_lattice(3), RankGenMethod::Geometric));
  REQUIRE(agree(partition_lattice(4), RankGenMethod::Geometric));
  REQUIRE(agree(uniform_lattice(2, 4), RankGenMethod::Geometric));
  // no-parallels hosts
  REQUIRE(agree(GenLattice::boolean_lattice(4), RankGenMethod::NoParallels));
  REQUIRE(agree(GenLattice::chain_lattice(3), RankGenMethod::NoParallels));
  REQUIRE(agree(pattern_lattice("f7"), RankGenMethod::NoParallels));

  // the census must match the direct formula everywhere
  for (const auto& h : corpus_hosts()) {
    INFO(h.name);
    auto mp = MinorPoset::build(h.lattice);
    auto census = mp.rank_census();
    QPoly direct = rank_gen(h.lattice, RankGenMethod::Direct);
    REQUIRE(direct.degree() + 1 == static_cast<int>(census.size()));
    for (std::size_t k = 0; k < census.size(); ++k) REQUIRE(census[k] == direct.coeff(k));
  }
}

TEST_CASE("method hypotheses are enforced") {
  // chains of length >= 2 have non-atom generators
  try {
    rank_gen(GenLattice::chain_lattice(2), RankGenMethod::Geometric);
    FAIL("geometric should not apply to a chain");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::MethodInapplicable);
    REQUIRE(e.detail().find("atom") != std::string::npos);
  }
  // two atoms joining to the same element are parallel
  try {
    rank_gen(partition_lattice(3), RankGenMethod::NoParallels);
    FAIL("no-parallels should not apply to the partition lattice");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::MethodInapplicable);
    REQUIRE(e.detail().find("same join") != std::string::npos);
  }
  // non-semimodular: the pattern with a long side
  try {
    rank_gen(pattern_lattice("b"), RankGenMethod::Geometric);
    FAIL("geometric should not apply to a non-semimodular lattice");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::MethodInapplicable);
  }
}

TEST_CASE("incidence algebra basics") {
  auto B2 = GenLattice::boolean_lattice(2);
  auto d = IncidencePoly::delta(B2);
  auto z = IncidencePoly::zeta(B2);
  auto k = IncidencePoly::kappa(B2);
  // delta is the convolution identity
  REQUIRE(convolve(d, z).at(0, 3) == z.at(0, 3));
  REQUIRE(convolve(z, d).at(0, 3) == z.at(0, 3));
  // zeta * zeta counts interval elements
  REQUIRE(convolve(z, z).at(0, 3) == QPoly(BigInt(4)));
  // kappa marks covers only
  REQUIRE(k.at(0, 1) == QPoly::one());
  REQUIRE(k.at(0, 3) == QPoly::zero());
  // exponent functions must be 0/1-valued
  auto bad = z;
  bad.at(0, 3) = QPoly::q() + QPoly::one() + QPoly::one();
  REQUIRE_THROWS_MATCHES(pow01(z, bad), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == ErrorCode::Internal; }));
}

TEST_CASE("minor poset intervals are lower intervals of other minor posets") {
  // the interval below the whole-lattice minor in M(B3) is all of M(B3);
  // below a contraction it is the minor poset of the contracted lattice
  auto B3 = GenLattice::boolean_lattice(3);
  auto mp = MinorPoset::build(B3);
  auto P = mp.to_finite_poset();
  auto con = contract_gens(whole_lattice_minor(B3), {0});
  std::size_t cid = mp.id_of(con);
  auto below = P.interval(0, static_cast<int>(cid));
  // [z, 1] of B3 over z = an atom is B2; its minor poset has 10 elements
  auto B2 = GenLattice::boolean_lattice(2);
  auto B2mp = MinorPoset::build(B2);
  REQUIRE(below.size() == 10);
  REQUIRE(poset_isomorphic(below, B2mp.to_finite_poset()).has_value());
}
