#include "corpus.hpp"
#include "genlat/genlat.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace genlat;
using namespace genlat::testing;

// B3 element ids in canonical order:
// 0:{} 1:{1} 2:{2} 3:{3} 4:{1,2} 5:{1,3} 6:{2,3} 7:{1,2,3}

TEST_CASE("whole lattice minor") {
  auto B3 = GenLattice::boolean_lattice(3);
  auto M = whole_lattice_minor(B3);
  REQUIRE(M.z == 0);
  REQUIRE(M.H == std::vector<ElementId>{1, 2, 3});
  REQUIRE(M.rank() == 4);
  REQUIRE(M.str() == "{}|{1};{2};{3}");
}

TEST_CASE("make_minor validates membership") {
  auto B3 = GenLattice::boolean_lattice(3);
  REQUIRE_THROWS_MATCHES(make_minor(B3, 1, {4, 7}), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == ErrorCode::NotAbove; }));
  REQUIRE_THROWS_AS(make_minor(B3, 99, {}), Error);
  // join targets of an atom are its single-generator joins, not the top
  REQUIRE_THROWS_AS(make_minor(B3, 1, {7}), Error);
  auto ok = make_minor(B3, 1, {4, 5});
  REQUIRE(ok.H == std::vector<ElementId>{4, 5});
}

TEST_CASE("deletion, restriction, contraction") {
  auto B3 = GenLattice::boolean_lattice(3);
  auto M = whole_lattice_minor(B3);

  auto del = delete_gens(M, {1});
  REQUIRE(del.z == 0);
  REQUIRE(del.H == std::vector<ElementId>{1, 3});

  auto res = restrict_gens(M, {0, 2});
  REQUIRE(res == del);

  auto con = contract_gens(M, {0});
  REQUIRE(con.z == 1);
  REQUIRE(con.H == std::vector<ElementId>{4, 5});

  // contracting by nothing is the identity
  REQUIRE(contract_gens(M, {}) == M);
  // deleting everything leaves the single-point minor over the base
  REQUIRE(delete_gens(M, {0, 1, 2}).H.empty());

  // element-indexed contraction: everything below {1,2}
  auto conel = apply_by_element(M, MinorOp::Contract, 4);
  REQUIRE(conel.z == 4);
  REQUIRE(conel.H == std::vector<ElementId>{7});

  REQUIRE(apply(M, MinorOp::Delete, {1}) == del);
  REQUIRE_THROWS_AS(delete_gens(M, {7}), Error);
}

TEST_CASE("contraction joins up the surviving generators") {
  // in the chain, contracting the small generator absorbs it
  auto C2 = GenLattice::chain_lattice(2);
  auto M = whole_lattice_minor(C2);  // ({}|{1};{1,2})
  auto con = contract_gens(M, {0});
  REQUIRE(con.z == 1);
  REQUIRE(con.H == std::vector<ElementId>{2});
  auto con2 = contract_gens(M, {1});  // contracting the top leaves nothing above
  REQUIRE(con2.z == 2);
  REQUIRE(con2.H.empty());
}

TEST_CASE("membership in a minor") {
  auto B3 = GenLattice::boolean_lattice(3);
  auto M = make_minor(B3, 0, {1, 2});
  std::vector<ElementId> in, out;
  for (ElementId x = 0; x < B3.size(); ++x)
    (contains_element(M, x) ? in : out).push_back(x);
  REQUIRE(in == std::vector<ElementId>{0, 1, 2, 4});
  REQUIRE(out == std::vector<ElementId>{3, 5, 6, 7});
}

TEST_CASE("expansion produces the generated sublattice") {
  auto B3 = GenLattice::boolean_lattice(3);
  auto sub = expand(make_minor(B3, 0, {1, 2}));
  REQUIRE(sub.lattice.size() == 4);
  REQUIRE(sub.element_origin == std::vector<ElementId>{0, 1, 2, 4});
  auto iso = gel_isomorphic(sub.lattice, GenLattice::boolean_lattice(2));
  REQUIRE(iso.has_value());
}

TEST_CASE("minor counts") {
  REQUIRE(minor_count(GenLattice::boolean_lattice(3)) == 27);
  REQUIRE(minor_count(GenLattice::chain_lattice(2)) == 7);
  REQUIRE(minor_count(pattern_lattice("a")) == 15);
  // sum of 2^alpha over the corpus stays consistent with enumeration
  for (const auto& h : corpus_hosts()) {
    INFO(h.name);
    auto all = enumerate_minors(h.lattice);
    REQUIRE(BigInt(all.size()) == minor_count(h.lattice));
    std::set<std::string> labels;
    for (const auto& m : all) labels.insert(m.str());
    REQUIRE(labels.size() == all.size());  // all distinct
  }
}

TEST_CASE("enumeration respects the budget") {
  auto B3 = GenLattice::boolean_lattice(3);
  REQUIRE_THROWS_MATCHES(enumerate_minors(B3, BigInt(5)), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::BudgetExceeded;
                         }));
}

TEST_CASE("minor order") {
  auto B3 = GenLattice::boolean_lattice(3);
  auto whole = whole_lattice_minor(B3);
  auto point = make_minor(B3, 0, {});
  auto con = contract_gens(whole, {0});

  REQUIRE(is_minor_of(whole, whole));
  REQUIRE(is_minor_of(point, whole));
  REQUIRE(is_minor_of(con, whole));
  REQUIRE_FALSE(is_minor_of(whole, con));
  // deletion chains downward
  REQUIRE(is_minor_of(delete_gens(con, {0}), con));
  // different-base points are incomparable when neither lifts
  REQUIRE_FALSE(is_minor_of(make_minor(B3, 1, {4}), make_minor(B3, 2, {4, 6})));
  auto other = GenLattice::boolean_lattice(2);
  REQUIRE_THROWS_AS(is_minor_of(point, whole_lattice_minor(other)), Error);
}

TEST_CASE("minor order is exactly deletion-then-contraction reachability") {
  // downward closure of the whole-lattice minor under single deletions and
  // contractions recovers every minor: the order is generated by the two ops
  for (const char* which : {"a", "b", "lat", "f7"}) {
    auto L = pattern_lattice(which);
    auto all = enumerate_minors(L);
    std::set<std::string> reached;
    std::vector<Minor> frontier{whole_lattice_minor(L)};
    reached.insert(frontier[0].str());
    while (!frontier.empty()) {
      Minor m = frontier.back();
      frontier.pop_back();
      for (std::size_t i = 0; i < m.H.size(); ++i) {
        for (auto op : {MinorOp::Delete, MinorOp::Contract}) {
          Minor next = apply(m, op, {static_cast<int>(i)});
          if (reached.insert(next.str()).second) frontier.push_back(next);
        }
      }
    }
    REQUIRE(reached.size() == all.size());
    for (const auto& m : all) {
      INFO(m.str());
      REQUIRE(reached.count(m.str()) == 1);
      REQUIRE(is_minor_of(m, whole_lattice_minor(L)));
    }
  }
}

TEST_CASE("joins in the minor poset of a Boolean host") {
  auto B3 = GenLattice::boolean_lattice(3);
  auto r = minor_join(make_minor(B3, 1, {}), make_minor(B3, 2, {}));
  REQUIRE(r.join.has_value());
  REQUIRE(r.join->z == 0);
  REQUIRE(r.join->H == std::vector<ElementId>{1, 2});
  // the join dominates both arguments and is below the whole minor
  REQUIRE(is_minor_of(make_minor(B3, 1, {}), *r.join));
  REQUIRE(is_minor_of(make_minor(B3, 2, {}), *r.join));
  REQUIRE(is_minor_of(*r.join, whole_lattice_minor(B3)));

  // joins exist for every pair, and are least upper bounds
  auto all = enumerate_minors(B3);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i; j < all.size(); ++j) {
      auto jr = minor_join(all[i], all[j]);
      REQUIRE(jr.join.has_value());
      REQUIRE(is_minor_of(all[i], *jr.join));
      REQUIRE(is_minor_of(all[j], *jr.join));
      for (const auto& u : all)
        if (is_minor_of(all[i], u) && is_minor_of(all[j], u)) REQUIRE(is_minor_of(*jr.join, u));
    }
}

TEST_CASE("join failure with parallel generators") {
  // two parallel atoms: the point minors over the top and over the bottom
  // admit several minimal upper bounds
  auto Pa = pattern_lattice("a");
  ElementId top = Pa.top();
  auto r = minor_join(make_minor(Pa, top, {}), make_minor(Pa, 0, {}));
  REQUIRE_FALSE(r.join.has_value());
  REQUIRE(r.failed_condition == 1);
  REQUIRE_FALSE(r.detail.empty());
}

TEST_CASE("join failure through a missing meet witness") {
  // scan a host whose minor poset is not a lattice for a condition-3 pair
  auto L = pattern_lattice("lat");
  auto all = enumerate_minors(L);
  bool saw3 = false;
  for (std::size_t i = 0; i < all.size() && !saw3; ++i)
    for (std::size_t j = i + 1; j < all.size() && !saw3; ++j) {
      auto r = minor_join(all[i], all[j]);
      if (!r.join && r.failed_condition == 3) {
        saw3 = true;
        REQUIRE(r.detail.find("does not contain") != std::string::npos);
      }
    }
  REQUIRE(saw3);
}

TEST_CASE("order minors of the three-element fork") {
  // a < c, b < c
  FinitePoset V = FinitePoset::from_covers(3, {{0, 2}, {1, 2}}, {"a", "b", "c"});
  auto oms = enumerate_order_minors(V);
  REQUIRE(oms.size() == 19);
  // the ideals alone (I empty) are five
  int ideals = 0;
  for (const auto& om : oms)
    if (om.I.empty()) ++ideals;
  REQUIRE(ideals == 5);

  GenLattice J = ideal_lattice(V);
  REQUIRE(BigInt(oms.size()) == minor_count(J));

  // {c} is not an ideal; overlapping sets are rejected
  OrderMinor bad1{GenSet{}, GenSet::singleton(2)};
  REQUIRE_THROWS_MATCHES(validate_order_minor(V, bad1), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::NotAnOrderMinor;
                         }));
  OrderMinor bad2{GenSet::singleton(0), GenSet::singleton(0)};
  REQUIRE_THROWS_AS(validate_order_minor(V, bad2), Error);
}

TEST_CASE("order minors map bijectively onto lattice minors") {
  FinitePoset V = FinitePoset::from_covers(3, {{0, 2}, {1, 2}}, {"a", "b", "c"});
  GenLattice J = ideal_lattice(V);
  auto oms = enumerate_order_minors(V);
  std::set<std::string> images;
  for (const auto& om : oms) {
    Minor m = order_minor_to_minor(V, J, om);  // throws unless the expansion
                                               // matches the induced ideal lattice
    images.insert(m.str());
  }
  REQUIRE(images.size() == oms.size());
  auto all = enumerate_minors(J);
  REQUIRE(all.size() == images.size());
  for (const auto& m : all) REQUIRE(images.count(m.str()) == 1);
}
