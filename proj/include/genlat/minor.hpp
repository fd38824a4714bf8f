#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "genlat/builders.hpp"
#include "genlat/gen_lattice.hpp"
#include "genlat/genset.hpp"
#include "genlat/poset.hpp"
#include "genlat/strong_map.hpp"
#include "genlat/util.hpp"

namespace genlat {

// A minor of (L,G): base element z with generating set H, every member of the
// form g v z for a host generator g. The pair determines the minor; its
// elements are the joins of subsets of H over z.
struct Minor {
  const GenLattice* host = nullptr;
  ElementId z = 0;
  std::vector<ElementId> H;  // strictly above z, sorted ascending

  bool operator==(const Minor& o) const { return host == o.host && z == o.z && H == o.H; }
  bool operator!=(const Minor& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = host->label(z) + "|";
    for (std::size_t i = 0; i < H.size(); ++i) {
      if (i) s += ";";
      s += host->label(H[i]);
    }
    return s;
  }
  int rank() const { return static_cast<int>(H.size()) + 1; }
};

inline Minor make_minor(GenLattice&& L, ElementId z, std::vector<ElementId> H) = delete;
inline Minor make_minor(const GenLattice& L, ElementId z, std::vector<ElementId> H) {
  if (z >= L.size()) fail(ErrorCode::BadIndex, "base element " + std::to_string(z));
  std::sort(H.begin(), H.end());
  H.erase(std::unique(H.begin(), H.end()), H.end());
  auto targets = L.join_targets(z);
  for (ElementId h : H) {
    if (h >= L.size()) fail(ErrorCode::BadIndex, "generator element " + std::to_string(h));
    if (!std::binary_search(targets.begin(), targets.end(), h))
      fail(ErrorCode::NotAbove,
           "element " + L.label(h) + " is not of the form g v " + L.label(z));
  }
  return Minor{&L, z, std::move(H)};
}

inline Minor whole_lattice_minor(GenLattice&& L) = delete;
inline Minor whole_lattice_minor(const GenLattice& L) {
  return Minor{&L, L.bottom(), L.join_targets(L.bottom())};
}

namespace detail {
inline void check_gen_indices(const Minor& M, const std::vector<int>& I) {
  for (int i : I)
    if (i < 0 || static_cast<std::size_t>(i) >= M.H.size())
      fail(ErrorCode::BadIndex, "minor generator index " + std::to_string(i));
}
}  // namespace detail

// Deletion: drop the generators indexed by I.
inline Minor delete_gens(const Minor& M, const std::vector<int>& I) {
  detail::check_gen_indices(M, I);
  std::vector<bool> drop(M.H.size(), false);
  for (int i : I) drop[i] = true;
  Minor out{M.host, M.z, {}};
  for (std::size_t i = 0; i < M.H.size(); ++i)
    if (!drop[i]) out.H.push_back(M.H[i]);
  return out;
}

// Restriction: keep exactly the generators indexed by I.
inline Minor restrict_gens(const Minor& M, const std::vector<int>& I) {
  detail::check_gen_indices(M, I);
  std::vector<bool> keep(M.H.size(), false);
  for (int i : I) keep[i] = true;
  Minor out{M.host, M.z, {}};
  for (std::size_t i = 0; i < M.H.size(); ++i)
    if (keep[i]) out.H.push_back(M.H[i]);
  return out;
}

// Contraction: new base is the join of the indexed generators; the remaining
// generators are joined up and duplicates or the new base itself are dropped.
inline Minor contract_gens(const Minor& M, const std::vector<int>& I) {
  detail::check_gen_indices(M, I);
  const GenLattice& L = *M.host;
  ElementId z2 = M.z;
  for (int i : I) z2 = L.join(z2, M.H[i]);
  Minor out{M.host, z2, {}};
  for (ElementId h : M.H) {
    ElementId h2 = L.join(h, z2);
    if (h2 != z2) out.H.push_back(h2);
  }
  std::sort(out.H.begin(), out.H.end());
  out.H.erase(std::unique(out.H.begin(), out.H.end()), out.H.end());
  return out;
}

enum class MinorOp { Delete, Contract, Restrict };

inline Minor apply(const Minor& M, MinorOp op, const std::vector<int>& I) {
  switch (op) {
    case MinorOp::Delete:
      return delete_gens(M, I);
    case MinorOp::Contract:
      return contract_gens(M, I);
    case MinorOp::Restrict:
      return restrict_gens(M, I);
  }
  fail(ErrorCode::Internal, "bad minor op");
}

// Element-indexed form: act on the generators of M lying below l.
inline Minor apply_by_element(const Minor& M, MinorOp op, ElementId l) {
  if (l >= M.host->size()) fail(ErrorCode::BadIndex, "element " + std::to_string(l));
  std::vector<int> I;
  for (std::size_t i = 0; i < M.H.size(); ++i)
    if (M.host->leq(M.H[i], l)) I.push_back(static_cast<int>(i));
  return apply(M, op, I);
}

// x lies in the minor iff x >= z and x is the join over z of the generators
// of the minor below x.
inline bool contains_element(const Minor& M, ElementId x) {
  const GenLattice& L = *M.host;
  if (!L.leq(M.z, x)) return false;
  ElementId e = M.z;
  for (ElementId h : M.H)
    if (L.leq(h, x)) e = L.join(e, h);
  return e == x;
}

inline GenLattice::SubLatticeResult expand(const Minor& M, Limits limits = {}) {
  return M.host->generated_sub(M.H, M.z, limits);
}

inline BigInt minor_count(const GenLattice& L) {
  BigInt total = 0;
  for (ElementId l = 0; l < L.size(); ++l) total += BigInt(1) << L.alpha(l);
  return total;
}

// All minors: for each base element l, every subset of the join targets.
// Deterministic order: bases ascending, subsets by increasing bitmask over
// the sorted target list.
inline std::vector<Minor> enumerate_minors(GenLattice&& L, BigInt budget = 1000000) = delete;
inline std::vector<Minor> enumerate_minors(const GenLattice& L, BigInt budget = 1000000) {
  BigInt total = minor_count(L);
  if (total > budget)
    fail(ErrorCode::BudgetExceeded,
         "minor count " + total.str() + " exceeds budget " + budget.str());
  std::vector<Minor> out;
  out.reserve(static_cast<std::size_t>(total));
  for (ElementId l = 0; l < L.size(); ++l) {
    auto targets = L.join_targets(l);
    std::size_t k = targets.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Minor m{&L, l, {}};
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) m.H.push_back(targets[i]);
      out.push_back(std::move(m));
    }
  }
  return out;
}

// (K1,H1) <= (K2,H2): z1 is the join of z2 with the H2-generators below z1,
// and every H1-generator lifts from an H2-generator joined up to z1.
inline bool is_minor_of(const Minor& M1, const Minor& M2) {
  if (M1.host != M2.host) fail(ErrorCode::HostMismatch, "minors live in different lattices");
  const GenLattice& L = *M1.host;
  ElementId e = M2.z;
  for (ElementId h : M2.H)
    if (L.leq(h, M1.z)) e = L.join(e, h);
  if (e != M1.z) return false;
  std::vector<ElementId> lifted;
  for (ElementId h : M2.H) {
    ElementId t = L.join(h, M1.z);
    if (t != M1.z) lifted.push_back(t);
  }
  std::sort(lifted.begin(), lifted.end());
  lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());
  for (ElementId h : M1.H)
    if (!std::binary_search(lifted.begin(), lifted.end(), h)) return false;
  return true;
}

struct JoinResult {
  std::optional<Minor> join;
  int failed_condition = 0;  // 1, 2 or 3 when no join exists
  std::string detail;
};

// Join in the minor poset. Conditions: (1) the fibers over the two bases in
// the contraction to z1 ^ z2 have unique minimal elements, (2) generator
// lifts are unique, (3) every common upper bound contains z1 ^ z2. Condition
// 3 is decided by scanning candidate upper bounds, whose bases must lie below
// z1 ^ z2.
inline JoinResult minor_join(const Minor& M1, const Minor& M2, BigInt budget = 1000000) {
  if (M1.host != M2.host) fail(ErrorCode::HostMismatch, "minors live in different lattices");
  const GenLattice& L = *M1.host;
  ElementId l0 = L.meet(M1.z, M2.z);
  auto A = L.join_targets(l0);

  auto X1 = unique_minimal_expression(L, A, l0, M1.z);
  if (!X1)
    return {std::nullopt, 1, "fiber over " + L.label(M1.z) + " has no unique minimal element"};
  auto X2 = unique_minimal_expression(L, A, l0, M2.z);
  if (!X2)
    return {std::nullopt, 1, "fiber over " + L.label(M2.z) + " has no unique minimal element"};

  auto lifts_uniquely = [&](const Minor& M) -> std::optional<ElementId> {
    for (ElementId h : M.H) {
      int count = 0;
      for (ElementId a : A)
        if (L.join(a, M.z) == h) ++count;
      if (count != 1) return h;
    }
    return std::nullopt;
  };
  if (auto bad = lifts_uniquely(M1))
    return {std::nullopt, 2, "generator " + L.label(*bad) + " of the first minor has " +
                                 std::string("no unique preimage generator")};
  if (auto bad = lifts_uniquely(M2))
    return {std::nullopt, 2, "generator " + L.label(*bad) + " of the second minor has " +
                                 std::string("no unique preimage generator")};

  // Condition 3: candidate upper bounds have base below l0.
  BigInt scanned = 0;
  for (ElementId l = 0; l < L.size(); ++l) {
    if (!L.leq(l, l0)) continue;
    auto targets = L.join_targets(l);
    std::size_t k = targets.size();
    scanned += BigInt(1) << k;
    if (scanned > budget)
      fail(ErrorCode::BudgetExceeded, "upper-bound scan exceeds budget " + budget.str());
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Minor U{&L, l, {}};
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) U.H.push_back(targets[i]);
      if (!is_minor_of(M1, U) || !is_minor_of(M2, U)) continue;
      if (!contains_element(U, l0))
        return {std::nullopt, 3,
                "upper bound " + U.str() + " does not contain " + L.label(l0)};
    }
  }

  std::vector<ElementId> I = *X1;
  I.insert(I.end(), X2->begin(), X2->end());
  for (ElementId a : A) {
    if (std::find(M1.H.begin(), M1.H.end(), L.join(a, M1.z)) != M1.H.end()) I.push_back(a);
    if (std::find(M2.H.begin(), M2.H.end(), L.join(a, M2.z)) != M2.H.end()) I.push_back(a);
  }
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  return {Minor{&L, l0, std::move(I)}, 0, ""};
}

// ---- Order minors of a finite poset ----------------------------------------

// A pair (I, J): J a lower order ideal, I a disjoint subset. Corresponds to
// restricting the ideal lattice to the principal ideals of I u J and then
// contracting by J.
struct OrderMinor {
  GenSet I;
  GenSet J;
};

inline void validate_order_minor(const FinitePoset& P, const OrderMinor& om) {
  int n = static_cast<int>(P.size());
  bool ok = true;
  om.I.for_each([&](int p) {
    if (p >= n) ok = false;
  });
  om.J.for_each([&](int p) {
    if (p >= n) ok = false;
  });
  if (!ok) fail(ErrorCode::BadIndex, "order minor mentions elements outside the poset");
  if (!(om.I & om.J).empty())
    fail(ErrorCode::NotAnOrderMinor, "sets overlap at " + (om.I & om.J).str());
  bool ideal = true;
  om.J.for_each([&](int p) {
    for (int q = 0; q < n; ++q)
      if (P.leq(q, p) && !om.J.test(q)) ideal = false;
  });
  if (!ideal) fail(ErrorCode::NotAnOrderMinor, om.J.str() + " is not a lower order ideal");
}

inline std::vector<OrderMinor> enumerate_order_minors(const FinitePoset& P) {
  int n = static_cast<int>(P.size());
  if (n > 20) fail(ErrorCode::TooLarge, "poset too large for order-minor enumeration");
  std::vector<GenSet> ideals;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    GenSet J;
    for (int p = 0; p < n; ++p)
      if (mask >> p & 1) J.set(p);
    bool ideal = true;
    J.for_each([&](int p) {
      for (int q = 0; q < n; ++q)
        if (P.leq(q, p) && !J.test(q)) ideal = false;
    });
    if (ideal) ideals.push_back(J);
  }
  std::sort(ideals.begin(), ideals.end(), GenSet::canonical_less);
  std::vector<OrderMinor> out;
  for (const auto& J : ideals) {
    std::vector<int> comp;
    for (int p = 0; p < n; ++p)
      if (!J.test(p)) comp.push_back(p);
    for (std::size_t mask = 0; mask < (std::size_t{1} << comp.size()); ++mask) {
      OrderMinor om;
      om.J = J;
      for (std::size_t i = 0; i < comp.size(); ++i)
        if (mask >> i & 1) om.I.set(comp[i]);
      out.push_back(om);
    }
  }
  return out;
}

inline FinitePoset induced_subposet(const FinitePoset& P, const std::vector<int>& elems) {
  std::vector<std::string> labels;
  for (int e : elems) labels.push_back(P.label(e));
  return FinitePoset::from_leq(
      elems.size(), [&](int a, int b) { return P.leq(elems[a], elems[b]); }, std::move(labels));
}

// The minor of the ideal lattice corresponding to (I, J): base = the ideal J,
// generators = J joined with each principal ideal of I. Verifies the result
// is isomorphic to the ideal lattice of the subposet induced on I.
inline Minor order_minor_to_minor(const FinitePoset& P, const GenLattice& L,
                                  const OrderMinor& om) {
  validate_order_minor(P, om);
  if (static_cast<std::size_t>(L.gen_count()) != P.size())
    fail(ErrorCode::HostMismatch, "lattice generators do not match the poset elements");
  ElementId z = L.join_gens(om.J);
  Minor M{&L, z, {}};
  om.I.for_each([&](int p) { M.H.push_back(L.join(z, L.generator(p))); });
  std::sort(M.H.begin(), M.H.end());
  M.H.erase(std::unique(M.H.begin(), M.H.end()), M.H.end());

  auto sub = expand(M);
  std::vector<int> ielems = om.I.indices();
  GenLattice ideals = ideal_lattice(induced_subposet(P, ielems));
  FinitePoset a = lattice_order_poset(sub.lattice);
  FinitePoset b = lattice_order_poset(ideals);
  if (!poset_isomorphic(a, b))
    fail(ErrorCode::NotAnOrderMinor,
         "minor is not isomorphic to the ideal lattice of the induced subposet");
  return M;
}

}  // namespace genlat
