#pragma once

#include "genlat/builders.hpp"
#include "genlat/minor_poset.hpp"
#include "genlat/strong_map.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace genlat {

struct PropertyReport {
  bool verdict = false;
  std::string witness;                 // filled on the failing (or found) side
  std::optional<Minor> witness_minor;  // engaged when a minor exhibits the result
};

struct ForbiddenPattern {
  std::string name;
  GenLattice lattice;
};

namespace detail {

inline GenLattice lattice_from_index_sets(int n, const std::vector<std::vector<int>>& one_based) {
  std::vector<GenSet> fam;
  fam.reserve(one_based.size());
  for (const auto& s : one_based) {
    GenSet g;
    for (int i : s) g.set(i - 1);
    fam.push_back(g);
  }
  return explicit_lattice(n, fam);
}

inline GenSet remap_indices(const GenSet& s, const std::vector<int>& sigma) {
  GenSet out;
  s.for_each([&](int i) { out.set(sigma[i]); });
  return out;
}

}  // namespace detail

// The five three-generator obstruction patterns plus the three-element chain.
// Each is the smallest lattice exhibiting its defect: P_a through P_d carry a
// parallel pair of generators, P_lat has a non-lattice minor poset, and
// chain3 has a generator that is not an atom.
inline const std::vector<ForbiddenPattern>& forbidden_patterns() {
  static const std::vector<ForbiddenPattern> pats = [] {
    std::vector<ForbiddenPattern> v;
    v.push_back({"P_a", detail::lattice_from_index_sets(3, {{}, {1}, {2}, {3}, {1, 2, 3}})});
    v.push_back({"P_b", detail::lattice_from_index_sets(3, {{}, {1}, {1, 2}, {3}, {1, 2, 3}})});
    v.push_back({"P_c", detail::lattice_from_index_sets(3, {{}, {1}, {2}, {1, 2}, {3}, {1, 2, 3}})});
    v.push_back({"P_d", detail::lattice_from_index_sets(3, {{}, {1}, {2}, {1, 2, 3}})});
    v.push_back({"P_lat", detail::lattice_from_index_sets(3, {{}, {1}, {1, 2}, {1, 3}, {1, 2, 3}})});
    v.push_back({"chain3", detail::lattice_from_index_sets(2, {{}, {1}, {1, 2}})});
    return v;
  }();
  return pats;
}

inline const ForbiddenPattern& pattern_by_name(const std::string& name) {
  for (const auto& p : forbidden_patterns())
    if (p.name == name) return p;
  fail(ErrorCode::BadIndex, "unknown pattern " + name);
}

// Isomorphism of generator-enriched lattices: a lattice isomorphism carrying
// the generator set onto the generator set. Searches over generator index
// permutations; the element map is then forced by the closed-set encoding.
inline std::optional<std::vector<ElementId>> gel_isomorphic(const GenLattice& A, const GenLattice& B) {
  const int n = A.gen_count();
  if (n != B.gen_count() || A.size() != B.size()) return std::nullopt;

  std::vector<std::size_t> asig(n), bsig(n);
  for (int i = 0; i < n; ++i) {
    asig[i] = A.closed_set(A.generator(i)).count();
    bsig[i] = B.closed_set(B.generator(i)).count();
  }

  std::vector<int> sigma(n, -1);
  std::vector<bool> used(n, false);
  std::vector<ElementId> map(A.size());

  auto try_sigma = [&]() -> bool {
    for (ElementId e = 0; e < A.size(); ++e) {
      auto id = B.id_of(detail::remap_indices(A.closed_set(e), sigma));
      if (!id) return false;
      map[e] = *id;
    }
    for (int i = 0; i < n; ++i)
      if (map[A.generator(i)] != B.generator(sigma[i])) return false;
    return true;
  };

  auto rec = [&](auto&& self, int i) -> bool {
    if (i == n) return try_sigma();
    for (int j = 0; j < n; ++j) {
      if (used[j] || asig[i] != bsig[j]) continue;
      sigma[i] = j;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (rec(rec, 0)) return map;
  return std::nullopt;
}

// No two distinct generators share the same proper join with any element.
// The definition scan is cross-checked against two equivalent criteria: every
// canonical-map fiber having a unique minimal element, and the lattice being
// graded with rank equal to the number of generators below.
inline PropertyReport has_no_parallels(const GenLattice& L) {
  auto w = detail::parallel_witness(L);

  bool unique_min = true;
  std::vector<ElementId> gens = L.generator_elements();
  for (ElementId l = 0; l < L.size() && unique_min; ++l)
    if (!unique_minimal_expression(L, gens, L.bottom(), l)) unique_min = false;

  bool rank_ok = true;
  {
    FinitePoset P = lattice_order_poset(L);
    auto h = P.heights();
    for (int x = 0; x < P.size() && rank_ok; ++x)
      for (int y : P.upper_covers(x))
        if (h[y] != h[x] + 1) {
          rank_ok = false;
          break;
        }
    for (ElementId e = 0; e < L.size() && rank_ok; ++e)
      if (static_cast<std::size_t>(h[e]) != L.closed_set(e).count()) rank_ok = false;
  }

  bool verdict = !w.has_value();
  if (unique_min != verdict || rank_ok != verdict)
    fail(ErrorCode::Internal, "parallel criteria disagree: scan=" + std::to_string(verdict) +
                                  " fibers=" + std::to_string(unique_min) +
                                  " rank=" + std::to_string(rank_ok));

  PropertyReport r;
  r.verdict = verdict;
  if (w) {
    auto [l, i, j] = *w;
    r.witness = "generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                " both join " + L.label(l) + " to " + L.label(L.join(l, L.generator(i)));
  }
  return r;
}

// Every proper join of a generator with an element is join-irreducible in the
// upper interval at that element.
inline PropertyReport lifts_join_irreducibles(const GenLattice& L) {
  for (ElementId l = 0; l < L.size(); ++l)
    for (ElementId t : L.join_targets(l)) {
      int in_interval = 0;
      for (ElementId c : L.lower_covers(t))
        if (L.leq(l, c)) ++in_interval;
      if (in_interval != 1) {
        PropertyReport r;
        r.verdict = false;
        r.witness = L.label(t) + " has " + std::to_string(in_interval) +
                    " lower covers above " + L.label(l);
        return r;
      }
    }
  return {true, "", std::nullopt};
}

// Geometric: every generator is an atom and the lattice is upper semimodular.
inline PropertyReport is_geometric(const GenLattice& L) {
  for (int i = 0; i < L.gen_count(); ++i)
    if (!L.is_cover(L.bottom(), L.generator(i)))
      return {false, "generator " + std::to_string(i + 1) + " = " + L.label(L.generator(i)) + " is not an atom",
              std::nullopt};
  if (auto w = detail::semimodularity_witness(L))
    return {false,
            L.label(w->first) + " and " + L.label(w->second) +
                " cover their meet but their join covers neither",
            std::nullopt};
  return {true, "", std::nullopt};
}

// Whether the labeled join diagram has exactly the Hasse diagram's edges.
// Every cover is a diagram edge, so only the converse can fail.
inline PropertyReport diagram_equals_hasse(const GenLattice& L) {
  for (const auto& e : L.diagram())
    if (!L.is_cover(e.from, e.to))
      return {false, "diagram edge " + L.label(e.from) + " -> " + L.label(e.to) + " is not a cover",
              std::nullopt};
  return {true, "", std::nullopt};
}

// Scan all minors with as many generators as some pattern, expand each, and
// test isomorphism; reports the first hit in base-then-subset order.
inline PropertyReport find_forbidden_minor(const GenLattice& L,
                                           const std::vector<const ForbiddenPattern*>& pats,
                                           const BigInt& budget = BigInt(1000000)) {
  std::vector<int> sizes;
  for (const auto* p : pats) sizes.push_back(p->lattice.gen_count());
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  BigInt examined = 0;
  for (ElementId l = 0; l < L.size(); ++l) {
    auto targets = L.join_targets(l);
    const std::size_t nt = targets.size();
    if (nt >= 64) fail(ErrorCode::TooLarge, "too many join targets at " + L.label(l));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nt); ++mask) {
      int k = __builtin_popcountll(mask);
      if (!std::binary_search(sizes.begin(), sizes.end(), k)) continue;
      if (++examined > budget)
        fail(ErrorCode::BudgetExceeded, "forbidden-minor scan exceeded budget " + budget.str());
      Minor m;
      m.host = &L;
      m.z = l;
      for (std::size_t i = 0; i < nt; ++i)
        if (mask >> i & 1) m.H.push_back(targets[i]);
      auto sub = expand(m);
      for (const auto* p : pats) {
        if (p->lattice.gen_count() != k) continue;
        if (gel_isomorphic(sub.lattice, p->lattice)) {
          PropertyReport r;
          r.verdict = true;
          r.witness = p->name + " at " + m.str();
          r.witness_minor = std::move(m);
          return r;
        }
      }
    }
  }
  return {false, "", std::nullopt};
}

inline PropertyReport find_forbidden_minor(const GenLattice& L, const std::string& pattern_name,
                                           const BigInt& budget = BigInt(1000000)) {
  return find_forbidden_minor(L, {&pattern_by_name(pattern_name)}, budget);
}

// Whether the minor poset is a lattice, decided two independent ways that
// must agree: pairwise joins of minors all exist, and the obstruction
// characterization (no parallels and no P_lat minor).
inline PropertyReport minor_poset_is_lattice(const GenLattice& L, const BigInt& budget = BigInt(1000000)) {
  PropertyReport nopar = has_no_parallels(L);
  PropertyReport plat = find_forbidden_minor(L, "P_lat", budget);
  bool by_obstruction = nopar.verdict && !plat.verdict;

  bool by_joins = true;
  std::string join_witness;
  auto minors = enumerate_minors(L, budget);
  for (std::size_t i = 0; i < minors.size() && by_joins; ++i)
    for (std::size_t j = i + 1; j < minors.size(); ++j) {
      auto jr = minor_join(minors[i], minors[j], budget);
      if (!jr.join) {
        by_joins = false;
        join_witness = minors[i].str() + " and " + minors[j].str() + " have no join: " + jr.detail;
        break;
      }
    }

  if (by_joins != by_obstruction)
    fail(ErrorCode::Internal, "lattice criteria disagree: joins=" + std::to_string(by_joins) +
                                  " obstruction=" + std::to_string(by_obstruction));

  PropertyReport r;
  r.verdict = by_joins;
  if (!r.verdict) {
    if (!nopar.verdict) {
      r.witness = "parallel: " + nopar.witness;
    } else {
      r.witness = "minor " + plat.witness + "; " + join_witness;
      r.witness_minor = plat.witness_minor;
    }
  }
  return r;
}

struct ChainSurjection {
  std::unique_ptr<GenLattice> chain;
  StrongMap map;
};

// For a host with no parallels, order the generators by repeatedly taking a
// minimal generator of the current contraction (lowest index on ties); the
// position of the last generator below an element defines a strong
// surjection onto the chain.
inline ChainSurjection surjection_onto_chain(const GenLattice& L) {
  if (auto w = detail::parallel_witness(L)) {
    auto [l, i, j] = *w;
    fail(ErrorCode::HasParallel, "generators " + std::to_string(i + 1) + " and " +
                                     std::to_string(j + 1) + " are parallel at " + L.label(l));
  }
  const int n = L.gen_count();
  std::vector<int> order;
  std::vector<bool> used(n, false);
  ElementId z = L.bottom();
  for (int step = 0; step < n; ++step) {
    std::vector<std::pair<ElementId, int>> cand;  // (join with z, generator index)
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      ElementId t = L.join(z, L.generator(i));
      if (t == z)
        fail(ErrorCode::Internal, "generator " + std::to_string(i + 1) +
                                      " was absorbed before being ordered");
      cand.emplace_back(t, i);
    }
    int pick = -1;
    for (const auto& [t, i] : cand) {
      bool minimal = true;
      for (const auto& [u, j] : cand)
        if (u != t && L.leq(u, t)) {
          minimal = false;
          break;
        }
      if (minimal) {
        pick = i;
        break;  // candidates are in index order, so the first minimal wins
      }
    }
    if (pick < 0) fail(ErrorCode::Internal, "no minimal generator in contraction");
    used[pick] = true;
    order.push_back(pick);
    z = L.join(z, L.generator(pick));
  }

  auto chain = std::make_unique<GenLattice>(GenLattice::chain_lattice(n));
  std::vector<ElementId> values(L.size(), 0);
  for (ElementId e = 0; e < L.size(); ++e) {
    int best = 0;
    for (int k = 0; k < n; ++k)
      if (L.leq(L.generator(order[k]), e)) best = k + 1;
    values[e] = static_cast<ElementId>(best);
  }
  StrongMap f = StrongMap::make(L, *chain, values);
  return ChainSurjection{std::move(chain), std::move(f)};
}

// Every generator-enriched lattice on three generators, one per closed-set
// family over {1,2,3}; families that fail the lattice axioms are skipped.
inline std::vector<GenLattice> all_three_generator_lattices() {
  std::vector<GenSet> mids;
  for (int m = 1; m < 7; ++m) {
    GenSet s;
    for (int i = 0; i < 3; ++i)
      if (m >> i & 1) s.set(i);
    mids.push_back(s);
  }
  std::sort(mids.begin(), mids.end(), GenSet::canonical_less);

  std::vector<GenLattice> out;
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<GenSet> fam{GenSet(), GenSet::full(3)};
    for (int i = 0; i < 6; ++i)
      if (mask >> i & 1) fam.push_back(mids[i]);
    try {
      out.push_back(explicit_lattice(3, fam));
    } catch (const Error&) {
      continue;
    }
  }
  return out;
}

}  // namespace genlat
