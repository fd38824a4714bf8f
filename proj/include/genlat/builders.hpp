#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "genlat/gen_lattice.hpp"
#include "genlat/genset.hpp"
#include "genlat/poset.hpp"
#include "genlat/util.hpp"

namespace genlat {

// Lattice from an explicit family of closed sets. The family must contain the
// full index set, be intersection-closed where queried, and be join-generated
// by the singleton closures.
inline GenLattice explicit_lattice(int n, std::vector<GenSet> family, Limits limits = {}) {
  std::sort(family.begin(), family.end(), GenSet::canonical_less);
  family.erase(std::unique(family.begin(), family.end()), family.end());
  if (family.empty() || !(family.back() == GenSet::full(n)))
    fail(ErrorCode::NonClosure, "the full index set is missing from the family");
  std::unordered_set<GenSet, GenSetHash> members(family.begin(), family.end());
  auto cl = [family, members](const GenSet& X) {
    GenSet acc;
    bool found = false;
    for (const auto& S : family) {
      if (!X.is_subset_of(S)) continue;
      acc = found ? (acc & S) : S;
      found = true;
    }
    if (!found) fail(ErrorCode::NonClosure, "no member of the family contains " + X.str());
    if (!members.count(acc))
      fail(ErrorCode::NonClosure, "family is not intersection-closed at " + X.str() +
                                      ": nearest bound " + acc.str() + " is not a member");
    return acc;
  };
  GenLattice L = GenLattice::from_closure(n, cl, limits);
  if (L.size() != family.size())
    for (const auto& S : family)
      if (!L.id_of(S))
        fail(ErrorCode::NonClosure, "member " + S.str() + " is not a join of generators");
  return L;
}

// Generators are the edges; closed sets are the edge sets spanned by their
// own connected components (graph flats).
inline GenLattice graph_flat_lattice(int vertices, const std::vector<std::pair<int, int>>& edges,
                                     Limits limits = {}) {
  int m = static_cast<int>(edges.size());
  for (int e = 0; e < m; ++e) {
    auto [u, v] = edges[e];
    if (u < 0 || v < 0 || u >= vertices || v >= vertices)
      fail(ErrorCode::BadIndex, "edge " + std::to_string(e + 1) + " endpoint out of range");
    if (u == v)
      fail(ErrorCode::GeneratorIsBottom,
           "edge " + std::to_string(e + 1) + " is a loop at vertex " + std::to_string(u + 1));
    for (int f = 0; f < e; ++f) {
      auto [a, b] = edges[f];
      if ((a == u && b == v) || (a == v && b == u))
        fail(ErrorCode::DuplicateGenerator,
             "edges " + std::to_string(f + 1) + " and " + std::to_string(e + 1) + " are parallel");
    }
  }
  auto cl = [vertices, edges](const GenSet& X) {
    std::vector<int> parent(vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    X.for_each([&](int e) { parent[find(edges[e].first)] = find(edges[e].second); });
    GenSet S;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (find(edges[e].first) == find(edges[e].second)) S.set(static_cast<int>(e));
    return S;
  };
  return GenLattice::from_closure(m, cl, limits);
}

// Partitions of [n], encoded as the flats of the complete graph K_n.
inline GenLattice partition_lattice(int n, Limits limits = {}) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return graph_flat_lattice(n, edges, limits);
}

// Flats of the uniform matroid: all sets of size < k, plus the full set.
inline GenLattice uniform_lattice(int k, int n, Limits limits = {}) {
  if (k < 1) fail(ErrorCode::BadIndex, "uniform rank must be at least 1");
  auto cl = [k, n](const GenSet& X) {
    if (static_cast<int>(X.count()) < k) return X;
    return GenSet::full(n);
  };
  return GenLattice::from_closure(n, cl, limits);
}

// Order ideals of a finite poset, generated by the principal ideals.
inline GenLattice ideal_lattice(const FinitePoset& P, Limits limits = {}) {
  int n = static_cast<int>(P.size());
  auto cl = [&P, n](const GenSet& X) {
    GenSet S;
    X.for_each([&](int i) {
      for (int j = 0; j < n; ++j)
        if (P.leq(j, i)) S.set(j);
    });
    return S;
  };
  return GenLattice::from_closure(n, cl, limits);
}

// The element order of a lattice as a plain poset, labels carried over.
inline FinitePoset lattice_order_poset(const GenLattice& L) {
  std::vector<std::pair<int, int>> covers;
  std::vector<std::string> labels;
  for (ElementId e = 0; e < L.size(); ++e) {
    labels.push_back(L.label(e));
    for (ElementId u : L.upper_covers(e)) covers.push_back({static_cast<int>(e), static_cast<int>(u)});
  }
  return FinitePoset::from_covers(L.size(), std::move(covers), std::move(labels));
}

}  // namespace genlat
