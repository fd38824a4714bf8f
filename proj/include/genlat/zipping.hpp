#pragma once

#include "genlat/cd.hpp"
#include "genlat/minor_poset.hpp"
#include "genlat/strong_map.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace genlat {

// The poset of diagram edges (x, x∨g), ordered by (x,y) ≤ (u,v) when x ≤ u
// and u∨y = v; joining a fixed element to both endpoints moves an edge up.
struct EdgePoset {
  const GenLattice* host;
  std::vector<std::pair<ElementId, ElementId>> edges;  // sorted pairs, no labels

  static EdgePoset of(const GenLattice& L) {
    EdgePoset ep;
    ep.host = &L;
    for (const auto& e : L.diagram()) ep.edges.emplace_back(e.from, e.to);
    std::sort(ep.edges.begin(), ep.edges.end());
    ep.edges.erase(std::unique(ep.edges.begin(), ep.edges.end()), ep.edges.end());
    return ep;
  }

  std::size_t size() const { return edges.size(); }

  bool leq(std::size_t a, std::size_t b) const {
    const auto& [x, y] = edges[a];
    const auto& [u, v] = edges[b];
    return host->leq(x, u) && host->join(u, y) == v;
  }

  FinitePoset to_finite_poset() const {
    std::vector<std::string> labels;
    for (const auto& [x, y] : edges)
      labels.push_back("(" + host->label(x) + "," + host->label(y) + ")");
    return FinitePoset::from_leq(
        edges.size(), [this](int a, int b) { return leq(a, b); }, labels);
  }
};

struct Factorization {
  // Quotient stages strictly between source and target; stage(i) below views
  // the full sequence source, intermediates..., target.
  std::vector<std::unique_ptr<GenLattice>> intermediates;
  std::vector<StrongMap> maps;  // maps[i]: stage i -> stage i+1; composition = input
};

namespace detail {

// Union-find over lattice elements with class-maximum tracking.
class ElementClasses {
 public:
  explicit ElementClasses(const GenLattice& L) : L_(&L), parent_(L.size()) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  ElementId find(ElementId a) const {
    while (parent_[a] != a) a = parent_[a];
    return a;
  }

  void unite(ElementId a, ElementId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  bool same(ElementId a, ElementId b) const { return find(a) == find(b); }

  // Class representative as an element: the join of the class, which stays in
  // the class for a join-compatible relation.
  ElementId rep(ElementId a) const {
    ElementId root = find(a);
    ElementId r = L_->bottom();
    bool seen = false;
    for (ElementId e = 0; e < L_->size(); ++e)
      if (find(e) == root) {
        r = seen ? L_->join(r, e) : e;
        seen = true;
      }
    return r;
  }

  std::size_t class_count() const {
    std::size_t c = 0;
    for (ElementId e = 0; e < L_->size(); ++e)
      if (find(e) == e) ++c;
    return c;
  }

  // Whether joining any element to both members of a class stays in one class.
  bool join_compatible() const {
    for (ElementId a = 0; a < L_->size(); ++a)
      for (ElementId b = static_cast<ElementId>(a + 1); b < L_->size(); ++b) {
        if (!same(a, b)) continue;
        for (ElementId c = 0; c < L_->size(); ++c)
          if (!same(L_->join(a, c), L_->join(b, c))) return false;
      }
    return true;
  }

 private:
  const GenLattice* L_;
  std::vector<ElementId> parent_;
};

struct QuotientStage {
  std::unique_ptr<GenLattice> lattice;
  std::vector<ElementId> projection;  // source element -> stage element
};

// Build the quotient of L by the classes as a generator-enriched lattice,
// with the projection map.
inline QuotientStage build_quotient(const GenLattice& L, const ElementClasses& classes) {
  std::vector<ElementId> gen_reps;
  for (int i = 0; i < L.gen_count(); ++i) {
    ElementId r = classes.rep(L.generator(i));
    if (r == classes.rep(L.bottom())) continue;  // generator collapses to the minimum
    if (std::find(gen_reps.begin(), gen_reps.end(), r) == gen_reps.end()) gen_reps.push_back(r);
  }
  const int k = static_cast<int>(gen_reps.size());

  auto cl = [&, k](const GenSet& X) {
    ElementId e = L.bottom();
    X.for_each([&](int j) { e = L.join(e, gen_reps[j]); });
    ElementId r = classes.rep(e);
    GenSet S;
    for (int j = 0; j < k; ++j)
      if (classes.rep(L.join(gen_reps[j], r)) == r) S.set(j);
    return S;
  };

  QuotientStage st;
  st.lattice = std::make_unique<GenLattice>(GenLattice::from_closure(k, cl));
  if (st.lattice->size() != classes.class_count())
    fail(ErrorCode::Internal, "quotient size does not match class count");

  st.projection.resize(L.size());
  for (ElementId e = 0; e < L.size(); ++e) {
    ElementId r = classes.rep(e);
    GenSet S;
    for (int j = 0; j < k; ++j)
      if (classes.rep(L.join(gen_reps[j], r)) == r) S.set(j);
    auto id = st.lattice->id_of(S);
    if (!id) fail(ErrorCode::Internal, "projection misses the quotient");
    st.projection[e] = *id;
  }
  return st;
}

}  // namespace detail

// Factor a strong surjection into maps that each identify exactly two
// elements: order the collapsed diagram edges by a linear extension of the
// edge poset taken largest first, close transitively one edge at a time, and
// emit the quotient-to-quotient maps, dropping identity steps.
inline Factorization factor_surjection(const StrongMap& f) {
  const GenLattice& L = f.source();
  EdgePoset ep = EdgePoset::of(L);

  std::vector<std::size_t> collapsed;
  for (std::size_t i = 0; i < ep.size(); ++i)
    if (f.apply(ep.edges[i].first) == f.apply(ep.edges[i].second)) collapsed.push_back(i);

  // Largest-first linear extension: repeatedly take the lexicographically
  // least among the maximal remaining edges.
  std::vector<std::size_t> order;
  std::vector<bool> taken(collapsed.size(), false);
  for (std::size_t step = 0; step < collapsed.size(); ++step) {
    std::size_t pick = SIZE_MAX;
    for (std::size_t a = 0; a < collapsed.size(); ++a) {
      if (taken[a]) continue;
      bool maximal = true;
      for (std::size_t b = 0; b < collapsed.size(); ++b)
        if (b != a && !taken[b] && ep.leq(collapsed[a], collapsed[b])) {
          maximal = false;
          break;
        }
      if (maximal) {
        pick = a;
        break;
      }
    }
    if (pick == SIZE_MAX) fail(ErrorCode::Internal, "edge poset has no maximal element");
    taken[pick] = true;
    order.push_back(collapsed[pick]);
  }

  Factorization out;
  detail::ElementClasses classes(L);
  const GenLattice* prev_lattice = &L;
  std::vector<ElementId> prev_proj(L.size());
  std::iota(prev_proj.begin(), prev_proj.end(), 0);

  for (std::size_t step = 0; step < order.size(); ++step) {
    const auto& [x, y] = ep.edges[order[step]];
    if (classes.same(x, y)) continue;
    classes.unite(x, y);
    if (!classes.join_compatible())
      fail(ErrorCode::Internal, "transitive closure left a join-incompatible relation");

    bool last_merge = classes.class_count() == static_cast<std::size_t>(f.target().size());
    const GenLattice* next_lattice;
    std::vector<ElementId> next_proj;
    if (last_merge) {
      next_lattice = &f.target();
      next_proj = f.values();
    } else {
      auto st = detail::build_quotient(L, classes);
      next_lattice = st.lattice.get();
      next_proj = std::move(st.projection);
      out.intermediates.push_back(std::move(st.lattice));
    }

    std::vector<ElementId> values(prev_lattice->size());
    std::vector<bool> set(prev_lattice->size(), false);
    for (ElementId e = 0; e < L.size(); ++e) {
      ElementId s = prev_proj[e];
      if (set[s] && values[s] != next_proj[e])
        fail(ErrorCode::Internal, "stage map is not constant on classes");
      values[s] = next_proj[e];
      set[s] = true;
    }
    out.maps.push_back(StrongMap::make(*prev_lattice, *next_lattice, std::move(values)));
    prev_lattice = next_lattice;
    prev_proj = std::move(next_proj);

    if (last_merge) {
      // Any edges left over must already be identified.
      for (std::size_t rest = step + 1; rest < order.size(); ++rest) {
        const auto& [u, v] = ep.edges[order[rest]];
        if (!classes.same(u, v))
          fail(ErrorCode::Internal, "collapsed edge survives the full congruence");
      }
      break;
    }
  }

  if (classes.class_count() != static_cast<std::size_t>(f.target().size()))
    fail(ErrorCode::NotSurjective, "collapsed edges close into " +
                                       std::to_string(classes.class_count()) +
                                       " classes, but the target has " +
                                       std::to_string(f.target().size()) + " elements");

  // A surjection with a trivial congruence is a relabeling; it is its own
  // factorization unless it is the identity.
  if (out.maps.empty() && !f.is_identity()) out.maps.push_back(f);
  return out;
}

// The induced map on minor posets, F(⟨H|z⟩) = ⟨f(H)|f(z)⟩, as an id-to-id
// table; order preservation is verified on all cover pairs.
inline std::vector<std::size_t> induced_minor_map(const StrongMap& f, const MinorPoset& src,
                                                  const MinorPoset& dst) {
  if (&src.host() != &f.source() || &dst.host() != &f.target())
    fail(ErrorCode::HostMismatch, "minor posets do not match the map's endpoints");
  std::vector<std::size_t> out(src.size());
  out[0] = 0;
  for (std::size_t id = 1; id < src.size(); ++id) {
    Minor m = src.minor_of(id);
    Minor img;
    img.host = &dst.host();
    img.z = f.apply(m.z);
    for (ElementId h : m.H) {
      ElementId t = f.apply(h);
      if (t != img.z) img.H.push_back(t);
    }
    std::sort(img.H.begin(), img.H.end());
    img.H.erase(std::unique(img.H.begin(), img.H.end()), img.H.end());
    out[id] = dst.id_of(img);
  }
  for (const auto& [a, b] : src.cover_pairs()) {
    if (out[a] == out[b] || out[a] == 0) continue;
    if (!is_minor_of(dst.minor_of(out[a]), dst.minor_of(out[b])))
      fail(ErrorCode::Internal, "induced map is not order-preserving at " + src.label(a) +
                                    " < " + src.label(b));
  }
  return out;
}

struct Zipper {
  int x, y, z;
};

namespace detail {

struct ZipOutcome {
  FinitePoset poset;
  std::vector<int> old_to_new;  // x, y, z all land on the merged element
};

inline ZipOutcome zip_impl(const FinitePoset& P, const Zipper& zp) {
  const int n = P.size();
  auto [x, y, z] = zp;
  if (x < 0 || y < 0 || z < 0 || x >= n || y >= n || z >= n || x == y || x == z || y == z)
    fail(ErrorCode::BadIndex, "zipper elements out of range or not distinct");

  auto lower = P.lower_covers(z);
  std::sort(lower.begin(), lower.end());
  std::vector<int> expect{std::min(x, y), std::max(x, y)};
  if (lower != expect)
    fail(ErrorCode::NotAZipper, "condition (i): " + P.label(z) + " covers " +
                                    std::to_string(lower.size()) + " elements, not exactly " +
                                    P.label(x) + " and " + P.label(y));
  for (int p = 0; p < n; ++p)
    if (P.leq(x, p) && P.leq(y, p) && !P.leq(z, p))
      fail(ErrorCode::NotAZipper, "condition (ii): " + P.label(p) +
                                      " is an upper bound of the pair not above " + P.label(z));
  for (int p = 0; p < n; ++p)
    if (p != x && p != y && P.lt(p, x) != P.lt(p, y))
      fail(ErrorCode::NotAZipper,
           "condition (iii): " + P.label(p) + " is below exactly one of " + P.label(x) + ", " +
               P.label(y));

  std::vector<int> old_to_new(n, -1);
  std::vector<int> keep;  // old ids in order, with x standing for the merged element
  for (int p = 0; p < n; ++p) {
    if (p == y || p == z) continue;
    old_to_new[p] = static_cast<int>(keep.size());
    keep.push_back(p);
  }
  int w = old_to_new[x];
  old_to_new[y] = w;
  old_to_new[z] = w;

  std::vector<std::string> labels(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) labels[i] = P.label(keep[i]);
  labels[w] = P.label(z);

  auto leq = [&](int a, int b) {
    if (a == b) return true;
    int pa = keep[a], pb = keep[b];
    if (a == w) return P.leq(x, pb) || P.leq(y, pb);
    if (b == w) return P.leq(pa, z);
    return P.leq(pa, pb);
  };
  return {FinitePoset::from_leq(keep.size(), leq, labels), std::move(old_to_new)};
}

}  // namespace detail

// Merge x, y and their unique minimal upper bound z into one element.
inline FinitePoset zip(const FinitePoset& P, const Zipper& zp) {
  return detail::zip_impl(P, zp).poset;
}

struct ZipStep {
  int stage;  // index of the elementary map this zip realizes
  Zipper zipper;
  std::string x_label, y_label, z_label;
  FinitePoset after;
  CdPoly psi_after;
};

struct ZipTrace {
  Factorization factorization;
  FinitePoset start;  // the source's minor poset
  CdPoly psi_start;
  std::vector<ZipStep> steps;
  std::vector<int> final_iso;  // certificate: last poset ≅ target's minor poset
};

// Realize the target's minor poset from the source's by zipping: factor the
// map, and per elementary step zip the maximal elements of the nontrivial
// fibers of the induced map in rank-ascending order.
inline ZipTrace zipping_sequence(const StrongMap& f, const BigInt& budget = BigInt(1000000)) {
  ZipTrace trace;
  trace.factorization = factor_surjection(f);
  const auto& maps = trace.factorization.maps;

  MinorPoset cur_mp = MinorPoset::build(f.source(), budget);
  trace.start = cur_mp.to_finite_poset();
  trace.psi_start = cd_index(trace.start);

  FinitePoset Q = trace.start;
  std::vector<std::size_t> pi(cur_mp.size());  // current minor poset id -> Q id
  std::iota(pi.begin(), pi.end(), 0);

  for (std::size_t stage = 0; stage < maps.size(); ++stage) {
    const StrongMap& step_map = maps[stage];
    MinorPoset next_mp = MinorPoset::build(step_map.target(), budget);
    auto F = induced_minor_map(step_map, cur_mp, next_mp);

    std::map<std::size_t, std::vector<std::size_t>> fibers;
    for (std::size_t id = 0; id < F.size(); ++id) fibers[F[id]].push_back(id);

    std::vector<std::vector<std::size_t>> triples;
    for (auto& [img, members] : fibers) {
      if (members.size() == 1) continue;
      if (members.size() != 3)
        fail(ErrorCode::Internal, "nontrivial fiber of size " + std::to_string(members.size()));
      std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        return cur_mp.rank_of(a) < cur_mp.rank_of(b);
      });
      if (cur_mp.rank_of(members[0]) != cur_mp.rank_of(members[1]) ||
          cur_mp.rank_of(members[2]) != cur_mp.rank_of(members[0]) + 1)
        fail(ErrorCode::Internal, "fiber ranks are not two below one");
      triples.push_back(members);
    }
    std::sort(triples.begin(), triples.end(),
              [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
                int ra = cur_mp.rank_of(a[2]), rb = cur_mp.rank_of(b[2]);
                if (ra != rb) return ra < rb;
                return a[2] < b[2];
              });

    for (const auto& tr : triples) {
      Zipper zp{static_cast<int>(pi[std::min(tr[0], tr[1])]),
                static_cast<int>(pi[std::max(tr[0], tr[1])]), static_cast<int>(pi[tr[2]])};
      ZipStep step;
      step.stage = static_cast<int>(stage);
      step.zipper = zp;
      step.x_label = Q.label(zp.x);
      step.y_label = Q.label(zp.y);
      step.z_label = Q.label(zp.z);
      detail::ZipOutcome oc = [&] {
        try {
          return detail::zip_impl(Q, zp);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::NotAZipper)
            fail(ErrorCode::ZipperNotFound, "fiber {" + step.x_label + ", " + step.y_label +
                                                ", " + step.z_label + "} is not a zipper: " +
                                                e.detail());
          throw;
        }
      }();
      Q = oc.poset;
      for (auto& q : pi) q = static_cast<std::size_t>(oc.old_to_new[q]);
      step.after = Q;
      step.psi_after = cd_index(Q);
      trace.steps.push_back(std::move(step));
    }

    // Align bookkeeping with the next stage's minor poset and relabel.
    std::vector<std::size_t> next_pi(next_mp.size(), SIZE_MAX);
    for (std::size_t id = 0; id < F.size(); ++id) {
      std::size_t q = pi[id];
      if (next_pi[F[id]] != SIZE_MAX && next_pi[F[id]] != q)
        fail(ErrorCode::Internal, "fiber members disagree after zipping");
      next_pi[F[id]] = q;
    }
    if (static_cast<std::size_t>(Q.size()) != next_mp.size())
      fail(ErrorCode::Internal, "zipped poset size does not match the next stage");
    std::vector<std::string> labels(Q.size());
    for (std::size_t id = 0; id < next_mp.size(); ++id) labels[next_pi[id]] = next_mp.label(id);
    Q.relabel(labels);
    if (!trace.steps.empty()) trace.steps.back().after = Q;

    pi = std::move(next_pi);
    cur_mp = std::move(next_mp);
  }

  FinitePoset target_poset =
      maps.empty() ? MinorPoset::build(f.target(), budget).to_finite_poset() : Q;
  if (maps.empty()) {
    // Trivial factorization: the source and target minor posets must already
    // be isomorphic (identity map).
    auto iso = poset_isomorphic(Q, target_poset);
    if (!iso) fail(ErrorCode::Internal, "identity factorization with non-isomorphic minor posets");
    trace.final_iso = *iso;
  } else {
    auto iso = poset_isomorphic(Q, MinorPoset::build(f.target(), budget).to_finite_poset());
    if (!iso) fail(ErrorCode::Internal, "zipped poset is not the target's minor poset");
    trace.final_iso = *iso;
  }
  return trace;
}

}  // namespace genlat
