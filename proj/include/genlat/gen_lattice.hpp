#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "genlat/genset.hpp"
#include "genlat/util.hpp"

namespace genlat {

using ElementId = std::uint32_t;

struct Limits {
  int max_generators = 20;
  std::size_t max_elements = 4096;
};

using ClosureFn = std::function<GenSet(const GenSet&)>;

struct DiagramEdge {
  ElementId from;
  ElementId to;
  std::vector<int> labels;  // generator indices g with from ∨ g = to
};

// A finite lattice L together with a join-generating set G of non-bottom
// elements. Elements are encoded by their closed sets {i : g_i <= x}; the
// encoding is faithful, so order is subset containment and ids are assigned
// in a canonical (cardinality, lowest-index) order with bottom at id 0.
class GenLattice {
 public:
  static GenLattice from_closure(int n, const ClosureFn& cl, Limits limits = {}) {
    if (n < 0) fail(ErrorCode::BadIndex, "negative generator count");
    if (n > limits.max_generators)
      fail(ErrorCode::TooLarge, "generator count " + std::to_string(n) + " exceeds cap " +
                                    std::to_string(limits.max_generators));
    GenLattice L;
    L.n_ = n;
    Builder b{L, cl, limits};
    b.run();
    return L;
  }

  int gen_count() const { return n_; }
  std::size_t size() const { return sets_.size(); }
  ElementId bottom() const { return 0; }
  ElementId top() const { return top_; }
  const GenSet& closed_set(ElementId e) const { return sets_[e]; }
  ElementId generator(int i) const {
    if (i < 0 || i >= n_) fail(ErrorCode::BadIndex, "generator index " + std::to_string(i));
    return gen_elem_[i];
  }
  const std::vector<ElementId>& generator_elements() const { return gen_elem_; }

  std::optional<ElementId> id_of(const GenSet& s) const {
    auto it = ids_.find(s);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  ElementId join(ElementId a, ElementId b) const { return join_[a * size() + b]; }
  bool leq(ElementId a, ElementId b) const { return sets_[a].is_subset_of(sets_[b]); }
  ElementId meet(ElementId a, ElementId b) const {
    auto id = id_of(sets_[a] & sets_[b]);
    if (!id) fail(ErrorCode::Internal, "closed sets not intersection-closed");
    return *id;
  }

  // Join of the generators indexed by s, over the bottom.
  ElementId join_gens(const GenSet& s) const {
    ElementId e = bottom();
    s.for_each([&](int i) { e = join(e, gen_elem_[i]); });
    return e;
  }

  std::string label(ElementId e) const { return sets_[e].str(); }

  // Distinct nontrivial generator joins {g ∨ l : g ∈ G} \ {l}, ascending.
  std::vector<ElementId> join_targets(ElementId l) const {
    std::vector<ElementId> t;
    t.reserve(n_);
    for (int i = 0; i < n_; ++i) {
      ElementId j = join(l, gen_elem_[i]);
      if (j != l) t.push_back(j);
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
  }
  int alpha(ElementId l) const { return static_cast<int>(join_targets(l).size()); }

  std::vector<DiagramEdge> diagram() const {
    std::vector<DiagramEdge> out;
    for (ElementId l = 0; l < size(); ++l) {
      std::unordered_map<ElementId, std::size_t> pos;
      for (int i = 0; i < n_; ++i) {
        ElementId j = join(l, gen_elem_[i]);
        if (j == l) continue;
        auto it = pos.find(j);
        if (it == pos.end()) {
          pos.emplace(j, out.size());
          out.push_back({l, j, {i}});
        } else {
          out[it->second].labels.push_back(i);
        }
      }
    }
    std::sort(out.begin(), out.end(), [](const DiagramEdge& a, const DiagramEdge& b) {
      return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    return out;
  }

  const std::vector<ElementId>& upper_covers(ElementId e) const {
    ensure_covers();
    return lazy_->up_cov[e];
  }
  const std::vector<ElementId>& lower_covers(ElementId e) const {
    ensure_covers();
    return lazy_->low_cov[e];
  }
  bool is_cover(ElementId a, ElementId b) const {
    const auto& ups = upper_covers(a);
    return std::find(ups.begin(), ups.end(), b) != ups.end();
  }

  // Join-irreducibles: elements that are not the join of strictly smaller ones.
  std::vector<ElementId> irreducibles() const {
    std::vector<ElementId> irr;
    for (ElementId e = 1; e < size(); ++e) {
      ElementId acc = bottom();
      for (ElementId x = 0; x < size(); ++x)
        if (x != e && leq(x, e)) acc = join(acc, x);
      if (acc != e) irr.push_back(e);
    }
    return irr;
  }
  bool minimally_generated() const {
    auto irr = irreducibles();
    std::vector<ElementId> g = gen_elem_;
    std::sort(g.begin(), g.end());
    return irr == g;
  }

  // <H | z>: the sublattice of joins of subsets of H over z, as a lattice
  // generated by H. Every h must satisfy z < h. Defined after SubLattice.
  struct SubLatticeResult;
  SubLatticeResult generated_sub(std::vector<ElementId> H, ElementId z, Limits limits = {}) const;

  static GenLattice boolean_lattice(int n, Limits limits = {}) {
    return from_closure(n, [](const GenSet& X) { return X; }, limits);
  }

  static GenLattice chain_lattice(int n, Limits limits = {}) {
    return from_closure(
        n,
        [n](const GenSet& X) {
          int m = -1;
          X.for_each([&](int i) { m = std::max(m, i); });
          GenSet S;
          for (int i = 0; i <= m; ++i) S.set(i);
          return S;
        },
        limits);
  }

  // (L,G) x (K,H): generating set (G x {bottom}) ∪ ({bottom} x H).
  static GenLattice cartesian_product(const GenLattice& A, const GenLattice& B, Limits limits = {}) {
    int na = A.gen_count(), nb = B.gen_count();
    auto cl = [&](const GenSet& X) {
      GenSet xa, xb;
      X.for_each([&](int i) {
        if (i < na)
          xa.set(i);
        else
          xb.set(i - na);
      });
      GenSet sa = A.closed_set(A.join_gens(xa));
      GenSet sb = B.closed_set(B.join_gens(xb));
      GenSet out = sa;
      sb.for_each([&](int i) { out.set(i + na); });
      return out;
    };
    return from_closure(na + nb, cl, limits);
  }

  // Adjoin a new maximum above the old one; the new maximum joins G.
  static GenLattice adjoin_max(const GenLattice& A, Limits limits = {}) {
    int n = A.gen_count();
    auto cl = [&, n](const GenSet& X) {
      if (X.test(n)) return GenSet::full(n + 1);
      return A.closed_set(A.join_gens(X));
    };
    return from_closure(n + 1, cl, limits);
  }

  static GenLattice pyr(const GenLattice& A, Limits limits = {}) {
    return cartesian_product(A, boolean_lattice(1), limits);
  }

  GenLattice(GenLattice&&) = default;
  GenLattice& operator=(GenLattice&&) = default;
  GenLattice(const GenLattice&) = delete;
  GenLattice& operator=(const GenLattice&) = delete;

 private:
  GenLattice() : lazy_(std::make_unique<Lazy>()) {}

  struct Lazy {
    std::once_flag order_once, covers_once;
    std::vector<std::uint64_t> up_bits;  // row e: bitset of {x : e <= x}
    std::size_t words = 0;
    std::vector<std::vector<ElementId>> up_cov, low_cov;
  };

  void ensure_order() const {
    std::call_once(lazy_->order_once, [&] {
      std::size_t N = size();
      std::size_t W = (N + 63) / 64;
      lazy_->words = W;
      lazy_->up_bits.assign(N * W, 0);
      for (ElementId a = 0; a < N; ++a)
        for (ElementId b = 0; b < N; ++b)
          if (leq(a, b)) lazy_->up_bits[a * W + b / 64] |= 1ULL << (b % 64);
    });
  }

  void ensure_covers() const {
    std::call_once(lazy_->covers_once, [&] {
      ensure_order();
      std::size_t N = size(), W = lazy_->words;
      lazy_->up_cov.assign(N, {});
      lazy_->low_cov.assign(N, {});
      for (ElementId a = 0; a < N; ++a) {
        for (ElementId b = a + 1; b < N; ++b) {
          if (!leq(a, b)) continue;
          // b covers a iff the up-set of a meets the down-set of b in {a,b}.
          int strict = 0;
          const std::uint64_t* row = &lazy_->up_bits[a * W];
          for (ElementId c = a + 1; c < b && strict == 0; ++c)
            if ((row[c / 64] >> (c % 64) & 1) && leq(c, b)) strict = 1;
          if (!strict) {
            lazy_->up_cov[a].push_back(b);
            lazy_->low_cov[b].push_back(a);
          }
        }
      }
    });
  }

  struct Builder {
    GenLattice& L;
    const ClosureFn& cl;
    Limits limits;

    GenSet checked_cl(const GenSet& X) {
      GenSet C = cl(X);
      if (!X.is_subset_of(C))
        fail(ErrorCode::NonClosure, "closure not extensive on " + X.str());
      return C;
    }

    void run() {
      std::vector<GenSet> sets;
      std::unordered_map<GenSet, ElementId, GenSetHash> ids;
      auto add = [&](const GenSet& S) -> std::pair<ElementId, bool> {
        auto it = ids.find(S);
        if (it != ids.end()) return {it->second, false};
        if (cl(S) != S) fail(ErrorCode::NonClosure, "closure not idempotent at " + S.str());
        if (sets.size() >= limits.max_elements)
          fail(ErrorCode::TooLarge,
               "element count exceeds cap " + std::to_string(limits.max_elements));
        ElementId id = static_cast<ElementId>(sets.size());
        sets.push_back(S);
        ids.emplace(S, id);
        return {id, true};
      };

      GenSet bot = checked_cl(GenSet{});
      if (!bot.empty())
        fail(ErrorCode::GeneratorIsBottom,
             "closure of the empty set contains generator indices " + bot.str());
      add(bot);
      std::vector<GenSet> gen_sets(L.n_);
      for (int i = 0; i < L.n_; ++i) {
        gen_sets[i] = checked_cl(GenSet::singleton(i));
        if (gen_sets[i] == bot)
          fail(ErrorCode::GeneratorIsBottom, "generator " + std::to_string(i + 1));
        for (int j = 0; j < i; ++j)
          if (gen_sets[i] == gen_sets[j])
            fail(ErrorCode::DuplicateGenerator,
                 "generators " + std::to_string(j + 1) + " and " + std::to_string(i + 1));
        add(gen_sets[i]);
      }

      // Discovery: close the element family under pairwise joins.
      std::deque<ElementId> queue;
      for (ElementId e = 0; e < sets.size(); ++e) queue.push_back(e);
      while (!queue.empty()) {
        ElementId k = queue.front();
        queue.pop_front();
        for (ElementId j = 0; j < sets.size(); ++j) {
          GenSet U = sets[j] | sets[k];
          if (U == sets[j] || U == sets[k]) continue;
          GenSet C = (ids.count(U)) ? U : checked_cl(U);
          auto [id, fresh] = add(C);
          (void)id;
          if (fresh) queue.push_back(static_cast<ElementId>(sets.size() - 1));
        }
      }

      // Canonical ids: sort by (cardinality, lowest differing index).
      std::size_t N = sets.size();
      std::vector<ElementId> order(N);
      for (ElementId i = 0; i < N; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
        return GenSet::canonical_less(sets[a], sets[b]);
      });
      L.sets_.resize(N);
      for (ElementId pos = 0; pos < N; ++pos) L.sets_[pos] = sets[order[pos]];
      L.ids_.clear();
      for (ElementId pos = 0; pos < N; ++pos) L.ids_.emplace(L.sets_[pos], pos);
      L.gen_elem_.resize(L.n_);
      for (int i = 0; i < L.n_; ++i) L.gen_elem_[i] = L.ids_.at(gen_sets[i]);

      L.join_.assign(N * N, 0);
      for (ElementId a = 0; a < N; ++a) {
        L.join_[a * N + a] = a;
        for (ElementId b = a + 1; b < N; ++b) {
          GenSet U = L.sets_[a] | L.sets_[b];
          ElementId v;
          if (U == L.sets_[a])
            v = a;
          else if (U == L.sets_[b])
            v = b;
          else {
            auto it = L.ids_.find(U);
            if (it != L.ids_.end())
              v = it->second;
            else {
              GenSet C = checked_cl(U);
              auto jt = L.ids_.find(C);
              if (jt == L.ids_.end())
                fail(ErrorCode::NonClosure, "join escaped the element family at " + U.str());
              v = jt->second;
            }
          }
          L.join_[a * N + b] = v;
          L.join_[b * N + a] = v;
        }
      }

      validate();
    }

    void validate() {
      std::size_t N = L.size();
      // Bottom below everything, top above everything.
      ElementId t = L.bottom();
      for (int i = 0; i < L.n_; ++i) t = L.join_[t * N + L.gen_elem_[i]];
      L.top_ = t;
      for (ElementId e = 0; e < N; ++e) {
        if (!L.sets_[0].is_subset_of(L.sets_[e]) || !L.sets_[e].is_subset_of(L.sets_[t]))
          fail(ErrorCode::NonClosure, "family is not bounded by closure(empty) and the full join");
      }
      // Order-consistency: subset order matches the join table.
      for (ElementId a = 0; a < N; ++a)
        for (ElementId b = 0; b < N; ++b) {
          bool sub = L.sets_[a].is_subset_of(L.sets_[b]);
          if (sub != (L.join_[a * N + b] == b))
            fail(ErrorCode::NonClosure,
                 "order inconsistent at " + L.sets_[a].str() + ", " + L.sets_[b].str());
        }
      // Faithful generation: every element is the join of the generators below it.
      for (ElementId e = 0; e < N; ++e) {
        if (L.join_gens(L.sets_[e]) != e)
          fail(ErrorCode::NonClosure, "element " + L.sets_[e].str() + " is not generated");
      }
      // Meets: closed sets must be intersection-closed.
      auto check_meet = [&](ElementId a, ElementId b) {
        if (!L.ids_.count(L.sets_[a] & L.sets_[b]))
          fail(ErrorCode::NonClosure,
               "missing meet of " + L.sets_[a].str() + " and " + L.sets_[b].str());
      };
      auto check_assoc = [&](ElementId a, ElementId b, ElementId c) {
        if (L.join_[L.join_[a * N + b] * N + c] != L.join_[a * N + L.join_[b * N + c]])
          fail(ErrorCode::NonClosure, "join not associative");
      };
      if (N <= 200) {
        for (ElementId a = 0; a < N; ++a)
          for (ElementId b = a; b < N; ++b) {
            check_meet(a, b);
            for (ElementId c = 0; c < N; ++c) check_assoc(a, b, c);
          }
      } else {
        std::mt19937_64 rng(12345);
        for (int trial = 0; trial < 10000; ++trial) {
          ElementId a = rng() % N, b = rng() % N, c = rng() % N;
          check_meet(a, b);
          check_assoc(a, b, c);
        }
      }
    }
  };

  int n_ = 0;
  std::vector<GenSet> sets_;
  std::unordered_map<GenSet, ElementId, GenSetHash> ids_;
  std::vector<ElementId> join_;
  std::vector<ElementId> gen_elem_;
  ElementId top_ = 0;
  mutable std::unique_ptr<Lazy> lazy_;
};

struct GenLattice::SubLatticeResult {
  GenLattice lattice;
  std::vector<ElementId> element_origin;    // sub id -> host id
  std::vector<ElementId> generator_origin;  // sub generator index -> host id
};

inline GenLattice::SubLatticeResult GenLattice::generated_sub(std::vector<ElementId> H,
                                                              ElementId z, Limits limits) const {
  std::sort(H.begin(), H.end());
  H.erase(std::unique(H.begin(), H.end()), H.end());
  for (ElementId h : H) {
    if (h >= size()) fail(ErrorCode::BadIndex, "element " + std::to_string(h));
    if (h == z || !leq(z, h))
      fail(ErrorCode::NotAbove, "generator " + label(h) + " is not strictly above " + label(z));
  }
  int k = static_cast<int>(H.size());
  auto cl = [&](const GenSet& X) {
    ElementId e = z;
    X.for_each([&](int i) { e = join(e, H[i]); });
    GenSet S;
    for (int j = 0; j < k; ++j)
      if (leq(H[j], e)) S.set(j);
    return S;
  };
  SubLatticeResult sub{from_closure(k, cl, limits), {}, H};
  sub.element_origin.resize(sub.lattice.size());
  for (ElementId e = 0; e < sub.lattice.size(); ++e) {
    ElementId host = z;
    sub.lattice.closed_set(e).for_each([&](int j) { host = join(host, H[j]); });
    sub.element_origin[e] = host;
  }
  return sub;
}

}  // namespace genlat
