#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genlat/util.hpp"

namespace genlat {

struct StructureReport {
  bool bounded = false;
  bool graded = false;
  bool thin = false;
  bool eulerian = false;
  int rank = -1;  // rank of the maximum when graded, else -1
  std::string detail;
};

// A finite poset given by its cover relation, with per-element display labels.
// Order queries run on cached reachability bitsets.
class FinitePoset {
 public:
  static FinitePoset from_covers(std::size_t n, std::vector<std::pair<int, int>> covers,
                                 std::vector<std::string> labels = {}) {
    FinitePoset P;
    P.n_ = n;
    P.up_cov_.assign(n, {});
    P.low_cov_.assign(n, {});
    for (auto& [a, b] : covers) {
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
        fail(ErrorCode::BadIndex, "cover endpoint out of range");
      P.up_cov_[a].push_back(b);
      P.low_cov_[b].push_back(a);
    }
    for (auto& v : P.up_cov_) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    for (auto& v : P.low_cov_) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    P.set_labels(std::move(labels));
    P.close_from_covers();
    return P;
  }

  static FinitePoset from_leq(std::size_t n, const std::function<bool(int, int)>& leq,
                              std::vector<std::string> labels = {}) {
    FinitePoset P;
    P.n_ = n;
    P.words_ = (n + 63) / 64;
    P.up_.assign(n * P.words_, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        bool ab = (a == b) || leq(static_cast<int>(a), static_cast<int>(b));
        if (ab) {
          if (a != b && leq(static_cast<int>(b), static_cast<int>(a)))
            fail(ErrorCode::ParseError, "order relation has a 2-cycle");
          P.up_[a * P.words_ + b / 64] |= 1ULL << (b % 64);
        }
      }
    P.set_labels(std::move(labels));
    P.finish_from_order();
    return P;
  }

  std::size_t size() const { return n_; }
  bool leq(int a, int b) const { return up_[a * words_ + b / 64] >> (b % 64) & 1; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  const std::vector<int>& upper_covers(int e) const { return up_cov_[e]; }
  const std::vector<int>& lower_covers(int e) const { return low_cov_[e]; }
  const std::string& label(int e) const { return labels_[e]; }
  void relabel(std::vector<std::string> labels) { set_labels(std::move(labels)); }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (std::size_t e = 0; e < n_; ++e)
      if (low_cov_[e].empty()) out.push_back(static_cast<int>(e));
    return out;
  }
  std::vector<int> maximal_elements() const {
    std::vector<int> out;
    for (std::size_t e = 0; e < n_; ++e)
      if (up_cov_[e].empty()) out.push_back(static_cast<int>(e));
    return out;
  }

  // Longest-chain height of each element above the minimal elements.
  const std::vector<int>& heights() const { return height_; }

  int open_interval_size(int x, int y) const {
    int c = 0;
    const std::uint64_t* ux = &up_[x * words_];
    for (std::size_t w = 0; w < words_; ++w) c += __builtin_popcountll(ux[w] & down_word(y, w));
    return c - 2;  // drop the endpoints
  }

  std::vector<int> interval_elements(int x, int y) const {
    std::vector<int> out;
    for (std::size_t e = 0; e < n_; ++e)
      if (leq(x, static_cast<int>(e)) && leq(static_cast<int>(e), y))
        out.push_back(static_cast<int>(e));
    return out;
  }

  FinitePoset interval(int x, int y) const {
    auto elems = interval_elements(x, y);
    std::vector<int> pos(n_, -1);
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> covers;
    std::vector<std::string> labels;
    for (int e : elems) {
      labels.push_back(labels_[e]);
      for (int u : up_cov_[e])
        if (pos[u] >= 0) covers.push_back({pos[e], pos[u]});
    }
    return from_covers(elems.size(), std::move(covers), std::move(labels));
  }

  // Möbius function values mu(x, y) for one fixed x (0 when x is not below y).
  std::vector<long long> mobius_row(int x) const {
    std::vector<long long> mu(n_, 0);
    for (int y : topo_) {
      if (!leq(x, y)) continue;
      if (y == x) {
        mu[y] = 1;
        continue;
      }
      long long s = 0;
      for (std::size_t z = 0; z < n_; ++z)
        if (leq(x, static_cast<int>(z)) && lt(static_cast<int>(z), y)) s += mu[z];
      mu[y] = -s;
    }
    return mu;
  }

  StructureReport structure() const {
    StructureReport r;
    auto mins = minimal_elements();
    auto maxs = maximal_elements();
    if (mins.size() != 1 || maxs.size() != 1) {
      r.detail = "not bounded: " + std::to_string(mins.size()) + " minimal and " +
                 std::to_string(maxs.size()) + " maximal elements";
      return r;
    }
    r.bounded = true;
    int top = maxs[0];
    for (std::size_t e = 0; e < n_; ++e)
      for (int u : up_cov_[e])
        if (height_[u] != height_[e] + 1) {
          r.detail = "not graded: cover " + labels_[e] + " < " + labels_[u] + " jumps rank " +
                     std::to_string(height_[e]) + " to " + std::to_string(height_[u]);
          return r;
        }
    r.graded = true;
    r.rank = height_[top];
    r.thin = true;
    for (std::size_t x = 0; x < n_ && r.thin; ++x)
      for (std::size_t y = 0; y < n_; ++y) {
        if (!lt(static_cast<int>(x), static_cast<int>(y))) continue;
        if (height_[y] - height_[x] != 2) continue;
        if (open_interval_size(static_cast<int>(x), static_cast<int>(y)) != 2) {
          r.thin = false;
          r.detail = "interval [" + labels_[x] + ", " + labels_[y] + "] of length 2 has " +
                     std::to_string(open_interval_size(static_cast<int>(x), static_cast<int>(y))) +
                     " interior elements";
          break;
        }
      }
    if (!r.thin) return r;
    r.eulerian = true;
    for (std::size_t x = 0; x < n_ && r.eulerian; ++x) {
      auto mu = mobius_row(static_cast<int>(x));
      for (std::size_t y = 0; y < n_; ++y) {
        if (!leq(static_cast<int>(x), static_cast<int>(y))) continue;
        int d = height_[y] - height_[x];
        long long want = (d % 2 == 0) ? 1 : -1;
        if (mu[y] != want) {
          r.eulerian = false;
          r.detail = "mu(" + labels_[x] + ", " + labels_[y] + ") = " + std::to_string(mu[y]) +
                     ", expected " + std::to_string(want);
          break;
        }
      }
    }
    if (r.eulerian) r.detail = "bounded, graded, thin, Eulerian of rank " + std::to_string(r.rank);
    return r;
  }

  // First pair with no least upper bound, if any. For a bounded poset a null
  // result means the poset is a lattice.
  std::optional<std::pair<int, int>> first_join_failure() const {
    std::vector<std::uint64_t> ub(words_), acc(words_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = a + 1; b < n_; ++b) {
        for (std::size_t w = 0; w < words_; ++w) ub[w] = up_[a * words_ + w] & up_[b * words_ + w];
        std::fill(acc.begin(), acc.end(), 0);
        int count = 0;
        for (std::size_t e = 0; e < n_; ++e)
          if (ub[e / 64] >> (e % 64) & 1) {
            ++count;
            for (std::size_t w = 0; w < words_; ++w) {
              std::uint64_t row = up_[e * words_ + w];
              if (w == e / 64) row &= ~(1ULL << (e % 64));  // strict uppers only
              acc[w] |= row;
            }
          }
        if (count == 0) return std::make_pair(static_cast<int>(a), static_cast<int>(b));
        int minimal = 0;
        for (std::size_t w = 0; w < words_; ++w)
          minimal += __builtin_popcountll(ub[w] & ~acc[w]);
        if (minimal != 1) return std::make_pair(static_cast<int>(a), static_cast<int>(b));
      }
    return std::nullopt;
  }

  const std::vector<int>& topo_order() const { return topo_; }

 private:
  std::uint64_t down_word(int y, std::size_t w) const { return down_[y * words_ + w]; }

  void set_labels(std::vector<std::string> labels) {
    if (labels.empty()) {
      labels_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) labels_[i] = std::to_string(i);
    } else {
      if (labels.size() != n_) fail(ErrorCode::BadIndex, "label count mismatch");
      labels_ = std::move(labels);
    }
  }

  void topo_sort() {
    topo_.clear();
    topo_.reserve(n_);
    std::vector<int> deg(n_, 0);
    for (std::size_t e = 0; e < n_; ++e) deg[e] = static_cast<int>(low_cov_[e].size());
    std::vector<int> stack;
    for (std::size_t e = 0; e < n_; ++e)
      if (deg[e] == 0) stack.push_back(static_cast<int>(e));
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      topo_.push_back(v);
      for (int u : up_cov_[v])
        if (--deg[u] == 0) stack.push_back(u);
    }
    if (topo_.size() != n_) fail(ErrorCode::ParseError, "cover relation has a cycle");
    height_.assign(n_, 0);
    for (int v : topo_)
      for (int u : up_cov_[v]) height_[u] = std::max(height_[u], height_[v] + 1);
  }

  void close_from_covers() {
    topo_sort();
    words_ = (n_ + 63) / 64;
    up_.assign(n_ * words_, 0);
    for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
      int v = *it;
      up_[v * words_ + v / 64] |= 1ULL << (v % 64);
      for (int u : up_cov_[v])
        for (std::size_t w = 0; w < words_; ++w) up_[v * words_ + w] |= up_[u * words_ + w];
    }
    build_down();
  }

  void finish_from_order() {
    up_cov_.assign(n_, {});
    low_cov_.assign(n_, {});
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) {
        if (a == b || !leq(static_cast<int>(a), static_cast<int>(b))) continue;
        bool cover = true;
        for (std::size_t c = 0; c < n_ && cover; ++c)
          if (c != a && c != b && leq(static_cast<int>(a), static_cast<int>(c)) &&
              leq(static_cast<int>(c), static_cast<int>(b)))
            cover = false;
        if (cover) {
          up_cov_[a].push_back(static_cast<int>(b));
          low_cov_[b].push_back(static_cast<int>(a));
        }
      }
    topo_sort();
    build_down();
  }

  void build_down() {
    down_.assign(n_ * words_, 0);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (up_[a * words_ + b / 64] >> (b % 64) & 1)
          down_[b * words_ + a / 64] |= 1ULL << (a % 64);
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<int>> up_cov_, low_cov_;
  std::vector<std::uint64_t> up_, down_;
  std::vector<std::string> labels_;
  std::vector<int> topo_, height_;
};

// Componentwise-order product. Labels are "(a,b)".
inline FinitePoset poset_product(const FinitePoset& P, const FinitePoset& Q) {
  std::size_t np = P.size(), nq = Q.size();
  auto id = [nq](std::size_t a, std::size_t b) { return static_cast<int>(a * nq + b); };
  std::vector<std::string> labels(np * nq);
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < nq; ++b) labels[id(a, b)] = "(" + P.label(static_cast<int>(a)) + "," + Q.label(static_cast<int>(b)) + ")";
  return FinitePoset::from_leq(
      np * nq,
      [&, nq](int x, int y) {
        return P.leq(x / static_cast<int>(nq), y / static_cast<int>(nq)) &&
               Q.leq(x % static_cast<int>(nq), y % static_cast<int>(nq));
      },
      std::move(labels));
}

// (P minus its minimum) x (Q minus its minimum), with a new minimum adjoined.
inline FinitePoset poset_diamond(const FinitePoset& P, const FinitePoset& Q) {
  auto pm = P.minimal_elements(), qm = Q.minimal_elements();
  if (pm.size() != 1 || qm.size() != 1)
    fail(ErrorCode::NoBounds, "diamond factors must have unique minima");
  std::vector<int> pe, qe;
  for (std::size_t e = 0; e < P.size(); ++e)
    if (static_cast<int>(e) != pm[0]) pe.push_back(static_cast<int>(e));
  for (std::size_t e = 0; e < Q.size(); ++e)
    if (static_cast<int>(e) != qm[0]) qe.push_back(static_cast<int>(e));
  std::size_t n = pe.size() * qe.size() + 1;
  std::vector<std::string> labels(n);
  labels[0] = "bot";
  for (std::size_t i = 0; i < pe.size(); ++i)
    for (std::size_t j = 0; j < qe.size(); ++j)
      labels[1 + i * qe.size() + j] = "(" + P.label(pe[i]) + "," + Q.label(qe[j]) + ")";
  return FinitePoset::from_leq(
      n,
      [&](int x, int y) {
        if (x == 0) return true;
        if (y == 0) return false;
        std::size_t i = (x - 1) / qe.size(), j = (x - 1) % qe.size();
        std::size_t k = (y - 1) / qe.size(), l = (y - 1) % qe.size();
        return P.leq(pe[i], pe[k]) && Q.leq(qe[j], qe[l]);
      },
      std::move(labels));
}

inline FinitePoset two_chain_poset() {
  return FinitePoset::from_covers(2, {{0, 1}}, {"0", "1"});
}

inline FinitePoset segment_face_poset() {
  return FinitePoset::from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {"bot", "a", "b", "top"});
}

inline FinitePoset poset_pyr(const FinitePoset& P) { return poset_product(P, two_chain_poset()); }
inline FinitePoset poset_prism(const FinitePoset& P) {
  return poset_diamond(P, segment_face_poset());
}

// Isomorphism search: iterated neighbourhood refinement, then backtracking on
// the resulting classes. Returns the element map P -> Q when one exists.
inline std::optional<std::vector<int>> poset_isomorphic(const FinitePoset& P,
                                                        const FinitePoset& Q) {
  if (P.size() != Q.size()) return std::nullopt;
  std::size_t n = P.size();
  auto refine = [n](const FinitePoset& R) {
    std::vector<std::size_t> color(n);
    for (std::size_t e = 0; e < n; ++e) {
      std::size_t h = 0;
      hash_mix(h, R.upper_covers(static_cast<int>(e)).size() * 8191 +
                      R.lower_covers(static_cast<int>(e)).size());
      color[e] = h;
    }
    for (int round = 0; round < 16; ++round) {
      std::vector<std::size_t> next(n);
      for (std::size_t e = 0; e < n; ++e) {
        std::vector<std::size_t> up, dn;
        for (int u : R.upper_covers(static_cast<int>(e))) up.push_back(color[u]);
        for (int u : R.lower_covers(static_cast<int>(e))) dn.push_back(color[u]);
        std::sort(up.begin(), up.end());
        std::sort(dn.begin(), dn.end());
        std::size_t h = color[e];
        for (auto v : up) hash_mix(h, v);
        hash_mix(h, 0x9e3779b97f4a7c15ULL);
        for (auto v : dn) hash_mix(h, v);
        next[e] = h;
      }
      if (next == color) break;
      color = std::move(next);
    }
    return color;
  };
  auto cp = refine(P), cq = refine(Q);
  {
    auto sp = cp, sq = cq;
    std::sort(sp.begin(), sp.end());
    std::sort(sq.begin(), sq.end());
    if (sp != sq) return std::nullopt;
  }

  // Candidate lists per element of P, grouped by color.
  std::vector<std::vector<int>> cand(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (cp[a] == cq[b]) cand[a].push_back(static_cast<int>(b));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return cand[a].size() < cand[b].size(); });

  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(std::size_t)> go = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    int v = order[depth];
    for (int w : cand[v]) {
      if (used[w]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        int u = order[d];
        if (P.leq(v, u) != Q.leq(w, map[u]) || P.leq(u, v) != Q.leq(map[u], w)) ok = false;
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      if (go(depth + 1)) return true;
      used[w] = 0;
      map[v] = -1;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return map;
}

}  // namespace genlat
