#pragma once

#include "genlat/minor.hpp"
#include "genlat/poset.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace genlat {

namespace detail {

inline bool all_generators_atoms(const GenLattice& L) {
  for (ElementId g : L.generator_elements())
    if (!L.is_cover(L.bottom(), g)) return false;
  return true;
}

// First pair covering their meet whose join fails to cover them both.
inline std::optional<std::pair<ElementId, ElementId>> semimodularity_witness(const GenLattice& L) {
  const std::size_t n = L.size();
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = static_cast<ElementId>(x + 1); y < n; ++y) {
      ElementId m = L.meet(x, y);
      if (m == x || m == y) continue;
      if (!L.is_cover(m, x) || !L.is_cover(m, y)) continue;
      ElementId j = L.join(x, y);
      if (!L.is_cover(x, j) || !L.is_cover(y, j)) return std::make_pair(x, y);
    }
  return std::nullopt;
}

inline bool upper_semimodular(const GenLattice& L) { return !semimodularity_witness(L); }

inline bool is_geometric_lattice(const GenLattice& L) {
  return all_generators_atoms(L) && upper_semimodular(L);
}

// First pair of distinct generators sharing the same proper join with some
// element, as (element, generator index, generator index).
inline std::optional<std::tuple<ElementId, int, int>> parallel_witness(const GenLattice& L) {
  const int n = L.gen_count();
  for (ElementId l = 0; l < L.size(); ++l) {
    std::vector<std::pair<ElementId, int>> seen;
    for (int i = 0; i < n; ++i) {
      ElementId t = L.join(l, L.generator(i));
      if (t == l) continue;
      for (const auto& [u, j] : seen)
        if (u == t) return std::make_tuple(l, j, i);
      seen.emplace_back(t, i);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// The poset of all minors of a host lattice plus a global minimum, ordered by
// the minor relation and graded by rank (number of generators plus one).
//
// Ids are laid out in blocks: id 0 is the minimum; the minors with base z form
// the contiguous range [offset(z), offset(z) + 2^alpha(z)), one id per subset
// of join_targets(z) interpreted as a bitmask over the sorted target list.
class MinorPoset {
 public:
  // The poset keeps a pointer to the host, so the host must outlive it.
  static MinorPoset build(GenLattice&& L, const BigInt& budget = BigInt(1000000)) = delete;
  static MinorPoset build(const GenLattice& L, const BigInt& budget = BigInt(1000000)) {
    MinorPoset mp;
    mp.host_ = &L;
    mp.targets_.resize(L.size());
    mp.offset_.assign(L.size() + 1, 0);
    BigInt total = 1;
    for (ElementId l = 0; l < L.size(); ++l) {
      mp.targets_[l] = L.join_targets(l);
      total += BigInt(1) << mp.targets_[l].size();
    }
    if (total > budget)
      fail(ErrorCode::BudgetExceeded,
           "minor poset has " + total.str() + " elements, budget " + budget.str());
    std::size_t acc = 1;
    for (ElementId l = 0; l < L.size(); ++l) {
      mp.offset_[l] = acc;
      acc += std::size_t{1} << mp.targets_[l].size();
    }
    mp.offset_[L.size()] = acc;
    mp.total_ = acc;
    return mp;
  }

  const GenLattice& host() const { return *host_; }
  std::size_t size() const { return total_; }

  static constexpr std::size_t bottom_id = 0;

  Minor minor_of(std::size_t id) const {
    if (id == 0 || id >= total_) fail(ErrorCode::BadIndex, "no minor at id " + std::to_string(id));
    auto it = std::upper_bound(offset_.begin(), offset_.end(), id);
    ElementId l = static_cast<ElementId>((it - offset_.begin()) - 1);
    std::size_t mask = id - offset_[l];
    Minor m;
    m.host = host_;
    m.z = l;
    for (std::size_t i = 0; i < targets_[l].size(); ++i)
      if (mask >> i & 1) m.H.push_back(targets_[l][i]);
    return m;
  }

  std::size_t id_of(const Minor& m) const {
    if (m.host != host_) fail(ErrorCode::HostMismatch, "minor belongs to a different host");
    std::size_t mask = 0;
    const auto& ts = targets_[m.z];
    for (ElementId h : m.H) {
      auto it = std::lower_bound(ts.begin(), ts.end(), h);
      if (it == ts.end() || *it != h)
        fail(ErrorCode::BadIndex, "generator " + host_->label(h) + " is not a join target of " + host_->label(m.z));
      mask |= std::size_t{1} << (it - ts.begin());
    }
    return offset_[m.z] + mask;
  }

  int rank_of(std::size_t id) const {
    if (id == 0) return 0;
    return minor_of(id).rank();
  }

  std::string label(std::size_t id) const {
    if (id == 0) return "bot";
    return minor_of(id).str();
  }

  int alpha(ElementId l) const { return static_cast<int>(targets_[l].size()); }

  // All cover relations, computed blockwise: each minor's lower covers are its
  // single-generator deletions, the single-generator contractions whose lifted
  // generator set loses exactly one generator, and the global minimum below
  // each empty-generator-set minor.
  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs(int jobs = 1) const {
    const GenLattice& L = *host_;
    std::size_t nblocks = L.size();
    if (jobs < 1) jobs = 1;
    if (static_cast<std::size_t>(jobs) > nblocks) jobs = static_cast<int>(nblocks);

    auto run_block = [&](ElementId l, std::vector<std::pair<std::size_t, std::size_t>>& out) {
      const auto& ts = targets_[l];
      const std::size_t nt = ts.size();
      for (std::size_t mask = 0; mask < (std::size_t{1} << nt); ++mask) {
        std::size_t uid = offset_[l] + mask;
        if (mask == 0) {
          out.emplace_back(bottom_id, uid);
          continue;
        }
        for (std::size_t i = 0; i < nt; ++i) {
          if (!(mask >> i & 1)) continue;
          out.emplace_back(offset_[l] + (mask & ~(std::size_t{1} << i)), uid);
          ElementId z2 = ts[i];
          std::vector<ElementId> lift;
          for (std::size_t j = 0; j < nt; ++j) {
            if (j == i || !(mask >> j & 1)) continue;
            ElementId h2 = L.join(ts[j], z2);
            if (h2 != z2) lift.push_back(h2);
          }
          std::sort(lift.begin(), lift.end());
          lift.erase(std::unique(lift.begin(), lift.end()), lift.end());
          std::size_t card = static_cast<std::size_t>(__builtin_popcountll(mask));
          if (lift.size() != card - 1) continue;
          Minor m;
          m.host = host_;
          m.z = z2;
          m.H = std::move(lift);
          out.emplace_back(id_of(m), uid);
        }
      }
    };

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (jobs == 1) {
      for (ElementId l = 0; l < nblocks; ++l) run_block(l, pairs);
    } else {
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parts(jobs);
      std::vector<std::thread> workers;
      for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
          for (ElementId l = static_cast<ElementId>(w); l < nblocks; l = static_cast<ElementId>(l + jobs))
            run_block(l, parts[w]);
        });
      for (auto& t : workers) t.join();
      for (auto& p : parts) pairs.insert(pairs.end(), p.begin(), p.end());
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
  }

  FinitePoset to_finite_poset(int jobs = 1) const {
    auto pairs = cover_pairs(jobs);
    std::vector<std::pair<int, int>> covers;
    covers.reserve(pairs.size());
    for (const auto& [a, b] : pairs) covers.emplace_back(static_cast<int>(a), static_cast<int>(b));
    std::vector<std::string> labels(total_);
    for (std::size_t i = 0; i < total_; ++i) labels[i] = label(i);
    return FinitePoset::from_covers(static_cast<int>(total_), covers, labels);
  }

  // Number of elements of each rank, from the block structure alone.
  std::vector<BigInt> rank_census() const {
    int maxa = 0;
    for (const auto& ts : targets_) maxa = std::max(maxa, static_cast<int>(ts.size()));
    std::vector<std::vector<BigInt>> binom(maxa + 1);
    for (int a = 0; a <= maxa; ++a) {
      binom[a].assign(a + 1, 1);
      for (int k = 1; k < a; ++k) binom[a][k] = binom[a - 1][k - 1] + binom[a - 1][k];
    }
    std::vector<BigInt> census(maxa + 2, 0);
    census[0] = 1;
    for (const auto& ts : targets_) {
      int a = static_cast<int>(ts.size());
      for (int k = 0; k <= a; ++k) census[k + 1] += binom[a][k];
    }
    while (!census.empty() && census.back() == 0) census.pop_back();
    return census;
  }

  struct Block {
    ElementId l;
    std::size_t bottom_id;
    std::size_t top_id;
    int alpha;
  };

  // The partition of the poset minus its minimum into Boolean intervals, one
  // per host element: the minors with base z form an interval isomorphic to
  // the Boolean lattice on alpha(z) generators.
  std::vector<Block> boolean_decomposition() const {
    std::vector<Block> blocks;
    blocks.reserve(host_->size());
    for (ElementId l = 0; l < host_->size(); ++l) {
      std::size_t a = targets_[l].size();
      blocks.push_back(Block{l, offset_[l], offset_[l] + (std::size_t{1} << a) - 1, static_cast<int>(a)});
    }
    return blocks;
  }

 private:
  const GenLattice* host_ = nullptr;
  std::vector<std::vector<ElementId>> targets_;
  std::vector<std::size_t> offset_;
  std::size_t total_ = 0;
};

// Elements of the incidence algebra of a lattice with polynomial values,
// stored densely over ordered pairs.
class IncidencePoly {
 public:
  explicit IncidencePoly(GenLattice&& L) = delete;  // lattice must outlive the table
  explicit IncidencePoly(const GenLattice& L) : L_(&L), n_(L.size()), v_(n_ * n_) {}

  static IncidencePoly delta(const GenLattice& L) {
    IncidencePoly f(L);
    for (ElementId x = 0; x < L.size(); ++x) f.at(x, x) = QPoly::one();
    return f;
  }
  static IncidencePoly zeta(const GenLattice& L) {
    IncidencePoly f(L);
    for (ElementId x = 0; x < L.size(); ++x)
      for (ElementId y = 0; y < L.size(); ++y)
        if (L.leq(x, y)) f.at(x, y) = QPoly::one();
    return f;
  }
  // Indicator of cover pairs.
  static IncidencePoly kappa(const GenLattice& L) {
    IncidencePoly f(L);
    for (ElementId x = 0; x < L.size(); ++x)
      for (ElementId y : L.upper_covers(x)) f.at(x, y) = QPoly::one();
    return f;
  }

  const QPoly& at(ElementId x, ElementId y) const { return v_[x * n_ + y]; }
  QPoly& at(ElementId x, ElementId y) { return v_[x * n_ + y]; }

  friend IncidencePoly operator+(const IncidencePoly& a, const IncidencePoly& b) {
    a.check_host(b);
    IncidencePoly r(*a.L_);
    for (std::size_t i = 0; i < r.v_.size(); ++i) r.v_[i] = a.v_[i] + b.v_[i];
    return r;
  }

  friend IncidencePoly operator*(const QPoly& s, const IncidencePoly& a) {
    IncidencePoly r(*a.L_);
    for (std::size_t i = 0; i < r.v_.size(); ++i) r.v_[i] = s * a.v_[i];
    return r;
  }

  // Convolution over the order: (a*b)(x,y) = sum over x <= z <= y.
  friend IncidencePoly convolve(const IncidencePoly& a, const IncidencePoly& b) {
    a.check_host(b);
    const GenLattice& L = *a.L_;
    IncidencePoly r(L);
    for (ElementId x = 0; x < L.size(); ++x)
      for (ElementId y = 0; y < L.size(); ++y) {
        if (!L.leq(x, y)) continue;
        QPoly acc;
        for (ElementId z = 0; z < L.size(); ++z)
          if (L.leq(x, z) && L.leq(z, y)) acc += a.at(x, z) * b.at(z, y);
        r.at(x, y) = std::move(acc);
      }
    return r;
  }

  // f^g for a 0/1-valued exponent g: the product of f(x,z) over all z in
  // [x,y] with g(z,y) = 1.
  friend IncidencePoly pow01(const IncidencePoly& f, const IncidencePoly& g) {
    f.check_host(g);
    const GenLattice& L = *f.L_;
    IncidencePoly r(L);
    for (ElementId x = 0; x < L.size(); ++x)
      for (ElementId y = 0; y < L.size(); ++y) {
        if (!L.leq(x, y)) continue;
        QPoly acc = QPoly::one();
        for (ElementId z = 0; z < L.size(); ++z) {
          if (!L.leq(x, z) || !L.leq(z, y)) continue;
          const QPoly& e = g.at(z, y);
          if (e.is_zero()) continue;
          if (e != QPoly::one())
            fail(ErrorCode::Internal, "exponent function is not 0/1-valued");
          acc = acc * f.at(x, z);
        }
        r.at(x, y) = std::move(acc);
      }
    return r;
  }

 private:
  void check_host(const IncidencePoly& o) const {
    if (L_ != o.L_) fail(ErrorCode::HostMismatch, "incidence elements over different lattices");
  }
  const GenLattice* L_;
  std::size_t n_;
  std::vector<QPoly> v_;
};

enum class RankGenMethod { Direct, Geometric, NoParallels };

// Rank generating function of the minor poset, by one of three routes. The
// direct route always applies; the geometric route requires all generators to
// be atoms and the lattice to be upper semimodular; the third requires that no
// two generators have the same proper join with any element.
inline QPoly rank_gen(const GenLattice& L, RankGenMethod method) {
  switch (method) {
    case RankGenMethod::Direct: {
      QPoly sum;
      for (ElementId l = 0; l < L.size(); ++l)
        sum += one_plus_q_pow(static_cast<int>(L.join_targets(l).size()));
      return QPoly::one() + QPoly::q() * sum;
    }
    case RankGenMethod::Geometric: {
      if (!detail::all_generators_atoms(L))
        fail(ErrorCode::MethodInapplicable, "geometric method requires every generator to be an atom");
      if (!detail::upper_semimodular(L))
        fail(ErrorCode::MethodInapplicable, "geometric method requires an upper semimodular lattice");
      IncidencePoly z = IncidencePoly::zeta(L);
      IncidencePoly inner = z + QPoly::q() * IncidencePoly::kappa(L);
      IncidencePoly total = convolve(z, pow01(inner, z));
      return QPoly::one() + QPoly::q() * total.at(L.bottom(), L.top());
    }
    case RankGenMethod::NoParallels: {
      if (auto w = detail::parallel_witness(L)) {
        auto [l, i, j] = *w;
        fail(ErrorCode::MethodInapplicable,
             "generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                 " have the same join with " + L.label(l));
      }
      QPoly sum;
      const int n = L.gen_count();
      for (ElementId l = 0; l < L.size(); ++l)
        sum += one_plus_q_pow(n - static_cast<int>(L.closed_set(l).count()));
      return QPoly::one() + QPoly::q() * sum;
    }
  }
  fail(ErrorCode::Internal, "unknown rank generating method");
}

}  // namespace genlat
