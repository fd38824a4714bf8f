#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "genlat/gen_lattice.hpp"
#include "genlat/util.hpp"

namespace genlat {

// A join-preserving surjection between generator enriched lattices carrying
// generators onto generators-or-bottom and covering the target generators.
class StrongMap {
 public:
  static StrongMap make(const GenLattice& src, const GenLattice& dst,
                        std::vector<ElementId> map) {
    if (map.size() != src.size())
      fail(ErrorCode::BadIndex, "map has " + std::to_string(map.size()) + " entries for " +
                                    std::to_string(src.size()) + " elements");
    for (ElementId v : map)
      if (v >= dst.size()) fail(ErrorCode::BadIndex, "map value " + std::to_string(v));
    for (ElementId a = 0; a < src.size(); ++a)
      for (ElementId b = a; b < src.size(); ++b) {
        ElementId lhs = map[src.join(a, b)];
        ElementId rhs = dst.join(map[a], map[b]);
        if (lhs != rhs)
          fail(ErrorCode::NotJoinPreserving,
               "f(" + src.label(a) + " v " + src.label(b) + ") = " + dst.label(lhs) +
                   " but f(..) v f(..) = " + dst.label(rhs));
      }
    std::vector<bool> is_dst_gen(dst.size(), false);
    for (ElementId g : dst.generator_elements()) is_dst_gen[g] = true;
    std::vector<bool> hit(dst.size(), false);
    for (int i = 0; i < src.gen_count(); ++i) {
      ElementId im = map[src.generator(i)];
      hit[im] = true;
      if (im != dst.bottom() && !is_dst_gen[im])
        fail(ErrorCode::GeneratorImageViolation,
             "generator " + std::to_string(i + 1) + " maps to non-generator " + dst.label(im));
    }
    for (ElementId g : dst.generator_elements())
      if (!hit[g])
        fail(ErrorCode::GeneratorImageViolation,
             "target generator " + dst.label(g) + " is not the image of any generator");
    std::vector<bool> onto(dst.size(), false);
    for (ElementId v : map) onto[v] = true;
    for (ElementId t = 0; t < dst.size(); ++t)
      if (!onto[t]) fail(ErrorCode::NotSurjective, "element " + dst.label(t) + " has empty fiber");
    return StrongMap(&src, &dst, std::move(map));
  }

  const GenLattice& source() const { return *src_; }
  const GenLattice& target() const { return *dst_; }
  ElementId apply(ElementId e) const { return map_[e]; }
  const std::vector<ElementId>& values() const { return map_; }

  std::vector<ElementId> fiber(ElementId t) const {
    std::vector<ElementId> out;
    for (ElementId e = 0; e < src_->size(); ++e)
      if (map_[e] == t) out.push_back(e);
    return out;
  }

  bool is_identity() const {
    for (ElementId e = 0; e < map_.size(); ++e)
      if (map_[e] != e) return false;
    return src_->size() == dst_->size();
  }

  static StrongMap compose(const StrongMap& f, const StrongMap& g) {
    if (&f.target() != &g.source())
      fail(ErrorCode::HostMismatch, "composition endpoints disagree");
    std::vector<ElementId> m(f.source().size());
    for (ElementId e = 0; e < m.size(); ++e) m[e] = g.apply(f.apply(e));
    return make(f.source(), g.target(), std::move(m));
  }

 private:
  StrongMap(const GenLattice* s, const GenLattice* d, std::vector<ElementId> m)
      : src_(s), dst_(d), map_(std::move(m)) {}
  const GenLattice* src_;
  const GenLattice* dst_;
  std::vector<ElementId> map_;
};

// The canonical surjection from the Boolean algebra on L's generators:
// a subset of generator indices maps to the join of those generators.
// B must be the Boolean lattice with gen_count(L) generators.
inline StrongMap canonical_strong_map(const GenLattice& B, const GenLattice& L) {
  if (B.gen_count() != L.gen_count() ||
      B.size() != (std::size_t{1} << static_cast<unsigned>(B.gen_count())))
    fail(ErrorCode::HostMismatch, "source is not the Boolean algebra on the generator set");
  std::vector<ElementId> m(B.size());
  for (ElementId e = 0; e < B.size(); ++e) m[e] = L.join_gens(B.closed_set(e));
  return StrongMap::make(B, L, std::move(m));
}

// Consider join expressions base v (join of a subset of A) = t. If a unique
// inclusion-minimal subset of A achieves t, return it; otherwise nullopt.
// The essential members are those whose removal from {a in A : a <= t} drops
// the join below t; the minimal subset is unique iff the essentials suffice.
inline std::optional<std::vector<ElementId>> unique_minimal_expression(
    const GenLattice& L, const std::vector<ElementId>& A, ElementId base, ElementId t) {
  if (!L.leq(base, t)) return std::nullopt;
  std::vector<ElementId> below;
  for (ElementId a : A)
    if (L.leq(a, t)) below.push_back(a);
  std::size_t k = below.size();
  ElementId whole = base;
  for (ElementId a : below) whole = L.join(whole, a);
  if (whole != t) return std::nullopt;  // t is not reachable at all
  std::vector<ElementId> pre(k + 1), suf(k + 1);
  pre[0] = base;
  for (std::size_t i = 0; i < k; ++i) pre[i + 1] = L.join(pre[i], below[i]);
  suf[k] = base;
  for (std::size_t i = k; i-- > 0;) suf[i] = L.join(suf[i + 1], below[i]);
  std::vector<ElementId> essential;
  for (std::size_t i = 0; i < k; ++i)
    if (L.join(pre[i], suf[i + 1]) != t) essential.push_back(below[i]);
  ElementId je = base;
  for (ElementId a : essential) je = L.join(je, a);
  if (je != t) return std::nullopt;
  return essential;
}

}  // namespace genlat
