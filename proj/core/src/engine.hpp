#pragma once

// Private interning + memoization layer behind the exhaustive sweeps. Points
// and lattice elements get small integer ids; applies, preimage fibers and
// cocycle weights are cached against those ids. Not part of the public API.

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "sgdyn/cocycle.hpp"

namespace sgdyn::detail {

inline uint64_t pack(int hi, int lo) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(hi)) << 32) | static_cast<uint32_t>(lo);
}

class Engine {
 public:
  explicit Engine(const Action& a, const Cocycle* w = nullptr) : act_(a), coc_(w) {}

  int intern(const Point& p) {
    auto [it, fresh] = ids_.try_emplace(p, static_cast<int>(pts_.size()));
    if (fresh) pts_.push_back(p);
    return it->second;
  }
  const Point& point(int pid) const { return pts_[pid]; }

  int elt(const LatticeElement& e) {
    auto [it, fresh] = elt_ids_.try_emplace(e, static_cast<int>(elts_.size()));
    if (fresh) elts_.push_back(e);
    return it->second;
  }
  const LatticeElement& elt_at(int eid) const { return elts_[eid]; }

  int apply(int eid, int pid) {
    auto [it, fresh] = apply_.try_emplace(pack(eid, pid), -1);
    if (fresh) it->second = intern(act_.apply(elts_[eid], pts_[pid]));
    return it->second;
  }

  /// Preimage fiber of an image point, as sorted ids.
  const std::vector<int>& fiber(int eid, int image_pid) {
    auto [it, fresh] = fiber_.try_emplace(pack(eid, image_pid));
    if (fresh) {
      std::vector<int> v;
      for (const auto& p : act_.preimages(elts_[eid], pts_[image_pid])) v.push_back(intern(p));
      std::sort(v.begin(), v.end());
      it->second = std::move(v);
    }
    return it->second;
  }

  /// C^e_p, the class of p: the fiber through p's image.
  const std::vector<int>& cls(int eid, int pid) { return fiber(eid, apply(eid, pid)); }

  const Rational& weight(int eid, int pid) {
    auto [it, fresh] = weight_.try_emplace(pack(eid, pid));
    if (fresh) it->second = coc_->eval(elts_[eid], pts_[pid]);
    return it->second;
  }

  const Action& action() const { return act_; }
  const Cocycle& cocycle() const { return *coc_; }

 private:
  const Action& act_;
  const Cocycle* coc_;
  std::vector<Point> pts_;
  std::unordered_map<Point, int, PointHash> ids_;
  std::vector<LatticeElement> elts_;
  std::map<LatticeElement, int> elt_ids_;
  std::unordered_map<uint64_t, int> apply_;
  std::unordered_map<uint64_t, std::vector<int>> fiber_;
  std::unordered_map<uint64_t, Rational> weight_;
};

}  // namespace sgdyn::detail
