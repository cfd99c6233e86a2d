#pragma once

#include <map>
#include <random>
#include <vector>

#include "tburau/dyadic.hpp"
#include "tburau/errors.hpp"
#include "tburau/trees.hpp"

namespace tburau {

// Tree-pair-with-rotation symbol (T1, T0, rot): leaf i of T0 maps to leaf
// (i + rot) mod k of T1. Trees have at least two leaves; the identity germ is
// the caret pair.
struct Symbol {
  BinTree t1, t0;
  int rot = 0;

  Symbol() : t1(BinTree::caret()), t0(BinTree::caret()), rot(0) {}
  Symbol(BinTree target, BinTree source, int rotation)
      : t1(std::move(target)), t0(std::move(source)), rot(rotation) {
    int k = t0.leaf_count();
    if (t1.leaf_count() != k) throw DimensionError("symbol trees must have equal leaf counts");
    if (k < 2) throw DimensionError("symbol trees need at least two leaves");
    rot = ((rot % k) + k) % k;
  }

  int leaf_count() const { return t0.leaf_count(); }
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

// the increasing piecewise affine circle map sending source leaf intervals
// onto rotated target leaf intervals
inline PLMap to_plmap(const Symbol& s) {
  auto src = s.t0.leaves();
  auto tgt = s.t1.leaves();
  int k = static_cast<int>(src.size());
  std::vector<PLMap::Piece> ps;
  for (int i = 0; i < k; ++i) {
    const DyadicInterval& I = src[i].interval;
    const DyadicInterval& J = tgt[(i + s.rot) % k].interval;
    int slope = I.level - J.level;
    ps.push_back({I.left, slope, J.left - I.left.scaled(slope)});
  }
  return PLMap(std::move(ps));
}

namespace detail {

// leaf bijection of a symbol must stay cyclic; returns the rotation amount
inline int cyclic_rotation_of(const std::vector<int>& image) {
  int k = static_cast<int>(image.size());
  int r = image[0];
  for (int i = 0; i < k; ++i)
    if (image[i] != (i + r) % k)
      throw InvariantViolation("leaf bijection is not cyclic");
  return r;
}

// rewrite the symbol so its target tree becomes the refinement R of t1
inline Symbol refine_target(const Symbol& s, const BinTree& R) {
  auto t1_leaves = s.t1.leaves();
  int k = static_cast<int>(t1_leaves.size());
  std::vector<BinTree> block(k);
  std::vector<int> bsize(k);
  for (int j = 0; j < k; ++j) {
    block[j] = R.subtree(t1_leaves[j].addr);
    bsize[j] = block[j].leaf_count();
  }
  auto t0_leaves = s.t0.leaves();
  BinTree t0r = s.t0;
  for (int i = 0; i < k; ++i)
    t0r = t0r.with_subtree(t0_leaves[i].addr, block[(i + s.rot) % k]);
  std::vector<int> tgt_start(k, 0);
  for (int j = 1; j < k; ++j) tgt_start[j] = tgt_start[j - 1] + bsize[j - 1];
  std::vector<int> image;
  for (int i = 0; i < k; ++i) {
    int j = (i + s.rot) % k;
    for (int b = 0; b < bsize[j]; ++b) image.push_back(tgt_start[j] + b);
  }
  return Symbol(R, t0r, cyclic_rotation_of(image));
}

// rewrite the symbol so its source tree becomes the refinement R of t0
inline Symbol refine_source(const Symbol& s, const BinTree& R) {
  Symbol inv(s.t0, s.t1, (s.leaf_count() - s.rot) % s.leaf_count());
  Symbol ri = refine_target(inv, R);
  return Symbol(ri.t0, ri.t1, (ri.leaf_count() - ri.rot) % ri.leaf_count());
}

}  // namespace detail

// Cancel caret pairs until none remains (never below the caret pair itself).
// A pair of sibling leaves (i, i+1) of t0 cancels when its images under the
// rotation are sibling leaves of t1 in matching order.
inline Symbol reduce(const Symbol& s) {
  Symbol cur = s;
  bool changed = true;
  while (changed && cur.leaf_count() > 2) {
    changed = false;
    auto src = cur.t0.leaves();
    auto tgt = cur.t1.leaves();
    int k = static_cast<int>(src.size());
    for (int i = 0; i + 1 < k; ++i) {
      const std::string &a0 = src[i].addr, &a1 = src[i + 1].addr;
      if (a0.size() != a1.size() || a0.size() < 1) continue;
      if (a0.substr(0, a0.size() - 1) != a1.substr(0, a1.size() - 1)) continue;
      if (a0.back() != 'L' || a1.back() != 'R') continue;
      int j = (i + cur.rot) % k;
      if (j + 1 >= k) continue;  // image pair wraps: not siblings
      const std::string &b0 = tgt[j].addr, &b1 = tgt[j + 1].addr;
      if (b0.size() != b1.size() || b0.size() < 1) continue;
      if (b0.substr(0, b0.size() - 1) != b1.substr(0, b1.size() - 1)) continue;
      if (b0.back() != 'L' || b1.back() != 'R') continue;

      BinTree t0c = cur.t0.with_subtree(a0.substr(0, a0.size() - 1), BinTree::leaf());
      BinTree t1c = cur.t1.with_subtree(b0.substr(0, b0.size() - 1), BinTree::leaf());
      std::vector<int> image;
      for (int x = 0; x < k; ++x) {
        if (x == i + 1) continue;
        int y = (x + cur.rot) % k;
        image.push_back(y > j ? y - 1 : y);
      }
      cur = Symbol(t1c, t0c, detail::cyclic_rotation_of(image));
      changed = true;
      break;
    }
  }
  return cur;
}

// Element of Thompson's group T: a symbol held in reduced form. Reduced
// symbols represent germs uniquely, so equality is structural.
class TElement {
public:
  TElement() : sym_() {}
  explicit TElement(const Symbol& s) : sym_(reduce(s)) {}

  static TElement identity() { return TElement(); }
  // rotation of order n: the n-leaf right vine rotated by one
  static TElement rotation(int n) {
    if (n < 2) throw OrderError("rotation needs n >= 2");
    return TElement(Symbol(BinTree::right_vine(n), BinTree::right_vine(n), 1));
  }

  const Symbol& symbol() const { return sym_; }
  bool is_identity() const { return sym_ == Symbol(); }
  bool in_F() const { return sym_.rot == 0; }

  friend bool operator==(const TElement&, const TElement&) = default;

private:
  Symbol sym_;
};

inline PLMap to_plmap(const TElement& g) { return to_plmap(g.symbol()); }

inline TElement inverse(const TElement& g) {
  const Symbol& s = g.symbol();
  return TElement(Symbol(s.t0, s.t1, (s.leaf_count() - s.rot) % s.leaf_count()));
}

// germ of g after h: [T2,T1,s][T1,T0,r] = [T2,T0,s+r]
inline TElement compose(const TElement& g, const TElement& h) {
  const Symbol &sg = g.symbol(), &sh = h.symbol();
  BinTree R = common_refinement_tree(sh.t1, sg.t0);
  Symbol hr = detail::refine_target(sh, R);
  Symbol gr = detail::refine_source(sg, R);
  int k = R.leaf_count();
  return TElement(Symbol(gr.t1, hr.t0, (gr.rot + hr.rot) % k));
}

inline TElement power(const TElement& g, int n) {
  TElement acc = TElement::identity();
  TElement base = n >= 0 ? g : inverse(g);
  for (int i = 0; i < std::abs(n); ++i) acc = compose(acc, base);
  return acc;
}

// image of an extended-tree vertex under the induced vertex bijection
inline VertexAddress vertex_image(const TElement& g, const VertexAddress& v) {
  return vertex_of_label(to_plmap(g).eval(vertex_label(v)));
}

// g''(v): the log2 slope jump of the circle map at the label of v, collected
// over the finitely many vertices where it is nonzero
inline std::map<VertexAddress, int> second_derivative_support(const TElement& g) {
  PLMap m = to_plmap(g);
  std::map<VertexAddress, int> out;
  for (const Dyadic& x : m.slope_jump_points())
    out[vertex_of_label(x)] = m.slopes_at(x).jump;
  return out;
}

inline BinTree random_tree(std::mt19937_64& rng, int max_leaves) {
  std::uniform_int_distribution<int> extra(0, std::max(0, max_leaves - 2));
  BinTree t = BinTree::caret();
  int n = extra(rng);
  for (int i = 0; i < n; ++i) {
    std::uniform_int_distribution<int> pos(0, t.leaf_count() - 1);
    t = t.graft(pos(rng), BinTree::caret());
  }
  return t;
}

inline TElement random_element(std::mt19937_64& rng, int max_leaves = 8) {
  BinTree t0 = random_tree(rng, max_leaves);
  int k = t0.leaf_count();
  BinTree t1 = BinTree::caret();
  while (t1.leaf_count() < k) {
    std::uniform_int_distribution<int> pos(0, t1.leaf_count() - 1);
    t1 = t1.graft(pos(rng), BinTree::caret());
  }
  std::uniform_int_distribution<int> rotd(0, k - 1);
  return TElement(Symbol(t1, t0, rotd(rng)));
}

}  // namespace tburau
