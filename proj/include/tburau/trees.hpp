#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <string>
#include <tuple>
#include <vector>

#include "tburau/dyadic.hpp"
#include "tburau/errors.hpp"

namespace tburau {

// Finite planar rooted binary tree, stored as a preorder bitstring:
// '1' = internal node (left subtree then right subtree follow), '0' = leaf.
// The single caret is "100"; a bare leaf "0" is allowed as a subtree value
// but is not a valid symbol tree.
class BinTree {
public:
  BinTree() : bits_("0") {}
  explicit BinTree(std::string bits) : bits_(std::move(bits)) {
    size_t pos = 0;
    if (!parse(pos) || pos != bits_.size()) throw ParseError("malformed tree bitstring");
  }

  static BinTree leaf() { return BinTree(); }
  static BinTree caret() { return BinTree("100"); }
  static BinTree node(const BinTree& l, const BinTree& r) {
    return BinTree("1" + l.bits_ + r.bits_);
  }
  // right vine with n leaves: L, RL, RRL, ..., R^(n-1)
  static BinTree right_vine(int n) {
    assert(n >= 1);
    BinTree t = leaf();
    for (int i = 1; i < n; ++i) t = node(leaf(), t);
    return t;
  }
  static BinTree left_vine(int n) {
    assert(n >= 1);
    BinTree t = leaf();
    for (int i = 1; i < n; ++i) t = node(t, leaf());
    return t;
  }

  const std::string& bits() const { return bits_; }
  bool is_leaf() const { return bits_ == "0"; }
  int leaf_count() const {
    return static_cast<int>(std::count(bits_.begin(), bits_.end(), '0'));
  }

  BinTree left() const {
    assert(!is_leaf());
    size_t pos = 1;
    size_t start = pos;
    skip(pos);
    return BinTree(bits_.substr(start, pos - start));
  }
  BinTree right() const {
    assert(!is_leaf());
    size_t pos = 1;
    skip(pos);
    return BinTree(bits_.substr(pos));
  }

  // subtree at an L/R address; empty address is the whole tree
  BinTree subtree(const std::string& addr) const {
    BinTree t = *this;
    for (char c : addr) t = (c == 'L') ? t.left() : t.right();
    return t;
  }
  bool has_vertex(const std::string& addr) const {
    BinTree t = *this;
    for (char c : addr) {
      if (t.is_leaf()) return false;
      t = (c == 'L') ? t.left() : t.right();
    }
    return true;
  }

  // replace the subtree at addr
  BinTree with_subtree(const std::string& addr, const BinTree& sub) const {
    if (addr.empty()) return sub;
    BinTree l = left(), r = right();
    if (addr[0] == 'L') return node(l.with_subtree(addr.substr(1), sub), r);
    return node(l, r.with_subtree(addr.substr(1), sub));
  }

  // leaves in leftmost-first order with their addresses and dyadic intervals
  struct Leaf {
    std::string addr;
    DyadicInterval interval;
  };
  std::vector<Leaf> leaves() const {
    std::vector<Leaf> out;
    collect(bits_, 0, "", DyadicInterval{Dyadic(0), 0}, out);
    return out;
  }

  // graft `sub` in place of leaf number `index`
  BinTree graft(int index, const BinTree& sub) const {
    auto ls = leaves();
    assert(index >= 0 && index < static_cast<int>(ls.size()));
    return with_subtree(ls[index].addr, sub);
  }

  friend bool operator==(const BinTree& a, const BinTree& b) { return a.bits_ == b.bits_; }

private:
  bool parse(size_t& pos) const {
    if (pos >= bits_.size()) return false;
    char c = bits_[pos++];
    if (c == '0') return true;
    if (c != '1') return false;
    return parse(pos) && parse(pos);
  }
  void skip(size_t& pos) const {
    int pending = 1;
    while (pending > 0) {
      assert(pos < bits_.size());
      pending += bits_[pos] == '1' ? 1 : -1;
      ++pos;
    }
  }
  static void collect(const std::string& bits, size_t pos, const std::string& addr,
                      const DyadicInterval& iv, std::vector<Leaf>& out) {
    if (bits[pos] == '0') { out.push_back({addr, iv}); return; }
    size_t left_start = pos + 1;
    size_t cursor = left_start;
    int pending = 1;
    while (pending > 0) { pending += bits[cursor] == '1' ? 1 : -1; ++cursor; }
    collect(bits, left_start, addr + "L", iv.first_half(), out);
    collect(bits, cursor, addr + "R", iv.second_half(), out);
  }

  std::string bits_;
};

// Coarsest tree whose leaf partition refines both inputs, with the leaf maps
// into each input tree.
struct Refinement {
  BinTree tree;
  std::vector<int> into_a;  // leaf i of tree -> leaf of A containing it
  std::vector<int> into_b;
};

inline BinTree common_refinement_tree(const BinTree& a, const BinTree& b) {
  if (a.is_leaf()) return b;
  if (b.is_leaf()) return a;
  return BinTree::node(common_refinement_tree(a.left(), b.left()),
                       common_refinement_tree(a.right(), b.right()));
}

inline Refinement common_refinement(const BinTree& a, const BinTree& b) {
  Refinement r;
  r.tree = common_refinement_tree(a, b);
  auto locate = [](const BinTree& t, const DyadicInterval& iv) {
    auto ls = t.leaves();
    for (size_t i = 0; i < ls.size(); ++i)
      if (ls[i].interval.contains(iv.left)) return static_cast<int>(i);
    throw InvariantViolation("refinement leaf not contained in source tree");
  };
  for (const auto& lf : r.tree.leaves()) {
    r.into_a.push_back(locate(a, lf.interval));
    r.into_b.push_back(locate(b, lf.interval));
  }
  return r;
}

// Vertex of the extended tree: the distinguished vertex v0 labelled 0~1, or a
// vertex of the rooted dyadic tree given by its L/R path from the root.
struct VertexAddress {
  bool is_v0 = false;
  std::string path;

  static VertexAddress v0() { return {true, ""}; }
  static VertexAddress root() { return {false, ""}; }
  static VertexAddress of(std::string p) { return {false, std::move(p)}; }

  friend bool operator==(const VertexAddress&, const VertexAddress&) = default;
  friend std::strong_ordering operator<=>(const VertexAddress& a, const VertexAddress& b) {
    if (a.is_v0 != b.is_v0)
      return a.is_v0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.path.size() != b.path.size())
      return a.path.size() < b.path.size() ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
    return a.path <=> b.path;
  }

  std::string to_string() const { return is_v0 ? "v0" : (path.empty() ? "." : path); }
};

// vertex label: v0 <-> 0~1, tree vertex <-> midpoint of its edge interval
inline Dyadic vertex_label(const VertexAddress& v) {
  if (v.is_v0) return Dyadic(0);
  DyadicInterval iv{Dyadic(0), 0};
  for (char c : v.path) iv = (c == 'L') ? iv.first_half() : iv.second_half();
  return iv.midpoint();
}

inline VertexAddress vertex_of_label(const Dyadic& xin) {
  Dyadic x = xin.mod1();
  if (x.is_zero()) return VertexAddress::v0();
  DyadicInterval iv{Dyadic(0), 0};
  std::string path;
  while (!(iv.midpoint() == x)) {
    if (x < iv.midpoint()) { iv = iv.first_half(); path += 'L'; }
    else { iv = iv.second_half(); path += 'R'; }
    if (path.size() > 4096) throw InvariantViolation("label is not dyadic");
  }
  return VertexAddress::of(path);
}

// Puncture of the decorated tree: a vertex of the extended tree together with
// a position along its fibre (depth 0 is the vertex itself).
struct PunctureId {
  VertexAddress v;
  int depth = 0;

  // combinatorial distance from the base point * (the midpoint of e0)
  int geodesic_length() const {
    if (v.is_v0) return 1 + depth;
    return 1 + static_cast<int>(v.path.size()) + depth;
  }

  friend bool operator==(const PunctureId&, const PunctureId&) = default;
  friend std::strong_ordering operator<=>(const PunctureId& a, const PunctureId& b) {
    if (int la = a.geodesic_length(), lb = b.geodesic_length(); la != lb)
      return la < lb ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.v <=> b.v; c != 0) return c;
    return a.depth <=> b.depth;
  }

  std::string to_string() const { return v.to_string() + ":" + std::to_string(depth); }
};

inline PunctureId puncture(const VertexAddress& v, int depth = 0) { return {v, depth}; }

// Edge of the decorated tree; endpoints stored with the *-nearer one first
// (for e0 the tie is broken by puncture order, so v0 comes first).
struct TreeEdge {
  PunctureId near;
  PunctureId far;

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
  friend std::strong_ordering operator<=>(const TreeEdge& a, const TreeEdge& b) {
    if (auto c = a.near <=> b.near; c != 0) return c;
    return a.far <=> b.far;
  }
  std::string to_string() const { return near.to_string() + "-" + far.to_string(); }
};

inline TreeEdge make_edge(const PunctureId& a, const PunctureId& b) {
  int la = a.geodesic_length(), lb = b.geodesic_length();
  if (la != lb) return la < lb ? TreeEdge{a, b} : TreeEdge{b, a};
  return a < b ? TreeEdge{a, b} : TreeEdge{b, a};  // e0 tie
}

inline bool adjacent(const PunctureId& a, const PunctureId& b) {
  if (a.v == b.v) return std::abs(a.depth - b.depth) == 1;
  if (a.depth != 0 || b.depth != 0) return false;
  if (a.v.is_v0 || b.v.is_v0) {
    const VertexAddress& other = a.v.is_v0 ? b.v : a.v;
    return !other.is_v0 && other.path.empty();  // e0
  }
  const std::string &pa = a.v.path, &pb = b.v.path;
  if (pa.size() + 1 == pb.size()) return pb.compare(0, pa.size(), pa) == 0;
  if (pb.size() + 1 == pa.size()) return pa.compare(0, pb.size(), pb) == 0;
  return false;
}

// vertex path of the geodesic from * to p (the initial half-edge from * to
// the first listed puncture is implicit)
inline std::vector<PunctureId> geodesic(const PunctureId& p) {
  std::vector<PunctureId> out;
  if (p.v.is_v0) {
    for (int d = 0; d <= p.depth; ++d) out.push_back(puncture(VertexAddress::v0(), d));
    return out;
  }
  for (size_t i = 0; i <= p.v.path.size(); ++i)
    out.push_back(puncture(VertexAddress::of(p.v.path.substr(0, i)), 0));
  for (int d = 1; d <= p.depth; ++d) out.push_back(puncture(p.v, d));
  return out;
}

// Counterclockwise cyclic order of the neighbours of a puncture in the fixed
// planar embedding: (toward *, fibre, left child, right child) at tree
// vertices, (toward *, fibre) at v0, (down, up) along fibres.
inline std::vector<PunctureId> planar_order_around(const PunctureId& p) {
  if (p.depth > 0)
    return {puncture(p.v, p.depth - 1), puncture(p.v, p.depth + 1)};
  if (p.v.is_v0)
    return {puncture(VertexAddress::root()), puncture(p.v, 1)};
  std::vector<PunctureId> out;
  if (p.v.path.empty()) out.push_back(puncture(VertexAddress::v0()));
  else out.push_back(puncture(VertexAddress::of(p.v.path.substr(0, p.v.path.size() - 1))));
  out.push_back(puncture(p.v, 1));
  out.push_back(puncture(VertexAddress::of(p.v.path + "L")));
  out.push_back(puncture(VertexAddress::of(p.v.path + "R")));
  return out;
}

// Branches of the decorated tree used as rigid-component carriers: either the
// full subtree hanging below a depth-0 tree vertex (fibres included), or the
// tail of a single fibre.
enum class BranchKind { full_subtree, fibre_ray };

struct BranchRef {
  BranchKind kind;
  PunctureId root;

  friend bool operator==(const BranchRef&, const BranchRef&) = default;
  friend std::strong_ordering operator<=>(const BranchRef& a, const BranchRef& b) {
    if (auto c = a.root <=> b.root; c != 0) return c;
    return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
  }
};

inline BranchRef full_branch(const VertexAddress& v) {
  assert(!v.is_v0);
  return {BranchKind::full_subtree, puncture(v, 0)};
}
inline BranchRef fibre_ray(const VertexAddress& v, int from_depth) {
  return {BranchKind::fibre_ray, puncture(v, from_depth)};
}

inline bool branch_contains(const BranchRef& b, const PunctureId& p) {
  if (b.kind == BranchKind::fibre_ray)
    return p.v == b.root.v && p.depth >= b.root.depth;
  const std::string& rp = b.root.v.path;
  if (p.v.is_v0) return false;
  return p.v.path.size() >= rp.size() && p.v.path.compare(0, rp.size(), rp) == 0;
}

// canonical rigid transport between two branches of the same kind
inline PunctureId branch_transport(const BranchRef& src, const BranchRef& tgt,
                                   const PunctureId& p) {
  assert(branch_contains(src, p));
  assert(src.kind == tgt.kind);
  if (src.kind == BranchKind::fibre_ray)
    return puncture(tgt.root.v, tgt.root.depth + (p.depth - src.root.depth));
  std::string suffix = p.v.path.substr(src.root.v.path.size());
  return puncture(VertexAddress::of(tgt.root.v.path + suffix), p.depth);
}

// immediate sub-branches and the root puncture they hang from
inline std::vector<BranchRef> branch_children(const BranchRef& b) {
  if (b.kind == BranchKind::fibre_ray)
    return {fibre_ray(b.root.v, b.root.depth + 1)};
  return {fibre_ray(b.root.v, 1),
          full_branch(VertexAddress::of(b.root.v.path + "L")),
          full_branch(VertexAddress::of(b.root.v.path + "R"))};
}

// probe punctures that pin a rigid map on a branch (root plus near children)
inline std::vector<PunctureId> branch_probes(const BranchRef& b) {
  std::vector<PunctureId> out{b.root};
  if (b.kind == BranchKind::fibre_ray) {
    out.push_back(puncture(b.root.v, b.root.depth + 1));
    out.push_back(puncture(b.root.v, b.root.depth + 2));
  } else {
    out.push_back(puncture(b.root.v, 1));
    out.push_back(puncture(VertexAddress::of(b.root.v.path + "L")));
    out.push_back(puncture(VertexAddress::of(b.root.v.path + "R")));
  }
  return out;
}

// all punctures within the given geodesic radius of *
inline std::vector<PunctureId> punctures_within(int radius) {
  std::vector<PunctureId> out;
  for (int d = 0; 1 + d <= radius; ++d) out.push_back(puncture(VertexAddress::v0(), d));
  std::vector<std::string> layer{""};
  for (int len = 0; 1 + len <= radius; ++len) {
    std::vector<std::string> next;
    for (const auto& path : layer) {
      for (int d = 0; 1 + len + d <= radius; ++d)
        out.push_back(puncture(VertexAddress::of(path), d));
      if (1 + len + 1 <= radius) {
        next.push_back(path + "L");
        next.push_back(path + "R");
      }
    }
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<TreeEdge> edges_within(int radius) {
  std::vector<TreeEdge> out;
  for (const auto& p : punctures_within(radius))
    for (const auto& q : planar_order_around(p))
      if (q.geodesic_length() <= radius && p < q) out.push_back(make_edge(p, q));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tburau
