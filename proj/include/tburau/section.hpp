#pragma once

#include <mutex>
#include <string>
#include <vector>

#include "tburau/braided.hpp"
#include "tburau/thompson.hpp"

namespace tburau {

// Generating atoms for lifting T: the rigid quarter rotation of the circle
// (order 4) and the three-leaf vine rotation (order 3), with their inverses.
enum class GenAtom { Q, Qi, T3, T3i };

inline GenAtom atom_inverse(GenAtom a) {
  switch (a) {
    case GenAtom::Q: return GenAtom::Qi;
    case GenAtom::Qi: return GenAtom::Q;
    case GenAtom::T3: return GenAtom::T3i;
    case GenAtom::T3i: return GenAtom::T3;
  }
  return GenAtom::Q;
}

inline std::vector<GenAtom> word_inverse(const std::vector<GenAtom>& w) {
  std::vector<GenAtom> out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(atom_inverse(*it));
  return out;
}

inline TElement quarter_rotation() {
  BinTree b4 = BinTree::node(BinTree::caret(), BinTree::caret());
  return TElement(Symbol(b4, b4, 1));  // x -> x + 1/4
}

inline TElement atom_element(GenAtom a) {
  switch (a) {
    case GenAtom::Q: return quarter_rotation();
    case GenAtom::Qi: return inverse(quarter_rotation());
    case GenAtom::T3: return TElement::rotation(3);
    case GenAtom::T3i: return inverse(TElement::rotation(3));
  }
  return TElement::identity();
}

// ---- lift tables -----------------------------------------------------------
//
// The quarter- and third-rotation lifts act rigidly in a circle picture whose
// structure they permute; their free-group data consists of the rigid branch
// cycles of the induced vertex map together with one conjugator per block.
// The conjugators below solve the exact torsion identities (the square of the
// quarter lift is the half-rotation lift, the cube of the third lift is the
// identity) and are validated by the braid-relation, determinant and residue
// suites.

namespace lifts {

inline PunctureId pa() { return puncture(VertexAddress::v0()); }      // label 0~1
inline PunctureId pl() { return puncture(VertexAddress::of("L")); }   // label 1/4
inline PunctureId pb() { return puncture(VertexAddress::root()); }    // label 1/2
inline PunctureId pr() { return puncture(VertexAddress::of("R")); }   // label 3/4

inline const AutFInd& half_rotation_aut() {
  static const AutFInd s = [] {
    FWord ga = FWord::gen(pa()), gb = FWord::gen(pb());
    std::vector<RigidComponent> comps;
    comps.push_back({full_branch(VertexAddress::of("L")), full_branch(VertexAddress::of("R")),
                     ga.inverse()});
    comps.push_back({full_branch(VertexAddress::of("R")), full_branch(VertexAddress::of("L")),
                     gb});
    comps.push_back({fibre_ray(VertexAddress::v0(), 0), fibre_ray(VertexAddress::root(), 0),
                     FWord()});
    comps.push_back({fibre_ray(VertexAddress::root(), 0), fibre_ray(VertexAddress::v0(), 0),
                     FWord()});
    return AutFInd({}, std::move(comps));
  }();
  return s;
}

inline const AutFInd& quarter_rotation_aut() {
  static const AutFInd s = [] {
    FWord ga = FWord::gen(pa()), gl = FWord::gen(pl());
    std::vector<RigidComponent> comps;
    auto fb = [](const char* p) { return full_branch(VertexAddress::of(p)); };
    comps.push_back({fb("LL"), fb("LR"), FWord()});
    comps.push_back({fb("LR"), fb("RL"), ga.inverse()});
    comps.push_back({fb("RL"), fb("RR"), gl * ga.inverse()});
    comps.push_back({fb("RR"), fb("LL"), gl});
    auto ray0 = [](const VertexAddress& v) { return fibre_ray(v, 0); };
    comps.push_back({ray0(VertexAddress::v0()), ray0(VertexAddress::of("L")), FWord()});
    comps.push_back({ray0(VertexAddress::of("L")), ray0(VertexAddress::root()), FWord()});
    comps.push_back({ray0(VertexAddress::root()), ray0(VertexAddress::of("R")), ga.inverse()});
    comps.push_back({ray0(VertexAddress::of("R")), ray0(VertexAddress::v0()), gl});
    return AutFInd({}, std::move(comps));
  }();
  return s;
}

inline const AutFInd& third_rotation_aut() {
  static const AutFInd s = [] {
    std::vector<RigidComponent> comps;
    auto fb = [](const char* p) { return full_branch(VertexAddress::of(p)); };
    comps.push_back({fb("L"), fb("RL"), FWord()});
    comps.push_back({fb("RL"), fb("RR"), FWord()});
    comps.push_back({fb("RR"), fb("L"), FWord()});
    auto ray0 = [](const VertexAddress& v) { return fibre_ray(v, 0); };
    comps.push_back({ray0(VertexAddress::v0()), ray0(VertexAddress::root()), FWord()});
    comps.push_back({ray0(VertexAddress::root()), ray0(VertexAddress::of("R")), FWord()});
    comps.push_back({ray0(VertexAddress::of("R")), ray0(VertexAddress::v0()), FWord()});
    return AutFInd({}, std::move(comps));
  }();
  return s;
}

}  // namespace lifts

inline const AutFInd& atom_autf(GenAtom a) {
  using namespace lifts;
  switch (a) {
    case GenAtom::Q: return quarter_rotation_aut();
    case GenAtom::Qi: {
      static const AutFInd qi = simplify(compose(
          quarter_rotation_aut(), compose(quarter_rotation_aut(), quarter_rotation_aut())));
      return qi;
    }
    case GenAtom::T3: return third_rotation_aut();
    case GenAtom::T3i: {
      static const AutFInd ti = simplify(compose(third_rotation_aut(), third_rotation_aut()));
      return ti;
    }
  }
  return third_rotation_aut();
}

// ---- words for the associator family --------------------------------------

// word for the rebracketing element supported on the interval of the given
// vertex; validated against the tree-pair element by the decomposition test
inline std::vector<GenAtom> alpha_word(const std::string& addr) {
  using A = GenAtom;
  auto cat = [](std::vector<A> a, const std::vector<A>& b, const std::vector<A>& c) {
    a.insert(a.end(), b.begin(), b.end());
    a.insert(a.end(), c.begin(), c.end());
    return a;
  };
  if (addr.empty()) return {A::Q, A::Q, A::T3};
  if (addr == "L") return {A::Q, A::Q, A::T3, A::Q, A::T3, A::Q, A::Q};
  if (addr == "R") return cat({A::Q, A::Q}, alpha_word("L"), {A::Q, A::Q});
  std::string rest = addr.substr(2);
  if (addr[0] == 'L' && addr[1] == 'L')
    return cat({A::Q, A::Q, A::T3}, alpha_word("L" + rest), {A::T3i, A::Qi, A::Qi});
  if (addr[0] == 'L' && addr[1] == 'R')
    return cat({A::Q, A::Q, A::T3, A::T3}, alpha_word("L" + rest), {A::T3i, A::T3i, A::Qi, A::Qi});
  if (addr[0] == 'R' && addr[1] == 'L')
    return cat({A::T3}, alpha_word("L" + rest), {A::T3i});
  return cat({A::T3i, A::Qi, A::Qi}, alpha_word("R" + rest), {A::Q, A::Q, A::T3});
}

// the rebracketing element itself: (A,(B,C)) -> ((A,B),C) on the vertex interval
inline TElement alpha_element(const std::string& addr) {
  BinTree t0 = BinTree::node(BinTree::leaf(), BinTree::caret());
  BinTree t1 = BinTree::node(BinTree::caret(), BinTree::leaf());
  BinTree spine0 = BinTree::leaf(), spine1 = BinTree::leaf();
  spine0 = t0;
  spine1 = t1;
  for (auto it = addr.rbegin(); it != addr.rend(); ++it) {
    if (*it == 'L') {
      spine0 = BinTree::node(spine0, BinTree::leaf());
      spine1 = BinTree::node(spine1, BinTree::leaf());
    } else {
      spine0 = BinTree::node(BinTree::leaf(), spine0);
      spine1 = BinTree::node(BinTree::leaf(), spine1);
    }
  }
  return TElement(Symbol(spine1, spine0, 0));
}

// ---- decomposition of T elements over the atoms ----------------------------

inline TElement fold_atoms(const std::vector<GenAtom>& w) {
  TElement acc = TElement::identity();
  for (GenAtom a : w) acc = compose(acc, atom_element(a));
  return acc;
}

namespace detail {

// right-rotation sequence taking T to the right vine; each step is the
// inverse of a rebracketing element
inline std::vector<GenAtom> vine_word(const BinTree& tree) {
  std::vector<GenAtom> out;
  BinTree t = tree;
  bool changed = true;
  size_t guard = 0;
  while (changed) {
    if (++guard > 10000) throw InvariantViolation("vine rotation runaway");
    changed = false;
    // first vertex (preorder) whose left child is internal
    std::vector<std::string> stack{""};
    while (!stack.empty()) {
      std::string addr = stack.back();
      stack.pop_back();
      BinTree sub = t.subtree(addr);
      if (sub.is_leaf()) continue;
      if (!sub.left().is_leaf()) {
        // ((A,B),C) -> (A,(B,C)) at addr: one inverse rebracketing step;
        // later steps act after earlier ones, so they compose on the left
        BinTree A = sub.left().left(), B = sub.left().right(), C = sub.right();
        t = t.with_subtree(addr, BinTree::node(A, BinTree::node(B, C)));
        std::vector<GenAtom> inv = word_inverse(alpha_word(addr));
        out.insert(out.begin(), inv.begin(), inv.end());
        changed = true;
        break;
      }
      stack.push_back(addr + "R");
      stack.push_back(addr + "L");
    }
  }
  return out;
}

}  // namespace detail

// atom word for g, leftmost factor outermost; exact by construction and
// asserted against g itself
inline std::vector<GenAtom> decompose(const TElement& g) {
  std::vector<GenAtom> word;
  if (!g.is_identity()) {
    const Symbol& s = g.symbol();
    auto f_word = [](const Symbol& s0) {
      // [t1, t0, 0] = [t1, V]^-1 ... : climb both trees to the vine
      std::vector<GenAtom> w = word_inverse(detail::vine_word(s0.t1));
      std::vector<GenAtom> v0w = detail::vine_word(s0.t0);
      w.insert(w.end(), v0w.begin(), v0w.end());
      return w;
    };
    if (s.rot == 0) {
      word = f_word(s);
    } else {
      int k = s.leaf_count();
      int j0 = (k - s.rot) % k;
      BinTree M = BinTree::node(BinTree::right_vine(j0), BinTree::right_vine(k - j0));
      TElement f(Symbol(s.t0, M, 0));
      TElement half = power(quarter_rotation(), 2);
      TElement f2 = compose(compose(g, f), half);
      if (!f2.in_F()) throw InvariantViolation("rotation peel failed");
      word = f_word(f2.symbol());
      word.push_back(GenAtom::Q);
      word.push_back(GenAtom::Q);
      std::vector<GenAtom> w1 = f_word(inverse(f).symbol());
      word.insert(word.end(), w1.begin(), w1.end());
    }
  }
  if (!(fold_atoms(word) == g)) throw InvariantViolation("decomposition mismatch");
  return word;
}

// pre-folded lift of one rebracketing word; these blocks are small localized
// automorphisms and recur across decompositions, so they are cached
inline const AutFInd& alpha_lift(const std::string& addr, bool inverted) {
  static std::map<std::pair<std::string, bool>, AutFInd> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(addr, inverted);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<GenAtom> w = alpha_word(addr);
  if (inverted) w = word_inverse(w);
  AutFInd acc = AutFInd::identity();
  for (GenAtom a : w) acc = simplify(compose(acc, atom_autf(a)));
  return cache.emplace(key, std::move(acc)).first->second;
}

namespace detail {

// block of a decomposition: one rebracketing lift or one rotation atom
struct LiftBlock {
  bool is_alpha = false;
  std::string addr;
  bool inverted = false;
  GenAtom atom = GenAtom::Q;
};

inline std::vector<LiftBlock> vine_blocks(const BinTree& tree) {
  std::vector<LiftBlock> out;
  BinTree t = tree;
  bool changed = true;
  size_t guard = 0;
  while (changed) {
    if (++guard > 10000) throw InvariantViolation("vine rotation runaway");
    changed = false;
    std::vector<std::string> stack{""};
    while (!stack.empty()) {
      std::string addr = stack.back();
      stack.pop_back();
      BinTree sub = t.subtree(addr);
      if (sub.is_leaf()) continue;
      if (!sub.left().is_leaf()) {
        BinTree A = sub.left().left(), B = sub.left().right(), C = sub.right();
        t = t.with_subtree(addr, BinTree::node(A, BinTree::node(B, C)));
        out.insert(out.begin(), LiftBlock{true, addr, true, GenAtom::Q});
        changed = true;
        break;
      }
      stack.push_back(addr + "R");
      stack.push_back(addr + "L");
    }
  }
  return out;
}

inline std::vector<LiftBlock> invert_blocks(const std::vector<LiftBlock>& w) {
  std::vector<LiftBlock> out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    LiftBlock b = *it;
    if (b.is_alpha) b.inverted = !b.inverted;
    else b.atom = atom_inverse(b.atom);
    out.push_back(b);
  }
  return out;
}

inline std::vector<LiftBlock> decompose_blocks(const TElement& g) {
  std::vector<LiftBlock> word;
  if (g.is_identity()) return word;
  const Symbol& s = g.symbol();
  auto f_blocks = [](const Symbol& s0) {
    std::vector<LiftBlock> w = invert_blocks(vine_blocks(s0.t1));
    std::vector<LiftBlock> v = vine_blocks(s0.t0);
    w.insert(w.end(), v.begin(), v.end());
    return w;
  };
  if (s.rot == 0) {
    word = f_blocks(s);
  } else {
    int k = s.leaf_count();
    int j0 = (k - s.rot) % k;
    BinTree M = BinTree::node(BinTree::right_vine(j0), BinTree::right_vine(k - j0));
    TElement f(Symbol(s.t0, M, 0));
    TElement half = power(quarter_rotation(), 2);
    TElement f2 = compose(compose(g, f), half);
    if (!f2.in_F()) throw InvariantViolation("rotation peel failed");
    word = f_blocks(f2.symbol());
    word.push_back(LiftBlock{false, "", false, GenAtom::Q});
    word.push_back(LiftBlock{false, "", false, GenAtom::Q});
    std::vector<LiftBlock> w1 = f_blocks(inverse(f).symbol());
    word.insert(word.end(), w1.begin(), w1.end());
  }
  return word;
}

inline const AutFInd& block_lift(const LiftBlock& b) {
  return b.is_alpha ? alpha_lift(b.addr, b.inverted) : atom_autf(b.atom);
}

// balanced fold keeps intermediate conjugator words from ballooning
inline AutFInd fold_blocks(const std::vector<LiftBlock>& w, size_t lo, size_t hi) {
  if (hi == lo) return AutFInd::identity();
  if (hi - lo == 1) return block_lift(w[lo]);
  size_t mid = (lo + hi) / 2;
  return simplify(compose(fold_blocks(w, lo, mid), fold_blocks(w, mid, hi)));
}

}  // namespace detail

// The lift of g: the composition of the atom lifts along the decomposition.
// A set-theoretic section of the projection to T, not a homomorphism.
inline AutFInd section_aut(const TElement& g) {
  static std::map<std::string, AutFInd> cache;
  static std::mutex mu;
  std::string key = g.symbol().t1.bits() + "|" + g.symbol().t0.bits() + "|" +
                    std::to_string(g.symbol().rot);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto blocks = detail::decompose_blocks(g);
  AutFInd acc = detail::fold_blocks(blocks, 0, blocks.size());
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(acc)).first->second;
}

}  // namespace tburau
