#pragma once

#include <map>
#include <vector>

#include "tburau/magnus.hpp"

namespace tburau {

// Assemble a complete automorphism from its active data: the given
// exceptional images plus the given rigid components, with everything else
// covered by identity components. Splitting follows the planar tree walk.
inline AutFInd assemble_autf(std::map<PunctureId, FWord> exceptional,
                             std::vector<RigidComponent> special) {
  std::vector<RigidComponent> comps;
  std::vector<BranchRef> work{fibre_ray(VertexAddress::v0(), 0),
                              full_branch(VertexAddress::root())};
  auto active_inside = [&](const BranchRef& b) {
    for (const auto& [p, w] : exceptional)
      if (branch_contains(b, p)) return true;
    for (const auto& c : special)
      if (branch_contains(b, c.src.root) || c.src == b) return true;
    return false;
  };
  size_t guard = 0;
  while (!work.empty()) {
    if (++guard > 100000) throw ContractViolation("assemble walk does not terminate");
    BranchRef b = work.back();
    work.pop_back();
    bool placed = false;
    for (const auto& c : special)
      if (c.src == b) {
        comps.push_back(c);
        placed = true;
        break;
      }
    if (placed) continue;
    if (!active_inside(b)) {
      comps.push_back({b, b, FWord()});
      continue;
    }
    if (b.kind == BranchKind::full_subtree) {
      // keep the fibre whole when a special component claims it from depth 0
      bool fibre_special = false;
      for (const auto& c : special)
        if (c.src == fibre_ray(b.root.v, 0)) fibre_special = true;
      if (fibre_special) {
        work.push_back(fibre_ray(b.root.v, 0));
        work.push_back(full_branch(VertexAddress::of(b.root.v.path + "L")));
        work.push_back(full_branch(VertexAddress::of(b.root.v.path + "R")));
        continue;
      }
    }
    if (!exceptional.count(b.root)) exceptional[b.root] = FWord::gen(b.root);
    if (b.kind == BranchKind::fibre_ray) {
      work.push_back(fibre_ray(b.root.v, b.root.depth + 1));
    } else {
      work.push_back(fibre_ray(b.root.v, 1));
      work.push_back(full_branch(VertexAddress::of(b.root.v.path + "L")));
      work.push_back(full_branch(VertexAddress::of(b.root.v.path + "R")));
    }
  }
  return AutFInd(std::move(exceptional), std::move(comps));
}

// Crossing rule: the loop of p meets the edge (q,q') exactly when its
// geodesic enters q and leaves along an edge lying past the edge in the
// clockwise sweep from the incoming direction. With the fixed embedding this
// makes the crossing set of an edge toward a left child the fibre tail of q,
// toward a right child the fibre tail plus the whole left subtree, and leaves
// fibre edges and e0 with empty crossing sets.
inline std::vector<BranchRef> crossing_branches(const TreeEdge& e) {
  const PunctureId &q = e.near, &qp = e.far;
  if (q.v == qp.v) return {};  // fibre edge
  if (q.v.is_v0 || qp.v.is_v0) {
    // e0: the access to the v0 fibre wraps around v0 across the far half
    return {fibre_ray(VertexAddress::v0(), 1)};
  }
  char side = qp.v.path.back();
  std::vector<BranchRef> out;
  out.push_back(fibre_ray(q.v, 1));
  if (side == 'R') out.push_back(full_branch(VertexAddress::of(q.v.path + "L")));
  return out;
}

// Half-twist along an edge of the decorated tree, acting on the free group:
//   gamma_q  -> gamma_q'
//   gamma_q' -> gamma_q' gamma_q gamma_q'^-1
//   crossing p -> (gamma_q' gamma_q^-1) gamma_p (gamma_q' gamma_q^-1)^-1
// and the inverse twist for exponent -1.
inline AutFInd halftwist_aut(const TreeEdge& e, int exponent) {
  if (!adjacent(e.near, e.far)) throw DimensionError("half-twist needs a tree edge");
  const PunctureId &q = e.near, &qp = e.far;
  FWord gq = FWord::gen(q), gqp = FWord::gen(qp);
  std::map<PunctureId, FWord> exc;
  FWord lam;
  if (exponent == 1) {
    exc[q] = gqp;
    exc[qp] = gq.conjugated_by(gqp);
    lam = gqp * gq.inverse();
  } else if (exponent == -1) {
    exc[qp] = gq;
    exc[q] = gqp.conjugated_by(gq.inverse());
    lam = gq.inverse() * gqp;
  } else {
    throw DimensionError("half-twist exponent must be +-1");
  }
  std::vector<RigidComponent> special;
  for (const auto& b : crossing_branches(e)) special.push_back({b, b, lam});
  return assemble_autf(std::move(exc), std::move(special));
}

// ---- classical Burau matrices for B_n -------------------------------------

// unreduced n x n generator matrix, columns = images of x_1..x_n
inline LaurentMatrix burau_generator(int n, int i, int exponent) {
  if (i < 1 || i >= n) throw ParseError("generator index out of range");
  std::vector<long long> labels;
  for (int k = 1; k <= n; ++k) labels.push_back(k);
  LaurentMatrix m = LaurentMatrix::identity(labels);
  LaurentPoly one(1), t = LaurentPoly::t(), tinv = LaurentPoly::t(-1);
  size_t a = static_cast<size_t>(i - 1), b = a + 1;
  m.set(a, a, LaurentPoly());
  m.set(b, b, LaurentPoly());
  if (exponent == 1) {
    m.set(a, a, one - t);  // x_i -> (1-t)x_i + t x_{i+1}
    m.set(b, a, t);
    m.set(a, b, one);      // x_{i+1} -> x_i
  } else if (exponent == -1) {
    m.set(b, a, one);               // x_i -> x_{i+1}
    m.set(a, b, tinv);              // x_{i+1} -> t^-1 x_i + (1 - t^-1) x_{i+1}
    m.set(b, b, one - tinv);
  } else {
    throw ParseError("braid letters carry exponent +-1");
  }
  return m;
}

inline LaurentMatrix burau_unreduced(const std::vector<std::pair<int, int>>& word, int n) {
  std::vector<long long> labels;
  for (int k = 1; k <= n; ++k) labels.push_back(k);
  LaurentMatrix m = LaurentMatrix::identity(labels);
  for (const auto& [i, e] : word) m = m * burau_generator(n, i, e);
  return m;
}

// restriction to the submodule spanned by y_i = x_i - x_{i+1}
inline LaurentMatrix burau_reduced(const std::vector<std::pair<int, int>>& word, int n) {
  LaurentMatrix u = burau_unreduced(word, n);
  std::vector<long long> labels;
  for (int k = 1; k < n; ++k) labels.push_back(k);
  LaurentMatrix r(labels, labels);
  for (int j = 0; j + 1 < n; ++j) {
    // image of y_j in x coordinates
    std::vector<LaurentPoly> cx(n);
    for (int k = 0; k < n; ++k) cx[k] = u.at(k, j) - u.at(k, j + 1);
    // back-substitute into the y basis: coefficient of y_i is sum_{k<=i} c_k
    LaurentPoly acc;
    for (int i = 0; i + 1 < n; ++i) {
      acc += cx[i];
      r.set(i, j, acc);
    }
    acc += cx[n - 1];
    if (!acc.is_zero())
      throw InvariantViolation("reduced Burau image leaves the difference submodule");
  }
  return r;
}

}  // namespace tburau
