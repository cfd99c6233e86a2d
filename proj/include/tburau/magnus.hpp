#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tburau/freegroup.hpp"
#include "tburau/matrix.hpp"

namespace tburau {

// Free differential with every generator specialised to t: the derivative of
// a word w at the generator gamma_p, valued in Z[t,t^-1]. Product rule
// d(uv) = du + t^{ind u} dv, with d(gamma) = 1 and d(gamma^-1) = -t^-1.
inline std::map<PunctureId, LaurentPoly> fox_vector(const FWord& w) {
  std::map<PunctureId, LaurentPoly> out;
  long long prefix = 0;
  for (const auto& [p, e] : w.letters()) {
    LaurentPoly contrib = e > 0 ? LaurentPoly::t(prefix) : -LaurentPoly::t(prefix - 1);
    auto& slot = out[p];
    slot += contrib;
    if (slot.is_zero()) out.erase(p);
    prefix += e;
  }
  return out;
}

inline LaurentPoly fox_derivative(const FWord& w, const PunctureId& p) {
  auto v = fox_vector(w);
  auto it = v.find(p);
  return it == v.end() ? LaurentPoly() : it->second;
}

using SparseVec = std::map<PunctureId, LaurentPoly>;

inline void vec_add(SparseVec& dst, const SparseVec& src, const LaurentPoly& scale) {
  if (scale.is_zero()) return;
  for (const auto& [p, v] : src) {
    auto& slot = dst[p];
    slot += v * scale;
    if (slot.is_zero()) dst.erase(p);
  }
}

// Monomial-weighted rigid block of a structured operator: on the source
// branch, x_p maps to weight * x_{T(p)} plus the component-constant
// correction column.
struct OpComponent {
  BranchRef src, tgt;
  Monomial weight;
  SparseVec correction;

  friend bool operator==(const OpComponent&, const OpComponent&) = default;
};

// Structured operator: monomial-weighted puncture bijection (the background)
// plus a finite-image correction, stored as rigid components together with
// finitely many fully explicit exceptional columns.
class StructuredOperator {
public:
  StructuredOperator() = default;
  StructuredOperator(std::map<PunctureId, SparseVec> exceptional_cols,
                     std::vector<OpComponent> components)
      : exc_(std::move(exceptional_cols)), comps_(std::move(components)) {}

  static StructuredOperator identity() {
    std::vector<OpComponent> comps;
    comps.push_back({fibre_ray(VertexAddress::v0(), 0), fibre_ray(VertexAddress::v0(), 0),
                     Monomial{}, {}});
    comps.push_back({full_branch(VertexAddress::root()), full_branch(VertexAddress::root()),
                     Monomial{}, {}});
    return StructuredOperator({}, std::move(comps));
  }

  const std::map<PunctureId, SparseVec>& exceptional_cols() const { return exc_; }
  const std::vector<OpComponent>& components() const { return comps_; }

  SparseVec column(const PunctureId& p) const {
    auto it = exc_.find(p);
    if (it != exc_.end()) return it->second;
    const OpComponent* c = component_containing(p);
    if (!c) throw ContractViolation("puncture not covered by operator data");
    SparseVec col = c->correction;
    PunctureId tgt = branch_transport(c->src, c->tgt, p);
    auto& slot = col[tgt];
    slot += LaurentPoly::from(c->weight);
    if (slot.is_zero()) col.erase(tgt);
    return col;
  }

  SparseVec apply(const SparseVec& v) const {
    SparseVec out;
    for (const auto& [p, coef] : v) vec_add(out, column(p), coef);
    return out;
  }

  const OpComponent* component_containing(const PunctureId& p) const {
    for (const auto& c : comps_)
      if (branch_contains(c.src, p)) return &c;
    return nullptr;
  }

  // trivial background: every rigid block is the identity bijection with
  // weight +t^0, so the operator is I plus a finite-image correction
  bool trivial_background() const {
    for (const auto& c : comps_)
      if (!(c.src == c.tgt && c.weight.is_one())) return false;
    return true;
  }

  // the finite core: rows met by any correction data
  std::vector<PunctureId> core() const {
    std::set<PunctureId> keys;
    for (const auto& c : comps_)
      for (const auto& [p, v] : c.correction) keys.insert(p);
    for (const auto& [q, col] : exc_) {
      keys.insert(q);
      for (const auto& [p, v] : col) keys.insert(p);
    }
    return {keys.begin(), keys.end()};
  }

  // I + F view of a trivial-background operator
  Correction<PunctureId> as_correction() const {
    if (!trivial_background())
      throw ContractViolation("operator background is not trivial");
    std::vector<PunctureId> R = core();
    std::map<std::pair<PunctureId, PunctureId>, LaurentPoly> entries;
    for (const PunctureId& c : R) {
      SparseVec col = column(c);
      auto& diag = col[c];
      diag -= LaurentPoly(1);
      if (diag.is_zero()) col.erase(c);
      for (const auto& [r, v] : col) entries[{r, c}] = v;
    }
    return Correction<PunctureId>(R, entries);
  }

  LaurentPoly determinant() const { return as_correction().determinant(); }

private:
  std::map<PunctureId, SparseVec> exc_;
  std::vector<OpComponent> comps_;
};

namespace detail {

inline const OpComponent* covering_opcomponent(const std::vector<OpComponent>& comps,
                                               const BranchRef& b) {
  for (const auto& c : comps) {
    if (c.src.kind == BranchKind::full_subtree) {
      if (branch_contains(c.src, b.root)) return &c;
    } else if (b.kind == BranchKind::fibre_ray && c.src.root.v == b.root.v &&
               b.root.depth >= c.src.root.depth) {
      return &c;
    }
  }
  return nullptr;
}

inline BranchRef transport_branch(const OpComponent& c, const BranchRef& sub) {
  return BranchRef{sub.kind, branch_transport(c.src, c.tgt, sub.root)};
}

}  // namespace detail

// operator product: column_q(a*b) = a applied to column_q(b)
inline StructuredOperator multiply(const StructuredOperator& a, const StructuredOperator& b) {
  std::map<PunctureId, SparseVec> exc;
  std::vector<OpComponent> comps;
  for (const auto& [q, col] : b.exceptional_cols()) exc[q] = a.apply(col);

  for (const auto& cb : b.components()) {
    SparseVec a_of_corr = a.apply(cb.correction);
    LaurentPoly wb = LaurentPoly::from(cb.weight);
    std::vector<BranchRef> work{cb.src};
    size_t guard = 0;
    while (!work.empty()) {
      if (++guard > 100000) throw ContractViolation("operator refinement does not terminate");
      BranchRef sub = work.back();
      work.pop_back();
      BranchRef img = detail::transport_branch(cb, sub);
      if (const OpComponent* ca = detail::covering_opcomponent(a.components(), img)) {
        SparseVec corr = a_of_corr;
        vec_add(corr, ca->correction, wb);
        comps.push_back({sub, detail::transport_branch(*ca, img), cb.weight * ca->weight,
                         std::move(corr)});
        continue;
      }
      PunctureId root = sub.root;
      SparseVec col = a_of_corr;
      vec_add(col, a.column(img.root), wb);
      exc[root] = std::move(col);
      if (sub.kind == BranchKind::fibre_ray) {
        work.push_back(fibre_ray(root.v, root.depth + 1));
      } else {
        work.push_back(fibre_ray(root.v, 1));
        work.push_back(full_branch(VertexAddress::of(root.v.path + "L")));
        work.push_back(full_branch(VertexAddress::of(root.v.path + "R")));
      }
    }
  }
  return StructuredOperator(std::move(exc), std::move(comps));
}

inline bool equal(const StructuredOperator& a, const StructuredOperator& b) {
  std::set<PunctureId> probes;
  for (const auto& [p, col] : a.exceptional_cols()) probes.insert(p);
  for (const auto& [p, col] : b.exceptional_cols()) probes.insert(p);
  for (const auto& c : a.components())
    for (const auto& p : branch_probes(c.src)) probes.insert(p);
  for (const auto& c : b.components())
    for (const auto& p : branch_probes(c.src)) probes.insert(p);
  for (const auto& p : probes)
    if (a.column(p) != b.column(p)) return false;
  return true;
}

// Magnus matrix of an index-preserving automorphism as a structured operator:
// column q is the specialised Fox derivative vector of the image of gamma_q.
// Rigid blocks contribute weight t^{ind lambda} on the transported puncture
// plus the component-constant column (1-t) * fox(lambda).
inline StructuredOperator magnus_matrix(const AutFInd& alpha) {
  std::map<PunctureId, SparseVec> exc;
  for (const auto& [q, w] : alpha.exceptional()) exc[q] = fox_vector(w);
  std::vector<OpComponent> comps;
  LaurentPoly one_minus_t = LaurentPoly(1) - LaurentPoly::t();
  for (const auto& c : alpha.components()) {
    SparseVec corr;
    vec_add(corr, fox_vector(c.lambda), one_minus_t);
    long long d = c.lambda.index();
    comps.push_back({c.src, c.tgt, Monomial{1, d}, std::move(corr)});
  }
  return StructuredOperator(std::move(exc), std::move(comps));
}

}  // namespace tburau
