#pragma once

#include <functional>
#include <set>

#include "tburau/thompson.hpp"

namespace tburau {

// Discrete Godbillon-Vey cocycle on T: the determinant sum
//   gv(g,h) = sum_x | log2 h'_r    log2 (gh)'_r |
//             |       Dlog2 h'_r  Dlog2 (gh)'_r | (x)
// taken over the finitely many x where either jump row is nonzero.
// Composition convention: (g o h)(x) = phi_g(phi_h(x)).
inline long long gv(const TElement& g, const TElement& h) {
  PLMap mh = to_plmap(h);
  PLMap mgh = to_plmap(compose(g, h));
  std::set<Dyadic> points;
  for (const auto& x : mh.slope_jump_points()) points.insert(x);
  for (const auto& x : mgh.slope_jump_points()) points.insert(x);
  long long total = 0;
  for (const Dyadic& x : points) {
    auto sh = mh.slopes_at(x);
    auto sgh = mgh.slopes_at(x);
    total += static_cast<long long>(sh.log_right) * sgh.jump -
             static_cast<long long>(sgh.log_right) * sh.jump;
  }
  return total;
}

// inhomogeneous 2-cocycle defect; identically zero for gv
inline long long gv_defect(const TElement& g, const TElement& h, const TElement& k) {
  return gv(h, k) - gv(compose(g, h), k) + gv(g, compose(h, k)) - gv(g, h);
}

// Restriction invariant of a 2-cocycle c on the cyclic subgroup generated by
// r (of exact order n): sum_{i<n} c(r, r^i) mod n. Coboundaries contribute
// n*b(r), so the residue only depends on the class.
inline long long cyclic_class_residue(
    const std::function<long long(const TElement&, const TElement&)>& c,
    const TElement& r, int n) {
  if (n <= 0) throw OrderError("order must be positive");
  TElement p = TElement::identity();
  for (int i = 1; i < n; ++i) {
    p = compose(r, p);
    if (p.is_identity()) throw OrderError("element order divides a proper divisor of n");
  }
  p = compose(r, p);
  if (!p.is_identity()) throw OrderError("element does not have order n");

  long long total = 0;
  TElement ri = TElement::identity();
  for (int i = 0; i < n; ++i) {
    total += c(r, ri);
    ri = compose(r, ri);
  }
  return ((total % n) + n) % n;
}

}  // namespace tburau
