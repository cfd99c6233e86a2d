#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tburau/errors.hpp"
#include "tburau/matrix.hpp"

namespace tburau {

// Vertex of the regular 3-valent tree: "" is the base vertex, otherwise one
// branch digit in {0,1,2} followed by a binary string.
using TAddr = std::string;

inline bool taddr_valid(const TAddr& a) {
  for (size_t i = 0; i < a.size(); ++i) {
    char lo = '0', hi = i == 0 ? '2' : '1';
    if (a[i] < lo || a[i] > hi) return false;
  }
  return true;
}

inline TAddr taddr_parent(const TAddr& a) {
  if (a.empty()) throw DimensionError("base vertex has no parent");
  return a.substr(0, a.size() - 1);
}

inline std::vector<TAddr> taddr_children(const TAddr& a) {
  if (a.empty()) return {"0", "1", "2"};
  return {a + "0", a + "1"};
}

// deterministic global vertex order: breadth first, left to right
inline bool taddr_less(const TAddr& x, const TAddr& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

// Finite-depth automorphism of the rooted binary branch below a component
// root: the set of relative addresses whose two children are swapped.
// Identity beyond depth 1 + length of the longest swap address.
struct CompIso {
  std::set<std::string> swaps;

  int depth() const {
    size_t d = 0;
    for (const auto& s : swaps) d = std::max(d, s.size() + 1);
    return static_cast<int>(d);
  }
  std::string map(const std::string& rel) const {
    std::string out;
    out.reserve(rel.size());
    std::string prefix;
    for (char c : rel) {
      char b = c;
      if (swaps.count(prefix)) b = c == '0' ? '1' : '0';
      out += b;
      prefix += c;  // swaps are indexed by source prefixes
    }
    return out;
  }
  CompIso inverse() const {
    // the inverse swaps at the image prefixes
    CompIso inv;
    for (const auto& s : swaps) inv.swaps.insert(map(s));
    return inv;
  }
  // this after other: x -> map(other.map(x))
  friend CompIso composed(const CompIso& second, const CompIso& first) {
    CompIso out;
    std::set<std::string> prefixes = first.swaps;
    for (const auto& s : second.swaps) prefixes.insert(s);  // candidate depths
    int d = 0;
    for (const auto& s : prefixes) d = std::max<int>(d, static_cast<int>(s.size()) + 1);
    // enumerate all source prefixes up to the combined depth
    std::vector<std::string> all{""};
    for (int len = 0; len < d; ++len) {
      std::vector<std::string> next;
      for (const auto& p : all)
        if (static_cast<int>(p.size()) == len) {
          next.push_back(p + "0");
          next.push_back(p + "1");
        }
      for (const auto& n : next) all.push_back(n);
    }
    for (const auto& p : all) {
      bool s1 = first.swaps.count(p) > 0;
      bool s2 = second.swaps.count(first.map(p)) > 0;
      if (s1 != s2) out.swaps.insert(p);
    }
    return out;
  }
  friend bool operator==(const CompIso&, const CompIso&) = default;
};

// Finite subtree of the trivalent tree containing the base vertex, stored as
// its vertex set (parent-closed).
using Subtree = std::set<TAddr>;

inline bool subtree_valid(const Subtree& t) {
  if (!t.count("")) return false;
  for (const auto& v : t) {
    if (!taddr_valid(v)) return false;
    if (!v.empty() && !t.count(taddr_parent(v))) return false;
  }
  return true;
}

// component roots: vertices just outside the subtree
inline std::vector<TAddr> frontier(const Subtree& t) {
  std::vector<TAddr> out;
  for (const auto& v : t)
    for (const auto& c : taddr_children(v))
      if (!t.count(c)) out.push_back(c);
  std::sort(out.begin(), out.end(), taddr_less);
  return out;
}

// Computable fragment of a Neretin spheromorphism: a bijection between the
// complements of two finite subtrees that is a tree isomorphism on each
// component, with finite-depth component data.
class Spheromorphism {
public:
  Spheromorphism() : src_{""}, tgt_{""} {
    for (const auto& r : frontier(src_)) {
      beta_[r] = r;
      comps_[r] = CompIso{};
    }
  }

  Spheromorphism(Subtree src, Subtree tgt, std::map<TAddr, TAddr> beta,
                 std::map<TAddr, CompIso> comps)
      : src_(std::move(src)), tgt_(std::move(tgt)), beta_(std::move(beta)),
        comps_(std::move(comps)) {
    if (!subtree_valid(src_) || !subtree_valid(tgt_))
      throw DimensionError("spheromorphism needs parent-closed subtrees containing the base");
    auto fs = frontier(src_), ft = frontier(tgt_);
    if (fs.size() != ft.size()) throw DimensionError("component counts differ");
    std::set<TAddr> image;
    for (const auto& r : fs) {
      auto it = beta_.find(r);
      if (it == beta_.end()) throw DimensionError("component root missing from beta");
      image.insert(it->second);
      if (!comps_.count(r)) comps_[r] = CompIso{};
    }
    std::set<TAddr> ftset(ft.begin(), ft.end());
    if (image != ftset) throw DimensionError("beta is not a bijection onto the target frontier");
  }

  static Spheromorphism identity() { return Spheromorphism(); }

  const Subtree& source_tree() const { return src_; }
  const Subtree& target_tree() const { return tgt_; }
  const std::map<TAddr, TAddr>& beta() const { return beta_; }
  const std::map<TAddr, CompIso>& comps() const { return comps_; }

  // image of a vertex outside the source tree
  TAddr apply(const TAddr& v) const {
    if (src_.count(v)) throw DimensionError("vertex inside the removed source tree");
    TAddr r = v;
    std::vector<char> rel;
    while (!beta_.count(r)) {
      if (r.empty()) throw InvariantViolation("no governing component root");
      rel.push_back(r.back());
      r = taddr_parent(r);
    }
    std::string relstr(rel.rbegin(), rel.rend());
    return beta_.at(r) + comps_.at(r).map(relstr);
  }

  Spheromorphism inverse() const {
    std::map<TAddr, TAddr> ib;
    std::map<TAddr, CompIso> ic;
    for (const auto& [r, s] : beta_) {
      ib[s] = r;
      ic[s] = comps_.at(r).inverse();
    }
    return Spheromorphism(tgt_, src_, std::move(ib), std::move(ic));
  }

  // grow the source tree to cover U (and the target by the image data)
  Spheromorphism expanded_source(const Subtree& U) const {
    Subtree src = src_;
    for (const auto& v : U) src.insert(v);
    if (!subtree_valid(src)) throw DimensionError("expansion is not a subtree");
    Subtree tgt = tgt_;
    std::map<TAddr, TAddr> beta;
    std::map<TAddr, CompIso> comps;
    // image of everything newly swallowed
    for (const auto& v : src)
      if (!src_.count(v)) tgt.insert(apply(v));
    for (const auto& r : frontier(src)) {
      // r lies outside the old source tree too, so apply() works
      TAddr img = apply(r);
      beta[r] = img;
      // induced iso: the suffix of the governing component's data
      TAddr gov = r;
      std::vector<char> rel;
      while (!beta_.count(gov)) {
        rel.push_back(gov.back());
        gov = taddr_parent(gov);
      }
      std::string relstr(rel.rbegin(), rel.rend());
      const CompIso& big = comps_.at(gov);
      CompIso sub;
      for (const auto& s : big.swaps)
        if (s.size() >= relstr.size() && s.compare(0, relstr.size(), relstr) == 0)
          sub.swaps.insert(s.substr(relstr.size()));
      comps[r] = sub;
    }
    return Spheromorphism(std::move(src), std::move(tgt), std::move(beta), std::move(comps));
  }

private:
  Subtree src_, tgt_;
  std::map<TAddr, TAddr> beta_;
  std::map<TAddr, CompIso> comps_;
};

// germ of g after h
inline Spheromorphism sphero_compose(const Spheromorphism& g, const Spheromorphism& h) {
  // common middle: h's target and g's source enlarged to their union
  Subtree U = g.source_tree();
  for (const auto& v : h.target_tree()) U.insert(v);
  Spheromorphism hh = h.inverse().expanded_source(U).inverse();
  Spheromorphism gg = g.expanded_source(U);
  std::map<TAddr, TAddr> beta;
  std::map<TAddr, CompIso> comps;
  for (const auto& [r, mid] : hh.beta()) {
    beta[r] = gg.beta().at(mid);
    comps[r] = composed(gg.comps().at(mid), hh.comps().at(r));
  }
  return Spheromorphism(hh.source_tree(), gg.target_tree(), std::move(beta), std::move(comps));
}

inline bool germ_equal(const Spheromorphism& a, const Spheromorphism& b) {
  Subtree U = a.source_tree();
  for (const auto& v : b.source_tree()) U.insert(v);
  Spheromorphism ea = a.expanded_source(U), eb = b.expanded_source(U);
  return ea.beta() == eb.beta() && ea.comps() == eb.comps();
}

// index of a Fredholm tree automorphism: removed-source minus removed-target
// vertex counts; identically zero on the trivalent tree
inline long long fredholm_index(long long removed_source, long long removed_target) {
  return removed_source - removed_target;
}
inline long long fredholm_index(const Spheromorphism& g) {
  return fredholm_index(static_cast<long long>(g.source_tree().size()),
                        static_cast<long long>(g.target_tree().size()));
}

// Total vertex bijection inducing the germ: the spheromorphism outside the
// removed trees plus the canonical order-preserving filling between them.
struct PAutElement {
  Spheromorphism germ;
  std::map<TAddr, TAddr> filling;

  TAddr apply(const TAddr& v) const {
    auto it = filling.find(v);
    if (it != filling.end()) return it->second;
    return germ.apply(v);
  }
};

inline PAutElement lift_to_paut(const Spheromorphism& g) {
  if (fredholm_index(g) != 0)
    throw ContractViolation("only index-0 germs lift to vertex bijections");
  std::vector<TAddr> src(g.source_tree().begin(), g.source_tree().end());
  std::vector<TAddr> tgt(g.target_tree().begin(), g.target_tree().end());
  std::sort(src.begin(), src.end(), taddr_less);
  std::sort(tgt.begin(), tgt.end(), taddr_less);
  PAutElement out{g, {}};
  for (size_t i = 0; i < src.size(); ++i) out.filling[src[i]] = tgt[i];
  return out;
}

// parity of a finitely supported permutation given as a map (0 = even)
inline int permutation_parity(const std::map<TAddr, TAddr>& perm) {
  std::set<TAddr> keys;
  for (const auto& [k, v] : perm) {
    keys.insert(k);
    keys.insert(v);
  }
  for (const auto& k : keys)
    if (!perm.count(k)) throw ContractViolation("permutation support is not closed");
  std::set<TAddr> seen;
  int parity = 0;
  for (const auto& k : keys) {
    if (seen.count(k)) continue;
    int len = 0;
    TAddr cur = k;
    while (!seen.count(cur)) {
      seen.insert(cur);
      cur = perm.at(cur);
      ++len;
    }
    parity ^= (len - 1) & 1;
  }
  return parity;
}

// determinant of the permutation operator on the span of the support
inline long long perm_operator_determinant(const std::map<TAddr, TAddr>& perm) {
  std::set<TAddr> keyset;
  for (const auto& [k, v] : perm) {
    keyset.insert(k);
    keyset.insert(v);
  }
  std::vector<TAddr> keys(keyset.begin(), keyset.end());
  if (keys.size() > 24) throw DimensionError("permutation support too large for dense det");
  std::vector<std::vector<LaurentPoly>> m(keys.size(), std::vector<LaurentPoly>(keys.size()));
  for (size_t j = 0; j < keys.size(); ++j) {
    auto it = perm.find(keys[j]);
    if (it == perm.end()) throw ContractViolation("permutation support is not closed");
    size_t i = static_cast<size_t>(
        std::lower_bound(keys.begin(), keys.end(), it->second) - keys.begin());
    if (i >= keys.size() || keys[i] != it->second)
      throw ContractViolation("permutation image leaves the support");
    m[i][j] = LaurentPoly(1);
  }
  LaurentPoly det = det_small(m);
  auto mono = det.as_monomial();
  if (!mono || mono->exponent != 0)
    throw InvariantViolation("permutation determinant is not a sign");
  return mono->sign;
}

namespace detail {

// the composite of the three lifts, evaluated on a vertex
inline TAddr lift_defect_apply(const PAutElement& lg, const PAutElement& lh,
                               const PAutElement& lgh_inv, const TAddr& v) {
  return lg.apply(lh.apply(lgh_inv.apply(v)));
}

inline PAutElement paut_inverse(const PAutElement& l) {
  PAutElement out{l.germ.inverse(), {}};
  for (const auto& [k, v] : l.filling) out.filling[v] = k;
  return out;
}

}  // namespace detail

// Sign in Z/2 of the finitely supported permutation
// lift(g) lift(h) lift(gh)^-1, optionally with the three lifts perturbed by
// finitely supported permutations (even perturbations leave the value fixed).
inline int signature_cocycle_perturbed(const Spheromorphism& g, const Spheromorphism& h,
                                       const std::map<TAddr, TAddr>& pg,
                                       const std::map<TAddr, TAddr>& ph,
                                       const std::map<TAddr, TAddr>& pgh) {
  Spheromorphism gh = sphero_compose(g, h);
  PAutElement lg = lift_to_paut(g), lh = lift_to_paut(h), lgh = lift_to_paut(gh);
  // perturbed lifts act as l'(v) = p(l(v))
  auto apply_perturbed = [](const PAutElement& l, const std::map<TAddr, TAddr>& p,
                            const TAddr& v) {
    TAddr w = l.apply(v);
    auto it = p.find(w);
    return it == p.end() ? w : it->second;
  };
  auto inv_map = [](const std::map<TAddr, TAddr>& p) {
    std::map<TAddr, TAddr> out;
    for (const auto& [k, v] : p) out[v] = k;
    return out;
  };
  PAutElement lgh_i = detail::paut_inverse(lgh);
  PAutElement lh_i = detail::paut_inverse(lh), lg_i = detail::paut_inverse(lg);
  std::map<TAddr, TAddr> pgh_i = inv_map(pgh), ph_i = inv_map(ph), pg_i = inv_map(pg);
  auto pmap = [](const std::map<TAddr, TAddr>& p, const TAddr& v) {
    auto it = p.find(v);
    return it == p.end() ? v : it->second;
  };
  // total = pg o lg o ph o lh o (pgh o lgh)^-1
  auto total = [&](const TAddr& v) {
    TAddr x = pmap(pgh_i, v);
    x = lgh_i.apply(x);
    x = apply_perturbed(lh, ph, x);
    x = apply_perturbed(lg, pg, x);
    return x;
  };

  // Deviation regions of each stage, pushed back to the input coordinate.
  // The composite is the identity germ, so any moved vertex passes through a
  // filling region or a perturbation support at some stage. Stage order
  // matches total: pgh^-1, lgh^-1, lh, ph, lg, pg.
  std::set<TAddr> seeds;
  auto back1 = [&](const TAddr& x1) { return pmap(pgh, x1); };
  auto back2 = [&](const TAddr& x2) { return back1(lgh.apply(x2)); };
  auto back3 = [&](const TAddr& x3) { return back2(lh_i.apply(x3)); };
  auto back4 = [&](const TAddr& x4) { return back3(pmap(ph_i, x4)); };
  auto back5 = [&](const TAddr& x5) { return back4(lg_i.apply(x5)); };
  for (const auto& [k, v] : pgh) seeds.insert(k);
  for (const auto& v : gh.target_tree()) seeds.insert(back1(v));
  for (const auto& v : h.source_tree()) seeds.insert(back2(v));
  for (const auto& [k, v] : ph) seeds.insert(back3(k));
  for (const auto& v : g.source_tree()) seeds.insert(back4(v));
  for (const auto& [k, v] : pg) seeds.insert(back5(k));

  // close the seed set under the total map (orbits are finite)
  std::map<TAddr, TAddr> moved;
  std::vector<TAddr> work(seeds.begin(), seeds.end());
  std::set<TAddr> visited = seeds;
  size_t guard = 0;
  while (!work.empty()) {
    if (++guard > 100000) throw InvariantViolation("lift defect support closure runaway");
    TAddr v = work.back();
    work.pop_back();
    TAddr w = total(v);
    if (w == v) continue;
    moved[v] = w;
    if (!visited.count(w)) {
      visited.insert(w);
      work.push_back(w);
    }
  }
  for (const auto& [k, v] : moved)
    if (!moved.count(v))
      throw InvariantViolation("lift defect support is not closed");
  return permutation_parity(moved);
}

inline int signature_cocycle(const Spheromorphism& g, const Spheromorphism& h) {
  return signature_cocycle_perturbed(g, h, {}, {}, {});
}

// ---- random generators for the test suites ---------------------------------

inline Subtree random_subtree(std::mt19937_64& rng, int max_extra) {
  Subtree t{""};
  std::uniform_int_distribution<int> extra(0, max_extra);
  int n = extra(rng);
  for (int i = 0; i < n; ++i) {
    auto fr = frontier(t);
    std::uniform_int_distribution<size_t> pick(0, fr.size() - 1);
    t.insert(fr[pick(rng)]);
  }
  return t;
}

inline CompIso random_comp_iso(std::mt19937_64& rng, int max_depth) {
  CompIso iso;
  std::uniform_int_distribution<int> coin(0, 3);
  std::vector<std::string> addrs{""};
  for (int len = 1; len < max_depth; ++len) {
    std::vector<std::string> next;
    for (const auto& a : addrs)
      if (static_cast<int>(a.size()) + 1 == len) {
        next.push_back(a + "0");
        next.push_back(a + "1");
      }
    addrs.insert(addrs.end(), next.begin(), next.end());
  }
  for (const auto& a : addrs)
    if (coin(rng) == 0) iso.swaps.insert(a);
  return iso;
}

inline Spheromorphism random_spheromorphism(std::mt19937_64& rng, int max_extra = 3,
                                            int max_depth = 3) {
  Subtree src = random_subtree(rng, max_extra);
  // the target needs the same vertex count for matching frontier sizes
  Subtree tgt{""};
  while (tgt.size() < src.size()) {
    auto fr = frontier(tgt);
    std::uniform_int_distribution<size_t> pick(0, fr.size() - 1);
    tgt.insert(fr[pick(rng)]);
  }
  auto fs = frontier(src), ft = frontier(tgt);
  std::shuffle(ft.begin(), ft.end(), rng);
  std::map<TAddr, TAddr> beta;
  std::map<TAddr, CompIso> comps;
  for (size_t i = 0; i < fs.size(); ++i) {
    beta[fs[i]] = ft[i];
    comps[fs[i]] = random_comp_iso(rng, max_depth);
  }
  return Spheromorphism(std::move(src), std::move(tgt), std::move(beta), std::move(comps));
}

inline std::map<TAddr, TAddr> random_finite_permutation(std::mt19937_64& rng, int max_size,
                                                        bool even_only = false) {
  Subtree ball = random_subtree(rng, max_size);
  std::vector<TAddr> keys(ball.begin(), ball.end());
  std::vector<TAddr> img = keys;
  std::shuffle(img.begin(), img.end(), rng);
  std::map<TAddr, TAddr> p;
  for (size_t i = 0; i < keys.size(); ++i)
    if (keys[i] != img[i]) p[keys[i]] = img[i];
  // close the support
  std::map<TAddr, TAddr> full;
  for (size_t i = 0; i < keys.size(); ++i) full[keys[i]] = img[i];
  std::map<TAddr, TAddr> trimmed;
  for (const auto& [k, v] : full)
    if (k != v) trimmed[k] = v;
  if (even_only && permutation_parity(trimmed) == 1 && keys.size() >= 2) {
    // fix the parity with one extra transposition on two fresh vertices
    TAddr a = keys[0] + "000000", b = keys[0] + "000001";
    trimmed[a] = b;
    trimmed[b] = a;
  }
  return trimmed;
}

}  // namespace tburau
