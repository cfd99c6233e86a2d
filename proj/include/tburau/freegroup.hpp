#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tburau/errors.hpp"
#include "tburau/trees.hpp"

namespace tburau {

// Freely reduced word in the puncture generators.
class FWord {
public:
  using Letter = std::pair<PunctureId, int>;  // exponent +1 or -1

  FWord() = default;
  static FWord gen(const PunctureId& p, int exp = 1) {
    FWord w;
    int step = exp > 0 ? 1 : -1;
    for (int i = 0; i != exp; i += step) w.push(p, step);
    return w;
  }

  const std::vector<Letter>& letters() const { return ls_; }
  bool empty() const { return ls_.empty(); }
  size_t size() const { return ls_.size(); }

  void push(const PunctureId& p, int exp) {
    if (!ls_.empty() && ls_.back().first == p && ls_.back().second == -exp) ls_.pop_back();
    else ls_.emplace_back(p, exp);
  }

  friend FWord operator*(const FWord& a, const FWord& b) {
    FWord r = a;
    for (const auto& [p, e] : b.ls_) r.push(p, e);
    return r;
  }
  FWord inverse() const {
    FWord r;
    for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) r.push(it->first, -it->second);
    return r;
  }
  FWord conjugated_by(const FWord& lam) const { return lam * *this * lam.inverse(); }

  long long index() const {  // exponent sum under gamma_p -> 1
    long long s = 0;
    for (const auto& [p, e] : ls_) s += e;
    return s;
  }

  friend bool operator==(const FWord&, const FWord&) = default;
  friend std::strong_ordering operator<=>(const FWord&, const FWord&) = default;

  std::string to_string() const {
    if (ls_.empty()) return "1";
    std::string s;
    for (const auto& [p, e] : ls_) {
      s += "g[" + p.to_string() + "]";
      if (e < 0) s += "^-1";
      s += " ";
    }
    s.pop_back();
    return s;
  }

private:
  std::vector<Letter> ls_;
};

// Rigid block of an index-preserving automorphism: on every puncture p of the
// source branch, gamma_p maps to lambda gamma_{T(p)} lambda^-1 with T the
// canonical transport onto the target branch.
struct RigidComponent {
  BranchRef src, tgt;
  FWord lambda;

  friend bool operator==(const RigidComponent&, const RigidComponent&) = default;
};

// Index-preserving automorphism of the free group on the punctures, in
// cofinitely-rigid form: finitely many exceptional generator images plus
// rigid components whose source branches partition the complement.
class AutFInd {
public:
  AutFInd() = default;  // identity on the empty structure; see identity()

  AutFInd(std::map<PunctureId, FWord> exceptional, std::vector<RigidComponent> components)
      : exc_(std::move(exceptional)), comps_(std::move(components)) {
    for (const auto& [p, w] : exc_)
      if (w.index() != 1)
        throw ContractViolation("exceptional image must have index 1");
    validate_partition();
  }

  static AutFInd identity() {
    std::vector<RigidComponent> comps;
    comps.push_back({fibre_ray(VertexAddress::v0(), 0), fibre_ray(VertexAddress::v0(), 0), FWord()});
    comps.push_back({full_branch(VertexAddress::root()), full_branch(VertexAddress::root()), FWord()});
    return AutFInd({}, std::move(comps));
  }

  const std::map<PunctureId, FWord>& exceptional() const { return exc_; }
  const std::vector<RigidComponent>& components() const { return comps_; }

  FWord image_of(const PunctureId& p) const {
    auto it = exc_.find(p);
    if (it != exc_.end()) return it->second;
    const RigidComponent* c = component_containing(p);
    if (!c) throw ContractViolation("puncture not covered by automorphism data");
    return FWord::gen(branch_transport(c->src, c->tgt, p)).conjugated_by(c->lambda);
  }

  FWord apply(const FWord& w) const {
    FWord out;
    for (const auto& [p, e] : w.letters()) {
      FWord im = image_of(p);
      out = out * (e > 0 ? im : im.inverse());
    }
    return out;
  }

  const RigidComponent* component_containing(const PunctureId& p) const {
    for (const auto& c : comps_)
      if (branch_contains(c.src, p)) return &c;
    return nullptr;
  }

private:
  // the source branches plus the exceptional keys must tile the punctures
  void validate_partition() const {
    std::vector<BranchRef> work{fibre_ray(VertexAddress::v0(), 0),
                                full_branch(VertexAddress::root())};
    size_t guard = 0;
    std::set<PunctureId> seen_exc;
    std::set<size_t> used;
    while (!work.empty()) {
      if (++guard > 100000) throw ContractViolation("automorphism data is not cofinitely rigid");
      BranchRef b = work.back();
      work.pop_back();
      bool matched = false;
      for (size_t i = 0; i < comps_.size(); ++i)
        if (comps_[i].src == b) {
          if (used.count(i)) throw ContractViolation("duplicate component source");
          used.insert(i);
          matched = true;
          break;
        }
      if (matched) continue;
      bool fibre_piece = false;
      if (b.kind == BranchKind::full_subtree) {
        BranchRef ray0 = fibre_ray(b.root.v, 0);
        for (size_t i = 0; i < comps_.size(); ++i)
          if (comps_[i].src == ray0) fibre_piece = true;
      }
      if (fibre_piece) {
        work.push_back(fibre_ray(b.root.v, 0));
        work.push_back(full_branch(VertexAddress::of(b.root.v.path + "L")));
        work.push_back(full_branch(VertexAddress::of(b.root.v.path + "R")));
        continue;
      }
      if (!exc_.count(b.root))
        throw ContractViolation("puncture " + b.root.to_string() +
                                " is neither exceptional nor rigidly covered");
      seen_exc.insert(b.root);
      if (b.kind == BranchKind::fibre_ray) {
        work.push_back(fibre_ray(b.root.v, b.root.depth + 1));
      } else {
        work.push_back(fibre_ray(b.root.v, 1));
        work.push_back(full_branch(VertexAddress::of(b.root.v.path + "L")));
        work.push_back(full_branch(VertexAddress::of(b.root.v.path + "R")));
      }
    }
    if (seen_exc.size() != exc_.size())
      throw ContractViolation("exceptional puncture lies inside a rigid component");
    if (used.size() != comps_.size())
      throw ContractViolation("component source unreachable in the partition walk");
  }

  std::map<PunctureId, FWord> exc_;
  std::vector<RigidComponent> comps_;

  friend AutFInd compose(const AutFInd& a, const AutFInd& b);
};

namespace detail {

inline BranchRef transport_branch(const RigidComponent& c, const BranchRef& sub) {
  return BranchRef{sub.kind, branch_transport(c.src, c.tgt, sub.root)};
}

// does some single component of `comps` rigidly cover the whole branch b?
inline const RigidComponent* covering_component(const std::vector<RigidComponent>& comps,
                                                const BranchRef& b) {
  for (const auto& c : comps) {
    if (c.src.kind == BranchKind::full_subtree) {
      if (branch_contains(c.src, b.root)) return &c;  // nested either kind
    } else if (b.kind == BranchKind::fibre_ray && c.src.root.v == b.root.v &&
               b.root.depth >= c.src.root.depth) {
      return &c;
    }
  }
  return nullptr;
}

}  // namespace detail

// (a o b): gamma_q maps to a(b(gamma_q)); the result is re-expressed in
// exceptional-plus-rigid form by refining b's components until each
// transported piece sits inside a single component of a.
inline AutFInd compose(const AutFInd& a, const AutFInd& b) {
  std::map<PunctureId, FWord> exc;
  std::vector<RigidComponent> comps;
  for (const auto& [p, w] : b.exceptional()) exc[p] = a.apply(w);

  for (const auto& cb : b.components()) {
    FWord alam = a.apply(cb.lambda);
    std::vector<BranchRef> work{cb.src};
    size_t guard = 0;
    while (!work.empty()) {
      if (++guard > 100000) throw ContractViolation("composition refinement does not terminate");
      BranchRef sub = work.back();
      work.pop_back();
      BranchRef img = detail::transport_branch(cb, sub);
      if (const RigidComponent* ca = detail::covering_component(a.components(), img)) {
        comps.push_back({sub, detail::transport_branch(*ca, img), alam * ca->lambda});
        continue;
      }
      // the image root is exceptional for a, or the piece straddles a's
      // structure: peel the root and recurse into sub-branches
      PunctureId root = sub.root;
      exc[root] = a.apply(FWord::gen(img.root).conjugated_by(cb.lambda));
      if (sub.kind == BranchKind::fibre_ray) {
        work.push_back(fibre_ray(root.v, root.depth + 1));
      } else {
        work.push_back(fibre_ray(root.v, 1));
        work.push_back(full_branch(VertexAddress::of(root.v.path + "L")));
        work.push_back(full_branch(VertexAddress::of(root.v.path + "R")));
      }
    }
  }
  return AutFInd(std::move(exc), std::move(comps));
}

namespace detail {

// write w as u * gamma_m * u^-1 if it is a conjugate of a positive generator
inline std::optional<std::pair<FWord, PunctureId>> as_conjugate_of_generator(const FWord& w) {
  const auto& ls = w.letters();
  if (ls.size() % 2 == 0) return std::nullopt;
  size_t j = ls.size() / 2;
  if (ls[j].second != 1) return std::nullopt;
  FWord u;
  for (size_t i = 0; i < j; ++i) u.push(ls[i].first, ls[i].second);
  if (FWord::gen(ls[j].first).conjugated_by(u) != w) return std::nullopt;
  return std::make_pair(u, ls[j].first);
}

}  // namespace detail

// Coarsen the data: absorb exceptional punctures back into rigid components
// whenever their images already follow the adjacent rigid pattern. Keeps
// composites small and makes braid-like structure visible.
inline AutFInd simplify(const AutFInd& a) {
  std::map<PunctureId, FWord> exc = a.exceptional();
  std::vector<RigidComponent> comps = a.components();
  auto find_comp = [&comps](const BranchRef& src) -> int {
    for (size_t i = 0; i < comps.size(); ++i)
      if (comps[i].src == src) return static_cast<int>(i);
    return -1;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    // deepest exceptional punctures first
    std::vector<PunctureId> keys;
    for (const auto& [p, w] : exc) keys.push_back(p);
    std::sort(keys.begin(), keys.end(), [](const PunctureId& x, const PunctureId& y) {
      return x.geodesic_length() > y.geodesic_length();
    });
    for (const PunctureId& p : keys) {
      auto conj = detail::as_conjugate_of_generator(exc.at(p));
      if (!conj) continue;
      const auto& [u, m] = *conj;
      if (p.depth > 0 || p.v.is_v0) {
        // candidate fibre-ray absorption
        int ci = find_comp(fibre_ray(p.v, p.depth + 1));
        if (ci < 0) continue;
        const RigidComponent& c = comps[ci];
        if (c.tgt.kind != BranchKind::fibre_ray) continue;
        if (!(c.tgt.root.v == m.v && c.tgt.root.depth == m.depth + 1)) continue;
        if (FWord::gen(m).conjugated_by(c.lambda) != exc.at(p)) continue;
        RigidComponent merged{fibre_ray(p.v, p.depth), fibre_ray(m.v, m.depth), c.lambda};
        comps.erase(comps.begin() + ci);
        comps.push_back(merged);
        exc.erase(p);
        changed = true;
      } else {
        // candidate full-branch absorption at a tree vertex
        if (m.depth != 0 || m.v.is_v0) continue;
        int cf = find_comp(fibre_ray(p.v, 1));
        int cl = find_comp(full_branch(VertexAddress::of(p.v.path + "L")));
        int cr = find_comp(full_branch(VertexAddress::of(p.v.path + "R")));
        if (cf < 0 || cl < 0 || cr < 0) continue;
        const RigidComponent &f = comps[cf], &l = comps[cl], &r = comps[cr];
        if (!(f.tgt == fibre_ray(m.v, 1) &&
              l.tgt == full_branch(VertexAddress::of(m.v.path + "L")) &&
              r.tgt == full_branch(VertexAddress::of(m.v.path + "R"))))
          continue;
        if (f.lambda != l.lambda || f.lambda != r.lambda) continue;
        if (FWord::gen(m).conjugated_by(f.lambda) != exc.at(p)) continue;
        RigidComponent merged{full_branch(p.v), full_branch(m.v), f.lambda};
        std::vector<int> drop{cf, cl, cr};
        std::sort(drop.rbegin(), drop.rend());
        for (int d : drop) comps.erase(comps.begin() + d);
        comps.push_back(merged);
        exc.erase(p);
        changed = true;
      }
      if (changed) break;
    }
    if (changed) continue;
    // merge a fibre ray into the full branch at its vertex when both exist
    for (size_t i = 0; i < comps.size() && !changed; ++i) {
      const RigidComponent& ray = comps[i];
      if (ray.src.kind != BranchKind::fibre_ray || ray.src.root.depth != 0 ||
          ray.src.root.v.is_v0)
        continue;
      if (ray.tgt.kind != BranchKind::fibre_ray || ray.tgt.root.depth != 0 ||
          ray.tgt.root.v.is_v0)
        continue;
      int cl = find_comp(full_branch(VertexAddress::of(ray.src.root.v.path + "L")));
      int cr = find_comp(full_branch(VertexAddress::of(ray.src.root.v.path + "R")));
      if (cl < 0 || cr < 0) continue;
      const RigidComponent &l = comps[cl], &r = comps[cr];
      if (!(l.tgt == full_branch(VertexAddress::of(ray.tgt.root.v.path + "L")) &&
            r.tgt == full_branch(VertexAddress::of(ray.tgt.root.v.path + "R"))))
        continue;
      if (l.lambda != ray.lambda || r.lambda != ray.lambda) continue;
      RigidComponent merged{full_branch(ray.src.root.v), full_branch(ray.tgt.root.v), ray.lambda};
      std::vector<int> drop{static_cast<int>(i), cl, cr};
      std::sort(drop.rbegin(), drop.rend());
      for (int d : drop) comps.erase(comps.begin() + d);
      comps.push_back(merged);
      changed = true;
    }
  }
  return AutFInd(std::move(exc), std::move(comps));
}

// germ-level equality via probe punctures: exceptional keys, component roots,
// and a few deeper probes per branch pin a rigid block completely
inline bool equal(const AutFInd& a, const AutFInd& b) {
  std::set<PunctureId> probes;
  for (const auto& [p, w] : a.exceptional()) probes.insert(p);
  for (const auto& [p, w] : b.exceptional()) probes.insert(p);
  for (const auto& c : a.components())
    for (const auto& p : branch_probes(c.src)) probes.insert(p);
  for (const auto& c : b.components())
    for (const auto& p : branch_probes(c.src)) probes.insert(p);
  for (const auto& p : probes)
    if (a.image_of(p) != b.image_of(p)) return false;
  return true;
}

}  // namespace tburau
