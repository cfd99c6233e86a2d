#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tburau/neretin.hpp"

using namespace tburau;

namespace {

// all vertices within the given depth of the base
std::vector<TAddr> ball(int depth) {
  std::vector<TAddr> out{""};
  size_t head = 0;
  while (head < out.size()) {
    TAddr v = out[head++];
    if (static_cast<int>(v.size()) >= depth) continue;
    for (const auto& c : taddr_children(v)) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("component isomorphisms") {
  CompIso id;
  CHECK(id.map("0110") == "0110");
  CompIso s;
  s.swaps = {"", "1"};
  CHECK(s.map("0") == "1");
  CHECK(s.map("1") == "0");
  // swaps are indexed by source prefixes: "" flips the first letter and the
  // source prefix "1" flips the following one
  CHECK(s.map("10") == "01");
  CHECK(s.map("11") == "00");
  CHECK(s.depth() == 2);

  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 50; ++iter) {
    CompIso a = random_comp_iso(rng, 3), b = random_comp_iso(rng, 3);
    CompIso ai = a.inverse();
    CHECK(composed(ai, a) == CompIso{});
    CHECK(composed(a, ai) == CompIso{});
    // composition acts correctly on addresses
    for (const auto& x : {"000", "010", "111", "1011"})
      CHECK(composed(a, b).map(x) == a.map(b.map(x)));
  }
}

TEST_CASE("subtrees and frontiers") {
  Subtree t{""};
  CHECK(subtree_valid(t));
  CHECK(frontier(t) == std::vector<TAddr>({"0", "1", "2"}));
  t.insert("1");
  CHECK(frontier(t).size() == 4);  // |frontier| = |tree| + 2
  t.insert("10");
  CHECK(frontier(t).size() == 5);
  CHECK(!subtree_valid(Subtree{"", "10"}));
  CHECK(!subtree_valid(Subtree{"0"}));

  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 30; ++iter) {
    Subtree s = random_subtree(rng, 6);
    CHECK(subtree_valid(s));
    CHECK(frontier(s).size() == s.size() + 2);
  }
}

TEST_CASE("spheromorphism apply and inverse") {
  Spheromorphism id;
  CHECK(id.apply("012") == "012");
  CHECK(fredholm_index(id) == 0);

  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    Spheromorphism g = random_spheromorphism(rng);
    CHECK(fredholm_index(g) == 0);
    Spheromorphism gi = g.inverse();
    for (const auto& v : ball(5)) {
      if (g.source_tree().count(v)) continue;
      TAddr w = g.apply(v);
      CHECK(gi.apply(w) == v);
    }
    CHECK(germ_equal(sphero_compose(g, gi), Spheromorphism::identity()));
    CHECK(germ_equal(sphero_compose(gi, g), Spheromorphism::identity()));
    CHECK(germ_equal(sphero_compose(g, Spheromorphism::identity()), g));
    CHECK(germ_equal(sphero_compose(Spheromorphism::identity(), g), g));
  }
}

TEST_CASE("composition is the pointwise composite") {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 30; ++iter) {
    Spheromorphism g = random_spheromorphism(rng), h = random_spheromorphism(rng);
    Spheromorphism gh = sphero_compose(g, h);
    for (const auto& v : ball(5)) {
      if (h.source_tree().count(v) || gh.source_tree().count(v)) continue;
      TAddr w = h.apply(v);
      if (g.source_tree().count(w)) continue;
      CHECK(gh.apply(v) == g.apply(w));
    }
  }
}

TEST_CASE("disjoint depth-1 leaf swaps commute") {
  // swaps below different branch roots, brute-forced on a depth-4 ball
  Subtree base{""};
  auto mk = [&](const TAddr& where) {
    std::map<TAddr, TAddr> beta;
    std::map<TAddr, CompIso> comps;
    for (const auto& r : frontier(base)) {
      beta[r] = r;
      comps[r] = CompIso{};
      if (r == where) comps[r].swaps.insert("");
    }
    return Spheromorphism(base, base, beta, comps);
  };
  Spheromorphism s0 = mk("0"), s1 = mk("1");
  Spheromorphism a = sphero_compose(s0, s1), b = sphero_compose(s1, s0);
  CHECK(germ_equal(a, b));
  for (const auto& v : ball(4)) {
    if (v.empty()) continue;
    CHECK(a.apply(v) == b.apply(v));
  }
}

TEST_CASE("fredholm index") {
  CHECK(fredholm_index(4, 4) == 0);
  CHECK(fredholm_index(3, 5) == -2);
  // additivity along composition on matched truncations
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 20; ++iter) {
    Spheromorphism g = random_spheromorphism(rng), h = random_spheromorphism(rng);
    CHECK(fredholm_index(sphero_compose(g, h)) == fredholm_index(g) + fredholm_index(h));
  }
}

TEST_CASE("canonical lifts") {
  PAutElement id = lift_to_paut(Spheromorphism::identity());
  CHECK(id.filling.at("") == "");
  CHECK(id.apply("201") == "201");

  // a 3-vertex removal gets the order-preserving filling
  Subtree src{"", "0"}, tgt{"", "2"};
  std::map<TAddr, TAddr> beta;
  std::map<TAddr, CompIso> comps;
  auto fs = frontier(src), ft = frontier(tgt);
  for (size_t i = 0; i < fs.size(); ++i) beta[fs[i]] = ft[i];
  Spheromorphism g(src, tgt, beta, comps);
  PAutElement l = lift_to_paut(g);
  CHECK(l.filling.at("") == "");
  CHECK(l.filling.at("0") == "2");
  // total map is a bijection on a ball
  std::set<TAddr> images;
  for (const auto& v : ball(4)) images.insert(l.apply(v));
  CHECK(images.size() == ball(4).size());
}

TEST_CASE("permutation parity and operator determinant") {
  CHECK(permutation_parity({}) == 0);
  CHECK(perm_operator_determinant({}) == 1);
  std::map<TAddr, TAddr> swap{{"0", "1"}, {"1", "0"}};
  CHECK(permutation_parity(swap) == 1);
  CHECK(perm_operator_determinant(swap) == -1);
  // overlapping transpositions: (01)(12) = 3-cycle, even
  std::map<TAddr, TAddr> cyc{{"0", "1"}, {"1", "2"}, {"2", "0"}};
  CHECK(permutation_parity(cyc) == 0);
  CHECK(perm_operator_determinant(cyc) == 1);

  std::mt19937_64 rng(19);
  for (int iter = 0; iter < 200; ++iter) {
    auto p = random_finite_permutation(rng, 5);
    CHECK(perm_operator_determinant(p) == (permutation_parity(p) == 0 ? 1 : -1));
  }
  // multiplicativity
  for (int iter = 0; iter < 60; ++iter) {
    auto p = random_finite_permutation(rng, 4), q = random_finite_permutation(rng, 4);
    std::set<TAddr> keys;
    for (const auto& [k, v] : p) { keys.insert(k); keys.insert(v); }
    for (const auto& [k, v] : q) { keys.insert(k); keys.insert(v); }
    std::map<TAddr, TAddr> pq;
    for (const auto& k : keys) {
      TAddr x = k;
      auto iq = q.find(x);
      if (iq != q.end()) x = iq->second;
      auto ip = p.find(x);
      if (ip != p.end()) x = ip->second;
      if (x != k) pq[k] = x;
    }
    CHECK(perm_operator_determinant(pq) ==
          perm_operator_determinant(p) * perm_operator_determinant(q));
  }
}

TEST_CASE("signature cocycle") {
  Spheromorphism id;
  CHECK(signature_cocycle(id, id) == 0);

  std::mt19937_64 rng(23);
  // 2-cocycle identity in Z/2 on random triples
  for (int iter = 0; iter < 60; ++iter) {
    Spheromorphism g = random_spheromorphism(rng, 2, 2), h = random_spheromorphism(rng, 2, 2),
                   k = random_spheromorphism(rng, 2, 2);
    int defect = signature_cocycle(h, k) ^ signature_cocycle(sphero_compose(g, h), k) ^
                 signature_cocycle(g, sphero_compose(h, k)) ^ signature_cocycle(g, h);
    CHECK(defect == 0);
  }
  // even-permutation lift invariance
  for (int iter = 0; iter < 40; ++iter) {
    Spheromorphism g = random_spheromorphism(rng, 2, 2), h = random_spheromorphism(rng, 2, 2);
    int base = signature_cocycle(g, h);
    auto pg = random_finite_permutation(rng, 4, true);
    auto ph = random_finite_permutation(rng, 4, true);
    auto pgh = random_finite_permutation(rng, 4, true);
    CHECK(permutation_parity(pg) == 0);
    CHECK(signature_cocycle_perturbed(g, h, pg, ph, pgh) == base);
  }
  // a 3-cycle perturbation on one lift leaves the value fixed
  Spheromorphism g = random_spheromorphism(rng, 2, 2), h = random_spheromorphism(rng, 2, 2);
  std::map<TAddr, TAddr> three{{"00", "01"}, {"01", "200"}, {"200", "00"}};
  CHECK(signature_cocycle_perturbed(g, h, three, {}, {}) == signature_cocycle(g, h));

  // (g, g^-1) for a depth-2 swap germ, checked against brute force
  Subtree base{""};
  std::map<TAddr, TAddr> beta;
  std::map<TAddr, CompIso> comps;
  for (const auto& r : frontier(base)) {
    beta[r] = r;
    comps[r] = CompIso{};
  }
  comps["1"].swaps = {"0", ""};
  Spheromorphism s(base, base, beta, comps);
  Spheromorphism si = s.inverse();
  PAutElement ls = lift_to_paut(s), lsi = lift_to_paut(si),
              lid = lift_to_paut(sphero_compose(s, si));
  std::map<TAddr, TAddr> brute;
  for (const auto& v : ball(6)) {
    // lid is the identity lift here; defect = ls o lsi
    TAddr w = ls.apply(lsi.apply(v));
    if (w != v) brute[v] = w;
  }
  CHECK(signature_cocycle(s, si) == permutation_parity(brute));
}
