#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "tburau/gv.hpp"
#include "tburau/thompson.hpp"

using namespace tburau;

namespace {

TElement sample3() {
  return TElement(Symbol(BinTree::left_vine(3), BinTree::right_vine(3), 1));
}

// exhaustive oracle: evaluate the gv determinant sum over every dyadic of
// level <= L, which must agree with the finite breakpoint sum
long long gv_exhaustive(const TElement& g, const TElement& h, int L) {
  PLMap mh = to_plmap(h);
  PLMap mgh = to_plmap(compose(g, h));
  long long total = 0;
  for (long long k = 0; k < (1LL << L); ++k) {
    Dyadic x(k, L);
    auto sh = mh.slopes_at(x);
    auto sgh = mgh.slopes_at(x);
    total += static_cast<long long>(sh.log_right) * sgh.jump -
             static_cast<long long>(sgh.log_right) * sh.jump;
  }
  return total;
}

}  // namespace

TEST_CASE("symbol to plmap fixtures") {
  CHECK(to_plmap(TElement::identity()) == PLMap::identity());

  PLMap f = to_plmap(sample3());
  CHECK(f.eval(Dyadic(0)) == Dyadic(1, 2));
  CHECK(f.eval(Dyadic(1, 1)) == Dyadic(1, 1));
  CHECK(f.eval(Dyadic(3, 2)) == Dyadic(0));
  CHECK(f.eval(Dyadic(5, 3)) == Dyadic(3, 2));

  PLMap r = to_plmap(TElement::rotation(3));
  CHECK(r.eval(Dyadic(0)) == Dyadic(1, 1));
  CHECK(r.eval(Dyadic(1, 1)) == Dyadic(3, 2));
}

TEST_CASE("reduce") {
  CHECK(TElement(Symbol()).is_identity());
  CHECK(TElement(Symbol(BinTree::right_vine(4), BinTree::right_vine(4), 0)).is_identity());

  Symbol f = sample3().symbol();
  CHECK(reduce(f) == f);

  // blowing up a reduced symbol and reducing gives it back (plmap oracle)
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 80; ++iter) {
    TElement g = random_element(rng, 7);
    Symbol s = g.symbol();
    auto srcs = s.t0.leaves();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(srcs.size()) - 1);
    int i = pick(rng);
    int j = (i + s.rot) % s.leaf_count();
    BinTree t0b = s.t0.with_subtree(srcs[i].addr, BinTree::caret());
    BinTree t1b = s.t1.with_subtree(s.t1.leaves()[j].addr, BinTree::caret());
    int k = s.leaf_count() + 1;
    bool found = false;
    for (int rot = 0; rot < k && !found; ++rot) {
      Symbol cand(t1b, t0b, rot);
      if (to_plmap(cand) == to_plmap(s)) {
        found = true;
        CHECK(TElement(cand) == g);
      }
    }
    CHECK(found);
  }
}

TEST_CASE("compose and inverse fixtures") {
  TElement f = sample3();
  CHECK(compose(f, inverse(f)).is_identity());
  CHECK(compose(inverse(f), f).is_identity());
  CHECK(inverse(TElement::identity()).is_identity());

  TElement r = TElement::rotation(3);
  CHECK(compose(r, compose(r, r)).is_identity());
  CHECK(!compose(r, r).is_identity());

  Symbol rs = r.symbol();
  Symbol ri = inverse(r).symbol();
  CHECK(ri.t0 == rs.t1);
  CHECK(ri.t1 == rs.t0);
  CHECK(ri.rot == 2);

  CHECK(to_plmap(compose(f, f)).eval(Dyadic(0)) == Dyadic(3, 3));
  CHECK(to_plmap(inverse(f)).eval(Dyadic(1, 2)) == Dyadic(0));
}

TEST_CASE("rotation torsion for any tree") {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 25; ++iter) {
    BinTree t = random_tree(rng, 8);
    TElement g(Symbol(t, t, 1));
    CHECK(power(g, t.leaf_count()).is_identity());
  }
}

TEST_CASE("group laws with plmap homomorphism oracle") {
  std::mt19937_64 rng(1234);
  for (int iter = 0; iter < 300; ++iter) {
    TElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(compose(a, TElement::identity()) == a);
    CHECK(compose(TElement::identity(), a) == a);
    CHECK(compose(a, inverse(a)).is_identity());
    CHECK(to_plmap(compose(a, b)) == compose(to_plmap(a), to_plmap(b)));
    if (to_plmap(a) == to_plmap(b)) CHECK(a == b);
  }
}

TEST_CASE("F is closed under composition and inverse") {
  std::mt19937_64 rng(77);
  int seen = 0;
  while (seen < 60) {
    TElement a = random_element(rng), b = random_element(rng);
    if (!a.in_F() || !b.in_F()) continue;
    ++seen;
    CHECK(compose(a, b).in_F());
    CHECK(inverse(a).in_F());
  }
}

TEST_CASE("vertex image") {
  TElement f = sample3();
  CHECK(vertex_image(TElement::identity(), VertexAddress::of("LR")) == VertexAddress::of("LR"));
  CHECK(vertex_image(f, VertexAddress::root()) == VertexAddress::root());
  CHECK(vertex_image(TElement::rotation(2), VertexAddress::v0()) == VertexAddress::root());

  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    TElement g = random_element(rng, 6);
    std::set<VertexAddress> images;
    std::vector<VertexAddress> vs{VertexAddress::v0(), VertexAddress::root()};
    for (const char* p : {"L", "R", "LL", "LR", "RL", "RR"}) vs.push_back(VertexAddress::of(p));
    for (const auto& v : vs) {
      VertexAddress w = vertex_image(g, v);
      CHECK(vertex_image(inverse(g), w) == v);
      images.insert(w);
    }
    CHECK(images.size() == vs.size());
  }
}

TEST_CASE("second derivative support") {
  CHECK(second_derivative_support(TElement::identity()).empty());
  CHECK(second_derivative_support(TElement::rotation(2)).empty());

  auto supp = second_derivative_support(sample3());
  REQUIRE(supp.size() == 3);
  CHECK(supp.at(VertexAddress::v0()) == -1);
  CHECK(supp.at(VertexAddress::root()) == 2);
  CHECK(supp.at(VertexAddress::of("R")) == -1);

  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 80; ++iter) {
    TElement g = random_element(rng);
    int total = 0;
    for (const auto& [v, j] : second_derivative_support(g)) total += j;
    CHECK(total == 0);

    TElement h = random_element(rng);
    auto sg = second_derivative_support(g), sh = second_derivative_support(h);
    auto sgh = second_derivative_support(compose(g, h));
    auto get = [](const std::map<VertexAddress, int>& m, const VertexAddress& key) {
      auto it = m.find(key);
      return it == m.end() ? 0 : it->second;
    };
    std::set<VertexAddress> vs;
    for (const auto& [v, j] : sh) vs.insert(v);
    for (const auto& [v, j] : sgh) vs.insert(v);
    for (const auto& [v, j] : sg) vs.insert(vertex_image(inverse(h), v));
    for (const auto& v : vs)
      CHECK(get(sgh, v) == get(sg, vertex_image(h, v)) + get(sh, v));
  }
}

TEST_CASE("gv fixtures") {
  TElement f = sample3(), id = TElement::identity();
  CHECK(gv(f, id) == 0);
  CHECK(gv(id, f) == 0);
  CHECK(gv(f, inverse(f)) == 0);

  // exhaustive oracle agreement (all dyadics of level <= 6)
  CHECK(gv(f, f) == gv_exhaustive(f, f, 6));

  TElement r3 = TElement::rotation(3);
  CHECK(gv(r3, r3) == gv_exhaustive(r3, r3, 6));

  std::mt19937_64 rng(100);
  for (int iter = 0; iter < 30; ++iter) {
    TElement a = random_element(rng, 5), b = random_element(rng, 5);
    CHECK(gv(a, b) == gv_exhaustive(a, b, 12));
  }
}

TEST_CASE("gv cocycle defect vanishes") {
  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 200; ++iter) {
    TElement a = random_element(rng, 6), b = random_element(rng, 6), c = random_element(rng, 6);
    CHECK(gv_defect(a, b, c) == 0);
  }
}

TEST_CASE("gv depends only on germs") {
  // evaluating through unreduced symbols gives the same values
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 40; ++iter) {
    TElement a = random_element(rng, 5), b = random_element(rng, 5);
    Symbol sa = a.symbol();
    int k = sa.leaf_count();
    std::uniform_int_distribution<int> pick(0, k - 1);
    int i = pick(rng), j = (i + sa.rot) % k;
    BinTree t0b = sa.t0.with_subtree(sa.t0.leaves()[i].addr, BinTree::caret());
    BinTree t1b = sa.t1.with_subtree(sa.t1.leaves()[j].addr, BinTree::caret());
    bool found = false;
    for (int rot = 0; rot <= k && !found; ++rot) {
      Symbol cand(t1b, t0b, rot);
      if (to_plmap(cand) == to_plmap(sa)) {
        found = true;
        // bypass reduction: evaluate gv through the raw symbols
        PLMap mb = to_plmap(b);
        (void)mb;
        CHECK(gv(TElement(cand), b) == gv(a, b));
      }
    }
    CHECK(found);
  }
}

TEST_CASE("cyclic class residue") {
  TElement r2 = TElement::rotation(2), r3 = TElement::rotation(3);
  auto gvc = [](const TElement& a, const TElement& b) { return gv(a, b); };
  CHECK(cyclic_class_residue(gvc, r2, 2) == 0);
  // order errors
  CHECK_THROWS_AS(cyclic_class_residue(gvc, r3, 6), OrderError);
  CHECK_THROWS_AS(cyclic_class_residue(gvc, TElement::identity(), 2), OrderError);
  // zero cocycle gives zero residue
  auto zero = [](const TElement&, const TElement&) -> long long { return 0; };
  CHECK(cyclic_class_residue(zero, r3, 3) == 0);

  // coboundary invariance on the subgroup: c + (delta b) has the same residue
  std::mt19937_64 rng(64);
  for (int iter = 0; iter < 20; ++iter) {
    std::uniform_int_distribution<long long> vals(-5, 5);
    // b is a function on the cyclic group <r3> = {id, r3, r3^2}
    long long b0 = vals(rng), b1 = vals(rng), b2 = vals(rng);
    auto bval = [&](const TElement& x) {
      if (x.is_identity()) return b0;
      if (x == TElement::rotation(3)) return b1;
      return b2;
    };
    auto perturbed = [&](const TElement& x, const TElement& y) {
      return gv(x, y) + bval(y) - bval(compose(x, y)) + bval(x);
    };
    CHECK(cyclic_class_residue(perturbed, r3, 3) == cyclic_class_residue(gvc, r3, 3));
  }
}

TEST_CASE("gv rotation values for the headline residues") {
  // rotations of order 2, 3, 4: the exact row of values entering the
  // torsion-residue comparison
  TElement r3 = TElement::rotation(3);
  CHECK(gv(r3, r3) == gv_exhaustive(r3, r3, 6));
  TElement r4 = TElement::rotation(4);
  long long s4 = 0;
  TElement p = TElement::identity();
  for (int i = 0; i < 4; ++i) { s4 += gv(r4, p); p = compose(r4, p); }
  long long s3 = 0;
  p = TElement::identity();
  for (int i = 0; i < 3; ++i) { s3 += gv(r3, p); p = compose(r3, p); }
  long long s2 = 0;
  p = TElement::identity();
  for (int i = 0; i < 2; ++i) { s2 += gv(TElement::rotation(2), p); p = compose(TElement::rotation(2), p); }
  CHECK(s2 == 0);
  CHECK(s3 == gv(r3, r3));          // the only nonzero term
  CHECK(s4 % 2 == 0);               // evenness needed for the /2 comparison
  MESSAGE("gv sums: n=2 -> ", s2, ", n=3 -> ", s3, ", n=4 -> ", s4);
}
