#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tburau/dyadic.hpp"

using namespace tburau;

namespace {

// three-piece sample map: [0,1/2)->[1/4,1/2), [1/2,3/4)->[1/2,1), [3/4,1)->[0,1/4)
PLMap sample3() {
  std::vector<PLMap::Piece> ps;
  ps.push_back({Dyadic(0), -1, Dyadic(1, 2)});        // x/2 + 1/4
  ps.push_back({Dyadic(1, 1), 1, Dyadic(-1, 1)});     // 2x - 1/2
  ps.push_back({Dyadic(3, 2), 0, Dyadic(-3, 2)});     // x - 3/4
  return PLMap(std::move(ps));
}

PLMap random_plmap(std::mt19937_64& rng, int depth = 3) {
  // random rotation composed with random halving refinements keeps it simple
  std::uniform_int_distribution<int> coin(0, 1);
  PLMap m = PLMap::identity();
  for (int i = 0; i < depth; ++i) {
    std::uniform_int_distribution<long long> numd(0, (1 << (i + 2)) - 1);
    Dyadic amount(numd(rng), i + 2);
    m = coin(rng) ? compose(m, PLMap::rotation(amount)) : compose(PLMap::rotation(amount), m);
  }
  return m;
}

}  // namespace

TEST_CASE("dyadic canonical form and arithmetic") {
  CHECK(Dyadic(2, 1) == Dyadic(1));
  CHECK(Dyadic(4, 3) == Dyadic(1, 1));
  CHECK((Dyadic(1, 2) + Dyadic(1, 2)) == Dyadic(1, 1));
  CHECK((Dyadic(1, 1) - Dyadic(3, 2)) == Dyadic(-1, 2));
  CHECK(Dyadic(3, 2).scaled(1) == Dyadic(3, 1));
  CHECK(Dyadic(3, 2).scaled(-2) == Dyadic(3, 4));
  CHECK(Dyadic(-1, 2).mod1() == Dyadic(3, 2));
  CHECK(Dyadic(9, 3).mod1() == Dyadic(1, 3));
  CHECK(Dyadic(1, 3) < Dyadic(1, 2));
}

TEST_CASE("plmap evaluation fixtures") {
  PLMap id = PLMap::identity();
  CHECK(id.eval(Dyadic(3, 3)) == Dyadic(3, 3));

  PLMap f = sample3();
  CHECK(f.eval(Dyadic(0)) == Dyadic(1, 2));       // phi(0) = 1/4
  CHECK(f.eval(Dyadic(5, 3)) == Dyadic(3, 2));    // 5/8 -> 3/4 on the middle piece
  CHECK(f.eval(Dyadic(3, 2)) == Dyadic(0));       // 3/4 -> 0
}

TEST_CASE("plmap compose and inverse") {
  PLMap f = sample3();
  CHECK(compose(f, f.inverse()) == PLMap::identity());
  CHECK(compose(f.inverse(), f) == PLMap::identity());

  PLMap half = PLMap::rotation(Dyadic(1, 1));
  CHECK(compose(half, half) == PLMap::identity());

  PLMap f2 = compose(f, f);
  CHECK(f2.eval(Dyadic(0)) == Dyadic(3, 3));  // phi^2(0) = phi(1/4) = 3/8
}

TEST_CASE("one sided slopes") {
  PLMap id = PLMap::identity();
  auto s = id.slopes_at(Dyadic(5, 3));
  CHECK(s.log_left == 0);
  CHECK(s.log_right == 0);
  CHECK(s.jump == 0);

  PLMap f = sample3();
  auto s0 = f.slopes_at(Dyadic(0));
  CHECK(s0.log_right == -1);
  CHECK(s0.log_left == 0);
  CHECK(s0.jump == -1);
  auto si = f.slopes_at(Dyadic(1, 3));  // interior of first piece
  CHECK(si.log_left == -1);
  CHECK(si.log_right == -1);
  CHECK(si.jump == 0);

  // rotation has slope 1 everywhere, seams carry no jump
  PLMap half = PLMap::rotation(Dyadic(1, 1));
  CHECK(half.slope_jump_points().empty());
}

TEST_CASE("composition law and jump-sum on random maps") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 120; ++iter) {
    PLMap f = random_plmap(rng), g = random_plmap(rng);
    PLMap fg = compose(f, g);
    std::uniform_int_distribution<long long> numd(0, 127);
    for (int k = 0; k < 8; ++k) {
      Dyadic x(numd(rng), 7);
      CHECK(fg.eval(x) == f.eval(g.eval(x)));
    }
    // total slope-jump vanishes around the circle
    int total = 0;
    for (const auto& x : f.seams()) total += f.slopes_at(x).jump;
    CHECK(total == 0);
    // chain rule for jumps at every seam of the composite
    for (const auto& x : fg.seams()) {
      int lhs = fg.slopes_at(x).jump;
      int rhs = f.slopes_at(g.eval(x)).jump + g.slopes_at(x).jump;
      CHECK(lhs == rhs);
    }
  }
}
