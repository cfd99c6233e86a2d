#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tburau/laurent.hpp"
#include "tburau/matrix.hpp"

using namespace tburau;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, int max_terms = 3, int max_exp = 3, int max_coef = 9) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<long long> expd(-max_exp, max_exp);
  std::uniform_int_distribution<long long> coefd(-max_coef, max_coef);
  LaurentPoly p;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) p.add_term(expd(rng), BigInt(coefd(rng)));
  return p;
}

// independent dense determinant: Leibniz sum over all permutations
LaurentPoly leibniz_det(const std::vector<std::vector<LaurentPoly>>& m) {
  size_t n = m.size();
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  LaurentPoly acc;
  do {
    // sign by inversion count
    int inv = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    LaurentPoly term(1);
    for (size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    acc += (inv % 2 == 0) ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace

TEST_CASE("bigint basics") {
  CHECK(BigInt(0).is_zero());
  CHECK(BigInt(123456789012345678LL).to_string() == "123456789012345678");
  CHECK((-BigInt(42)).to_string() == "-42");
  CHECK((BigInt(1000000000) * BigInt(1000000000)).to_string() == "1000000000000000000");
  BigInt big = BigInt::from_string("123456789123456789123456789");
  CHECK(big.to_string() == "123456789123456789123456789");
  CHECK((big - big).is_zero());
  CHECK((BigInt(7) - BigInt(9)).to_int64() == -2);
  CHECK(BigInt(6).half().to_int64() == 3);
  CHECK(BigInt(5).shl(3).to_int64() == 40);
  CHECK(BigInt(-3) < BigInt(2));
  CHECK(BigInt(12).odd() == false);
  CHECK(BigInt(13).odd() == true);
}

TEST_CASE("laurent ring fixtures") {
  LaurentPoly one(1), t = LaurentPoly::t();
  // (1-t) * t = t - t^2
  LaurentPoly lhs = (one - t) * t;
  LaurentPoly rhs = t - t * t;
  CHECK(lhs == rhs);
  // a + 0 = a
  LaurentPoly a = LaurentPoly(BigInt(2), -1) - one;  // 2t^-1 - 1
  CHECK(a + LaurentPoly() == a);
  // (1-t)(1+t) = 1 - t^2
  CHECK((one - t) * (one + t) == one - t * t);
  CHECK(a.to_string() == "2t^-1-1");
  CHECK(LaurentPoly().to_string() == "0");
}

TEST_CASE("laurent ring axioms on random triples") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    LaurentPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == LaurentPoly());
    CHECK(a * LaurentPoly(1) == a);
  }
}

TEST_CASE("monomial recognition") {
  CHECK(LaurentPoly::t(5).as_monomial() == Monomial{1, 5});
  CHECK((-LaurentPoly::t(-2)).as_monomial() == Monomial{-1, -2});
  CHECK(!(LaurentPoly(1) + LaurentPoly::t()).as_monomial().has_value());
  CHECK(!LaurentPoly(2).as_monomial().has_value());
}

TEST_CASE("matrix identity and associativity") {
  std::mt19937_64 rng(11);
  std::vector<long long> labels{1, 2, 3};
  LaurentMatrix a(labels, labels), b(labels, labels), c(labels, labels);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      a.set(i, j, random_poly(rng));
      b.set(i, j, random_poly(rng));
      c.set(i, j, random_poly(rng));
    }
  LaurentMatrix id = LaurentMatrix::identity(labels);
  CHECK(a * id == a);
  CHECK(id * a == a);
  CHECK((a * b) * c == a * (b * c));
  LaurentMatrix bad(std::vector<long long>{1, 2}, std::vector<long long>{1, 2});
  CHECK_THROWS_AS((void)(a * bad), DimensionError);
}

TEST_CASE("unreduced Burau 2x2 block inverts and braids") {
  LaurentPoly one(1), t = LaurentPoly::t(), tinv = LaurentPoly::t(-1);
  std::vector<long long> l2{1, 2};
  LaurentMatrix m(l2, l2), minv(l2, l2);
  // columns act as x1 -> (1-t)x1 + t x2, x2 -> x1
  m.set(0, 0, one - t); m.set(0, 1, one);
  m.set(1, 0, t);
  // symbolic inverse of [[1-t, 1],[t, 0]]
  minv.set(0, 1, tinv);
  minv.set(1, 0, one); minv.set(1, 1, -(one - t) * tinv);
  CHECK(m * minv == LaurentMatrix::identity(l2));
  CHECK(minv * m == LaurentMatrix::identity(l2));

  // braid relation for the 3x3 unreduced generators
  std::vector<long long> l3{1, 2, 3};
  LaurentMatrix s1(l3, l3), s2(l3, l3);
  s1.set(0, 0, one - t); s1.set(1, 0, t); s1.set(0, 1, one); s1.set(2, 2, one);
  s2.set(0, 0, one); s2.set(1, 1, one - t); s2.set(2, 1, t); s2.set(1, 2, one);
  CHECK(s1 * s2 * s1 == s2 * s1 * s2);
}

TEST_CASE("correction determinant fixtures") {
  using Corr = Correction<int>;
  // F = 0 -> det(I+F) = 1
  CHECK(Corr({1, 2, 3}, {}).determinant() == LaurentPoly(1));

  // half-twist correction block on {q=1, q'=2}: det = -t
  LaurentPoly one(1), t = LaurentPoly::t();
  std::map<std::pair<int, int>, LaurentPoly> e;
  e[{1, 1}] = -one;          // x_q column: x_{q'} - x_q
  e[{2, 1}] = one;
  e[{1, 2}] = t;             // x_{q'} column: t x_q - t x_{q'}
  e[{2, 2}] = -t;
  e[{1, 7}] = -(one - t);    // a crossing column, constant (1-t)(x_{q'}-x_q)
  e[{2, 7}] = one - t;
  Corr f({1, 2}, e);
  CHECK(f.determinant() == -t);

  // rank-1 diagonal entry c at a single puncture -> 1 + c
  LaurentPoly c = LaurentPoly(3) + LaurentPoly::t(2);
  CHECK(Corr({5}, {{{5, 5}, c}}).determinant() == one + c);

  // nonzero row outside the declared core is a contract violation
  CHECK_THROWS_AS(Corr({1}, {{{2, 1}, one}}), ContractViolation);
}

TEST_CASE("correction determinant vs brute force and multiplicativity") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> szd(0, 4), dens(0, 2);
  for (int iter = 0; iter < 200; ++iter) {
    int n = szd(rng);
    std::vector<int> core;
    for (int i = 0; i < n; ++i) core.push_back(i);
    std::map<std::pair<int, int>, LaurentPoly> e;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (dens(rng) != 0) e[{i, j}] = random_poly(rng, 2, 2, 4);
    Correction<int> f(core, e);

    // oracle: dense det(I+F) on the core by the Leibniz sum
    std::vector<std::vector<LaurentPoly>> dense(n, std::vector<LaurentPoly>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto it = e.find({i, j});
        dense[i][j] = (it == e.end() ? LaurentPoly() : it->second) +
                      (i == j ? LaurentPoly(1) : LaurentPoly());
      }
    CHECK(f.determinant() == leibniz_det(dense));
  }

  for (int iter = 0; iter < 60; ++iter) {
    auto rand_corr = [&rng](int lo, int hi) {
      std::vector<int> core;
      for (int i = lo; i < hi; ++i) core.push_back(i);
      std::map<std::pair<int, int>, LaurentPoly> e;
      for (int i = lo; i < hi; ++i)
        for (int j = lo - 1; j < hi + 1; ++j)
          if ((i + j) % 2 == 0) e[{i, j}] = random_poly(rng, 2, 2, 3);
      return Correction<int>(core, e);
    };
    Correction<int> f = rand_corr(0, 3), g = rand_corr(1, 4);
    CHECK(compose(f, g).determinant() == f.determinant() * g.determinant());
  }
}
