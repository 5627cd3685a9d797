#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "tsilt/gf.hpp"

using namespace tsilt;

namespace {

FqMat mat(int64_t r, int64_t c, std::vector<int64_t> vals) {
  FqMat m(r, c);
  m.a = std::move(vals);
  return m;
}

FqMat random_mat(const Fq& f, std::mt19937_64& rng, int64_t r, int64_t c) {
  FqMat m(r, c);
  for (int64_t& v : m.a) v = static_cast<int64_t>(rng() % f.q());
  return m;
}

FqPoly random_poly(const Fq& f, std::mt19937_64& rng, int64_t max_deg) {
  std::vector<int64_t> c(rng() % (max_deg + 2));
  for (int64_t& v : c) v = static_cast<int64_t>(rng() % f.q());
  return poly_from(std::move(c), f);
}

} // namespace

TEST_CASE("field axioms hold exhaustively for every supported size") {
  for (int64_t q : {2, 3, 4, 5, 7}) {
    Fq f(q);
    CHECK(f.q() == q);
    CHECK(f.characteristic() == (q == 4 ? 2 : q));
    for (int64_t a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.mul(a, 0) == 0);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) {
        CHECK(f.mul(a, f.inv(a)) == 1);
        CHECK(f.inv(f.inv(a)) == a);
      }
      for (int64_t b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.add(a, b) < q);
        CHECK(f.mul(a, b) < q);
        CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
        for (int64_t c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
  }
  CHECK_THROWS_AS(Fq(6), std::invalid_argument);
  CHECK_THROWS_AS(Fq(9), std::invalid_argument);
}

TEST_CASE("the four element field has the right multiplication table") {
  Fq f(4);
  // {0, 1, x, x+1} with x^2 = x + 1
  CHECK(f.add(2, 3) == 1);
  CHECK(f.add(2, 2) == 0);
  CHECK(f.mul(2, 2) == 3);
  CHECK(f.mul(2, 3) == 1);
  CHECK(f.mul(3, 3) == 2);
  CHECK(f.inv(2) == 3);
  CHECK(f.inv(3) == 2);
  CHECK(f.neg(2) == 2);
  CHECK(f.from_int(-1) == 1);
  CHECK(f.from_int(5) == 1);
  Fq f7(7);
  CHECK(f7.from_int(-3) == 4);
  CHECK(f7.from_int(10) == 3);
}

TEST_CASE("matrix product, stacking and transpose work on small examples") {
  Fq f(5);
  FqMat x = mat(2, 3, {1, 2, 3, 4, 0, 1});
  FqMat y = mat(3, 2, {1, 1, 0, 2, 1, 0});
  CHECK(fq_mul(f, x, y) == mat(2, 2, {4, 0, 0, 4}));
  CHECK(fq_transpose(x) == mat(3, 2, {1, 4, 2, 0, 3, 1}));
  CHECK(fq_add(f, x, x) == fq_scale(f, 2, x));
  CHECK(fq_sub(f, x, x).is_zero());
  CHECK(fq_hstack(x, x) == mat(2, 6, {1, 2, 3, 1, 2, 3, 4, 0, 1, 4, 0, 1}));
  CHECK(fq_vstack(x, x) == mat(4, 3, {1, 2, 3, 4, 0, 1, 1, 2, 3, 4, 0, 1}));
  CHECK(fq_mul(f, FqMat::identity(2), x) == x);
  CHECK(fq_mul(f, x, FqMat::identity(3)) == x);
  CHECK_THROWS_AS(fq_hstack(x, y), std::invalid_argument);
  CHECK_THROWS_AS(fq_vstack(x, mat(1, 2, {1, 1})), std::invalid_argument);
}

TEST_CASE("rank, kernel and column space agree on pinned examples") {
  Fq f2(2);
  CHECK(fq_rank(f2, mat(2, 2, {1, 1, 1, 1})) == 1);
  CHECK(fq_rank(f2, FqMat::identity(3)) == 3);
  CHECK(fq_rank(f2, FqMat(2, 4)) == 0);

  Fq f3(3);
  // rows are (1,2,0) and (2,1,0): over F_3 the second is 2x the first
  FqMat m = mat(2, 3, {1, 2, 0, 2, 1, 0});
  CHECK(fq_rank(f3, m) == 1);
  FqMat k = fq_kernel(f3, m);
  CHECK(k.cols == 2);
  CHECK(fq_mul(f3, m, k).is_zero());
  FqMat cs = fq_column_space(f3, m);
  CHECK(cs == mat(2, 1, {1, 2}));
}

TEST_CASE("kernel and column space dimensions add up to the width") {
  std::mt19937_64 rng(0xF00D);
  for (int64_t q : {2, 3, 4, 5, 7}) {
    Fq f(q);
    for (int trial = 0; trial < 40; ++trial) {
      int64_t r = 1 + static_cast<int64_t>(rng() % 5);
      int64_t c = 1 + static_cast<int64_t>(rng() % 5);
      FqMat m = random_mat(f, rng, r, c);
      int64_t rank = fq_rank(f, m);
      FqMat k = fq_kernel(f, m);
      CHECK(rank + k.cols == c);
      CHECK(fq_mul(f, m, k).is_zero());
      if (k.cols > 0) CHECK(fq_rank(f, k) == k.cols);
      FqMat cs = fq_column_space(f, m);
      CHECK(cs.cols == rank);
      CHECK(fq_rank(f, cs) == rank);
      CHECK(fq_rank(f, fq_transpose(m)) == rank);
    }
  }
}

TEST_CASE("linear systems solve when consistent and refuse when not") {
  std::mt19937_64 rng(0x5EED);
  for (int64_t q : {2, 3, 5}) {
    Fq f(q);
    for (int trial = 0; trial < 50; ++trial) {
      int64_t r = 1 + static_cast<int64_t>(rng() % 4);
      int64_t c = 1 + static_cast<int64_t>(rng() % 4);
      FqMat m = random_mat(f, rng, r, c);
      FqMat v = random_mat(f, rng, c, 1);
      FqMat b = fq_mul(f, m, v);
      auto sol = fq_solve(f, m, b.a);
      REQUIRE(sol.has_value());
      FqMat u(c, 1);
      u.a = *sol;
      CHECK(fq_mul(f, m, u) == b);
    }
  }
  Fq f(2);
  // x + y = 0 and x + y = 1 cannot both hold
  auto none = fq_solve(f, mat(2, 2, {1, 1, 1, 1}), {0, 1});
  CHECK(!none.has_value());
}

TEST_CASE("polynomial arithmetic normalizes and divides with remainder") {
  Fq f(5);
  CHECK(poly_from({0, 0, 0}, f).is_zero());
  CHECK(poly_from({3, 0, 1, 0}, f) == poly_from({3, 0, 1}, f));
  FqPoly x = poly_from({1, 1}, f);      // 1 + t
  FqPoly y = poly_from({4, 0, 1}, f);   // t^2 - 1
  CHECK(poly_mul(f, x, x) == poly_from({1, 2, 1}, f));
  CHECK(poly_add(f, y, poly_from({1}, f)) == poly_from({0, 0, 1}, f));
  CHECK(poly_sub(f, x, x).is_zero());
  CHECK(poly_eval(f, y, 2) == 3);
  CHECK(poly_eval(f, y, 1) == 0);

  auto [quot, rem] = poly_divmod(f, y, x);
  CHECK(quot == poly_from({4, 1}, f)); // t^2 - 1 = (t + 1)(t - 1)
  CHECK(rem.is_zero());
  CHECK_THROWS_AS(poly_divmod(f, x, FqPoly{}), std::domain_error);

  std::mt19937_64 rng(0xACE5);
  for (int64_t q : {2, 3, 4, 7}) {
    Fq fr(q);
    for (int trial = 0; trial < 60; ++trial) {
      FqPoly a = random_poly(fr, rng, 6);
      FqPoly b = random_poly(fr, rng, 4);
      if (b.is_zero()) continue;
      auto [qq, rr] = poly_divmod(fr, a, b);
      CHECK(poly_add(fr, poly_mul(fr, qq, b), rr) == a);
      CHECK(rr.degree() < b.degree());
    }
  }
}

TEST_CASE("polynomial gcd is monic and divides both arguments") {
  Fq f2(2);
  // t^2 + 1 = (t + 1)^2 over F_2
  CHECK(poly_gcd(f2, poly_from({1, 0, 1}, f2), poly_from({1, 1}, f2)) ==
        poly_from({1, 1}, f2));
  Fq f5(5);
  CHECK(poly_gcd(f5, poly_from({0, 3}, f5), FqPoly{}) == poly_from({0, 1}, f5));
  CHECK(poly_monic(f5, poly_from({2, 4}, f5)) == poly_from({3, 1}, f5));

  std::mt19937_64 rng(0xBEAD);
  for (int64_t q : {2, 3, 5}) {
    Fq f(q);
    for (int trial = 0; trial < 60; ++trial) {
      FqPoly a = random_poly(f, rng, 5);
      FqPoly b = random_poly(f, rng, 5);
      FqPoly g = poly_gcd(f, a, b);
      if (a.is_zero() && b.is_zero()) {
        CHECK(g.is_zero());
        continue;
      }
      CHECK(g.c.back() == 1);
      CHECK(poly_divmod(f, a, g).second.is_zero());
      CHECK(poly_divmod(f, b, g).second.is_zero());
      // common divisors scale up into the gcd of the scaled pair
      FqPoly m = poly_from({1, 1, 1}, f);
      FqPoly gm = poly_gcd(f, poly_mul(f, a, m), poly_mul(f, b, m));
      CHECK(poly_divmod(f, gm, m).second.is_zero());
    }
  }
}

TEST_CASE("rational functions reduce to lowest terms") {
  Fq f(5);
  // (t^2 - 1) / (t - 1) = t + 1
  RatFn r = rat_make(f, poly_from({4, 0, 1}, f), poly_from({4, 1}, f));
  CHECK(r == rat_from_poly(poly_from({1, 1}, f)));
  // denominator comes out monic: (2t) / (2) = t
  CHECK(rat_make(f, poly_from({0, 2}, f), poly_from({2}, f)) == rat_t());
  CHECK(rat_make(f, FqPoly{}, poly_from({3, 1}, f)).is_zero());
  CHECK(RatFn{}.is_zero());
  CHECK(RatFn{}.den == poly_from({1}, f));
  CHECK_THROWS_AS(rat_make(f, poly_from({1}, f), FqPoly{}), std::domain_error);
  CHECK_THROWS_AS(rat_inv(f, RatFn{}), std::domain_error);

  std::mt19937_64 rng(0xD0E5);
  for (int trial = 0; trial < 80; ++trial) {
    FqPoly n1 = random_poly(f, rng, 3), d1 = random_poly(f, rng, 3);
    FqPoly n2 = random_poly(f, rng, 3), d2 = random_poly(f, rng, 3);
    if (d1.is_zero() || d2.is_zero()) continue;
    RatFn x = rat_make(f, n1, d1);
    RatFn y = rat_make(f, n2, d2);
    CHECK(rat_sub(f, x, x).is_zero());
    CHECK(rat_add(f, x, y) == rat_add(f, y, x));
    CHECK(rat_mul(f, x, y) == rat_mul(f, y, x));
    CHECK(rat_sub(f, rat_add(f, x, y), y) == x);
    if (!x.is_zero()) {
      CHECK(rat_mul(f, x, rat_inv(f, x)) == rat_const(f, 1));
      CHECK(x.den.c.back() == 1);
      CHECK(poly_gcd(f, x.num, x.den) == poly_from({1}, f));
    }
  }
}

TEST_CASE("ranks of pencils over the function field come out right") {
  Fq f(3);
  RatMat z(2, 3);
  CHECK(rat_rank(f, z) == 0);

  // [[t, 1], [t^2, t]] has proportional rows
  RatMat m(2, 2);
  m.at(0, 0) = rat_t();
  m.at(0, 1) = rat_const(f, 1);
  m.at(1, 0) = rat_mul(f, rat_t(), rat_t());
  m.at(1, 1) = rat_t();
  CHECK(rat_rank(f, m) == 1);

  // t * I - J(0) on a 2 dimensional space is invertible over F_3(t)
  RatMat p(2, 2);
  p.at(0, 0) = rat_t();
  p.at(0, 1) = rat_const(f, 2);
  p.at(1, 1) = rat_t();
  CHECK(rat_rank(f, p) == 2);

  // t - lambda is a unit for every scalar lambda
  for (int64_t lam = 0; lam < 3; ++lam) {
    RatMat s(1, 1);
    s.at(0, 0) = rat_sub(f, rat_t(), rat_const(f, lam));
    CHECK(rat_rank(f, s) == 1);
  }
}
