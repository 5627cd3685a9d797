#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tsilt/fgab.hpp"

#include <numeric>
#include <random>

using namespace tsilt;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, size_t rows, size_t cols,
                        int64_t lo, int64_t hi) {
  std::uniform_int_distribution<int64_t> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
  return m;
}

bool is_diagonal(const IntMatrix& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (i != j && m.at(i, j) != 0) return false;
  return true;
}

// presentation matrix of a finite-rank group: coker(D) with D = diag(d_i)
// padded by zero rows for the free part
IntMatrix presentation(const FgAb& m) {
  size_t s = m.invariant_factors().size();
  size_t rows = s + static_cast<size_t>(m.rank());
  IntMatrix d(rows, s);
  for (size_t i = 0; i < s; ++i) d.at(i, i) = m.invariant_factors()[i];
  return d;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      if (a.at(i, j) == 0) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l)
          out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    }
  return out;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
  }
  return out;
}

// independent oracle: M (x) N as coker([D (x) I | I (x) E])
FgAb tensor_oracle(const FgAb& m, const FgAb& n) {
  IntMatrix d = presentation(m);
  IntMatrix e = presentation(n);
  IntMatrix left = kronecker(d, IntMatrix::identity(e.rows()));
  IntMatrix right = kronecker(IntMatrix::identity(d.rows()), e);
  return cokernel(hstack(left, right));
}

// independent oracle for Ext^1(Z/d, N) = N/dN via an augmented presentation
FgAb ext_cyclic_oracle(int64_t d, const FgAb& n) {
  IntMatrix e = presentation(n);
  IntMatrix scaled = IntMatrix::identity(e.rows());
  for (size_t i = 0; i < scaled.rows(); ++i) scaled.at(i, i) = d;
  return cokernel(hstack(e, scaled));
}

// count homomorphisms between finite groups by brute force over images of
// generators; independent of the gcd closed form
bigint count_homs(const std::vector<int64_t>& src,
                  const std::vector<int64_t>& dst) {
  std::vector<int64_t> cur(dst.size(), 0);
  auto order_of = [&](const std::vector<int64_t>& elt) {
    int64_t ord = 1;
    for (size_t j = 0; j < dst.size(); ++j) {
      int64_t g = std::gcd(elt[j], dst[j]);
      ord = std::lcm(ord, dst[j] / g);
    }
    return ord;
  };
  bigint total = 1;
  for (int64_t a : src) {
    // images of a generator of order a = elements killed by a
    bigint choices = 0;
    std::vector<int64_t> elt(dst.size(), 0);
    while (true) {
      if (a % order_of(elt) == 0) ++choices;
      size_t pos = 0;
      while (pos < dst.size()) {
        if (++elt[pos] < dst[pos]) break;
        elt[pos] = 0;
        ++pos;
      }
      if (pos == dst.size()) break;
    }
    total *= choices;
  }
  return total;
}

} // namespace

TEST_CASE("smith normal form: frozen example") {
  IntMatrix m = IntMatrix::from_rows({{4, 0}, {0, 6}});
  SmithDecomposition snf = smith_normal_form(m);
  CHECK(snf.d.at(0, 0) == 2);
  CHECK(snf.d.at(1, 1) == 12);
  CHECK(snf.d.at(0, 1) == 0);
  CHECK(snf.d.at(1, 0) == 0);
  CHECK(snf.d == snf.u.multiply(m).multiply(snf.v));
}

TEST_CASE("smith normal form: properties on random matrices") {
  std::mt19937_64 rng(20260822);
  for (int trial = 0; trial < 200; ++trial) {
    size_t rows = 1 + rng() % 5;
    size_t cols = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, rows, cols, -30, 30);
    SmithDecomposition snf = smith_normal_form(m);

    CHECK(is_diagonal(snf.d));
    CHECK(snf.d == snf.u.multiply(m).multiply(snf.v));
    bigint du = det(snf.u);
    bigint dv = det(snf.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));

    size_t limit = std::min(rows, cols);
    bool seen_zero = false;
    for (size_t i = 0; i < limit; ++i) {
      bigint di = snf.d.at(i, i);
      CHECK(di >= 0);
      if (di == 0) {
        seen_zero = true;
      } else {
        CHECK(!seen_zero); // zeros come last
        if (i > 0 && snf.d.at(i - 1, i - 1) != 0)
          CHECK(di % snf.d.at(i - 1, i - 1) == 0);
      }
    }
  }
}

TEST_CASE("det: Bareiss agrees with known values") {
  CHECK(det(IntMatrix::identity(4)) == 1);
  CHECK(det(IntMatrix::from_rows({{2, 1}, {7, 4}})) == 1);
  CHECK(det(IntMatrix::from_rows({{0, 1}, {1, 0}})) == -1);
  CHECK(det(IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 0);
  CHECK(det(IntMatrix::from_rows({{3, 0, 0}, {0, -2, 0}, {0, 0, 5}})) == -30);
}

TEST_CASE("FgAb canonical form") {
  FgAb g = FgAb::from_cyclic_orders(0, {4, 6});
  CHECK(g.rank() == 0);
  CHECK(g.invariant_factors() == std::vector<int64_t>{2, 12});

  CHECK(FgAb::from_cyclic_orders(1, {1, 1}) == FgAb::free(1));
  CHECK(FgAb::from_cyclic_orders(0, {0, 5}) == FgAb(1, {5}));
  CHECK(FgAb::cyclic(0) == FgAb::free(1));
  CHECK(FgAb::cyclic(1) == FgAb::zero());
  CHECK(FgAb::cyclic(-6) == FgAb(0, {6}));

  CHECK_THROWS(FgAb(0, {6, 4}));  // not a divisibility chain
  CHECK_THROWS(FgAb(0, {1}));     // trivial factor not allowed
  CHECK_THROWS(FgAb(-1, {}));
}

TEST_CASE("direct_sum is commutative and canonical") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int64_t> dist(0, 24);
  for (int trial = 0; trial < 100; ++trial) {
    FgAb a = FgAb::from_cyclic_orders(rng() % 2, {dist(rng), dist(rng)});
    FgAb b = FgAb::from_cyclic_orders(rng() % 2, {dist(rng)});
    CHECK(a.direct_sum(b) == b.direct_sum(a));
    CHECK(a.direct_sum(FgAb::zero()) == a);
    CHECK(a.direct_sum(a) == a.repeated(2));
    CHECK(a.direct_sum(b).torsion_order() ==
          a.torsion_order() * b.torsion_order());
  }
}

TEST_CASE("cokernel via SNF") {
  CHECK(cokernel(IntMatrix::from_rows({{2, 0}, {0, 3}})) == FgAb(0, {6}));
  CHECK(cokernel(IntMatrix::from_rows({{4, 0}, {0, 6}})) == FgAb(0, {2, 12}));
  // 3x2 of rank 2: one free generator survives
  CHECK(cokernel(IntMatrix::from_rows({{1, 0}, {0, 2}, {0, 0}})) ==
        FgAb(1, {2}));
  CHECK(cokernel(IntMatrix(2, 0)) == FgAb::free(2));
}

TEST_CASE("homology_at: frozen examples") {
  // Z --2--> Z --0--> Z
  CHECK(homology_at(IntMatrix::from_rows({{2}}),
                    IntMatrix::from_rows({{0}})) == FgAb::cyclic(2));
  // Z --0--> Z --3--> Z has no homology in the middle
  CHECK(homology_at(IntMatrix::from_rows({{0}}),
                    IntMatrix::from_rows({{3}})) == FgAb::zero());
  // 0 --> Z^2 --id--> Z^2
  CHECK(homology_at(IntMatrix(2, 0), IntMatrix::identity(2)) == FgAb::zero());
  // Z^2 --[1,1;1,1]--> Z^2 --[1,-1]--> Z: kernel is the diagonal, image is
  // the diagonal scaled by 2... actually im = {(a+b, a+b)} = diagonal itself
  CHECK(homology_at(IntMatrix::from_rows({{1, 1}, {1, 1}}),
                    IntMatrix::from_rows({{1, -1}})) == FgAb::zero());
  // same kernel, image has index 2
  CHECK(homology_at(IntMatrix::from_rows({{2}, {2}}),
                    IntMatrix::from_rows({{1, -1}})) == FgAb::cyclic(2));
  CHECK_THROWS(homology_at(IntMatrix::from_rows({{1}}),
                           IntMatrix::from_rows({{1}})));
}

TEST_CASE("homology_at: random chain complexes built from a factored map") {
  // build in = B*A-ish chains: take random K (b x k) with independent-ish
  // columns, in = K*R and out chosen with out*K = 0 is hard to arrange
  // directly; instead verify it against cokernel on maps into full lattices
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    size_t b = 1 + rng() % 4;
    size_t a = 1 + rng() % 4;
    IntMatrix in = random_matrix(rng, b, a, -9, 9);
    IntMatrix out(0, b); // zero target: homology = full cokernel
    CHECK(homology_at(in, out) == cokernel(in));
  }
}

TEST_CASE("hom closed form vs brute-force counting") {
  std::vector<std::vector<int64_t>> shapes = {
      {2}, {4}, {6}, {2, 4}, {3, 9}, {2, 6}, {12}, {2, 2}};
  for (const auto& s : shapes)
    for (const auto& t : shapes) {
      FgAb m = FgAb::from_cyclic_orders(0, s);
      FgAb n = FgAb::from_cyclic_orders(0, t);
      CHECK(hom(m, n).torsion_order() == count_homs(s, t));
    }
}

TEST_CASE("hom frozen values") {
  CHECK(hom(FgAb::cyclic(4), FgAb::cyclic(6)) == FgAb::cyclic(2));
  CHECK(hom(FgAb::cyclic(4), FgAb::free(1)) == FgAb::zero());
  CHECK(hom(FgAb::free(2), FgAb::from_cyclic_orders(1, {3})) ==
        FgAb::from_cyclic_orders(2, {3, 3}));
  CHECK(hom(FgAb::free(1), FgAb::cyclic(8)) == FgAb::cyclic(8));
}

TEST_CASE("ext1 closed form vs presentation oracle") {
  std::vector<int64_t> ds = {2, 3, 4, 6, 9, 12};
  std::vector<FgAb> targets = {FgAb::free(1), FgAb::cyclic(6),
                               FgAb::from_cyclic_orders(1, {4}),
                               FgAb::from_cyclic_orders(0, {2, 8}),
                               FgAb::free(2)};
  for (int64_t d : ds)
    for (const FgAb& n : targets)
      CHECK(ext1(FgAb::cyclic(d), n) == ext_cyclic_oracle(d, n));
}

TEST_CASE("ext1 frozen values") {
  CHECK(ext1(FgAb::cyclic(4), FgAb::cyclic(6)) == FgAb::cyclic(2));
  CHECK(ext1(FgAb::cyclic(5), FgAb::free(1)) == FgAb::cyclic(5));
  CHECK(ext1(FgAb::free(3), FgAb::cyclic(30)) == FgAb::zero());
  CHECK(ext1(FgAb::cyclic(12), FgAb::cyclic(18)) == FgAb::cyclic(6));
}

TEST_CASE("tensor closed form vs Kronecker presentation oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int64_t> dist(0, 12);
  for (int trial = 0; trial < 80; ++trial) {
    FgAb m = FgAb::from_cyclic_orders(rng() % 2, {dist(rng), dist(rng)});
    FgAb n = FgAb::from_cyclic_orders(rng() % 2, {dist(rng)});
    CHECK(tensor(m, n) == tensor_oracle(m, n));
    CHECK(tensor(m, n) == tensor(n, m));
  }
}

TEST_CASE("tor1 basics") {
  CHECK(tor1(FgAb::cyclic(4), FgAb::cyclic(6)) == FgAb::cyclic(2));
  CHECK(tor1(FgAb::free(3), FgAb::cyclic(6)) == FgAb::zero());
  CHECK(tor1(FgAb::cyclic(9), FgAb::free(2)) == FgAb::zero());
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int64_t> dist(0, 16);
  for (int trial = 0; trial < 50; ++trial) {
    FgAb m = FgAb::from_cyclic_orders(rng() % 2, {dist(rng), dist(rng)});
    FgAb n = FgAb::from_cyclic_orders(rng() % 2, {dist(rng)});
    CHECK(tor1(m, n) == tor1(n, m));
    // for finite groups Tor_1(M, N) has the same order as M (x) N
    if (m.is_finite() && n.is_finite())
      CHECK(tor1(m, n).torsion_order() == tensor(m, n).torsion_order());
  }
}

TEST_CASE("support") {
  FgSupport s1 = support(FgAb::from_cyclic_orders(0, {12}));
  CHECK(!s1.has_generic_point);
  CHECK(s1.primes == PrimeSet::finite({2, 3}));

  FgSupport s2 = support(FgAb::from_cyclic_orders(2, {5}));
  CHECK(s2.has_generic_point);
  CHECK(s2.primes.is_all());

  FgSupport s3 = support(FgAb::zero());
  CHECK(!s3.has_generic_point);
  CHECK(s3.primes.is_empty());
}

TEST_CASE("torsion_part splits off the P-primary component") {
  FgAb g = FgAb::from_cyclic_orders(1, {12, 90});
  auto [tors, rest] = torsion_part(g, PrimeSet::finite({2, 3}));
  CHECK(tors == FgAb::from_cyclic_orders(0, {12, 18}));
  CHECK(rest == FgAb::from_cyclic_orders(1, {5}));
  CHECK(tors.torsion_order() * rest.torsion_order() == g.torsion_order());

  auto [all_t, none_r] = torsion_part(g, PrimeSet::all());
  CHECK(all_t == FgAb::from_cyclic_orders(0, {12, 90}));
  CHECK(none_r == FgAb::free(1));

  auto [none_t, all_r] = torsion_part(g, PrimeSet::empty());
  CHECK(none_t == FgAb::zero());
  CHECK(all_r == g);

  auto [cof_t, cof_r] = torsion_part(g, PrimeSet::cofinite({2}));
  CHECK(cof_t == FgAb::from_cyclic_orders(0, {3, 45}));
  CHECK(cof_r == FgAb::from_cyclic_orders(1, {4, 2}));
}

TEST_CASE("divisibility and torsion-freeness predicates") {
  CHECK(is_p_divisible(FgAb::zero(), 2));
  CHECK(!is_p_divisible(FgAb::free(1), 2));
  CHECK(is_p_divisible(FgAb::cyclic(9), 2));
  CHECK(!is_p_divisible(FgAb::cyclic(9), 3));

  CHECK(is_p_torsion_free(FgAb::free(4), 5));
  CHECK(is_p_torsion_free(FgAb::cyclic(9), 2));
  CHECK(!is_p_torsion_free(FgAb::cyclic(9), 3));
  CHECK(!is_p_torsion_free(FgAb::from_cyclic_orders(1, {6}), 2));
}

TEST_CASE("prime utilities") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK(!is_prime(1));
  CHECK(!is_prime(91));
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(5) == 11);
  CHECK(nth_prime(25) == 97);
  CHECK(prime_index(2) == 1);
  CHECK(prime_index(29) == 10);
  CHECK_THROWS(prime_index(12));
  CHECK(prime_factors(360) == std::vector<int64_t>{2, 3, 5});
  CHECK(p_valuation(360, 2) == 3);
  CHECK(p_power_part(360, 3) == 9);
  CHECK(fresh_prime_beyond({2, 3, 5}) == 7);
  CHECK(fresh_prime_beyond({}) == 2);
  CHECK(fresh_prime_beyond({13, 2}) == 17);
}

TEST_CASE("PrimeSet membership and normal forms") {
  PrimeSet all = PrimeSet::all();
  PrimeSet none = PrimeSet::empty();
  PrimeSet s = PrimeSet::finite({5, 2});
  PrimeSet c = PrimeSet::cofinite({3});

  CHECK(all.is_all());
  CHECK(none.is_empty());
  CHECK(s.basis() == std::vector<int64_t>{2, 5});
  CHECK(s.contains(5));
  CHECK(!s.contains(3));
  CHECK(c.contains(2));
  CHECK(!c.contains(3));
  CHECK(all.contains(101));
  CHECK(!none.contains(2));
  CHECK_THROWS(PrimeSet::finite({4}));

  CHECK(PrimeSet::single(7) == PrimeSet::finite({7}));
  CHECK(PrimeSet::tail(1) == all);
  CHECK(PrimeSet::tail(3) == PrimeSet::cofinite({2, 3}));
  CHECK(all.as_tail() == 1);
  CHECK(PrimeSet::cofinite({2, 3, 5}).as_tail() == 4);
  CHECK(!PrimeSet::cofinite({2, 5}).as_tail().has_value());
  CHECK(!s.as_tail().has_value());
}

TEST_CASE("PrimeSet boolean algebra") {
  PrimeSet s = PrimeSet::finite({2, 3, 5});
  PrimeSet t = PrimeSet::finite({3, 7});
  PrimeSet c = PrimeSet::cofinite({2, 7});
  PrimeSet d = PrimeSet::cofinite({3});

  CHECK(s.intersect(t) == PrimeSet::finite({3}));
  CHECK(s.unite(t) == PrimeSet::finite({2, 3, 5, 7}));
  CHECK(s.minus(t) == PrimeSet::finite({2, 5}));
  CHECK(s.intersect(c) == PrimeSet::finite({3, 5}));
  CHECK(c.intersect(d) == PrimeSet::cofinite({2, 3, 7}));
  CHECK(c.unite(d) == PrimeSet::cofinite({}));
  CHECK(c.unite(d).is_all());
  CHECK(c.minus(s) == PrimeSet::cofinite({2, 3, 5, 7}));
  CHECK(d.minus(c) == PrimeSet::finite({2, 7}));
  CHECK(s.complement().complement() == s);
  CHECK(c.complement() == PrimeSet::finite({2, 7}));

  CHECK(PrimeSet::finite({3}).subset_of(s));
  CHECK(s.subset_of(PrimeSet::all()));
  CHECK(PrimeSet::empty().subset_of(s));
  CHECK(!c.subset_of(s));
  CHECK(PrimeSet::cofinite({2, 3, 7}).subset_of(d));
  CHECK(!d.subset_of(PrimeSet::cofinite({2, 3, 7})));

  // randomized De Morgan checks against membership on a window of primes
  std::mt19937_64 rng(3);
  std::vector<int64_t> window = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  auto random_set = [&]() {
    std::vector<int64_t> picks;
    for (int64_t p : window)
      if (rng() % 2) picks.push_back(p);
    return rng() % 2 ? PrimeSet::finite(picks) : PrimeSet::cofinite(picks);
  };
  for (int trial = 0; trial < 100; ++trial) {
    PrimeSet x = random_set();
    PrimeSet y = random_set();
    for (int64_t p : window) {
      CHECK(x.intersect(y).contains(p) == (x.contains(p) && y.contains(p)));
      CHECK(x.unite(y).contains(p) == (x.contains(p) || y.contains(p)));
      CHECK(x.minus(y).contains(p) == (x.contains(p) && !y.contains(p)));
      CHECK(x.complement().contains(p) == !x.contains(p));
    }
    CHECK(x.subset_of(y) == x.minus(y).is_empty());
  }
}
