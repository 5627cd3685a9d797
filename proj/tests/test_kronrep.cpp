#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tsilt/kronrep.hpp"

using namespace tsilt;

namespace {

bool is_hom(const Fq& f, const KronRep& m, const KronRep& n,
            const KronHom& h) {
  return fq_mul(f, h.f2, m.a) == fq_mul(f, n.a, h.f1) &&
         fq_mul(f, h.f2, m.b) == fq_mul(f, n.b, h.f1);
}

FqMat random_matrix(const Fq& f, int64_t r, int64_t c, std::mt19937_64& rng) {
  FqMat m(r, c);
  for (int64_t i = 0; i < r; ++i)
    for (int64_t j = 0; j < c; ++j)
      m.at(i, j) = int64_t(rng() % uint64_t(f.q()));
  return m;
}

FqMat random_invertible(const Fq& f, int64_t n, std::mt19937_64& rng) {
  while (true) {
    FqMat m = random_matrix(f, n, n, rng);
    if (fq_rank(f, m) == n) return m;
  }
}

FqMat inverse_of(const Fq& f, const FqMat& g) {
  FqMat inv(g.rows, g.rows);
  std::vector<int64_t> e(g.rows, 0);
  for (int64_t j = 0; j < g.rows; ++j) {
    std::fill(e.begin(), e.end(), 0);
    e[j] = 1;
    auto col = fq_solve(f, g, e);
    REQUIRE(col.has_value());
    for (int64_t i = 0; i < g.rows; ++i) inv.at(i, j) = (*col)[i];
  }
  return inv;
}

// change of basis, hides the block structure of a direct sum
KronRep conjugate(const Fq& f, const KronRep& m, std::mt19937_64& rng) {
  FqMat g1 = random_invertible(f, m.d1, rng);
  FqMat g2 = random_invertible(f, m.d2, rng);
  FqMat g1i = inverse_of(f, g1);
  return KronRep(m.d1, m.d2, fq_mul(f, fq_mul(f, g2, m.a), g1i),
                 fq_mul(f, fq_mul(f, g2, m.b), g1i));
}

std::vector<KronRep> small_pool(const Fq& f) {
  std::vector<KronRep> pool;
  pool.push_back(preproj(f, 0));
  pool.push_back(preproj(f, 1));
  pool.push_back(preinj(f, 0));
  pool.push_back(preinj(f, 1));
  for (const auto& s : all_quasisimples(f)) {
    pool.push_back(ray_module(f, s, 1));
    pool.push_back(ray_module(f, s, 2));
  }
  return pool;
}

}  // namespace

TEST_CASE("projectives injectives and frozen hom dimensions") {
  Fq f(3);
  KronRep p1 = KronRep::proj(1), p2 = KronRep::proj(2);
  KronRep i1 = KronRep::inj(1), i2 = KronRep::inj(2);
  KronRep s1 = KronRep::simple(1), s2 = KronRep::simple(2);

  CHECK(p1.dim_vector() == std::pair<int64_t, int64_t>(1, 2));
  CHECK(p2.dim_vector() == std::pair<int64_t, int64_t>(0, 1));
  CHECK(i1.dim_vector() == std::pair<int64_t, int64_t>(1, 0));
  CHECK(i2.dim_vector() == std::pair<int64_t, int64_t>(2, 1));
  CHECK(s1 == i1);
  CHECK(s2 == p2);

  CHECK(hom_dim(f, s1, s1) == 1);
  CHECK(hom_dim(f, s2, s2) == 1);
  CHECK(hom_dim(f, s1, s2) == 0);
  CHECK(hom_dim(f, s2, s1) == 0);
  CHECK(hom_dim(f, p2, p1) == 2);
  CHECK(hom_dim(f, p1, p2) == 0);
  CHECK(hom_dim(f, p1, p1) == 1);

  CHECK(ext1_dim(f, s1, s2) == 2);
  CHECK(ext1_dim(f, s2, s1) == 0);
  CHECK(ext1_dim(f, s1, s1) == 0);

  // projectives have no extensions in either characteristic
  std::mt19937_64 rng(0x12D0);
  for (int t = 0; t < 10; ++t) {
    KronRep m(2, 2, random_matrix(f, 2, 2, rng), random_matrix(f, 2, 2, rng));
    CHECK(ext1_dim(f, p1, m) == 0);
    CHECK(ext1_dim(f, p2, m) == 0);
    CHECK(ext1_dim(f, m, i1) == 0);
    CHECK(ext1_dim(f, m, i2) == 0);
    // a projective cover argument identifies maps out of projectives with
    // the vertex spaces of the target
    CHECK(hom_dim(f, p1, m) == m.d1);
    CHECK(hom_dim(f, p2, m) == m.d2);
  }

  KronRep r0 = ray_module(f, QuasiSimple::at(0), 1);
  KronRep r1 = ray_module(f, QuasiSimple::at(1), 1);
  KronRep ri = ray_module(f, QuasiSimple::infinity(), 1);
  CHECK(hom_dim(f, r0, r1) == 0);
  CHECK(hom_dim(f, r0, ri) == 0);
  CHECK(hom_dim(f, r0, r0) == 1);
  CHECK(ext1_dim(f, r0, r0) == 1);
  CHECK(ext1_dim(f, r0, r1) == 0);
  CHECK(ext1_dim(f, ri, ri) == 1);
}

TEST_CASE("ext dimensions match the presentation oracle") {
  for (int64_t q : {2, 3}) {
    Fq f(q);
    auto pool = small_pool(f);
    for (const auto& x : pool)
      for (const auto& y : pool) {
        INFO(x.to_string(), " vs ", y.to_string(), " over q=", q);
        int64_t e = ext1_dim(f, x, y);
        CHECK(e == ext1_dim_oracle(f, x, y));
        CHECK(e >= 0);
      }
    std::mt19937_64 rng(0xB10C + q);
    for (int t = 0; t < 30; ++t) {
      int64_t a1 = int64_t(rng() % 4), a2 = int64_t(rng() % 4);
      int64_t b1 = int64_t(rng() % 4), b2 = int64_t(rng() % 4);
      KronRep x(a1, a2, random_matrix(f, a2, a1, rng),
                random_matrix(f, a2, a1, rng));
      KronRep y(b1, b2, random_matrix(f, b2, b1, rng),
                random_matrix(f, b2, b1, rng));
      CHECK(ext1_dim(f, x, y) == ext1_dim_oracle(f, x, y));
      CHECK(ext1_dim(f, x, y) >= 0);
    }
  }
}

TEST_CASE("quasi simple count is q plus one") {
  for (int64_t q : {2, 3, 4, 5}) {
    Fq f(q);
    auto qs = all_quasisimples(f);
    CHECK(int64_t(qs.size()) == q + 1);
    // distinct points give orthogonal simple regulars
    for (size_t i = 0; i < qs.size(); ++i)
      for (size_t j = 0; j < qs.size(); ++j) {
        int64_t h = hom_dim(f, quasi_simple_rep(f, qs[i]),
                            quasi_simple_rep(f, qs[j]));
        CHECK(h == (i == j ? 1 : 0));
      }
  }
}

TEST_CASE("rays embeddings and projections") {
  Fq f(5);
  for (const auto& s : {QuasiSimple::at(2), QuasiSimple::infinity()}) {
    for (int64_t m = 1; m <= 3; ++m) {
      KronRep lo = ray_module(f, s, m);
      KronRep hi = ray_module(f, s, m + 1);
      KronHom e = ray_embedding(f, s, m);
      KronHom p = coray_projection(f, s, m);
      CHECK(is_hom(f, lo, hi, e));
      CHECK(is_hom(f, hi, lo, p));
      CHECK(classify_indec(f, lo) == KronClass::Regular);

      // both short exact sequences around a ray have simple regular edge
      KronRep ck = hom_cokernel(f, lo, hi, e);
      KronRep kr = hom_kernel(f, hi, lo, p);
      CHECK(ck.dim_vector() == std::pair<int64_t, int64_t>(1, 1));
      CHECK(kr.dim_vector() == std::pair<int64_t, int64_t>(1, 1));
      CHECK(is_iso(f, ck, quasi_simple_rep(f, s)));
      CHECK(is_iso(f, kr, quasi_simple_rep(f, s)));
    }
    // maps into deeper ray stages only accumulate
    std::mt19937_64 rng(0xACED);
    for (int t = 0; t < 5; ++t) {
      KronRep m(2, 2, random_matrix(f, 2, 2, rng),
                random_matrix(f, 2, 2, rng));
      int64_t prev = hom_dim(f, m, ray_module(f, s, 1));
      for (int64_t k = 2; k <= 4; ++k) {
        int64_t cur = hom_dim(f, m, ray_module(f, s, k));
        CHECK(cur >= prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("coxeter reflections on projectives and injectives") {
  Fq f(2);
  CHECK(coxeter_plus(f, KronRep::proj(1)).is_zero());
  CHECK(coxeter_plus(f, KronRep::proj(2)).is_zero());
  CHECK(coxeter_minus(f, KronRep::inj(1)).is_zero());
  CHECK(coxeter_minus(f, KronRep::inj(2)).is_zero());
  CHECK(coxeter_plus(f, KronRep::inj(1)).dim_vector() ==
        std::pair<int64_t, int64_t>(3, 2));
  CHECK(coxeter_minus(f, KronRep::proj(2)).dim_vector() ==
        std::pair<int64_t, int64_t>(2, 3));

  // orbit dimension vectors on both sides
  for (int64_t i = 0; i <= 5; ++i) {
    CHECK(preproj(f, i).dim_vector() ==
          std::pair<int64_t, int64_t>(i, i + 1));
    CHECK(preinj(f, i).dim_vector() ==
          std::pair<int64_t, int64_t>(i + 1, i));
  }
}

TEST_CASE("translate fixes tubes and shifts orbits") {
  Fq f(3);
  for (const auto& s : all_quasisimples(f))
    for (int64_t m = 1; m <= 2; ++m) {
      KronRep r = ray_module(f, s, m);
      KronRep t = ar_translate(f, r);
      CHECK(is_iso(f, t, r));
      CHECK(is_iso(f, ar_translate_inverse(f, t), r));
    }

  CHECK(is_iso(f, ar_translate(f, preinj(f, 0)), preinj(f, 2)));
  CHECK(is_iso(f, ar_translate(f, preinj(f, 1)), preinj(f, 3)));
  CHECK(is_iso(f, ar_translate(f, preproj(f, 3)), preproj(f, 1)));
  CHECK(is_iso(f, ar_translate_inverse(f, preproj(f, 1)), preproj(f, 3)));

  CHECK_THROWS_AS(ar_translate(f, KronRep::proj(1)), ProjectiveInputError);
  CHECK_THROWS_AS(ar_translate(f, KronRep::proj(2)), ProjectiveInputError);
  CHECK_THROWS_AS(ar_translate(f, direct_sum(preinj(f, 2), KronRep::proj(1))),
                  ProjectiveInputError);
  CHECK_THROWS_AS(ar_translate_inverse(f, KronRep::inj(1)),
                  InjectiveInputError);
  CHECK_THROWS_AS(ar_translate_inverse(f, KronRep::inj(2)),
                  InjectiveInputError);
}

TEST_CASE("defect separates the three classes") {
  Fq f(2);
  for (int64_t i = 0; i <= 6; ++i) {
    KronRep pp = preproj(f, i), pi = preinj(f, i);
    CHECK(classify_indec(f, pp) == KronClass::Preprojective);
    CHECK(classify_indec(f, pi) == KronClass::Preinjective);
    CHECK(pp.d1 - pp.d2 == -1);
    CHECK(pi.d1 - pi.d2 == 1);
  }
  for (const auto& s : all_quasisimples(f))
    for (int64_t m = 1; m <= 3; ++m) {
      KronRep r = ray_module(f, s, m);
      CHECK(classify_indec(f, r) == KronClass::Regular);
      CHECK(r.d1 == r.d2);
    }
}

TEST_CASE("decompose recovers shuffled direct sums") {
  Fq f(2);
  std::mt19937_64 rng(0xDECAF);

  KronRep sum = direct_sum(
      direct_sum(preproj(f, 1), ray_module(f, QuasiSimple::at(1), 2)),
      preinj(f, 2));
  KronRep hidden = conjugate(f, sum, rng);
  auto parts = decompose(f, hidden);
  REQUIRE(parts.size() == 3);
  int64_t total1 = 0, total2 = 0;
  for (const auto& p : parts) {
    total1 += p.d1;
    total2 += p.d2;
  }
  CHECK(total1 == sum.d1);
  CHECK(total2 == sum.d2);
  CHECK(is_iso(f, hidden, sum));

  // multiplicities of one indecomposable
  KronRep twice = conjugate(f, direct_sum(preproj(f, 2), preproj(f, 2)), rng);
  auto tp = decompose(f, twice);
  REQUIRE(tp.size() == 2);
  CHECK(is_iso(f, tp[0], preproj(f, 2)));
  CHECK(is_iso(f, tp[1], preproj(f, 2)));

  // a simple regular module with endomorphism field larger than the base:
  // the quadratic companion pencil has no rational eigenvalue, so peeling
  // by parametrized candidates fails and the splitter takes over
  FqMat comp(2, 2);
  comp.at(0, 1) = 1;
  comp.at(1, 0) = 1;
  comp.at(1, 1) = 1;
  KronRep quad(2, 2, FqMat::identity(2), comp);
  CHECK(classify_indec(f, quad) == KronClass::Regular);
  CHECK(decompose(f, quad).size() == 1);
  KronRep two_quads = conjugate(f, direct_sum(quad, quad), rng);
  auto qp = decompose(f, two_quads);
  REQUIRE(qp.size() == 2);
  for (const auto& p : qp) {
    CHECK(p.dim_vector() == std::pair<int64_t, int64_t>(2, 2));
    CHECK(is_iso(f, p, quad));
  }

  // a homogeneous pile of one orbit representative
  KronRep pile = conjugate(f, repeat_rep(preproj(f, 3), 3), rng);
  auto pp = decompose(f, pile);
  REQUIRE(pp.size() == 3);
  for (const auto& p : pp)
    CHECK(p.dim_vector() == std::pair<int64_t, int64_t>(3, 4));

  auto classified = classify(f, hidden);
  REQUIRE(classified.size() == 3);
  int preproj_count = 0, reg_count = 0, preinj_count = 0;
  for (const auto& c : classified) {
    if (c.cls == KronClass::Preprojective) ++preproj_count;
    if (c.cls == KronClass::Regular) ++reg_count;
    if (c.cls == KronClass::Preinjective) ++preinj_count;
  }
  CHECK(preproj_count == 1);
  CHECK(reg_count == 1);
  CHECK(preinj_count == 1);
}

TEST_CASE("is iso detects equivalence and distinguishes rays") {
  Fq f(3);
  std::mt19937_64 rng(0x15011);
  KronRep a = direct_sum(preproj(f, 0), ray_module(f, QuasiSimple::at(2), 1));
  CHECK(is_iso(f, conjugate(f, a, rng), a));
  CHECK_FALSE(is_iso(f, a, direct_sum(preproj(f, 0),
                                      ray_module(f, QuasiSimple::at(1), 1))));
  // a length two ray is not two copies of its socle
  KronRep r2 = ray_module(f, QuasiSimple::at(0), 2);
  KronRep ss = repeat_rep(ray_module(f, QuasiSimple::at(0), 1), 2);
  CHECK_FALSE(is_iso(f, r2, ss));
  CHECK_FALSE(is_iso(f, preproj(f, 1), preinj(f, 1)));
}

TEST_CASE("generic pencil ranks") {
  Fq f(2);
  for (int64_t i = 0; i <= 4; ++i) {
    CHECK(generic_hom_to(f, preproj(f, i)) == 1);
    CHECK(generic_hom_from(f, preproj(f, i)) == 0);
    CHECK(generic_hom_to(f, preinj(f, i)) == 0);
    CHECK(generic_hom_from(f, preinj(f, i)) == 1);
  }
  for (const auto& s : all_quasisimples(f))
    for (int64_t m = 1; m <= 3; ++m) {
      CHECK(generic_hom_to(f, ray_module(f, s, m)) == 0);
      CHECK(generic_hom_from(f, ray_module(f, s, m)) == 0);
    }
}

TEST_CASE("hom and ext verdicts against atoms") {
  Fq f(2);
  QuasiSimple z = QuasiSimple::at(0), o = QuasiSimple::at(1);
  KronExpr p1 = KronExpr::indec(KronRep::proj(1));
  KronExpr p2 = KronExpr::indec(KronRep::proj(2));
  KronExpr q0 = KronExpr::indec(preinj(f, 0));
  KronExpr q1 = KronExpr::indec(preinj(f, 1));
  KronExpr rz = KronExpr::indec(ray_module(f, z, 1));
  KronExpr rz2 = KronExpr::indec(ray_module(f, z, 2));
  KronExpr ro = KronExpr::indec(ray_module(f, o, 1));

  KronExpr pruef = KronExpr::atom(KronAtom::pruefer(z));
  KronExpr adicz = KronExpr::atom(KronAtom::adic(z));
  KronExpr adico = KronExpr::atom(KronAtom::adic(o));
  KronExpr gen = KronExpr::atom(KronAtom::generic());
  KronExpr luk = KronExpr::atom(KronAtom::lukas());
  KronExpr wco = KronExpr::atom(KronAtom::w_cotilt());

  // maps into a limit along ray embeddings
  CHECK(hom_verdict(f, p2, pruef).known_nonzero());
  CHECK(hom_verdict(f, rz, pruef).known_nonzero());
  CHECK(hom_verdict(f, rz2, pruef).known_nonzero());
  CHECK(hom_verdict(f, ro, pruef).known_zero());
  CHECK(hom_verdict(f, q0, pruef).known_zero());
  CHECK(hom_verdict(f, q1, pruef).known_zero());

  // maps into a limit along coray projections
  CHECK(hom_verdict(f, p1, adicz).known_nonzero());
  CHECK(hom_verdict(f, p2, adicz).known_nonzero());
  CHECK(hom_verdict(f, rz, adicz).known_zero());
  CHECK(hom_verdict(f, rz2, adicz).known_zero());
  CHECK(hom_verdict(f, ro, adicz).known_zero());
  CHECK(hom_verdict(f, q0, adicz).known_zero());
  CHECK(hom_verdict(f, q1, adicz).known_zero());

  // maps out of those limits factor through finite stages
  CHECK(hom_verdict(f, pruef, rz).known_zero());
  CHECK(hom_verdict(f, pruef, p1).known_zero());
  CHECK(hom_verdict(f, adicz, rz).known_nonzero());
  CHECK(hom_verdict(f, adicz, ro).known_zero());
  CHECK(hom_verdict(f, adicz, q0).known_nonzero());
  CHECK(hom_verdict(f, adicz, p1).known_zero());

  // the generic object sits between the classes
  CHECK(hom_verdict(f, p1, gen).known_nonzero());
  CHECK(hom_verdict(f, p2, gen).known_nonzero());
  CHECK(hom_verdict(f, rz, gen).known_zero());
  CHECK(hom_verdict(f, q0, gen).known_zero());
  CHECK(hom_verdict(f, gen, q0).known_nonzero());
  CHECK(hom_verdict(f, gen, rz).known_zero());
  CHECK(hom_verdict(f, gen, p1).known_zero());

  // the large tilting object receives maps exactly from preprojective
  // summands, the cotilting one also from regulars through its limit parts
  CHECK(hom_verdict(f, p1, luk).known_nonzero());
  CHECK(hom_verdict(f, p2, luk).known_nonzero());
  CHECK(hom_verdict(f, rz, luk).known_zero());
  CHECK(hom_verdict(f, rz2, luk).known_zero());
  CHECK(hom_verdict(f, q0, luk).known_zero());
  CHECK(hom_verdict(f, q1, luk).known_zero());
  CHECK(hom_verdict(f, p1, wco).known_nonzero());
  CHECK(hom_verdict(f, rz, wco).known_nonzero());
  CHECK(hom_verdict(f, rz2, wco).known_nonzero());
  CHECK(hom_verdict(f, ro, wco).known_nonzero());
  CHECK(hom_verdict(f, q0, wco).known_zero());
  CHECK(hom_verdict(f, q1, wco).known_zero());

  // divisible targets kill extensions
  CHECK(ext_verdict(f, rz, pruef).known_zero());
  CHECK(ext_verdict(f, q0, pruef).known_zero());
  CHECK(ext_verdict(f, rz, gen).known_zero());

  // extensions against an adic limit concentrate in the same tube
  CHECK(ext_verdict(f, rz, adicz).known_nonzero());
  CHECK(ext_verdict(f, rz2, adicz).known_nonzero());
  CHECK(ext_verdict(f, ro, adicz).known_zero());
  CHECK(ext_verdict(f, rz, adico).known_zero());
  CHECK(ext_verdict(f, p1, adicz).known_zero());
  CHECK(ext_verdict(f, p2, adicz).known_zero());

  // the cotilting class keeps all torsion-free modules, only preinjectives
  // fall out of it
  CHECK(ext_verdict(f, p1, wco).known_zero());
  CHECK(ext_verdict(f, p2, wco).known_zero());
  CHECK(ext_verdict(f, rz, wco).known_zero());
  CHECK(ext_verdict(f, ro, wco).known_zero());
  CHECK(ext_verdict(f, q0, wco).known_nonzero());
  CHECK(ext_verdict(f, q1, wco).known_nonzero());
  CHECK(ext_verdict(f, p1, luk).known_zero());
  CHECK(ext_verdict(f, rz, luk).known_zero());
  CHECK(ext_verdict(f, q0, luk).is_unknown());
  CHECK(ext_verdict(f, q1, luk).is_unknown());

  // localization targets through the adjoint over the ring epimorphism
  KronExpr locz = KronExpr::atom(KronAtom::loc_points({z}));
  KronExpr loczd = KronExpr::atom(KronAtom::loc_points({z}, true));
  CHECK(hom_verdict(f, rz, locz).known_zero());
  CHECK(hom_verdict(f, rz2, locz).known_zero());
  CHECK(hom_verdict(f, ro, locz).known_zero());
  CHECK(hom_verdict(f, q0, locz).known_zero());
  CHECK(hom_verdict(f, p1, locz).known_nonzero());
  CHECK(ext_verdict(f, rz, locz).known_zero());
  CHECK(ext_verdict(f, ro, locz).is_unknown());
  CHECK(hom_verdict(f, rz, loczd).known_zero());
  CHECK(hom_verdict(f, ro, loczd).known_nonzero());
  CHECK(hom_verdict(f, p1, loczd).known_nonzero());
  CHECK(hom_verdict(f, q0, loczd).known_nonzero());
  CHECK(ext_verdict(f, rz, loczd).known_zero());
  CHECK(ext_verdict(f, ro, loczd).known_zero());
  CHECK(ext_verdict(f, p1, loczd).known_zero());
  CHECK(ext_verdict(f, q0, loczd).known_nonzero());
  CHECK(hom_verdict(f, locz, rz).known_zero());

  // atom against atom
  CHECK(hom_verdict(f, pruef, pruef).known_nonzero());
  CHECK(hom_verdict(f, pruef, adicz).known_zero());
  CHECK(hom_verdict(f, gen, adicz).known_zero());
  CHECK(hom_verdict(f, adico, adicz).known_zero());
  CHECK(hom_verdict(f, adicz, pruef).known_nonzero());
  CHECK(hom_verdict(f, adico, pruef).known_zero());
  CHECK(hom_verdict(f, pruef, KronExpr::atom(KronAtom::pruefer(o)))
            .known_zero());
  CHECK(hom_verdict(f, pruef, gen).known_zero());
  CHECK(hom_verdict(f, locz, adicz).known_zero());
  CHECK(hom_verdict(f, luk, adicz).is_unknown());

  // unknown propagation never turns into a definite answer, while a
  // definite nonzero summand dominates any unknown one
  KronExpr mix = rz.direct_sum(ro);
  CHECK(ext_verdict(f, mix, locz).is_unknown());
  CHECK(hom_verdict(f, mix.direct_sum(p1), loczd).known_nonzero());
}

TEST_CASE("expressions complexes shift and duality") {
  Fq f(2);
  KronRep p1 = KronRep::proj(1);

  // direct sums merge structurally equal indecomposables
  KronExpr e = KronExpr::indec(p1).direct_sum(KronExpr::indec(p1));
  REQUIRE(e.terms().size() == 1);
  CHECK(e.terms()[0].mult == Mult::finite(2));
  CHECK(e.total_dim() == std::pair<int64_t, int64_t>(2, 4));

  KronExpr viaRep = KronExpr::from_rep(f, repeat_rep(p1, 2));
  CHECK(viaRep == e);

  // empty localization target expands to the algebra
  KronExpr alg = KronExpr::atom(KronAtom::loc_points({}));
  CHECK(alg.is_fd());
  CHECK(alg.total_dim() == std::pair<int64_t, int64_t>(1, 3));
  KronExpr algd = KronExpr::atom(KronAtom::loc_points({}, true));
  CHECK(algd.total_dim() == std::pair<int64_t, int64_t>(3, 1));

  // transpose duality is an involution exchanging the two sides
  CHECK(transpose_dual(transpose_dual(preproj(f, 2))) == preproj(f, 2));
  CHECK(transpose_dual(KronRep::proj(1)) == KronRep::inj(2));
  CHECK(transpose_dual(KronRep::proj(2)) == KronRep::inj(1));
  Fq f3(3);
  CHECK(is_iso(f3, transpose_dual(ray_module(f3, QuasiSimple::at(1), 2)),
               ray_module(f3, QuasiSimple::at(1), 2)));

  KronExpr expr = KronExpr::indec(preproj(f, 1))
                      .direct_sum(KronExpr::atom(KronAtom::pruefer(
                          QuasiSimple::at(0))));
  KronExpr dual = kron_expr_dual(expr);
  bool saw_adic = false, saw_rep = false;
  for (const auto& t : dual.terms()) {
    if (t.is_atom) {
      CHECK(t.atom.kind() == KronAtomKind::Adic);
      saw_adic = true;
    } else {
      CHECK(t.rep == transpose_dual(preproj(f, 1)));
      saw_rep = true;
    }
  }
  CHECK(saw_adic);
  CHECK(saw_rep);
  CHECK_THROWS_AS(kron_expr_dual(KronExpr::atom(KronAtom::generic())),
                  KronUndualizableError);
  CHECK_THROWS_AS(kron_expr_dual(KronExpr::atom(KronAtom::w_cotilt())),
                  KronUndualizableError);

  // complexes: shifting moves entries, dualizing reflects degrees
  KronComplex c = KronComplex::stalk(0, e);
  c.set_entry(-2, KronExpr::indec(preinj(f, 0)));
  CHECK(c.min_degree() == -2);
  CHECK(c.max_degree() == 0);
  KronComplex sh = shift(c, 3);
  CHECK(sh.entry(-3) == e);
  CHECK(sh.entry(-5) == KronExpr::indec(preinj(f, 0)));
  for (int64_t n = -6; n <= 2; ++n) CHECK(sh.entry(n) == c.entry(n + 3));

  KronComplex d = plus_dual(c);
  CHECK(d.entry(2) == KronExpr::indec(transpose_dual(preinj(f, 0))));
  CHECK(d.entry(0).total_dim() == std::pair<int64_t, int64_t>(4, 2));
  CHECK(plus_dual(d) == c);
}

TEST_CASE("derived hom on stalk complexes") {
  Fq f(2);
  KronExpr s1 = KronExpr::indec(KronRep::simple(1));
  KronExpr s2 = KronExpr::indec(KronRep::simple(2));
  KronComplex x = KronComplex::stalk(0, s1);
  KronComplex y = KronComplex::stalk(0, s2);

  // degree one picks up the extension space between stalks
  auto v0 = derived_hom(f, x, y, 0);
  CHECK(v0.known_zero());
  auto v1 = derived_hom(f, x, y, 1);
  CHECK(v1.known_nonzero());
  REQUIRE(v1.dimension().has_value());
  CHECK(*v1.dimension() == 2);
  CHECK(derived_hom(f, x, y, 2).known_zero());
  CHECK(derived_hom(f, x, x, 0).known_nonzero());

  // shifting the source raises the interesting degree, shifting the target
  // lowers it
  CHECK(derived_hom(f, shift(x, 1), y, 2).known_nonzero());
  CHECK(derived_hom(f, shift(x, 1), y, 1).known_zero());
  CHECK(derived_hom(f, x, shift(y, 1), 0).known_nonzero());
  CHECK(derived_hom(f, x, shift(y, 1), 1).known_zero());

  // self extensions of a tube stalk sit in every positive degree window
  KronExpr rz = KronExpr::indec(ray_module(f, QuasiSimple::at(0), 1));
  KronComplex t = KronComplex::stalk(0, rz);
  auto self1 = derived_hom(f, t, t, 1);
  REQUIRE(self1.dimension().has_value());
  CHECK(*self1.dimension() == 1);
  CHECK(derived_hom(f, t, t, -1).known_zero());

  CHECK(derived_hom(f, KronComplex::zero(), t, 0).known_zero());
}

TEST_CASE("hom basis elements intertwine and kernels complement") {
  Fq f(3);
  std::mt19937_64 rng(0x0DDC0DE);
  for (int t = 0; t < 12; ++t) {
    int64_t a1 = 1 + int64_t(rng() % 3), a2 = 1 + int64_t(rng() % 3);
    int64_t b1 = 1 + int64_t(rng() % 3), b2 = 1 + int64_t(rng() % 3);
    KronRep m(a1, a2, random_matrix(f, a2, a1, rng),
              random_matrix(f, a2, a1, rng));
    KronRep n(b1, b2, random_matrix(f, b2, b1, rng),
              random_matrix(f, b2, b1, rng));
    auto basis = hom_basis(f, m, n);
    CHECK(int64_t(basis.size()) == hom_dim(f, m, n));
    for (const auto& h : basis) {
      CHECK(is_hom(f, m, n, h));
      KronRep ker = hom_kernel(f, m, n, h);
      KronRep cok = hom_cokernel(f, m, n, h);
      CHECK(ker.d1 == m.d1 - fq_rank(f, h.f1));
      CHECK(ker.d2 == m.d2 - fq_rank(f, h.f2));
      CHECK(cok.d1 == n.d1 - fq_rank(f, h.f1));
      CHECK(cok.d2 == n.d2 - fq_rank(f, h.f2));
    }
  }
}
