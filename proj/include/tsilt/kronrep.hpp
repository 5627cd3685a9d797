#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tsilt/gf.hpp"
#include "tsilt/zatoms.hpp"

namespace tsilt {

// thrown by the AR translate when the input has a projective summand
struct ProjectiveInputError : std::domain_error {
  using std::domain_error::domain_error;
};

// thrown by the inverse AR translate when the input has an injective summand
struct InjectiveInputError : std::domain_error {
  using std::domain_error::domain_error;
};

// thrown when an infinite-dimensional object has no usable character dual
struct KronUndualizableError : std::domain_error {
  using std::domain_error::domain_error;
};

// Representation of the double-arrow quiver with source vertex 1 and sink
// vertex 2, used as a model for left modules over the corresponding path
// algebra. Both structure maps go from the vertex-1 space to the vertex-2
// space, so a and b are d2 x d1 matrices over the same field.
struct KronRep {
  int64_t d1 = 0;
  int64_t d2 = 0;
  FqMat a;
  FqMat b;

  KronRep() = default;
  KronRep(int64_t dim1, int64_t dim2, FqMat ma, FqMat mb);

  static KronRep zero();
  // P(1) has dimension vector (1,2), P(2) = simple at the sink
  static KronRep proj(int v);
  // I(1) = simple at the source, I(2) has dimension vector (2,1)
  static KronRep inj(int v);
  static KronRep simple(int v);

  int64_t total_dim() const { return d1 + d2; }
  std::pair<int64_t, int64_t> dim_vector() const { return {d1, d2}; }
  bool is_zero() const { return d1 == 0 && d2 == 0; }
  bool operator==(const KronRep&) const = default;
  std::string to_string() const;
};

KronRep direct_sum(const KronRep& x, const KronRep& y);
KronRep repeat_rep(const KronRep& x, int64_t n);

// vector-space dual: swaps the two vertices and transposes both matrices,
// exchanging projectives and injectives
KronRep transpose_dual(const KronRep& x);

// the preprojective and preinjective modules, indexed along their tau orbits
// starting from the smallest one: preproj(0) is the simple projective,
// preproj(1) the other projective, preproj(i) = tau^{-}(preproj(i-2)), with
// dimension vectors (i, i+1); dually preinj(0) is the simple injective and
// preinj(i) has dimension vector (i+1, i)
KronRep preproj(const Fq& f, int64_t i);
KronRep preinj(const Fq& f, int64_t i);

// point of the projective line over the base field, normalized to either
// [lambda : 1] with lambda a field element or the point at infinity [1 : 0]
class QuasiSimple {
 public:
  static QuasiSimple at(int64_t lambda);
  static QuasiSimple infinity();

  bool is_infinity() const { return infinite_; }
  int64_t lambda() const; // throws on the infinite point
  // homogeneous coordinates, [lambda, 1] or [1, 0]
  std::pair<int64_t, int64_t> coords() const;

  bool operator==(const QuasiSimple&) const = default;
  bool operator<(const QuasiSimple& o) const;
  std::string to_string() const;

 private:
  QuasiSimple(bool inf, int64_t l) : infinite_(inf), lambda_(l) {}
  bool infinite_ = false;
  int64_t lambda_ = 0;
};

// all q+1 rational points of the projective line, sorted
std::vector<QuasiSimple> all_quasisimples(const Fq& f);

// the regular indecomposable of regular length m on the ray through the
// point s; m = 1 gives the quasi-simple representation itself
KronRep ray_module(const Fq& f, const QuasiSimple& s, int64_t m);
KronRep quasi_simple_rep(const Fq& f, const QuasiSimple& s);

// a homomorphism between two representations, stored as its two vertex
// components; f1 acts on the vertex-1 spaces and f2 on the vertex-2 spaces
struct KronHom {
  FqMat f1;
  FqMat f2;
  bool operator==(const KronHom&) const = default;
};

// the canonical inclusion ray(s,m) -> ray(s,m+1)
KronHom ray_embedding(const Fq& f, const QuasiSimple& s, int64_t m);
// the canonical surjection ray(s,m+1) -> ray(s,m) killing the socle
KronHom coray_projection(const Fq& f, const QuasiSimple& s, int64_t m);

std::vector<KronHom> hom_basis(const Fq& f, const KronRep& m,
                               const KronRep& n);
int64_t hom_dim(const Fq& f, const KronRep& m, const KronRep& n);
// g after h, both components multiplied
KronHom compose(const Fq& f, const KronHom& g, const KronHom& h);
bool is_iso_hom(const Fq& f, const KronRep& m, const KronRep& n,
                const KronHom& h);

// kernel and cokernel of a homomorphism h: m -> n as representations in the
// bases produced by the kernel and cokernel routines of the field layer
KronRep hom_kernel(const Fq& f, const KronRep& m, const KronRep& n,
                   const KronHom& h);
KronRep hom_cokernel(const Fq& f, const KronRep& m, const KronRep& n,
                     const KronHom& h);

// Euler form <x,y> = x1 y1 + x2 y2 - 2 x1 y2 on dimension vectors; equals
// dim Hom - dim Ext^1 for any two representations with these vectors
int64_t euler_form(std::pair<int64_t, int64_t> x, std::pair<int64_t, int64_t> y);
int64_t ext1_dim(const Fq& f, const KronRep& m, const KronRep& n);
// independent recomputation through the canonical projective presentation
// 0 -> P(2)^{2 m1} -> P(1)^{m1} + P(2)^{m2} -> M -> 0
int64_t ext1_dim_oracle(const Fq& f, const KronRep& m, const KronRep& n);

// Coxeter functors given by composing the two sink (resp. source)
// reflections; coxeter_plus kills projectives, coxeter_minus injectives
KronRep coxeter_plus(const Fq& f, const KronRep& m);
KronRep coxeter_minus(const Fq& f, const KronRep& m);
// AR translates; defined only away from projectives resp. injectives
KronRep ar_translate(const Fq& f, const KronRep& m);
KronRep ar_translate_inverse(const Fq& f, const KronRep& m);

enum class KronClass { Preprojective, Regular, Preinjective };

// full decomposition into indecomposables, each returned in a canonical
// presentation when one is known (preprojective, preinjective, or a ray
// module at a rational point)
std::vector<KronRep> decompose(const Fq& f, const KronRep& m);
KronClass classify_indec(const Fq& f, const KronRep& m);

struct ClassifiedSummand {
  KronRep rep;
  KronClass cls;
};
std::vector<ClassifiedSummand> classify(const Fq& f, const KronRep& m);

bool is_iso(const Fq& f, const KronRep& m, const KronRep& n);

// dimensions over the function field of the hom spaces into and out of the
// generic representation (function field at both vertices, with the two
// structure maps acting as the identity and as multiplication by t)
int64_t generic_hom_to(const Fq& f, const KronRep& m);
int64_t generic_hom_from(const Fq& f, const KronRep& m);

// large objects that cannot be stored as matrices: the Pruefer and adic
// limits along a ray, the generic representation, the module of a ray
// localization together with its character dual, the large tilting object
// of the torsion-free class and its dual cotilting object
enum class KronAtomKind { Pruefer, Adic, Generic, LocTarget, Lukas, WCotilt };

// which family of morphisms a localization target inverts
enum class LocRefKind { Points, Preproj, Preinj };

class KronAtom {
 public:
  static KronAtom pruefer(const QuasiSimple& s);
  static KronAtom adic(const QuasiSimple& s);
  static KronAtom generic();
  static KronAtom loc_points(std::vector<QuasiSimple> pts, bool dual = false);
  static KronAtom loc_preproj(int64_t i, bool dual = false);
  static KronAtom loc_preinj(int64_t i, bool dual = false);
  static KronAtom lukas();
  static KronAtom w_cotilt();

  KronAtomKind kind() const { return kind_; }
  const QuasiSimple& point() const;              // Pruefer / Adic
  LocRefKind loc_kind() const;                   // LocTarget
  const std::vector<QuasiSimple>& points() const; // LocTarget over points
  int64_t index() const;                          // LocTarget at pp/pi
  bool dualized() const;                          // LocTarget

  bool operator==(const KronAtom&) const = default;
  bool operator<(const KronAtom& o) const;
  std::string to_string() const;

 private:
  KronAtom() = default;
  KronAtomKind kind_ = KronAtomKind::Generic;
  bool has_point_ = false;
  QuasiSimple point_ = QuasiSimple::at(0);
  LocRefKind loc_kind_ = LocRefKind::Points;
  std::vector<QuasiSimple> points_;
  int64_t index_ = 0;
  bool dual_ = false;
};

// character dual on atoms: Pruefer and adic swap, the tilting object goes
// to the cotilting one, localization targets toggle their dual marker;
// throws for objects whose dual leaves the supported vocabulary
KronAtom kron_atom_dual(const KronAtom& a);

// one summand: either a finite-dimensional indecomposable in canonical
// presentation or an atom, with a multiplicity and a sum/product marker
struct KronTerm {
  bool is_atom = false;
  KronRep rep;
  KronAtom atom = KronAtom::generic();
  Mult mult = Mult::one();
  Flavor flavor = Flavor::Sum;
  bool operator==(const KronTerm&) const = default;
};

// formal direct sum of indecomposables and atoms, kept sorted and merged
class KronExpr {
 public:
  KronExpr() = default;
  static KronExpr zero() { return KronExpr(); }
  // decomposes the representation and canonicalizes each summand
  static KronExpr from_rep(const Fq& f, const KronRep& m);
  // trusts the argument to already be indecomposable and canonical
  static KronExpr indec(const KronRep& m, Mult mu = Mult::one(),
                        Flavor fl = Flavor::Sum);
  static KronExpr atom(const KronAtom& a, Mult mu = Mult::one(),
                       Flavor fl = Flavor::Sum);

  const std::vector<KronTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // no atoms and all multiplicities finite
  bool is_fd() const;
  std::pair<int64_t, int64_t> total_dim() const; // throws unless is_fd
  KronExpr direct_sum(const KronExpr& o) const;

  bool operator==(const KronExpr&) const = default;
  std::string to_string() const;

 private:
  void normalize();
  std::vector<KronTerm> terms_;
};

// termwise character dual; finite multiplicities keep their flavor readable
// as either a sum or a product
KronExpr kron_expr_dual(const KronExpr& x);

// bounded complex with zero differential, one expression per degree
class KronComplex {
 public:
  KronComplex() = default;
  static KronComplex zero() { return KronComplex(); }
  static KronComplex stalk(int64_t degree, const KronExpr& e);

  void set_entry(int64_t degree, const KronExpr& e);
  KronExpr entry(int64_t degree) const;
  const std::map<int64_t, KronExpr>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  int64_t min_degree() const; // throws on the zero complex
  int64_t max_degree() const;
  KronComplex direct_sum(const KronComplex& o) const;

  bool operator==(const KronComplex&) const = default;
  std::string to_string() const;

 private:
  std::map<int64_t, KronExpr> entries_;
};

// shift(x,k) places the old degree n+k entry in degree n
KronComplex shift(const KronComplex& x, int64_t k);
// degreewise dual: entry(n) of the dual is the dual of entry(-n)
KronComplex plus_dual(const KronComplex& x);

// outcome of a hom or ext computation that may involve atoms: either an
// exact dimension, a bare zero/nonzero answer, or an honest unknown
enum class KronVerdictStatus { Zero, NonZero, Unknown };

class KronVerdict {
 public:
  static KronVerdict zero(std::string note);
  static KronVerdict nonzero(std::string note);
  static KronVerdict dim(int64_t d, std::string note);
  static KronVerdict unknown(std::string note);

  KronVerdictStatus status() const { return status_; }
  bool known_zero() const { return status_ == KronVerdictStatus::Zero; }
  bool known_nonzero() const { return status_ == KronVerdictStatus::NonZero; }
  bool is_unknown() const { return status_ == KronVerdictStatus::Unknown; }
  // set only when an exact dimension was computed
  std::optional<int64_t> dimension() const { return dim_; }
  const std::string& note() const { return note_; }
  std::string to_string() const;

 private:
  KronVerdictStatus status_ = KronVerdictStatus::Unknown;
  std::optional<int64_t> dim_;
  std::string note_;
};

// Hom and Ext^1 verdicts between formal sums, termwise. Finite against
// finite is always exact; rules involving atoms return what the structure
// theory pins down and UNKNOWN otherwise.
KronVerdict hom_verdict(const Fq& f, const KronExpr& x, const KronExpr& y);
KronVerdict ext_verdict(const Fq& f, const KronExpr& x, const KronExpr& y);

// derived hom in cohomological degree k between complexes with zero
// differentials: collects hom in degree k and ext one step below, over all
// pairs of entries, using the hereditarity of the path algebra
KronVerdict derived_hom(const Fq& f, const KronComplex& x,
                        const KronComplex& y, int64_t k);

}  // namespace tsilt
