#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tsilt/kronrep.hpp"

namespace tsilt {

// thrown when an operation needs finite dimensional reflection data but the
// epimorphism class only exists as an infinite dimensional localization
struct UnsupportedEpiError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class KronEpiTag { Zero, PPLoc, PILoc, UL, Id };

// An element of the homological ring epimorphism lattice: the zero ring at
// the bottom, the identity at the top, the finite dimensional universal
// localizations at a single preprojective or preinjective module, and the
// infinite dimensional localizations inverting a set of rational points.
class KronEpi {
 public:
  static KronEpi zero();
  static KronEpi id();
  static KronEpi pp_loc(int64_t i);
  static KronEpi pi_loc(int64_t i);
  // sorts and dedups; an empty point set inverts nothing and collapses to id
  static KronEpi ul(std::vector<QuasiSimple> pts);

  KronEpiTag tag() const { return tag_; }
  int64_t index() const;                           // PPLoc / PILoc
  const std::vector<QuasiSimple>& points() const;  // UL

  bool operator==(const KronEpi&) const = default;
  bool operator<(const KronEpi& o) const;
  std::string to_string() const;

 private:
  KronEpi(KronEpiTag t, int64_t i, std::vector<QuasiSimple> p)
      : tag_(t), index_(i), points_(std::move(p)) {}
  KronEpiTag tag_ = KronEpiTag::Id;
  int64_t index_ = 0;
  std::vector<QuasiSimple> points_;
};

// The partial order of the epimorphism poset: zero below everything, id
// above everything, point localizations ordered by reverse inclusion of the
// inverted sets, and all finite dimensional classes pairwise incomparable.
bool kron_leq(const KronEpi& x, const KronEpi& y);
KronEpi kron_meet(const KronEpi& x, const KronEpi& y);
KronEpi kron_join(const KronEpi& x, const KronEpi& y);

// the module whose perpendicular category the localization carves out:
// preproj(i) for pp_loc(i), preinj(i) for pi_loc(i); throws otherwise
KronRep exceptional_module(const Fq& f, const KronEpi& e);

// the epimorphism class playing the same role on the other side of the
// algebra: pp_loc(0) and pp_loc(1) swap, the remaining preprojective and
// preinjective classes shift against each other by two tau steps
KronEpi transpose_epi(const KronEpi& e);

// Reflection of a module into the perpendicular category of the class: a
// trace quotient killing all maps from the exceptional module followed by a
// universal extension killing the remaining first extensions. The identity
// returns the module itself and the zero class the zero module; point
// localizations have no finite dimensional image and throw.
KronRep reflect(const Fq& f, const KronRep& m, const KronEpi& e);

// the reflected algebra together with the kernel and cokernel of the unit
// map from the algebra into it
struct KronReflData {
  KronRep b;
  KronRep ker;
  KronRep coker;
};
KronReflData reflect_algebra(const Fq& f, const KronEpi& e);

// A chain of epimorphism classes indexed by the degree line: the zero class
// strictly below offset, the listed levels from offset on, and the identity
// after the list ends.
class KronChain {
 public:
  KronChain() = default;
  KronChain(int64_t offset, std::vector<KronEpi> levels);

  int64_t offset() const { return offset_; }
  const std::vector<KronEpi>& levels() const { return levels_; }
  KronEpi level(int64_t degree) const;

  // drops leading zero and trailing identity levels, shifting the offset
  KronChain canonical() const;
  bool operator==(const KronChain&) const = default;
  std::string to_string() const;

 private:
  int64_t offset_ = 0;
  std::vector<KronEpi> levels_;
};

struct KronChainDiagnostics {
  bool valid = true;
  std::vector<std::string> errors;
  std::string to_string() const;
};

// each level must sit below the next one in the lattice order; violations
// are reported as NOT_MONOTONE(j) for the first offending index
KronChainDiagnostics validate_kron_chain(const KronChain& c);

// heart boundary of the tilted t-structure living over the torsion-free
// class of the big cotilting module, with nothing below the given degree
struct HrsAt {
  int64_t level = 0;
  bool operator==(const HrsAt&) const = default;
};

using KronTStr = std::variant<KronChain, HrsAt>;

enum class Membership { In, Out, Unknown };

// Degreewise coaisle test: at every degree the cohomology must be
// cogenerated by the reflected algebra of the current level and lie in the
// perpendicular category of the next one. Definite violations win over
// unknowns; otherwise any unresolved verdict makes the answer Unknown.
Membership tstructure_member_kron(const Fq& f, const KronComplex& x,
                                  const KronChain& c);
Membership tstructure_member_kron(const Fq& f, const KronComplex& x,
                                  const KronTStr& t);

// parameter families for the classified cosilting complexes
enum class KronCase { Hrs, FinDim, PointChain };

struct KronParams {
  KronCase kind = KronCase::Hrs;
  int64_t shift = 0;                           // Hrs
  KronEpi epi = KronEpi::id();                 // FinDim
  int64_t l = 0;                               // FinDim / PointChain
  int64_t m = 0;                               // FinDim, l <= m
  std::vector<std::vector<QuasiSimple>> sets;  // PointChain, decreasing

  static KronParams hrs(int64_t s);
  static KronParams fin_dim(KronEpi e, int64_t l, int64_t m);
  static KronParams point_chain(int64_t l,
                                std::vector<std::vector<QuasiSimple>> sets);
  bool operator==(const KronParams&) const = default;
};

// the t-structure the parameters classify; the finite dimensional and point
// chain cases are genuine chains, the remaining case is the tilted heart
KronTStr tstr_of_params(const KronParams& p);
std::optional<KronChain> chain_of_params(const KronParams& p);

// The silting and cosilting complexes attached to the parameters. The two
// builders follow the two sides of the classification independently and are
// exchanged by the degreewise character dual.
KronComplex build_kron_silting(const Fq& f, const KronParams& p);
KronComplex build_kron_cosilting(const Fq& f, const KronParams& p);

// All chains through the finite dimensional part of the lattice with level
// index at most index_bound and at most length_bound non extreme levels,
// paired with their compact silting complexes, deduplicated up to shift.
std::vector<std::pair<KronChain, KronComplex>> enumerate_compact_silting(
    const Fq& f, int64_t index_bound, int64_t length_bound);

}  // namespace tsilt
