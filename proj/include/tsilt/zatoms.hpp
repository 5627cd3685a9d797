#pragma once

#include "tsilt/fgab.hpp"
#include "tsilt/primes.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsilt {

// raised when an operation would need a module outside the implemented
// vocabulary (e.g. the fraction field of the q-adics)
struct UnsupportedEntryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// raised when the character dual of an expression is not representable
struct UndualizableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ZAtomKind { Pruefer, Adic, Rationals, Loc, DualLoc };

// One infinite building block: Pruefer(p) = Z(p^infty), Adic(p) = J_p,
// Rationals = Q, Loc(P) = Z[P^-1], DualLoc(P) = Z[P^-1]^+ (character dual).
// Pruefer/Adic may carry a whole PrimeSet, denoting the indexed family over
// that set; singleton sets are the plain atoms.
class ZAtom {
 public:
  static ZAtom pruefer(int64_t p);
  static ZAtom adic(int64_t p);
  static ZAtom pruefer_family(const PrimeSet& s); // throws on empty set
  static ZAtom adic_family(const PrimeSet& s);    // throws on empty set
  static ZAtom rationals();
  // Loc(ALL) normalizes to Rationals; Loc(EMPTY) is the FgAb value Z and is
  // rejected here (callers keep it in the fg part)
  static ZAtom loc(const PrimeSet& s);
  // DualLoc(EMPTY) = Z^+ = Q/Z normalizes to the Pruefer family over ALL;
  // DualLoc(ALL) = Q^+ stays as an opaque marker
  static ZAtom dual_loc(const PrimeSet& s);

  ZAtomKind kind() const { return kind_; }
  const PrimeSet& primes() const { return primes_; }
  bool is_family() const; // Pruefer/Adic over a non-singleton set
  std::optional<int64_t> single_prime() const;

  bool divisible_kind() const; // Pruefer/Rationals/DualLoc
  std::string to_string() const;

  bool operator==(const ZAtom&) const = default;
  bool operator<(const ZAtom& o) const;

 private:
  ZAtom(ZAtomKind k, PrimeSet s) : kind_(k), primes_(std::move(s)) {}
  ZAtomKind kind_;
  PrimeSet primes_;
};

// finite count or the countable marker omega
class Mult {
 public:
  static Mult finite(int64_t n);
  static Mult omega() { return Mult(true, 0); }
  static Mult one() { return finite(1); }
  bool is_omega() const { return omega_; }
  int64_t count() const; // throws on omega
  Mult times(const Mult& o) const;
  bool operator==(const Mult&) const = default;
  std::string to_string() const;

 private:
  Mult(bool om, int64_t c) : omega_(om), count_(c) {}
  bool omega_;
  int64_t count_;
};

enum class Flavor { Sum, Product };

struct ZTerm {
  ZAtom atom;
  Mult mult = Mult::one();
  Flavor flavor = Flavor::Sum;
  bool operator==(const ZTerm&) const = default;
};

// finitely generated part plus a normalized multiset of atom terms
class ZExpr {
 public:
  ZExpr() : fg_(FgAb::zero()) {}
  static ZExpr zero() { return ZExpr(); }
  static ZExpr from_fg(const FgAb& g);
  static ZExpr atom(const ZAtom& a, Mult m = Mult::one(),
                    Flavor f = Flavor::Sum);
  // family over s, expanded to singleton terms when s is finite
  static ZExpr family(ZAtomKind kind, const PrimeSet& s,
                      Mult m = Mult::one(), Flavor f = Flavor::Sum);

  const FgAb& fg() const { return fg_; }
  const std::vector<ZTerm>& terms() const { return terms_; }
  bool is_zero() const { return fg_.is_zero() && terms_.empty(); }
  bool is_fg_only() const { return terms_.empty(); }

  ZExpr direct_sum(const ZExpr& o) const;
  ZExpr repeated(const Mult& m) const;

  std::string to_string() const;
  bool operator==(const ZExpr&) const = default;

 private:
  FgAb fg_;
  std::vector<ZTerm> terms_; // sorted by atom, then flavor; merged
  void add_term(ZTerm t);
  void normalize();
};

enum class VerdictStatus { Zero, NonZero, Group, Atomic, Unknown };

// outcome of a Hom/Ext computation: exact value when available, otherwise a
// vanishing status; Unknown is reserved for pairs listed by the coverage
// report
class HomVerdict {
 public:
  static HomVerdict zero(std::string note);
  static HomVerdict nonzero(std::string note);
  static HomVerdict group(const FgAb& g, std::string note);  // 0 -> Zero
  static HomVerdict atomic(const ZExpr& e, std::string note); // normalizes
  static HomVerdict unknown(std::string note);

  VerdictStatus status() const { return status_; }
  const FgAb& group_value() const;  // requires status Group
  const ZExpr& atomic_value() const; // requires status Atomic
  const std::string& note() const { return note_; }

  bool known_zero() const { return status_ == VerdictStatus::Zero; }
  bool known_nonzero() const {
    return status_ == VerdictStatus::NonZero ||
           status_ == VerdictStatus::Group || status_ == VerdictStatus::Atomic;
  }
  bool is_unknown() const { return status_ == VerdictStatus::Unknown; }
  bool is_exact() const {
    return status_ == VerdictStatus::Zero || status_ == VerdictStatus::Group ||
           status_ == VerdictStatus::Atomic;
  }
  // exact value as an expression (Zero/Group/Atomic only)
  ZExpr exact_expr() const;

  std::string status_string() const;
  std::string to_string() const;

 private:
  HomVerdict(VerdictStatus s, FgAb g, ZExpr e, std::string note)
      : status_(s), group_(std::move(g)), expr_(std::move(e)),
        note_(std::move(note)) {}
  VerdictStatus status_;
  FgAb group_;
  ZExpr expr_;
  std::string note_;
};

// biproduct combination across finitely many expression components
HomVerdict combine_direct_sum(const HomVerdict& a, const HomVerdict& b);

HomVerdict hom_verdict(const ZExpr& a, const ZExpr& b);
HomVerdict ext_verdict(const ZExpr& a, const ZExpr& b);

// character dual (-)^+ = Hom(-, Q/Z) on representable inputs; throws
// UndualizableError on Adic/DualLoc atoms and on infinite product terms
ZExpr plus_dual_expr(const ZExpr& x);

// degree-0 and degree-1 derived P-torsion (Gamma_P, R^1 Gamma_P)
std::pair<ZExpr, ZExpr> derived_torsion(const ZExpr& x, const PrimeSet& p);

// x[P^-1]; throws UnsupportedEntryError when the localization leaves the
// vocabulary (q-adics at q in P, most dual localizations)
ZExpr localize(const ZExpr& x, const PrimeSet& p);

bool is_p_divisible(const ZExpr& x, int64_t p);
bool is_p_torsion_free(const ZExpr& x, int64_t p);

// torsion support: primes with nonzero p-primary part; torsion_only is false
// when the expression has constituents that are not torsion (free rank,
// Adic, Rationals, Loc, or the rank part of DualLoc)
struct ExprSupport {
  bool torsion_only;
  PrimeSet primes;
};
ExprSupport expr_support(const ZExpr& x);

// every atom-tag pair whose Hom or Ext status stays Unknown, for the
// coverage report: rows of (functor, left tag, right tag, note)
struct UnknownPair {
  std::string functor;
  std::string left;
  std::string right;
  std::string note;
};
std::vector<UnknownPair> verdict_coverage_gaps();

} // namespace tsilt
