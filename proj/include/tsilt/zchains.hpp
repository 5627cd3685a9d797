#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsilt/dercat.hpp"
#include "tsilt/primes.hpp"
#include "tsilt/specz.hpp"
#include "tsilt/zatoms.hpp"

namespace tsilt {

// A flat ring epimorphism out of the integers, up to equivalence: the zero
// ring or a localization at a set of primes. Inverting nothing is the
// identity. Ordered by the inclusion of the corresponding bireflective
// subcategories, so more inverted primes sit lower.
class ZEpi {
 public:
  static ZEpi zero_ring();
  static ZEpi loc(const PrimeSet& inverted);
  static ZEpi identity() { return loc(PrimeSet::empty()); }

  bool is_zero_ring() const { return zero_; }
  bool is_identity() const { return !zero_ && inverted_.is_empty(); }
  const PrimeSet& inverted() const; // throws on the zero ring

  std::string to_string() const;
  bool operator==(const ZEpi&) const = default;

 private:
  ZEpi(bool z, PrimeSet p) : zero_(z), inverted_(std::move(p)) {}
  bool zero_ = false;
  PrimeSet inverted_ = PrimeSet::empty();
};

bool leq(const ZEpi& a, const ZEpi& b);
ZEpi meet(const ZEpi& a, const ZEpi& b);
ZEpi join(const ZEpi& a, const ZEpi& b);

// A decreasing chain of localizations indexed by the degree line: the zero
// ring strictly below l, then LOC(P_k) at degree l + k. The prime sets are
// either an explicit finite list (continued by its last value) or the rule
// tail P_k = all primes from index offset + k on.
class ZEpiChain {
 public:
  static ZEpiChain from_list(int64_t l, std::vector<PrimeSet> sets);
  static ZEpiChain from_tail(int64_t l, int64_t offset);

  int64_t l() const { return l_; }
  bool has_tail() const { return tail_; }
  int64_t tail_offset() const;
  const std::vector<PrimeSet>& sets() const; // list form only

  PrimeSet set_at(int64_t k) const; // P_k for k >= 0
  ZEpi lambda_at(int64_t degree) const;

  std::string to_string() const;
  bool operator==(const ZEpiChain&) const = default;

 private:
  ZEpiChain(int64_t l, bool tail, int64_t offset, std::vector<PrimeSet> sets)
      : l_(l), tail_(tail), offset_(offset), sets_(std::move(sets)) {}
  int64_t l_ = 0;
  bool tail_ = false;
  int64_t offset_ = 1;
  std::vector<PrimeSet> sets_;
};

struct ChainDiagnostics {
  bool valid = true;
  bool bounded = false; // some P_k is empty
  std::vector<std::string> errors;
  std::string to_string() const;
};

// decreasing, and the sets must shrink to empty intersection: finite lists
// have to reach the empty set, tails always do
ChainDiagnostics validate_chain(const ZEpiChain& c);

// Cone of the connecting map between consecutive chain rings: the first
// localization shifted once at degree l - 1, the freshly inverted Pruefer
// summands at the later degrees, zero far below.
GradedComplex cone_mu(const ZEpiChain& c, int64_t n);
// Cone of the chain map itself: all inverted Pruefer summands at degree
// l + k, the shifted ring below l.
GradedComplex cone_lambda(const ZEpiChain& c, int64_t n);

// The split silting complex of the chain: one Pruefer stalk for every
// freshly inverted prime, placed at descending degrees, plus the first
// localization. Tail chains produce a genuinely unbounded complex.
GradedComplex build_silting(const ZEpiChain& c);
// Its character dual shape: adic stalks at ascending degrees and the dual
// localization, with product flavors.
GradedComplex build_cosilting(const ZEpiChain& c);

// ALL strictly below l, then the chain's prime sets
SupportFiltration filtration_of_chain(const ZEpiChain& c);

// dual of the localization plus the product of the inverted adics
ZExpr minimal_cosilting_module(const ZEpi& e);

} // namespace tsilt
