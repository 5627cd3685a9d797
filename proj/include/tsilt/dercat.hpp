#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "tsilt/fgab.hpp"
#include "tsilt/zatoms.hpp"

namespace tsilt {

// Both base rings are hereditary, so every complex splits into its shifted
// cohomologies; a complex is stored as the graded object of those entries.

// One entry per degree along an arithmetic ray of degrees, with the indexing
// prime advancing one position per step. Down tails populate start_degree,
// start_degree-1, ...; Up tails go the other way. This is the only infinite
// shape the chain builders ever produce.
enum class TailDirection { Down, Up };

struct TailSpec {
  TailDirection direction = TailDirection::Down;
  int64_t start_degree = 0;
  int64_t prime_index = 1; // 1-based index of the prime at start_degree
  ZAtomKind kind = ZAtomKind::Pruefer; // Pruefer or Adic
  Flavor flavor = Flavor::Sum;
  bool operator==(const TailSpec&) const = default;

  bool covers(int64_t degree) const;
  ZExpr entry(int64_t degree) const; // zero off the ray
};

class GradedComplex {
 public:
  GradedComplex() = default;
  static GradedComplex zero() { return GradedComplex(); }
  static GradedComplex stalk(int64_t degree, const ZExpr& e);

  void set_entry(int64_t degree, const ZExpr& e); // zero erases
  void set_tail(const TailSpec& t);

  const std::map<int64_t, ZExpr>& explicit_entries() const { return entries_; }
  const std::optional<TailSpec>& tail() const { return tail_; }

  // the full entry at one degree, explicit part plus tail contribution
  ZExpr entry(int64_t degree) const;

  bool is_zero() const { return entries_.empty() && !tail_.has_value(); }
  bool is_bounded() const { return !tail_.has_value(); }

  GradedComplex direct_sum(const GradedComplex& o) const;

  std::string to_string() const;
  bool operator==(const GradedComplex&) const = default;

 private:
  std::map<int64_t, ZExpr> entries_;
  std::optional<TailSpec> tail_;
};

// entries of shift(x, k) at degree n are entries of x at degree n + k
GradedComplex shift(const GradedComplex& x, int64_t k);

// verdict for Hom_D(x, y[k]) through the degreewise hom/ext decomposition
HomVerdict derived_hom(const GradedComplex& x, const GradedComplex& y,
                       int64_t k);

// character dual: the entry at degree n is the dual of the entry at -n
GradedComplex plus_dual(const GradedComplex& x);

// Bounded complex of finite-rank free modules with explicit differentials;
// exists to realize compact objects and the contravariant (-)* duality.
// differentials[n] maps degree n to degree n+1 and has shape
// rank(n+1) x rank(n).
class PerfectComplex {
 public:
  PerfectComplex() = default;
  static PerfectComplex free_stalk(int64_t degree, int64_t rank);

  void set_rank(int64_t degree, int64_t r);
  void set_differential(int64_t degree, IntMatrix d);

  int64_t rank(int64_t degree) const;
  const std::map<int64_t, int64_t>& ranks() const { return ranks_; }
  IntMatrix differential(int64_t degree) const; // zero matrix if unset

  // throws std::invalid_argument on shape mismatch or d*d != 0
  void validate() const;

  bool operator==(const PerfectComplex&) const = default;

 private:
  std::map<int64_t, int64_t> ranks_;
  std::map<int64_t, IntMatrix> differentials_;
};

// RHom(-, Z): degree n becomes -n and differentials transpose
PerfectComplex star_dual(const PerfectComplex& x);

GradedComplex cohomology_of_perfect(const PerfectComplex& x);

} // namespace tsilt
