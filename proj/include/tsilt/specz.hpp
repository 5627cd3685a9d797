#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tsilt/dercat.hpp"
#include "tsilt/primes.hpp"
#include "tsilt/zatoms.hpp"

namespace tsilt {

// A specialization closed subset of the one dimensional spectrum: either the
// whole space including the generic point, or a set of closed points. Any
// subset containing the generic point is forced to be everything, so these
// two shapes are exhaustive.
class SpecSubset {
 public:
  static SpecSubset all();
  static SpecSubset closed(const PrimeSet& pts);
  static SpecSubset empty();

  bool is_all() const { return all_; }
  bool is_empty() const { return !all_ && pts_.is_empty(); }
  // closed points; only valid when not ALL
  const PrimeSet& points() const;
  bool contains(int64_t p) const;
  bool superset_of(const SpecSubset& o) const;
  SpecSubset unite(const SpecSubset& o) const;

  std::string to_string() const;
  bool operator==(const SpecSubset&) const = default;

 private:
  SpecSubset(bool a, PrimeSet p) : all_(a), pts_(std::move(p)) {}
  bool all_ = false;
  PrimeSet pts_ = PrimeSet::empty();
};

// Degreewise supports Phi(n). A constant low value below the first step,
// finitely many stepped values, and after the last step either nothing or a
// tail family marching through ever deeper cofinite prime sets:
//   Phi(last_threshold + k) = tail-set of index (tail_offset + k), k >= 1.
// With no steps the filtration is constant equal to low (the tail rule is
// ignored in that case); this covers the degenerate constant examples.
class SupportFiltration {
 public:
  enum class TailRule { Empty, TailFamily };

  SupportFiltration(SpecSubset low,
                    std::vector<std::pair<int64_t, SpecSubset>> steps,
                    TailRule tail = TailRule::Empty, int64_t tail_offset = 1);
  static SupportFiltration constant(const SpecSubset& value);

  const SpecSubset& low() const { return low_; }
  const std::vector<std::pair<int64_t, SpecSubset>>& steps() const {
    return steps_;
  }
  TailRule tail_rule() const { return tail_; }
  int64_t tail_offset() const { return tail_offset_; }

  SpecSubset value_at(int64_t degree) const;
  // union of the values at all degrees >= degree
  SpecSubset union_from(int64_t degree) const;

  // the ALL region: true when the value is ALL at every degree
  bool constant_all() const;
  // largest degree whose value is ALL, when that region is nonempty and
  // bounded above
  std::optional<int64_t> last_all_degree() const;
  // first degree from which the value is empty, when one exists
  std::optional<int64_t> first_empty_degree() const;

  std::string to_string() const;
  bool operator==(const SupportFiltration&) const = default;

 private:
  SpecSubset low_;
  std::vector<std::pair<int64_t, SpecSubset>> steps_;
  TailRule tail_;
  int64_t tail_offset_;
};

struct FiltrationDiagnostics {
  bool valid = true;
  // degrees where Phi(d-1) fails to contain Phi(d)
  std::vector<int64_t> non_decreasing_at;
  std::string to_string() const;
};

FiltrationDiagnostics validate_filtration(const SupportFiltration& f);

// union over all degrees equals ALL and the values shrink to empty
// intersection
bool nondegenerate(const SupportFiltration& f);
// witnesses (n, m) with value ALL at n and empty at m, when both are
// attained at finite degrees
std::optional<std::pair<int64_t, int64_t>> intermediate(
    const SupportFiltration& f);

// membership in the lower aisle: the support of every cohomology lies in
// the level of its degree
bool aisle_member(const GradedComplex& x, const SupportFiltration& f);
// membership in the upper part: for every n and closed point p in Phi(n),
// H^m is p-torsion-free for m <= n and p-divisible for m <= n-1; an ALL
// level at n forces H^m = 0 for all m <= n
bool coaisle_member(const GradedComplex& x, const SupportFiltration& f);

struct TruncationRecord {
  int64_t degree = 0;
  std::string level;          // Phi(degree)
  std::string next_level;     // Phi(degree + 1)
  std::string torsion_kept;   // part of the entry kept at this degree
  std::string correction_up;  // derived torsion pushed one degree up
  std::string localized_away; // what the upper part receives here
};

// Approximation triangle u -> x -> v: membership of both halves is checked
// at construction and failure throws rather than accepting a bad split.
class TruncationTriangle {
 public:
  TruncationTriangle(GradedComplex u, GradedComplex v,
                     std::vector<TruncationRecord> records,
                     const SupportFiltration& f);

  const GradedComplex& u_part() const { return u_; }
  const GradedComplex& v_part() const { return v_; }
  const std::vector<TruncationRecord>& records() const { return records_; }

 private:
  GradedComplex u_;
  GradedComplex v_;
  std::vector<TruncationRecord> records_;
};

// Degreewise two level cascade: the level at the entry's own degree decides
// the torsion kept below, the level one degree up produces the divisible
// correction and the localization. Throws UnsupportedEntryError when an
// entry cannot be split in the vocabulary (adic or dual atoms hit by the
// level), std::invalid_argument on invalid filtrations or tail complexes.
TruncationTriangle truncate(const GradedComplex& x,
                            const SupportFiltration& f);

} // namespace tsilt
