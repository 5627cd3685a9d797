#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsilt {

// Prime bookkeeping. Indices are 1-based: nth_prime(1) == 2.
bool is_prime(int64_t n);
int64_t nth_prime(int64_t i);
// Position of p in the prime sequence; throws if p is not prime.
int64_t prime_index(int64_t p);
std::vector<int64_t> prime_factors(int64_t n);            // distinct, sorted
int64_t p_valuation(int64_t n, int64_t p);                // v_p(n)
int64_t p_power_part(int64_t n, int64_t p);               // p^{v_p(n)}

// A set of primes (maximal ideals of Z), either finite or cofinite.
// The usual named sets are normalizing constructors:
//   all()   = cofinite with nothing excluded
//   empty() = finite with no members
//   tail(k) = {p_j : j >= k} = cofinite excluding the first k-1 primes
// Set algebra is total on the two storage kinds, so every combination of
// the named families stays representable.
class PrimeSet {
public:
  enum class Kind { Finite, Cofinite };

  PrimeSet() : kind_(Kind::Finite) {}
  static PrimeSet finite(std::vector<int64_t> primes);
  static PrimeSet cofinite(std::vector<int64_t> excluded);
  static PrimeSet all() { return cofinite({}); }
  static PrimeSet empty() { return finite({}); }
  static PrimeSet tail(int64_t k);
  static PrimeSet single(int64_t p) { return finite({p}); }

  Kind kind() const { return kind_; }
  // Member list for Finite, excluded list for Cofinite; sorted.
  const std::vector<int64_t>& basis() const { return basis_; }

  bool contains(int64_t p) const;
  bool is_empty() const { return kind_ == Kind::Finite && basis_.empty(); }
  bool is_all() const { return kind_ == Kind::Cofinite && basis_.empty(); }
  bool is_finite() const { return kind_ == Kind::Finite; }

  PrimeSet complement() const;
  PrimeSet intersect(const PrimeSet& other) const;
  PrimeSet unite(const PrimeSet& other) const;
  // this \ other
  PrimeSet minus(const PrimeSet& other) const;
  bool subset_of(const PrimeSet& other) const;

  // If the set is cofinite and equals {p_j : j >= k}, returns k.
  std::optional<int64_t> as_tail() const;

  bool operator==(const PrimeSet& other) const = default;
  // Total order for use as a map key; not the inclusion order.
  bool operator<(const PrimeSet& other) const;

  std::string to_string() const;

private:
  Kind kind_;
  std::vector<int64_t> basis_;
};

// A prime guaranteed to lie outside every finite list mentioned by the
// arguments; used to evaluate uniform per-prime rules at a representative.
int64_t fresh_prime_beyond(const std::vector<int64_t>& mentioned);

} // namespace tsilt
