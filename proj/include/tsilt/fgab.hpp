#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "tsilt/primes.hpp"

namespace tsilt {

using bigint = boost::multiprecision::cpp_int;

// Dense integer matrix with arbitrary-precision entries. Row-major;
// a matrix represents a map Z^cols -> Z^rows acting on column vectors.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<int64_t>>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bigint& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const bigint& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix multiply(const IntMatrix& other) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& other) const = default;
  std::string to_string() const;

private:
  size_t rows_, cols_;
  std::vector<bigint> data_;
};

struct SmithDecomposition {
  IntMatrix d; // diagonal, d = u * m * v, diagonal entries form a
               // divisibility chain d1 | d2 | ... (nonneg, zeros last)
  IntMatrix u; // unimodular
  IntMatrix v; // unimodular
};

SmithDecomposition smith_normal_form(const IntMatrix& m);
bigint det(const IntMatrix& m); // square matrices only

// Finitely generated abelian group in canonical form:
// Z^rank  ⊕  Z/d1 ⊕ ... ⊕ Z/dk   with  2 <= d1 | d2 | ... | dk.
class FgAb {
public:
  FgAb() : rank_(0) {}
  explicit FgAb(int64_t rank, std::vector<int64_t> invariant_factors = {});
  static FgAb zero() { return FgAb(); }
  static FgAb free(int64_t rank) { return FgAb(rank); }
  static FgAb cyclic(int64_t d); // d = 0 means Z
  // Canonicalize an arbitrary direct sum of cyclic groups.
  static FgAb from_cyclic_orders(int64_t rank,
                                 const std::vector<int64_t>& orders);

  int64_t rank() const { return rank_; }
  const std::vector<int64_t>& invariant_factors() const { return factors_; }
  bool is_zero() const { return rank_ == 0 && factors_.empty(); }
  bool is_finite() const { return rank_ == 0; }
  // Order of the torsion subgroup.
  bigint torsion_order() const;
  FgAb direct_sum(const FgAb& other) const;
  FgAb repeated(int64_t n) const; // n-fold direct sum

  bool operator==(const FgAb& other) const = default;
  std::string to_string() const;

private:
  int64_t rank_;
  std::vector<int64_t> factors_;
};

// Cokernel of m : Z^cols -> Z^rows.
FgAb cokernel(const IntMatrix& m);
// Homology at Z^b of  Z^a --in--> Z^b --out--> Z^c  (out ∘ in must be 0).
FgAb homology_at(const IntMatrix& in, const IntMatrix& out);

FgAb hom(const FgAb& m, const FgAb& n);
FgAb ext1(const FgAb& m, const FgAb& n);
FgAb tensor(const FgAb& m, const FgAb& n);
FgAb tor1(const FgAb& m, const FgAb& n);

// Support as a set of maximal ideals plus a generic-point flag: the free
// part contributes every prime and the generic point.
struct FgSupport {
  bool has_generic_point = false;
  PrimeSet primes; // closed points in the support
};
FgSupport support(const FgAb& m);

// Splits off the P-primary torsion: returns (Γ_P(m), m / Γ_P(m)).
std::pair<FgAb, FgAb> torsion_part(const FgAb& m, const PrimeSet& p);

bool is_p_divisible(const FgAb& m, int64_t p);
bool is_p_torsion_free(const FgAb& m, int64_t p);

} // namespace tsilt
