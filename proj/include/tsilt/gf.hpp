#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsilt {

// Arithmetic in the small finite fields the quiver side works over.
// Elements are plain integers 0..q-1; for q = 4 the encoding is
// {0, 1, x, x+1} with x^2 = x + 1, so addition is xor.
class Fq {
 public:
  explicit Fq(int64_t q); // q in {2,3,4,5,7}
  int64_t q() const { return q_; }
  int64_t characteristic() const { return q_ == 4 ? 2 : q_; }

  int64_t add(int64_t a, int64_t b) const;
  int64_t sub(int64_t a, int64_t b) const;
  int64_t neg(int64_t a) const;
  int64_t mul(int64_t a, int64_t b) const;
  int64_t inv(int64_t a) const; // throws on 0
  int64_t from_int(int64_t n) const;

 private:
  int64_t q_;
};

// Dense matrix over F_q, row major. Element validity is the caller's
// business; operations take the field explicitly.
struct FqMat {
  int64_t rows = 0;
  int64_t cols = 0;
  std::vector<int64_t> a;

  FqMat() = default;
  FqMat(int64_t r, int64_t c) : rows(r), cols(c), a(r * c, 0) {}
  int64_t& at(int64_t i, int64_t j) { return a[i * cols + j]; }
  int64_t at(int64_t i, int64_t j) const { return a[i * cols + j]; }
  static FqMat identity(int64_t n);
  bool is_zero() const;
  bool operator==(const FqMat&) const = default;
  std::string to_string() const;
};

FqMat fq_add(const Fq& f, const FqMat& x, const FqMat& y);
FqMat fq_sub(const Fq& f, const FqMat& x, const FqMat& y);
FqMat fq_mul(const Fq& f, const FqMat& x, const FqMat& y);
FqMat fq_scale(const Fq& f, int64_t c, const FqMat& x);
FqMat fq_transpose(const FqMat& x);
FqMat fq_hstack(const FqMat& x, const FqMat& y);
FqMat fq_vstack(const FqMat& x, const FqMat& y);

int64_t fq_rank(const Fq& f, FqMat x);
// columns form a basis of the right kernel
FqMat fq_kernel(const Fq& f, const FqMat& x);
// columns form a basis of the column space
FqMat fq_column_space(const Fq& f, const FqMat& x);
// one solution of x * v = b if any
std::optional<std::vector<int64_t>> fq_solve(const Fq& f, const FqMat& x,
                                             const std::vector<int64_t>& b);

// Polynomials over F_q, coefficients low degree first, no trailing zeros.
struct FqPoly {
  std::vector<int64_t> c;
  bool is_zero() const { return c.empty(); }
  int64_t degree() const { return static_cast<int64_t>(c.size()) - 1; }
  bool operator==(const FqPoly&) const = default;
};

FqPoly poly_from(std::vector<int64_t> coeffs, const Fq& f);
FqPoly poly_add(const Fq& f, const FqPoly& x, const FqPoly& y);
FqPoly poly_sub(const Fq& f, const FqPoly& x, const FqPoly& y);
FqPoly poly_mul(const Fq& f, const FqPoly& x, const FqPoly& y);
// quotient and remainder; divisor must be nonzero
std::pair<FqPoly, FqPoly> poly_divmod(const Fq& f, const FqPoly& x,
                                      const FqPoly& y);
FqPoly poly_gcd(const Fq& f, FqPoly x, FqPoly y); // monic
FqPoly poly_monic(const Fq& f, const FqPoly& x);
int64_t poly_eval(const Fq& f, const FqPoly& x, int64_t v);

// Rational functions over F_q: the field the generic module lives over.
// Normalized: denominator monic, gcd(num, den) = 1, zero is 0/1.
struct RatFn {
  FqPoly num;
  FqPoly den{std::vector<int64_t>{1}};
  bool is_zero() const { return num.is_zero(); }
  bool operator==(const RatFn&) const = default;
};

RatFn rat_from_poly(FqPoly p);
RatFn rat_make(const Fq& f, FqPoly num, FqPoly den); // normalizes
RatFn rat_t(); // the variable itself
RatFn rat_const(const Fq& f, int64_t c);
RatFn rat_add(const Fq& f, const RatFn& x, const RatFn& y);
RatFn rat_sub(const Fq& f, const RatFn& x, const RatFn& y);
RatFn rat_mul(const Fq& f, const RatFn& x, const RatFn& y);
RatFn rat_inv(const Fq& f, const RatFn& x); // throws on 0

struct RatMat {
  int64_t rows = 0;
  int64_t cols = 0;
  std::vector<RatFn> a;
  RatMat() = default;
  RatMat(int64_t r, int64_t c) : rows(r), cols(c), a(r * c) {}
  RatFn& at(int64_t i, int64_t j) { return a[i * cols + j]; }
  const RatFn& at(int64_t i, int64_t j) const { return a[i * cols + j]; }
};

int64_t rat_rank(const Fq& f, RatMat x);

} // namespace tsilt
