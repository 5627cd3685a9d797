#include "tsilt/gf.hpp"

#include <algorithm>

namespace tsilt {

namespace {

// multiplication table of GF(4) in the {0, 1, x, x+1} encoding
constexpr int64_t kGf4Mul[4][4] = {
    {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};

} // namespace

Fq::Fq(int64_t q) : q_(q) {
  if (q != 2 && q != 3 && q != 4 && q != 5 && q != 7)
    throw std::invalid_argument("supported field sizes are 2, 3, 4, 5, 7");
}

int64_t Fq::add(int64_t a, int64_t b) const {
  return q_ == 4 ? (a ^ b) : (a + b) % q_;
}

int64_t Fq::neg(int64_t a) const { return q_ == 4 ? a : (q_ - a) % q_; }

int64_t Fq::sub(int64_t a, int64_t b) const { return add(a, neg(b)); }

int64_t Fq::mul(int64_t a, int64_t b) const {
  return q_ == 4 ? kGf4Mul[a][b] : (a * b) % q_;
}

int64_t Fq::inv(int64_t a) const {
  if (a == 0) throw std::domain_error("inverting zero in a finite field");
  for (int64_t b = 1; b < q_; ++b)
    if (mul(a, b) == 1) return b;
  throw std::logic_error("unit without inverse");
}

int64_t Fq::from_int(int64_t n) const {
  int64_t p = characteristic();
  return ((n % p) + p) % p;
}

FqMat FqMat::identity(int64_t n) {
  FqMat m(n, n);
  for (int64_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool FqMat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](int64_t v) { return v == 0; });
}

std::string FqMat::to_string() const {
  std::string s = "[";
  for (int64_t i = 0; i < rows; ++i) {
    s += i ? "; " : "";
    for (int64_t j = 0; j < cols; ++j)
      s += (j ? "," : "") + std::to_string(at(i, j));
  }
  return s + "]";
}

FqMat fq_add(const Fq& f, const FqMat& x, const FqMat& y) {
  FqMat out(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) out.a[i] = f.add(x.a[i], y.a[i]);
  return out;
}

FqMat fq_sub(const Fq& f, const FqMat& x, const FqMat& y) {
  FqMat out(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) out.a[i] = f.sub(x.a[i], y.a[i]);
  return out;
}

FqMat fq_mul(const Fq& f, const FqMat& x, const FqMat& y) {
  FqMat out(x.rows, y.cols);
  for (int64_t i = 0; i < x.rows; ++i)
    for (int64_t k = 0; k < x.cols; ++k) {
      int64_t v = x.at(i, k);
      if (v == 0) continue;
      for (int64_t j = 0; j < y.cols; ++j)
        out.at(i, j) = f.add(out.at(i, j), f.mul(v, y.at(k, j)));
    }
  return out;
}

FqMat fq_scale(const Fq& f, int64_t c, const FqMat& x) {
  FqMat out(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) out.a[i] = f.mul(c, x.a[i]);
  return out;
}

FqMat fq_transpose(const FqMat& x) {
  FqMat out(x.cols, x.rows);
  for (int64_t i = 0; i < x.rows; ++i)
    for (int64_t j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
  return out;
}

FqMat fq_hstack(const FqMat& x, const FqMat& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hstack row mismatch");
  FqMat out(x.rows, x.cols + y.cols);
  for (int64_t i = 0; i < x.rows; ++i) {
    for (int64_t j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
    for (int64_t j = 0; j < y.cols; ++j) out.at(i, x.cols + j) = y.at(i, j);
  }
  return out;
}

FqMat fq_vstack(const FqMat& x, const FqMat& y) {
  if (x.cols != y.cols) throw std::invalid_argument("vstack column mismatch");
  FqMat out(x.rows + y.rows, x.cols);
  for (int64_t i = 0; i < x.rows; ++i)
    for (int64_t j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
  for (int64_t i = 0; i < y.rows; ++i)
    for (int64_t j = 0; j < x.cols; ++j) out.at(x.rows + i, j) = y.at(i, j);
  return out;
}

namespace {

// row echelon in place, returns pivot columns
std::vector<int64_t> echelon(const Fq& f, FqMat& m) {
  std::vector<int64_t> pivots;
  int64_t row = 0;
  for (int64_t col = 0; col < m.cols && row < m.rows; ++col) {
    int64_t pr = -1;
    for (int64_t i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    for (int64_t j = 0; j < m.cols; ++j)
      std::swap(m.at(row, j), m.at(pr, j));
    int64_t piv = f.inv(m.at(row, col));
    for (int64_t j = 0; j < m.cols; ++j)
      m.at(row, j) = f.mul(piv, m.at(row, j));
    for (int64_t i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      int64_t c = m.at(i, col);
      for (int64_t j = 0; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace

int64_t fq_rank(const Fq& f, FqMat x) {
  return static_cast<int64_t>(echelon(f, x).size());
}

FqMat fq_kernel(const Fq& f, const FqMat& x) {
  FqMat m = x;
  std::vector<int64_t> pivots = echelon(f, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int64_t p : pivots) is_pivot[p] = true;
  std::vector<int64_t> free_cols;
  for (int64_t j = 0; j < m.cols; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  FqMat out(x.cols, static_cast<int64_t>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int64_t fc = free_cols[k];
    out.at(fc, k) = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      out.at(pivots[r], k) = f.neg(m.at(static_cast<int64_t>(r), fc));
  }
  return out;
}

FqMat fq_column_space(const Fq& f, const FqMat& x) {
  FqMat m = x;
  std::vector<int64_t> pivots = echelon(f, m);
  FqMat out(x.rows, static_cast<int64_t>(pivots.size()));
  for (size_t k = 0; k < pivots.size(); ++k)
    for (int64_t i = 0; i < x.rows; ++i) out.at(i, k) = x.at(i, pivots[k]);
  return out;
}

std::optional<std::vector<int64_t>> fq_solve(const Fq& f, const FqMat& x,
                                             const std::vector<int64_t>& b) {
  FqMat aug(x.rows, x.cols + 1);
  for (int64_t i = 0; i < x.rows; ++i) {
    for (int64_t j = 0; j < x.cols; ++j) aug.at(i, j) = x.at(i, j);
    aug.at(i, x.cols) = b[i];
  }
  std::vector<int64_t> pivots = echelon(f, aug);
  if (!pivots.empty() && pivots.back() == x.cols) return std::nullopt;
  std::vector<int64_t> v(x.cols, 0);
  for (size_t r = 0; r < pivots.size(); ++r)
    v[pivots[r]] = aug.at(static_cast<int64_t>(r), x.cols);
  return v;
}

// ------------------------------------------------------------- polynomials

FqPoly poly_from(std::vector<int64_t> coeffs, const Fq&) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  FqPoly p;
  p.c = std::move(coeffs);
  return p;
}

FqPoly poly_add(const Fq& f, const FqPoly& x, const FqPoly& y) {
  std::vector<int64_t> c(std::max(x.c.size(), y.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = f.add(i < x.c.size() ? x.c[i] : 0, i < y.c.size() ? y.c[i] : 0);
  return poly_from(std::move(c), f);
}

FqPoly poly_sub(const Fq& f, const FqPoly& x, const FqPoly& y) {
  std::vector<int64_t> c(std::max(x.c.size(), y.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = f.sub(i < x.c.size() ? x.c[i] : 0, i < y.c.size() ? y.c[i] : 0);
  return poly_from(std::move(c), f);
}

FqPoly poly_mul(const Fq& f, const FqPoly& x, const FqPoly& y) {
  if (x.is_zero() || y.is_zero()) return FqPoly{};
  std::vector<int64_t> c(x.c.size() + y.c.size() - 1, 0);
  for (size_t i = 0; i < x.c.size(); ++i)
    for (size_t j = 0; j < y.c.size(); ++j)
      c[i + j] = f.add(c[i + j], f.mul(x.c[i], y.c[j]));
  return poly_from(std::move(c), f);
}

std::pair<FqPoly, FqPoly> poly_divmod(const Fq& f, const FqPoly& x,
                                      const FqPoly& y) {
  if (y.is_zero()) throw std::domain_error("polynomial division by zero");
  FqPoly rem = x;
  std::vector<int64_t> quot;
  if (rem.degree() >= y.degree())
    quot.assign(rem.degree() - y.degree() + 1, 0);
  int64_t lead_inv = f.inv(y.c.back());
  while (!rem.is_zero() && rem.degree() >= y.degree()) {
    int64_t shift = rem.degree() - y.degree();
    int64_t coef = f.mul(rem.c.back(), lead_inv);
    quot[shift] = coef;
    std::vector<int64_t> sub(shift, 0);
    sub.push_back(coef);
    rem = poly_sub(f, rem, poly_mul(f, poly_from(std::move(sub), f), y));
  }
  return {poly_from(std::move(quot), f), rem};
}

FqPoly poly_monic(const Fq& f, const FqPoly& x) {
  if (x.is_zero()) return x;
  int64_t s = f.inv(x.c.back());
  FqPoly out = x;
  for (int64_t& v : out.c) v = f.mul(s, v);
  return out;
}

FqPoly poly_gcd(const Fq& f, FqPoly x, FqPoly y) {
  while (!y.is_zero()) {
    FqPoly r = poly_divmod(f, x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(f, x);
}

int64_t poly_eval(const Fq& f, const FqPoly& x, int64_t v) {
  int64_t acc = 0;
  for (auto it = x.c.rbegin(); it != x.c.rend(); ++it)
    acc = f.add(f.mul(acc, v), *it);
  return acc;
}

// ------------------------------------------------------ rational functions

RatFn rat_from_poly(FqPoly p) {
  RatFn r;
  r.num = std::move(p);
  r.den.c = {1};
  return r;
}

RatFn rat_make(const Fq& f, FqPoly num, FqPoly den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  if (num.is_zero()) return rat_from_poly(FqPoly{});
  FqPoly g = poly_gcd(f, num, den);
  num = poly_divmod(f, num, g).first;
  den = poly_divmod(f, den, g).first;
  int64_t s = f.inv(den.c.back());
  for (int64_t& v : den.c) v = f.mul(s, v);
  for (int64_t& v : num.c) v = f.mul(s, v);
  RatFn r;
  r.num = std::move(num);
  r.den = std::move(den);
  return r;
}

RatFn rat_t() {
  RatFn r;
  r.num.c = {0, 1};
  r.den.c = {1};
  return r;
}

RatFn rat_const(const Fq& f, int64_t c) {
  return rat_from_poly(poly_from({c}, f));
}

RatFn rat_add(const Fq& f, const RatFn& x, const RatFn& y) {
  FqPoly num = poly_add(f, poly_mul(f, x.num, y.den), poly_mul(f, y.num, x.den));
  return rat_make(f, std::move(num), poly_mul(f, x.den, y.den));
}

RatFn rat_sub(const Fq& f, const RatFn& x, const RatFn& y) {
  FqPoly num = poly_sub(f, poly_mul(f, x.num, y.den), poly_mul(f, y.num, x.den));
  return rat_make(f, std::move(num), poly_mul(f, x.den, y.den));
}

RatFn rat_mul(const Fq& f, const RatFn& x, const RatFn& y) {
  return rat_make(f, poly_mul(f, x.num, y.num), poly_mul(f, x.den, y.den));
}

RatFn rat_inv(const Fq& f, const RatFn& x) {
  if (x.is_zero()) throw std::domain_error("inverting the zero function");
  return rat_make(f, x.den, x.num);
}

int64_t rat_rank(const Fq& f, RatMat x) {
  int64_t row = 0;
  for (int64_t col = 0; col < x.cols && row < x.rows; ++col) {
    int64_t pr = -1;
    for (int64_t i = row; i < x.rows; ++i)
      if (!x.at(i, col).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    for (int64_t j = 0; j < x.cols; ++j) std::swap(x.at(row, j), x.at(pr, j));
    RatFn piv = rat_inv(f, x.at(row, col));
    for (int64_t j = 0; j < x.cols; ++j)
      x.at(row, j) = rat_mul(f, piv, x.at(row, j));
    for (int64_t i = 0; i < x.rows; ++i) {
      if (i == row || x.at(i, col).is_zero()) continue;
      RatFn c = x.at(i, col);
      for (int64_t j = 0; j < x.cols; ++j)
        x.at(i, j) = rat_sub(f, x.at(i, j), rat_mul(f, c, x.at(row, j)));
    }
    ++row;
  }
  return row;
}

} // namespace tsilt
