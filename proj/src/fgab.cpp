#include "tsilt/fgab.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tsilt {

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int64_t>>& rows) {
  size_t r = rows.size();
  size_t c = r ? rows[0].size() : 0;
  IntMatrix m(r, c);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw std::invalid_argument("IntMatrix: ragged rows");
    for (size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::multiply(const IntMatrix& other) const {
  if (cols_ != other.rows_)
    throw std::invalid_argument("IntMatrix::multiply: shape mismatch");
  IntMatrix out(rows_, other.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const bigint& a = at(i, k);
      if (a == 0) continue;
      for (size_t j = 0; j < other.cols_; ++j)
        out.at(i, j) += a * other.at(k, j);
    }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

std::string IntMatrix::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < rows_; ++i) {
    s += i ? "; " : "";
    for (size_t j = 0; j < cols_; ++j) {
      if (j) s += " ";
      s += at(i, j).str();
    }
  }
  return s + "]";
}

namespace {

bigint abs_big(const bigint& x) { return x < 0 ? bigint(-x) : x; }

struct SmithWorker {
  IntMatrix a, u, v, vinv;

  explicit SmithWorker(const IntMatrix& m)
      : a(m),
        u(IntMatrix::identity(m.rows())),
        v(IntMatrix::identity(m.cols())),
        vinv(IntMatrix::identity(m.cols())) {}

  void swap_rows(size_t r1, size_t r2) {
    if (r1 == r2) return;
    for (size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r1, j), a.at(r2, j));
    for (size_t j = 0; j < u.cols(); ++j) std::swap(u.at(r1, j), u.at(r2, j));
  }

  void swap_cols(size_t c1, size_t c2) {
    if (c1 == c2) return;
    for (size_t i = 0; i < a.rows(); ++i) std::swap(a.at(i, c1), a.at(i, c2));
    for (size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, c1), v.at(i, c2));
    for (size_t j = 0; j < vinv.cols(); ++j)
      std::swap(vinv.at(c1, j), vinv.at(c2, j));
  }

  // row_dst -= q * row_src
  void add_row(size_t dst, size_t src, const bigint& q) {
    if (q == 0) return;
    for (size_t j = 0; j < a.cols(); ++j) a.at(dst, j) -= q * a.at(src, j);
    for (size_t j = 0; j < u.cols(); ++j) u.at(dst, j) -= q * u.at(src, j);
  }

  // col_dst -= q * col_src; inverse op recorded on vinv rows
  void add_col(size_t dst, size_t src, const bigint& q) {
    if (q == 0) return;
    for (size_t i = 0; i < a.rows(); ++i) a.at(i, dst) -= q * a.at(i, src);
    for (size_t i = 0; i < v.rows(); ++i) v.at(i, dst) -= q * v.at(i, src);
    for (size_t j = 0; j < vinv.cols(); ++j)
      vinv.at(src, j) += q * vinv.at(dst, j);
  }

  void negate_row(size_t r) {
    for (size_t j = 0; j < a.cols(); ++j) a.at(r, j) = -a.at(r, j);
    for (size_t j = 0; j < u.cols(); ++j) u.at(r, j) = -u.at(r, j);
  }

  void run() {
    size_t t = 0;
    size_t limit = std::min(a.rows(), a.cols());
    while (t < limit) {
      // pick the nonzero entry of smallest magnitude in the trailing block
      size_t pi = t, pj = t;
      bool found = false;
      bigint best = 0;
      for (size_t i = t; i < a.rows(); ++i)
        for (size_t j = t; j < a.cols(); ++j) {
          const bigint& e = a.at(i, j);
          if (e == 0) continue;
          bigint mag = abs_big(e);
          if (!found || mag < best) {
            found = true;
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (!found) break;
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool settled = false;
      while (!settled) {
        settled = true;
        for (size_t i = t + 1; i < a.rows(); ++i) {
          if (a.at(i, t) == 0) continue;
          bigint q = a.at(i, t) / a.at(t, t);
          add_row(i, t, q);
          if (a.at(i, t) != 0) {
            // remainder has smaller magnitude than the pivot; promote it
            swap_rows(t, i);
            settled = false;
          }
        }
        for (size_t j = t + 1; j < a.cols(); ++j) {
          if (a.at(t, j) == 0) continue;
          bigint q = a.at(t, j) / a.at(t, t);
          add_col(j, t, q);
          if (a.at(t, j) != 0) {
            swap_cols(t, j);
            settled = false;
          }
        }
        if (!settled) continue;
        // pivot must divide every entry of the trailing block to make the
        // diagonal a divisibility chain
        for (size_t i = t + 1; i < a.rows() && settled; ++i)
          for (size_t j = t + 1; j < a.cols() && settled; ++j)
            if (a.at(i, j) % a.at(t, t) != 0) {
              add_row(t, i, bigint(-1));
              settled = false;
            }
      }
      if (a.at(t, t) < 0) negate_row(t);
      ++t;
    }
  }
};

int64_t to_int64_checked(const bigint& x) {
  if (x > std::numeric_limits<int64_t>::max() ||
      x < std::numeric_limits<int64_t>::min())
    throw std::overflow_error("invariant factor exceeds 64-bit range");
  return static_cast<int64_t>(x);
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithWorker w(m);
  w.run();
  return SmithDecomposition{w.a, w.u, w.v};
}

bigint det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
  size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntMatrix a = m;
  bigint prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && a.at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap_row, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        a.at(i, j) =
            (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : bigint(-a.at(n - 1, n - 1));
}

FgAb::FgAb(int64_t rank, std::vector<int64_t> invariant_factors)
    : rank_(rank), factors_(std::move(invariant_factors)) {
  if (rank_ < 0) throw std::invalid_argument("FgAb: negative rank");
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2)
      throw std::invalid_argument("FgAb: invariant factors must be >= 2");
    if (i && factors_[i] % factors_[i - 1] != 0)
      throw std::invalid_argument("FgAb: invariant factors must form a chain");
  }
}

FgAb FgAb::cyclic(int64_t d) {
  if (d < 0) d = -d;
  if (d == 0) return free(1);
  if (d == 1) return zero();
  return FgAb(0, {d});
}

FgAb FgAb::from_cyclic_orders(int64_t rank,
                              const std::vector<int64_t>& orders) {
  std::map<int64_t, std::vector<int64_t>> exponents; // prime -> sorted desc
  for (int64_t d : orders) {
    if (d < 0) d = -d;
    if (d == 0) {
      ++rank;
      continue;
    }
    if (d == 1) continue;
    for (int64_t p : prime_factors(d))
      exponents[p].push_back(p_valuation(d, p));
  }
  size_t chain_len = 0;
  for (auto& [p, exps] : exponents) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    chain_len = std::max(chain_len, exps.size());
  }
  std::vector<int64_t> factors(chain_len, 1);
  for (auto& [p, exps] : exponents)
    for (size_t i = 0; i < exps.size(); ++i) {
      int64_t power = 1;
      for (int64_t e = 0; e < exps[i]; ++e) {
        if (power > std::numeric_limits<int64_t>::max() / p)
          throw std::overflow_error("cyclic order overflow");
        power *= p;
      }
      if (factors[i] > std::numeric_limits<int64_t>::max() / power)
        throw std::overflow_error("invariant factor overflow");
      factors[i] *= power;
    }
  std::reverse(factors.begin(), factors.end()); // ascending divisibility
  return FgAb(rank, std::move(factors));
}

bigint FgAb::torsion_order() const {
  bigint n = 1;
  for (int64_t d : factors_) n *= d;
  return n;
}

FgAb FgAb::direct_sum(const FgAb& other) const {
  std::vector<int64_t> orders = factors_;
  orders.insert(orders.end(), other.factors_.begin(), other.factors_.end());
  return from_cyclic_orders(rank_ + other.rank_, orders);
}

FgAb FgAb::repeated(int64_t n) const {
  if (n < 0) throw std::invalid_argument("FgAb::repeated: negative count");
  std::vector<int64_t> orders;
  orders.reserve(factors_.size() * static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i)
    orders.insert(orders.end(), factors_.begin(), factors_.end());
  return from_cyclic_orders(rank_ * n, orders);
}

std::string FgAb::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  if (rank_ > 0) {
    s = "Z";
    if (rank_ > 1) s += "^" + std::to_string(rank_);
  }
  for (int64_t d : factors_) {
    if (!s.empty()) s += " + ";
    s += "Z/" + std::to_string(d);
  }
  return s;
}

FgAb cokernel(const IntMatrix& m) {
  SmithDecomposition snf = smith_normal_form(m);
  size_t limit = std::min(m.rows(), m.cols());
  std::vector<int64_t> orders;
  size_t nonzero = 0;
  for (size_t i = 0; i < limit; ++i) {
    const bigint& d = snf.d.at(i, i);
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) orders.push_back(to_int64_checked(d));
  }
  int64_t free_rank = static_cast<int64_t>(m.rows() - nonzero);
  return FgAb::from_cyclic_orders(free_rank, orders);
}

FgAb homology_at(const IntMatrix& in, const IntMatrix& out) {
  if (in.rows() != out.cols())
    throw std::invalid_argument("homology_at: shape mismatch");
  // sanity: out ∘ in = 0
  IntMatrix composite = out.multiply(in);
  for (size_t i = 0; i < composite.rows(); ++i)
    for (size_t j = 0; j < composite.cols(); ++j)
      if (composite.at(i, j) != 0)
        throw std::invalid_argument("homology_at: maps do not compose to zero");

  SmithWorker w(out);
  w.run();
  size_t b = out.cols();
  size_t limit = std::min(out.rows(), out.cols());
  std::vector<size_t> kernel_cols;
  for (size_t i = 0; i < b; ++i)
    if (i >= limit || w.a.at(i, i) == 0) kernel_cols.push_back(i);

  // coordinates of im(in) with respect to the kernel basis (= the selected
  // columns of V); rows of V^{-1} * in outside the kernel indices vanish
  // because out ∘ in = 0
  IntMatrix coords = w.vinv.multiply(in);
  IntMatrix rel(kernel_cols.size(), in.cols());
  for (size_t r = 0; r < kernel_cols.size(); ++r)
    for (size_t j = 0; j < in.cols(); ++j)
      rel.at(r, j) = coords.at(kernel_cols[r], j);
  return cokernel(rel);
}

FgAb hom(const FgAb& m, const FgAb& n) {
  std::vector<int64_t> orders;
  int64_t rank = m.rank() * n.rank();
  for (int64_t e : n.invariant_factors())
    for (int64_t i = 0; i < m.rank(); ++i) orders.push_back(e);
  for (int64_t d : m.invariant_factors())
    for (int64_t e : n.invariant_factors())
      orders.push_back(std::gcd(d, e));
  return FgAb::from_cyclic_orders(rank, orders);
}

FgAb ext1(const FgAb& m, const FgAb& n) {
  std::vector<int64_t> orders;
  for (int64_t d : m.invariant_factors()) {
    for (int64_t i = 0; i < n.rank(); ++i) orders.push_back(d);
    for (int64_t e : n.invariant_factors()) orders.push_back(std::gcd(d, e));
  }
  return FgAb::from_cyclic_orders(0, orders);
}

FgAb tensor(const FgAb& m, const FgAb& n) {
  std::vector<int64_t> orders;
  int64_t rank = m.rank() * n.rank();
  for (int64_t e : n.invariant_factors())
    for (int64_t i = 0; i < m.rank(); ++i) orders.push_back(e);
  for (int64_t d : m.invariant_factors())
    for (int64_t i = 0; i < n.rank(); ++i) orders.push_back(d);
  for (int64_t d : m.invariant_factors())
    for (int64_t e : n.invariant_factors())
      orders.push_back(std::gcd(d, e));
  return FgAb::from_cyclic_orders(rank, orders);
}

FgAb tor1(const FgAb& m, const FgAb& n) {
  std::vector<int64_t> orders;
  for (int64_t d : m.invariant_factors())
    for (int64_t e : n.invariant_factors())
      orders.push_back(std::gcd(d, e));
  return FgAb::from_cyclic_orders(0, orders);
}

FgSupport support(const FgAb& m) {
  if (m.rank() > 0) return FgSupport{true, PrimeSet::all()};
  std::vector<int64_t> primes;
  if (!m.invariant_factors().empty())
    primes = prime_factors(m.invariant_factors().back());
  return FgSupport{false, PrimeSet::finite(primes)};
}

std::pair<FgAb, FgAb> torsion_part(const FgAb& m, const PrimeSet& p) {
  std::vector<int64_t> torsion_orders, rest_orders;
  for (int64_t d : m.invariant_factors()) {
    int64_t in_part = 1;
    for (int64_t q : prime_factors(d))
      if (p.contains(q)) in_part *= p_power_part(d, q);
    torsion_orders.push_back(in_part);
    rest_orders.push_back(d / in_part);
  }
  return {FgAb::from_cyclic_orders(0, torsion_orders),
          FgAb::from_cyclic_orders(m.rank(), rest_orders)};
}

bool is_p_divisible(const FgAb& m, int64_t p) {
  if (m.rank() > 0) return false;
  for (int64_t d : m.invariant_factors())
    if (d % p == 0) return false;
  return true;
}

bool is_p_torsion_free(const FgAb& m, int64_t p) {
  for (int64_t d : m.invariant_factors())
    if (d % p == 0) return false;
  return true;
}

} // namespace tsilt
