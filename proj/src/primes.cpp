#include "tsilt/primes.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsilt {

namespace {

std::vector<int64_t>& prime_cache() {
  static std::vector<int64_t> cache = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  return cache;
}

void grow_cache_until(size_t count, int64_t at_least_value) {
  auto& cache = prime_cache();
  int64_t candidate = cache.back();
  while (cache.size() < count || cache.back() < at_least_value) {
    candidate += 2;
    if (is_prime(candidate)) cache.push_back(candidate);
    if (candidate > (int64_t{1} << 40))
      throw std::runtime_error("prime cache growth out of range");
  }
}

std::vector<int64_t> sorted_unique(std::vector<int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int64_t> merge_union(const std::vector<int64_t>& a,
                                 const std::vector<int64_t>& b) {
  std::vector<int64_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

std::vector<int64_t> merge_intersect(const std::vector<int64_t>& a,
                                     const std::vector<int64_t>& b) {
  std::vector<int64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<int64_t> merge_minus(const std::vector<int64_t>& a,
                                 const std::vector<int64_t>& b) {
  std::vector<int64_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

bool sorted_subset(const std::vector<int64_t>& a,
                   const std::vector<int64_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

bool is_prime(int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

int64_t nth_prime(int64_t i) {
  if (i < 1) throw std::invalid_argument("nth_prime: index must be >= 1");
  grow_cache_until(static_cast<size_t>(i), 0);
  return prime_cache()[static_cast<size_t>(i - 1)];
}

int64_t prime_index(int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("prime_index: not a prime");
  grow_cache_until(0, p);
  const auto& cache = prime_cache();
  auto it = std::lower_bound(cache.begin(), cache.end(), p);
  return static_cast<int64_t>(it - cache.begin()) + 1;
}

std::vector<int64_t> prime_factors(int64_t n) {
  if (n < 0) n = -n;
  std::vector<int64_t> out;
  for (int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int64_t p_valuation(int64_t n, int64_t p) {
  if (n == 0) throw std::invalid_argument("p_valuation of zero");
  if (n < 0) n = -n;
  int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int64_t p_power_part(int64_t n, int64_t p) {
  int64_t r = 1;
  for (int64_t v = p_valuation(n, p); v > 0; --v) r *= p;
  return r;
}

PrimeSet PrimeSet::finite(std::vector<int64_t> primes) {
  for (int64_t p : primes)
    if (!is_prime(p))
      throw std::invalid_argument("PrimeSet: " + std::to_string(p) +
                                  " is not prime");
  PrimeSet s;
  s.kind_ = Kind::Finite;
  s.basis_ = sorted_unique(std::move(primes));
  return s;
}

PrimeSet PrimeSet::cofinite(std::vector<int64_t> excluded) {
  for (int64_t p : excluded)
    if (!is_prime(p))
      throw std::invalid_argument("PrimeSet: " + std::to_string(p) +
                                  " is not prime");
  PrimeSet s;
  s.kind_ = Kind::Cofinite;
  s.basis_ = sorted_unique(std::move(excluded));
  return s;
}

PrimeSet PrimeSet::tail(int64_t k) {
  if (k < 1) throw std::invalid_argument("PrimeSet::tail: k must be >= 1");
  std::vector<int64_t> excluded;
  for (int64_t j = 1; j < k; ++j) excluded.push_back(nth_prime(j));
  return cofinite(std::move(excluded));
}

bool PrimeSet::contains(int64_t p) const {
  bool listed = std::binary_search(basis_.begin(), basis_.end(), p);
  return kind_ == Kind::Finite ? listed : !listed;
}

PrimeSet PrimeSet::complement() const {
  PrimeSet s;
  s.kind_ = kind_ == Kind::Finite ? Kind::Cofinite : Kind::Finite;
  s.basis_ = basis_;
  return s;
}

PrimeSet PrimeSet::intersect(const PrimeSet& other) const {
  PrimeSet s;
  if (kind_ == Kind::Finite && other.kind_ == Kind::Finite) {
    s.kind_ = Kind::Finite;
    s.basis_ = merge_intersect(basis_, other.basis_);
  } else if (kind_ == Kind::Finite) {
    s.kind_ = Kind::Finite;
    s.basis_ = merge_minus(basis_, other.basis_);
  } else if (other.kind_ == Kind::Finite) {
    s.kind_ = Kind::Finite;
    s.basis_ = merge_minus(other.basis_, basis_);
  } else {
    s.kind_ = Kind::Cofinite;
    s.basis_ = merge_union(basis_, other.basis_);
  }
  return s;
}

PrimeSet PrimeSet::unite(const PrimeSet& other) const {
  return complement().intersect(other.complement()).complement();
}

PrimeSet PrimeSet::minus(const PrimeSet& other) const {
  return intersect(other.complement());
}

bool PrimeSet::subset_of(const PrimeSet& other) const {
  if (kind_ == Kind::Finite) {
    if (other.kind_ == Kind::Finite) return sorted_subset(basis_, other.basis_);
    return merge_intersect(basis_, other.basis_).empty();
  }
  if (other.kind_ == Kind::Finite) return false; // cofinite sets are infinite
  return sorted_subset(other.basis_, basis_);
}

std::optional<int64_t> PrimeSet::as_tail() const {
  if (kind_ != Kind::Cofinite) return std::nullopt;
  for (size_t j = 0; j < basis_.size(); ++j)
    if (basis_[j] != nth_prime(static_cast<int64_t>(j) + 1))
      return std::nullopt;
  return static_cast<int64_t>(basis_.size()) + 1;
}

bool PrimeSet::operator<(const PrimeSet& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  return basis_ < other.basis_;
}

std::string PrimeSet::to_string() const {
  if (is_all()) return "all";
  if (is_empty()) return "{}";
  std::string body;
  for (size_t i = 0; i < basis_.size(); ++i) {
    if (i) body += ",";
    body += std::to_string(basis_[i]);
  }
  if (kind_ == Kind::Finite) return "{" + body + "}";
  return "all\\{" + body + "}";
}

int64_t fresh_prime_beyond(const std::vector<int64_t>& mentioned) {
  int64_t max_seen = 1;
  for (int64_t p : mentioned) max_seen = std::max(max_seen, p);
  int64_t candidate = max_seen + 1;
  while (!is_prime(candidate)) ++candidate;
  return candidate;
}

} // namespace tsilt
