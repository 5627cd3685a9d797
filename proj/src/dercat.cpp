#include "tsilt/dercat.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "tsilt/primes.hpp"

namespace tsilt {

bool TailSpec::covers(int64_t degree) const {
  return direction == TailDirection::Down ? degree <= start_degree
                                          : degree >= start_degree;
}

ZExpr TailSpec::entry(int64_t degree) const {
  if (!covers(degree)) return ZExpr::zero();
  int64_t step = direction == TailDirection::Down ? start_degree - degree
                                                  : degree - start_degree;
  int64_t p = nth_prime(prime_index + step);
  ZAtom a = kind == ZAtomKind::Pruefer ? ZAtom::pruefer(p) : ZAtom::adic(p);
  return ZExpr::atom(a, Mult::one(), flavor);
}

GradedComplex GradedComplex::stalk(int64_t degree, const ZExpr& e) {
  GradedComplex x;
  x.set_entry(degree, e);
  return x;
}

void GradedComplex::set_entry(int64_t degree, const ZExpr& e) {
  if (e.is_zero())
    entries_.erase(degree);
  else
    entries_[degree] = e;
}

void GradedComplex::set_tail(const TailSpec& t) { tail_ = t; }

ZExpr GradedComplex::entry(int64_t degree) const {
  ZExpr e;
  if (auto it = entries_.find(degree); it != entries_.end()) e = it->second;
  if (tail_) e = e.direct_sum(tail_->entry(degree));
  return e;
}

GradedComplex GradedComplex::direct_sum(const GradedComplex& o) const {
  if (tail_ && o.tail_)
    throw std::invalid_argument(
        "GradedComplex::direct_sum: at most one summand may carry a tail");
  GradedComplex out = *this;
  if (o.tail_) out.tail_ = o.tail_;
  for (const auto& [d, e] : o.entries_) {
    auto it = out.entries_.find(d);
    if (it == out.entries_.end())
      out.entries_[d] = e;
    else
      it->second = it->second.direct_sum(e);
  }
  return out;
}

std::string GradedComplex::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (const auto& [d, e] : entries_) {
    if (!s.empty()) s += " (+) ";
    s += e.to_string() + "@" + std::to_string(d);
  }
  if (tail_) {
    if (!s.empty()) s += " (+) ";
    s += std::string(tail_->kind == ZAtomKind::Pruefer ? "Pruefer" : "Adic");
    s += "-tail(" + std::to_string(tail_->start_degree) +
         (tail_->direction == TailDirection::Down ? " down" : " up") +
         ", p#" + std::to_string(tail_->prime_index) + ")";
  }
  return s;
}

GradedComplex shift(const GradedComplex& x, int64_t k) {
  GradedComplex out;
  for (const auto& [d, e] : x.explicit_entries()) out.set_entry(d - k, e);
  if (x.tail()) {
    TailSpec t = *x.tail();
    t.start_degree -= k;
    out.set_tail(t);
  }
  return out;
}

namespace {

// one degree's contribution to Hom_D(x, y[k])
HomVerdict degree_pair(const GradedComplex& x, const GradedComplex& y,
                       int64_t n, int64_t k) {
  ZExpr xn = x.entry(n);
  if (xn.is_zero()) return HomVerdict::zero("");
  return combine_direct_sum(hom_verdict(xn, y.entry(n + k)),
                            ext_verdict(xn, y.entry(n + k - 1)));
}

} // namespace

HomVerdict derived_hom(const GradedComplex& x, const GradedComplex& y,
                       int64_t k) {
  std::vector<int64_t> marks;
  for (const auto& [d, e] : x.explicit_entries()) marks.push_back(d);
  if (x.tail()) marks.push_back(x.tail()->start_degree);
  for (const auto& [d, e] : y.explicit_entries()) {
    marks.push_back(d - k);
    marks.push_back(d - k + 1);
  }
  if (y.tail()) {
    marks.push_back(y.tail()->start_degree - k);
    marks.push_back(y.tail()->start_degree - k + 1);
  }
  if (marks.empty()) return HomVerdict::zero("no overlapping degrees");

  int64_t lo = *std::min_element(marks.begin(), marks.end()) - 2;
  int64_t hi = *std::max_element(marks.begin(), marks.end()) + 2;
  HomVerdict acc = HomVerdict::zero("no overlapping degrees");
  for (int64_t n = lo; n <= hi; ++n)
    acc = combine_direct_sum(acc, degree_pair(x, y, n, k));

  if (x.tail()) {
    // beyond the window the tail degrees behave uniformly: both sides hold
    // singleton atoms at large primes, so one deep degree decides the status
    // of the whole remaining ray
    int64_t deep = x.tail()->direction == TailDirection::Down ? lo - 29
                                                              : hi + 29;
    HomVerdict rep = degree_pair(x, y, deep, k);
    if (rep.known_nonzero())
      acc = combine_direct_sum(
          acc, HomVerdict::nonzero("deep tail degrees contribute"));
    else if (rep.is_unknown())
      acc = combine_direct_sum(acc, HomVerdict::unknown(rep.note()));
  }
  return acc;
}

GradedComplex plus_dual(const GradedComplex& x) {
  GradedComplex out;
  for (const auto& [d, e] : x.explicit_entries())
    out.set_entry(-d, plus_dual_expr(e));
  if (x.tail()) {
    const TailSpec& t = *x.tail();
    if (t.kind != ZAtomKind::Pruefer || t.flavor == Flavor::Product)
      throw UndualizableError(
          "character dual of an adic or product tail is not representable");
    out.set_tail(TailSpec{t.direction == TailDirection::Down
                              ? TailDirection::Up
                              : TailDirection::Down,
                          -t.start_degree, t.prime_index, ZAtomKind::Adic,
                          Flavor::Product});
  }
  return out;
}

PerfectComplex PerfectComplex::free_stalk(int64_t degree, int64_t rank) {
  PerfectComplex x;
  x.set_rank(degree, rank);
  return x;
}

void PerfectComplex::set_rank(int64_t degree, int64_t r) {
  if (r < 0)
    throw std::invalid_argument("PerfectComplex: negative rank");
  if (r == 0)
    ranks_.erase(degree);
  else
    ranks_[degree] = r;
}

void PerfectComplex::set_differential(int64_t degree, IntMatrix d) {
  differentials_[degree] = std::move(d);
}

int64_t PerfectComplex::rank(int64_t degree) const {
  auto it = ranks_.find(degree);
  return it == ranks_.end() ? 0 : it->second;
}

IntMatrix PerfectComplex::differential(int64_t degree) const {
  auto it = differentials_.find(degree);
  if (it != differentials_.end()) return it->second;
  return IntMatrix(static_cast<size_t>(rank(degree + 1)),
                   static_cast<size_t>(rank(degree)));
}

void PerfectComplex::validate() const {
  for (const auto& [d, m] : differentials_) {
    if (m.rows() != static_cast<size_t>(rank(d + 1)) ||
        m.cols() != static_cast<size_t>(rank(d)))
      throw std::invalid_argument(
          "PerfectComplex: differential shape does not match ranks at degree " +
          std::to_string(d));
  }
  for (const auto& [d, m] : differentials_) {
    IntMatrix next = differential(d + 1);
    if (next.rows() == 0 || m.cols() == 0) continue;
    IntMatrix comp = next.multiply(m);
    for (size_t i = 0; i < comp.rows(); ++i)
      for (size_t j = 0; j < comp.cols(); ++j)
        if (comp.at(i, j) != 0)
          throw std::invalid_argument(
              "PerfectComplex: d*d != 0 at degree " + std::to_string(d));
  }
}

PerfectComplex star_dual(const PerfectComplex& x) {
  PerfectComplex out;
  for (const auto& [d, r] : x.ranks()) out.set_rank(-d, r);
  // the transpose of d^n : P^n -> P^(n+1) runs from degree -(n+1) to -n
  for (const auto& [d, r] : x.ranks()) {
    IntMatrix dn = x.differential(d);
    bool nonzero = false;
    for (size_t i = 0; i < dn.rows() && !nonzero; ++i)
      for (size_t j = 0; j < dn.cols() && !nonzero; ++j)
        nonzero = dn.at(i, j) != 0;
    if (nonzero) out.set_differential(-(d + 1), dn.transpose());
  }
  return out;
}

GradedComplex cohomology_of_perfect(const PerfectComplex& x) {
  x.validate();
  GradedComplex out;
  for (const auto& [d, r] : x.ranks()) {
    FgAb h = homology_at(x.differential(d - 1), x.differential(d));
    if (!h.is_zero()) out.set_entry(d, ZExpr::from_fg(h));
  }
  return out;
}

} // namespace tsilt
