#include "tsilt/zchains.hpp"

#include <algorithm>
#include <sstream>

namespace tsilt {

// ------------------------------------------------------------------- lattice

ZEpi ZEpi::zero_ring() { return ZEpi(true, PrimeSet::empty()); }

ZEpi ZEpi::loc(const PrimeSet& inverted) { return ZEpi(false, inverted); }

const PrimeSet& ZEpi::inverted() const {
  if (zero_) throw std::logic_error("the zero ring inverts no set of primes");
  return inverted_;
}

std::string ZEpi::to_string() const {
  if (zero_) return "0-ring";
  if (inverted_.is_empty()) return "Z";
  if (inverted_.is_all()) return "Q";
  return "Z[" + inverted_.to_string() + "^-1]";
}

bool leq(const ZEpi& a, const ZEpi& b) {
  if (a.is_zero_ring()) return true;
  if (b.is_zero_ring()) return false;
  // inverting more primes moves down
  return b.inverted().subset_of(a.inverted());
}

ZEpi meet(const ZEpi& a, const ZEpi& b) {
  if (a.is_zero_ring() || b.is_zero_ring()) return ZEpi::zero_ring();
  return ZEpi::loc(a.inverted().unite(b.inverted()));
}

ZEpi join(const ZEpi& a, const ZEpi& b) {
  if (a.is_zero_ring()) return b;
  if (b.is_zero_ring()) return a;
  return ZEpi::loc(a.inverted().intersect(b.inverted()));
}

// -------------------------------------------------------------------- chains

ZEpiChain ZEpiChain::from_list(int64_t l, std::vector<PrimeSet> sets) {
  if (sets.empty())
    throw std::invalid_argument("a chain needs at least one prime set");
  return ZEpiChain(l, false, 0, std::move(sets));
}

ZEpiChain ZEpiChain::from_tail(int64_t l, int64_t offset) {
  if (offset < 1)
    throw std::invalid_argument("tail offsets are 1-based prime indices");
  return ZEpiChain(l, true, offset, {});
}

int64_t ZEpiChain::tail_offset() const {
  if (!tail_) throw std::logic_error("list chains have no tail offset");
  return offset_;
}

const std::vector<PrimeSet>& ZEpiChain::sets() const {
  if (tail_) throw std::logic_error("tail chains have no explicit set list");
  return sets_;
}

PrimeSet ZEpiChain::set_at(int64_t k) const {
  if (k < 0) throw std::invalid_argument("chain positions start at zero");
  if (tail_) return PrimeSet::tail(offset_ + k);
  size_t i = static_cast<size_t>(k);
  // the list continues with its final value
  return i < sets_.size() ? sets_[i] : sets_.back();
}

ZEpi ZEpiChain::lambda_at(int64_t degree) const {
  if (degree < l_) return ZEpi::zero_ring();
  return ZEpi::loc(set_at(degree - l_));
}

std::string ZEpiChain::to_string() const {
  std::ostringstream os;
  os << "l=" << l_ << ": ";
  if (tail_) {
    os << "tail(" << offset_ << ")";
    return os.str();
  }
  for (size_t i = 0; i < sets_.size(); ++i) {
    if (i) os << " > ";
    os << sets_[i].to_string();
  }
  return os.str();
}

std::string ChainDiagnostics::to_string() const {
  if (valid) return bounded ? "OK bounded" : "OK unbounded";
  std::string s;
  for (const std::string& e : errors) {
    if (!s.empty()) s += "; ";
    s += e;
  }
  return s;
}

ChainDiagnostics validate_chain(const ZEpiChain& c) {
  ChainDiagnostics d;
  if (c.has_tail()) return d; // decreasing with empty intersection by shape
  const auto& s = c.sets();
  for (size_t i = 1; i < s.size(); ++i)
    if (!s[i].subset_of(s[i - 1])) {
      d.valid = false;
      d.errors.push_back("NOT_DECREASING(" + std::to_string(i) + ")");
    }
  if (!s.back().is_empty()) {
    d.valid = false;
    d.errors.push_back("NONEMPTY_INTERSECTION");
  }
  d.bounded = std::any_of(s.begin(), s.end(),
                          [](const PrimeSet& p) { return p.is_empty(); });
  return d;
}

// --------------------------------------------------------------------- cones

namespace {

ZExpr loc_expr(const PrimeSet& p) {
  if (p.is_empty()) return ZExpr::from_fg(FgAb::free(1));
  return ZExpr::atom(ZAtom::loc(p));
}

void add_entry(GradedComplex& x, int64_t degree, const ZExpr& e) {
  if (e.is_zero()) return;
  x.set_entry(degree, x.entry(degree).direct_sum(e));
}

} // namespace

GradedComplex cone_mu(const ZEpiChain& c, int64_t n) {
  if (n < c.l() - 1) return GradedComplex::zero();
  if (n == c.l() - 1)
    return GradedComplex::stalk(-1, loc_expr(c.set_at(0)));
  int64_t k = n - c.l();
  PrimeSet fresh = c.set_at(k).minus(c.set_at(k + 1));
  if (fresh.is_empty()) return GradedComplex::zero();
  return GradedComplex::stalk(0, ZExpr::family(ZAtomKind::Pruefer, fresh));
}

GradedComplex cone_lambda(const ZEpiChain& c, int64_t n) {
  if (n < c.l())
    return GradedComplex::stalk(-1, ZExpr::from_fg(FgAb::free(1)));
  PrimeSet p = c.set_at(n - c.l());
  if (p.is_empty()) return GradedComplex::zero();
  return GradedComplex::stalk(0, ZExpr::family(ZAtomKind::Pruefer, p));
}

// ------------------------------------------------------------------ builders

GradedComplex build_silting(const ZEpiChain& c) {
  GradedComplex t;
  add_entry(t, -c.l(), loc_expr(c.set_at(0)));
  if (c.has_tail()) {
    // one fresh prime per level, walking down the degree line
    t.set_tail(TailSpec{TailDirection::Down, -c.l(),
                        c.tail_offset(), ZAtomKind::Pruefer, Flavor::Sum});
    return t;
  }
  for (size_t k = 0; k < c.sets().size(); ++k) {
    int64_t kk = static_cast<int64_t>(k);
    PrimeSet fresh = c.set_at(kk).minus(c.set_at(kk + 1));
    if (fresh.is_empty()) continue;
    add_entry(t, -(c.l() + kk), ZExpr::family(ZAtomKind::Pruefer, fresh));
  }
  return t;
}

GradedComplex build_cosilting(const ZEpiChain& c) {
  GradedComplex x;
  add_entry(x, c.l(), ZExpr::atom(ZAtom::dual_loc(c.set_at(0))));
  if (c.has_tail()) {
    x.set_tail(TailSpec{TailDirection::Up, c.l(),
                        c.tail_offset(), ZAtomKind::Adic, Flavor::Product});
    return x;
  }
  for (size_t k = 0; k < c.sets().size(); ++k) {
    int64_t kk = static_cast<int64_t>(k);
    PrimeSet fresh = c.set_at(kk).minus(c.set_at(kk + 1));
    if (fresh.is_empty()) continue;
    add_entry(x, c.l() + kk, ZExpr::family(ZAtomKind::Adic, fresh,
                                           Mult::one(), Flavor::Product));
  }
  return x;
}

SupportFiltration filtration_of_chain(const ZEpiChain& c) {
  std::vector<std::pair<int64_t, SpecSubset>> steps;
  if (c.has_tail()) {
    steps.emplace_back(c.l(), SpecSubset::closed(c.set_at(0)));
    return SupportFiltration(SpecSubset::all(), std::move(steps),
                             SupportFiltration::TailRule::TailFamily,
                             c.tail_offset());
  }
  for (size_t k = 0; k < c.sets().size(); ++k)
    steps.emplace_back(c.l() + static_cast<int64_t>(k),
                       SpecSubset::closed(c.sets()[k]));
  return SupportFiltration(SpecSubset::all(), std::move(steps));
}

ZExpr minimal_cosilting_module(const ZEpi& e) {
  if (e.is_zero_ring())
    throw std::invalid_argument("the zero ring has no cosilting module");
  const PrimeSet& p = e.inverted();
  ZExpr dual = ZExpr::atom(ZAtom::dual_loc(p));
  if (p.is_empty()) return dual; // the dual of the integers themselves
  return dual.direct_sum(
      ZExpr::family(ZAtomKind::Adic, p, Mult::one(), Flavor::Product));
}

} // namespace tsilt
