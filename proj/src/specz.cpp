#include "tsilt/specz.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tsilt {

SpecSubset SpecSubset::all() { return SpecSubset(true, PrimeSet::empty()); }

SpecSubset SpecSubset::closed(const PrimeSet& pts) {
  return SpecSubset(false, pts);
}

SpecSubset SpecSubset::empty() { return closed(PrimeSet::empty()); }

const PrimeSet& SpecSubset::points() const {
  if (all_)
    throw std::logic_error("the whole spectrum has no closed point list");
  return pts_;
}

bool SpecSubset::contains(int64_t p) const {
  return all_ || pts_.contains(p);
}

bool SpecSubset::superset_of(const SpecSubset& o) const {
  if (all_) return true;
  if (o.all_) return false;
  return o.pts_.subset_of(pts_);
}

SpecSubset SpecSubset::unite(const SpecSubset& o) const {
  if (all_ || o.all_) return all();
  return closed(pts_.unite(o.pts_));
}

std::string SpecSubset::to_string() const {
  return all_ ? "ALL" : pts_.to_string();
}

SupportFiltration::SupportFiltration(
    SpecSubset low, std::vector<std::pair<int64_t, SpecSubset>> steps,
    TailRule tail, int64_t tail_offset)
    : low_(std::move(low)), steps_(std::move(steps)), tail_(tail),
      tail_offset_(tail_offset) {
  for (size_t i = 1; i < steps_.size(); ++i)
    if (steps_[i].first <= steps_[i - 1].first)
      throw std::invalid_argument("step thresholds must strictly increase");
  if (tail_offset_ < 0)
    throw std::invalid_argument("tail offset must be nonnegative");
}

SupportFiltration SupportFiltration::constant(const SpecSubset& value) {
  return SupportFiltration(value, {});
}

SpecSubset SupportFiltration::value_at(int64_t degree) const {
  if (steps_.empty() || degree < steps_.front().first) return low_;
  if (degree > steps_.back().first) {
    int64_t back = steps_.back().first;
    if (tail_ == TailRule::Empty) return SpecSubset::empty();
    return SpecSubset::closed(PrimeSet::tail(tail_offset_ + (degree - back)));
  }
  // last step at or below the degree
  const SpecSubset* v = &low_;
  for (const auto& [t, s] : steps_) {
    if (t > degree) break;
    v = &s;
  }
  return *v;
}

SpecSubset SupportFiltration::union_from(int64_t degree) const {
  if (steps_.empty()) return low_;
  SpecSubset acc = SpecSubset::empty();
  if (degree < steps_.front().first) acc = acc.unite(low_);
  for (size_t i = 0; i < steps_.size(); ++i) {
    int64_t upper = (i + 1 < steps_.size()) ? steps_[i + 1].first
                                            : steps_.back().first + 1;
    if (upper > degree) acc = acc.unite(steps_[i].second);
  }
  if (tail_ == TailRule::TailFamily) {
    int64_t back = steps_.back().first;
    int64_t k = std::max<int64_t>(1, degree - back);
    acc = acc.unite(SpecSubset::closed(PrimeSet::tail(tail_offset_ + k)));
  }
  return acc;
}

bool SupportFiltration::constant_all() const {
  return steps_.empty() && low_.is_all();
}

std::optional<int64_t> SupportFiltration::last_all_degree() const {
  if (steps_.empty()) return std::nullopt; // none, or unbounded when constant
  std::optional<int64_t> last;
  if (low_.is_all()) last = steps_.front().first - 1;
  for (size_t i = 0; i < steps_.size(); ++i) {
    if (!steps_[i].second.is_all()) continue;
    int64_t upper = (i + 1 < steps_.size()) ? steps_[i + 1].first
                                            : steps_.back().first + 1;
    last = upper - 1;
  }
  return last;
}

std::optional<int64_t> SupportFiltration::first_empty_degree() const {
  if (steps_.empty())
    return low_.is_empty() ? std::optional<int64_t>(0) : std::nullopt;
  if (low_.is_empty()) return steps_.front().first - 1;
  for (const auto& [t, s] : steps_)
    if (s.is_empty()) return t;
  if (tail_ == TailRule::Empty) return steps_.back().first + 1;
  return std::nullopt;
}

std::string SupportFiltration::to_string() const {
  std::ostringstream out;
  out << "Phi[low=" << low_.to_string();
  for (const auto& [t, s] : steps_) out << ", " << t << ":" << s.to_string();
  if (!steps_.empty()) {
    if (tail_ == TailRule::Empty)
      out << ", then empty";
    else
      out << ", then tail(+" << tail_offset_ << ")";
  }
  out << "]";
  return out.str();
}

std::string FiltrationDiagnostics::to_string() const {
  if (valid) return "valid";
  std::ostringstream out;
  for (size_t i = 0; i < non_decreasing_at.size(); ++i) {
    if (i) out << ", ";
    out << "NON_DECREASING(" << non_decreasing_at[i] << ")";
  }
  return out.str();
}

FiltrationDiagnostics validate_filtration(const SupportFiltration& f) {
  FiltrationDiagnostics d;
  const auto& steps = f.steps();
  if (steps.empty()) return d; // constant filtrations are always monotone
  if (!f.low().superset_of(steps.front().second))
    d.non_decreasing_at.push_back(steps.front().first);
  for (size_t i = 1; i < steps.size(); ++i)
    if (!steps[i - 1].second.superset_of(steps[i].second))
      d.non_decreasing_at.push_back(steps[i].first);
  int64_t back = steps.back().first;
  if (!steps.back().second.superset_of(f.value_at(back + 1)))
    d.non_decreasing_at.push_back(back + 1);
  d.valid = d.non_decreasing_at.empty();
  return d;
}

bool nondegenerate(const SupportFiltration& f) {
  // the union over all degrees is the low value; both terminal rules force
  // an empty intersection once at least one step exists
  return f.low().is_all() && !f.steps().empty();
}

std::optional<std::pair<int64_t, int64_t>> intermediate(
    const SupportFiltration& f) {
  auto n = f.last_all_degree();
  auto m = f.first_empty_degree();
  if (n && m) return std::make_pair(*n, *m);
  return std::nullopt;
}

namespace {

// primes whose behavior distinguishes an expression: torsion orders and the
// defining sets of its atoms
std::vector<int64_t> expr_probe_primes(const ZExpr& e) {
  std::vector<int64_t> out;
  for (int64_t d : e.fg().invariant_factors())
    for (int64_t q : prime_factors(d)) out.push_back(q);
  for (const ZTerm& t : e.terms())
    for (int64_t q : t.atom.primes().basis()) out.push_back(q);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// check a per-prime predicate over every closed point of s: the listed
// probe primes are tested directly and one representative stands in for the
// rest of a cofinite set
template <class Pred>
bool holds_on_points(const ZExpr& e, const PrimeSet& s, Pred pred) {
  std::vector<int64_t> specials = expr_probe_primes(e);
  for (int64_t q : s.basis()) specials.push_back(q);
  for (int64_t q : specials)
    if (s.contains(q) && !pred(e, q)) return false;
  if (s.kind() == PrimeSet::Kind::Cofinite) {
    int64_t rep = fresh_prime_beyond(specials);
    if (!pred(e, rep)) return false;
  }
  return true;
}

bool aisle_entry_ok(const ZExpr& e, const SpecSubset& level) {
  if (e.is_zero()) return true;
  if (level.is_all()) return true;
  ExprSupport sup = expr_support(e);
  if (!sup.torsion_only) return false; // generic point needs the ALL level
  return sup.primes.subset_of(level.points());
}

bool coaisle_entry_ok(const ZExpr& e, const SpecSubset& um,
                      const SpecSubset& um1) {
  // an ALL value anywhere at or above this degree forces vanishing
  if (um.is_all() || um1.is_all()) return e.is_zero();
  if (e.is_zero()) return true;
  return holds_on_points(e, um.points(),
                         [](const ZExpr& x, int64_t q) {
                           return is_p_torsion_free(x, q);
                         }) &&
         holds_on_points(e, um1.points(), [](const ZExpr& x, int64_t q) {
           return is_p_divisible(x, q);
         });
}

// Probe plan for a complex tail against a filtration: an explicit window
// plus one deep representative degree. The window spans the step region and
// keeps going until the ray's prime index has passed every prime mentioned
// by a fixed set of the filtration; past that point the answers are
// constant (fixed sets cannot reach the fresh primes, and against a tail
// family both indices advance in lockstep), so one deep probe decides the
// rest of the ray.
struct TailProbes {
  std::vector<int64_t> window;
  int64_t deep = 0;
};

TailProbes tail_probes(const TailSpec& t, const SupportFiltration& f) {
  int64_t max_idx = 0;
  auto see = [&](const SpecSubset& s) {
    if (s.is_all()) return;
    for (int64_t q : s.points().basis())
      max_idx = std::max(max_idx, prime_index(q));
  };
  see(f.low());
  for (const auto& [d, s] : f.steps()) see(s);
  // ray steps needed before the index clears every fixed prime
  int64_t reach = std::max<int64_t>(2, max_idx + 3 - t.prime_index);
  TailProbes out;
  if (t.direction == TailDirection::Down) {
    int64_t lo = t.start_degree;
    if (!f.steps().empty()) lo = std::min(lo, f.steps().front().first - 2);
    lo = std::min(lo - 2, t.start_degree - reach);
    for (int64_t d = t.start_degree; d >= lo; --d) out.window.push_back(d);
    out.deep = lo - 5;
  } else {
    int64_t hi = t.start_degree;
    if (!f.steps().empty()) hi = std::max(hi, f.steps().back().first + 2);
    hi = std::max(hi + 2, t.start_degree + reach);
    for (int64_t d = t.start_degree; d <= hi; ++d) out.window.push_back(d);
    out.deep = hi + 5;
  }
  return out;
}

} // namespace

bool aisle_member(const GradedComplex& x, const SupportFiltration& f) {
  for (const auto& [d, e] : x.explicit_entries())
    if (!aisle_entry_ok(e, f.value_at(d))) return false;
  if (x.tail()) {
    TailProbes probes = tail_probes(*x.tail(), f);
    for (int64_t d : probes.window)
      if (!aisle_entry_ok(x.entry(d), f.value_at(d))) return false;
    if (!aisle_entry_ok(x.entry(probes.deep), f.value_at(probes.deep)))
      return false;
  }
  return true;
}

bool coaisle_member(const GradedComplex& x, const SupportFiltration& f) {
  if (f.constant_all()) return x.is_zero();
  for (const auto& [d, e] : x.explicit_entries())
    if (!coaisle_entry_ok(e, f.union_from(d), f.union_from(d + 1)))
      return false;
  if (x.tail()) {
    TailProbes probes = tail_probes(*x.tail(), f);
    for (int64_t d : probes.window)
      if (!coaisle_entry_ok(x.entry(d), f.union_from(d),
                            f.union_from(d + 1)))
        return false;
    if (!coaisle_entry_ok(x.entry(probes.deep), f.union_from(probes.deep),
                          f.union_from(probes.deep + 1)))
      return false;
  }
  return true;
}

TruncationTriangle::TruncationTriangle(GradedComplex u, GradedComplex v,
                                       std::vector<TruncationRecord> records,
                                       const SupportFiltration& f)
    : u_(std::move(u)), v_(std::move(v)), records_(std::move(records)) {
  if (!aisle_member(u_, f))
    throw std::logic_error("truncation produced a lower part outside the "
                           "aisle for " + f.to_string());
  if (!coaisle_member(v_, f))
    throw std::logic_error("truncation produced an upper part outside the "
                           "coaisle for " + f.to_string());
}

namespace {

void add_entry(GradedComplex& c, int64_t degree, const ZExpr& e) {
  if (e.is_zero()) return;
  c.set_entry(degree, c.entry(degree).direct_sum(e));
}

// (P-primary part, torsion free rest) of an expression
std::pair<ZExpr, ZExpr> torsion_split(const ZExpr& e, const PrimeSet& p) {
  auto [gfg, rfg] = torsion_part(e.fg(), p);
  ZExpr gamma = ZExpr::from_fg(gfg);
  ZExpr rest = ZExpr::from_fg(rfg);
  for (const ZTerm& t : e.terms()) {
    switch (t.atom.kind()) {
      case ZAtomKind::Pruefer: {
        PrimeSet in = t.atom.primes().intersect(p);
        PrimeSet out = t.atom.primes().minus(p);
        if (!in.is_empty())
          gamma = gamma.direct_sum(
              ZExpr::family(ZAtomKind::Pruefer, in, t.mult, t.flavor));
        if (!out.is_empty())
          rest = rest.direct_sum(
              ZExpr::family(ZAtomKind::Pruefer, out, t.mult, t.flavor));
        break;
      }
      case ZAtomKind::Adic:
      case ZAtomKind::Rationals:
      case ZAtomKind::Loc:
        rest = rest.direct_sum(ZExpr::atom(t.atom, t.mult, t.flavor));
        break;
      case ZAtomKind::DualLoc: {
        // torsion lives away from the inverted set; a hit cannot be split
        // off without leaving the vocabulary
        PrimeSet hit = p.minus(t.atom.primes());
        if (!hit.is_empty())
          throw UnsupportedEntryError(
              "cannot split the torsion of " + t.atom.to_string() +
              " along " + p.to_string());
        rest = rest.direct_sum(ZExpr::atom(t.atom, t.mult, t.flavor));
        break;
      }
    }
  }
  return {gamma, rest};
}

} // namespace

TruncationTriangle truncate(const GradedComplex& x,
                            const SupportFiltration& f) {
  FiltrationDiagnostics diag = validate_filtration(f);
  if (!diag.valid)
    throw std::invalid_argument("truncation needs a monotone filtration: " +
                                diag.to_string());
  if (x.tail())
    throw std::invalid_argument("truncation of tail complexes is not "
                                "supported");
  GradedComplex u, v;
  std::vector<TruncationRecord> records;
  for (const auto& [d, e] : x.explicit_entries()) {
    SpecSubset sn = f.value_at(d);
    SpecSubset sn1 = f.value_at(d + 1);
    TruncationRecord rec;
    rec.degree = d;
    rec.level = sn.to_string();
    rec.next_level = sn1.to_string();
    if (sn.is_all()) {
      // the level swallows the whole entry
      add_entry(u, d, e);
      rec.torsion_kept = e.to_string();
      rec.correction_up = "0";
      rec.localized_away = "0";
      records.push_back(rec);
      continue;
    }
    auto [gamma, rest] = torsion_split(e, sn.points());
    const PrimeSet& p1 = sn1.points(); // sn1 is closed on monotone input
    auto [g0, g1] = derived_torsion(rest, p1);
    assert(g0.is_zero());
    (void)g0;
    ZExpr local = localize(rest, p1);
    add_entry(u, d, gamma);
    add_entry(u, d + 1, g1);
    add_entry(v, d, local);
    rec.torsion_kept = gamma.to_string();
    rec.correction_up = g1.to_string();
    rec.localized_away = local.to_string();
    records.push_back(rec);
  }
  return TruncationTriangle(u, v, records, f);
}

} // namespace tsilt
