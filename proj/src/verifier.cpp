#include "tsilt/verifier.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tsilt {

namespace {

int64_t pick(std::mt19937_64& rng, int64_t n) {
  return static_cast<int64_t>(rng() % static_cast<uint64_t>(n));
}

std::string verdict_name(ItemVerdict v) {
  switch (v) {
    case ItemVerdict::Pass:
      return "pass";
    case ItemVerdict::Fail:
      return "fail";
    case ItemVerdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

}  // namespace

void Report::record(const std::string& check, ItemVerdict v, std::string note,
                    json reproducer) {
  switch (v) {
    case ItemVerdict::Pass:
      ++passed;
      return;  // passing items are counted, not itemized
    case ItemVerdict::Fail:
      ++failed;
      break;
    case ItemVerdict::Unknown:
      ++unknown;
      break;
  }
  items.push_back(
      ReportItem{check, v, std::move(note), std::move(reproducer)});
}

int Report::exit_code() const {
  if (failed > 0) return 1;
  if (total() > 0 &&
      static_cast<double>(unknown) >
          kUnknownThreshold * static_cast<double>(total()))
    return 2;
  return 0;
}

json Report::to_json() const {
  json j;
  j["schema"] = 1;
  j["suite"] = suite;
  j["passed"] = passed;
  j["failed"] = failed;
  j["unknown"] = unknown;
  j["exit"] = exit_code();
  json arr = json::array();
  for (const auto& it : items) {
    json ji;
    ji["check"] = it.check;
    ji["verdict"] = verdict_name(it.verdict);
    ji["note"] = it.note;
    ji["reproducer"] = it.reproducer;
    arr.push_back(std::move(ji));
  }
  j["items"] = std::move(arr);
  return j;
}

std::string Report::to_string() const {
  std::ostringstream out;
  out << suite << ": " << total() << " checks, " << passed << " passed, "
      << failed << " failed, " << unknown << " unknown";
  for (const auto& it : items)
    out << "\n  [" << verdict_name(it.verdict) << "] " << it.check
        << (it.note.empty() ? "" : ": " + it.note);
  return out.str();
}

Corpus make_z_corpus(uint64_t seed, int64_t count, const CorpusBounds& b) {
  Corpus c;
  c.seed = seed;
  c.bounds = b;
  std::mt19937_64 rng(seed);
  const int64_t span = b.max_degree - b.min_degree + 1;
  static const int64_t pool[] = {2, 3, 4, 5, 7, 8, 9, 16, 25, 27};
  constexpr int64_t pool_size = static_cast<int64_t>(std::size(pool));
  for (int64_t i = 0; i < count; ++i) {
    GradedComplex x;
    const int64_t width = 1 + pick(rng, b.max_width);
    for (int64_t w = 0; w < width; ++w) {
      const int64_t deg = b.min_degree + pick(rng, span);
      const int64_t rank = pick(rng, b.max_rank + 1);
      std::vector<int64_t> orders;
      bigint order = 1;
      while (pick(rng, 3) == 0) {
        const int64_t d = pool[pick(rng, pool_size)];
        if (order * d > b.max_order) break;
        orders.push_back(d);
        order *= d;
      }
      x.set_entry(deg, ZExpr::from_fg(FgAb::from_cyclic_orders(rank, orders)));
    }
    if (x.is_zero())
      x.set_entry(b.min_degree + pick(rng, span),
                  ZExpr::from_fg(FgAb::cyclic(2)));
    c.items.push_back(std::move(x));
  }
  return c;
}

KronCorpus make_kron_corpus(const Fq& f, uint64_t seed, int64_t count,
                            int64_t max_dim, int64_t min_degree,
                            int64_t max_degree) {
  KronCorpus c;
  c.seed = seed;
  std::mt19937_64 rng(seed);
  const int64_t span = max_degree - min_degree + 1;
  const auto points = all_quasisimples(f);
  for (int64_t i = 0; i < count; ++i) {
    KronComplex x;
    const int64_t width = 1 + pick(rng, 3);
    for (int64_t w = 0; w < width; ++w) {
      const int64_t deg = min_degree + pick(rng, span);
      KronExpr e;
      const int64_t parts = 1 + pick(rng, 2);
      for (int64_t t = 0; t < parts; ++t) {
        KronRep m;
        switch (pick(rng, 3)) {
          case 0:
            m = preproj(f, pick(rng, 3));
            break;
          case 1:
            m = preinj(f, pick(rng, 3));
            break;
          default:
            m = ray_module(f, points[pick(rng, (int64_t)points.size())],
                           1 + pick(rng, 2));
            break;
        }
        if (m.total_dim() <= max_dim) e = e.direct_sum(KronExpr::indec(m));
      }
      x.set_entry(deg, e);
    }
    if (x.entries().empty())
      x.set_entry(min_degree, KronExpr::indec(KronRep::proj(2)));
    c.items.push_back(std::move(x));
  }
  return c;
}

namespace {

// Totalization of a bounded complex of finitely generated groups into a
// complex of free modules: each cohomology H contributes its generators at
// its own degree and its relations one degree below.
struct FreeTotal {
  std::map<int64_t, int64_t> rank;                 // free rank of the entry
  std::map<int64_t, std::vector<int64_t>> factors; // its invariant factors
  int64_t lo = 0, hi = -1;                         // degree range of support

  int64_t gens(int64_t n) const {
    const auto r = rank.find(n);
    const auto fc = factors.find(n);
    return (r == rank.end() ? 0 : r->second) +
           (fc == factors.end() ? 0 : static_cast<int64_t>(fc->second.size()));
  }
  int64_t rels(int64_t n) const {
    const auto fc = factors.find(n);
    return fc == factors.end() ? 0 : static_cast<int64_t>(fc->second.size());
  }
  int64_t dim(int64_t n) const { return gens(n) + rels(n + 1); }

  // differential dim(n) -> dim(n+1): the relation block of the entry one
  // degree up lands on its generator block via the invariant factors
  IntMatrix diff(int64_t n) const {
    IntMatrix d(static_cast<size_t>(dim(n + 1)), static_cast<size_t>(dim(n)));
    const auto fc = factors.find(n + 1);
    if (fc == factors.end()) return d;
    const auto r = rank.find(n + 1);
    const int64_t base = r == rank.end() ? 0 : r->second;
    for (size_t j = 0; j < fc->second.size(); ++j)
      d.at(static_cast<size_t>(base) + j, static_cast<size_t>(gens(n)) + j) =
          fc->second[j];
    return d;
  }
};

FreeTotal totalize(const GradedComplex& x) {
  if (!x.is_bounded())
    throw std::invalid_argument("the resolution oracle needs bounded input");
  FreeTotal t;
  bool first = true;
  for (const auto& [n, e] : x.explicit_entries()) {
    if (!e.terms().empty())
      throw std::invalid_argument(
          "the resolution oracle needs finitely generated entries");
    t.rank[n] = e.fg().rank();
    t.factors[n] = e.fg().invariant_factors();
    if (first || n - 1 < t.lo) t.lo = n - 1;
    if (first || n > t.hi) t.hi = n;
    first = false;
  }
  return t;
}

int64_t hom_dim_total(const FreeTotal& f, const FreeTotal& g, int64_t m) {
  int64_t total = 0;
  for (int64_t n = f.lo; n <= f.hi; ++n) total += f.dim(n) * g.dim(n + m);
  return total;
}

// Differential of the integer Hom complex, Hom^m -> Hom^{m+1}; blocks are
// indexed by the source degree n and flattened row-major per block.
IntMatrix hom_diff(const FreeTotal& f, const FreeTotal& g, int64_t m) {
  std::map<int64_t, int64_t> coff, roff;
  int64_t ctot = 0, rtot = 0;
  for (int64_t n = f.lo; n <= f.hi; ++n) {
    if (f.dim(n) > 0 && g.dim(n + m) > 0) {
      coff[n] = ctot;
      ctot += f.dim(n) * g.dim(n + m);
    }
    if (f.dim(n) > 0 && g.dim(n + m + 1) > 0) {
      roff[n] = rtot;
      rtot += f.dim(n) * g.dim(n + m + 1);
    }
  }
  IntMatrix d(static_cast<size_t>(rtot), static_cast<size_t>(ctot));
  const int64_t sign = (std::abs(m) % 2 == 0) ? -1 : 1; // for -(-1)^m phi dF
  for (const auto& [n, off] : coff) {
    const int64_t fn = f.dim(n);
    const int64_t gnm = g.dim(n + m);
    const IntMatrix dg = g.diff(n + m);
    const IntMatrix df = f.diff(n - 1);
    for (int64_t a = 0; a < gnm; ++a) {
      for (int64_t b = 0; b < fn; ++b) {
        const int64_t col = off + a * fn + b;
        for (int64_t i = 0; i < g.dim(n + m + 1); ++i) {
          const bigint& val = dg.at(static_cast<size_t>(i),
                                    static_cast<size_t>(a));
          if (val != 0)
            d.at(static_cast<size_t>(roff.at(n) + i * fn + b),
                 static_cast<size_t>(col)) += val;
        }
        for (int64_t cc = 0; cc < f.dim(n - 1); ++cc) {
          const bigint& val = df.at(static_cast<size_t>(b),
                                    static_cast<size_t>(cc));
          if (val != 0)
            d.at(static_cast<size_t>(roff.at(n - 1) + a * f.dim(n - 1) + cc),
                 static_cast<size_t>(col)) += sign * val;
        }
      }
    }
  }
  return d;
}

}  // namespace

FgAb oracle_derived_hom_z(const GradedComplex& x, const GradedComplex& y,
                          int64_t k) {
  const FreeTotal f = totalize(x);
  const FreeTotal g = totalize(y);
  if (f.lo > f.hi || g.lo > g.hi) return FgAb::zero();
  if (hom_dim_total(f, g, k) == 0) return FgAb::zero();
  return homology_at(hom_diff(f, g, k - 1), hom_diff(f, g, k));
}

namespace {

// exact group behind a verdict, when the verdict pins one down
std::optional<FgAb> verdict_group(const HomVerdict& v) {
  switch (v.status()) {
    case VerdictStatus::Zero:
      return FgAb::zero();
    case VerdictStatus::Group:
      return v.group_value();
    case VerdictStatus::Atomic:
      if (v.atomic_value().terms().empty()) return v.atomic_value().fg();
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

// dimension after tensoring with the rationals, when finite
std::optional<int64_t> q_dimension(const ZExpr& e) {
  int64_t d = e.fg().rank();
  for (const auto& t : e.terms()) {
    switch (t.atom.kind()) {
      case ZAtomKind::Pruefer:
        break; // divisible torsion
      case ZAtomKind::Rationals:
      case ZAtomKind::Loc:
        if (t.mult.is_omega()) return std::nullopt;
        d += t.mult.count();
        break;
      default:
        return std::nullopt; // adics and duals have infinite rank
    }
  }
  return d;
}

std::optional<int64_t> euler_q(const GradedComplex& x) {
  if (!x.is_bounded()) return std::nullopt;
  int64_t chi = 0;
  for (const auto& [n, e] : x.explicit_entries()) {
    const auto d = q_dimension(e);
    if (!d) return std::nullopt;
    chi += (std::abs(n) % 2 == 0 ? *d : -*d);
  }
  return chi;
}

struct PrimeProfile {
  bool free_part = false;
  std::vector<int64_t> primes;
};

PrimeProfile profile_of(const GradedComplex& x) {
  PrimeProfile pr;
  for (const auto& [n, e] : x.explicit_entries()) {
    if (e.fg().rank() > 0) pr.free_part = true;
    for (int64_t d : e.fg().invariant_factors())
      for (int64_t p = 2; d > 1; ++p) {
        if (p * p > d) p = d; // what is left is prime
        if (d % p == 0) {
          pr.primes.push_back(p);
          while (d % p == 0) d /= p;
        }
      }
  }
  std::sort(pr.primes.begin(), pr.primes.end());
  pr.primes.erase(std::unique(pr.primes.begin(), pr.primes.end()),
                  pr.primes.end());
  return pr;
}

// Degree range of a complex where maps to or from the partner can live; a
// tail only matters at the rays indexed by the partner's primes.
std::optional<std::pair<int64_t, int64_t>> degree_hull(
    const GradedComplex& c, const PrimeProfile& partner) {
  bool any = false;
  int64_t lo = 0, hi = 0;
  auto extend = [&](int64_t d) {
    if (!any) {
      lo = hi = d;
      any = true;
    } else {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  };
  for (const auto& [n, e] : c.explicit_entries()) {
    (void)e;
    extend(n);
  }
  if (c.tail()) {
    const TailSpec& t = *c.tail();
    if (partner.free_part) extend(t.start_degree);
    for (int64_t p : partner.primes) {
      const int64_t i = prime_index(p);
      if (i < t.prime_index) continue;
      const int64_t delta = i - t.prime_index;
      extend(t.start_degree +
             (t.direction == TailDirection::Up ? delta : -delta));
    }
  }
  if (!any) return std::nullopt;
  return std::make_pair(lo, hi);
}

struct WindowScan {
  bool nonzero = false;
  bool unknown = false;
  std::vector<std::string> detail;
};

WindowScan scan_window(const GradedComplex& a, const GradedComplex& b,
                       int64_t klo, int64_t khi) {
  WindowScan s;
  for (int64_t k = klo; k <= khi; ++k) {
    const HomVerdict v = derived_hom(a, b, k);
    s.detail.push_back("k=" + std::to_string(k) + ": " + v.status_string());
    if (v.known_nonzero()) s.nonzero = true;
    if (v.is_unknown()) s.unknown = true;
  }
  return s;
}

// adaptive shift range in which a nonzero map from a to a shift of b must
// show up if one exists at all
std::optional<std::pair<int64_t, int64_t>> witness_range(
    const GradedComplex& a, const GradedComplex& b) {
  const auto ha = degree_hull(a, profile_of(b));
  const auto hb = degree_hull(b, profile_of(a));
  if (!ha || !hb) return std::nullopt;
  const int64_t klo = hb->first - ha->second - 1;
  const int64_t khi = hb->second - ha->first + 1;
  if (khi - klo > 300) return std::nullopt; // nothing in the corpora gets here
  return std::make_pair(klo, khi);
}

// Aisle rule of the silting structure of a chain, obtained by pairing the
// split silting summands against a stalk in degree l - m: the entry has to
// be divisible at P_m and free of Pruefer submodules at P_{m+1}, and from
// degree l on the first localization must neither map nor extend into it.
// The probes run through the verdict engine, so the answer can be Unknown.
struct AisleProbe {
  ItemVerdict verdict = ItemVerdict::Pass;
  std::string note;
};

AisleProbe silting_aisle_probe(const GradedComplex& x, const ZEpiChain& ch) {
  std::vector<int64_t> degrees;
  for (const auto& [d, e] : x.explicit_entries()) {
    (void)e;
    degrees.push_back(d);
  }
  if (x.tail()) {
    // sample an initial segment of the ray; later entries repeat the same
    // rule pattern one prime index further along
    const TailSpec& t = *x.tail();
    for (int64_t i = 0; i < 6; ++i) {
      const int64_t d =
          t.start_degree + (t.direction == TailDirection::Up ? i : -i);
      if (!x.explicit_entries().contains(d)) degrees.push_back(d);
    }
  }
  const PrimeSet p0 = ch.set_at(0);
  const ZExpr loc_probe = p0.is_empty() ? ZExpr::from_fg(FgAb::free(1))
                                        : ZExpr::atom(ZAtom::loc(p0));
  AisleProbe out;
  bool unknown = false;
  std::string unknown_note;
  auto run = [&](int64_t d, const HomVerdict& v,
                 const std::string& what) -> bool {
    if (v.known_nonzero()) {
      out.verdict = ItemVerdict::Fail;
      out.note = "degree " + std::to_string(d) + ": " + what;
      return false;
    }
    if (v.is_unknown() && !unknown) {
      unknown = true;
      unknown_note = "degree " + std::to_string(d) + ": " + what +
                     " undecided: " + v.note();
    }
    return true;
  };
  for (int64_t d : degrees) {
    const ZExpr e = x.entry(d);
    if (e.is_zero()) continue;
    const int64_t m = ch.l() - d;
    const PrimeSet div_set = ch.set_at(m >= 0 ? m : 0);
    const PrimeSet red_set = m >= 0 ? ch.set_at(m + 1) : ch.set_at(0);
    if (!div_set.is_empty() &&
        !run(d, ext_verdict(ZExpr::family(ZAtomKind::Pruefer, div_set), e),
             "not divisible across " + div_set.to_string()))
      return out;
    if (!red_set.is_empty() &&
        !run(d, hom_verdict(ZExpr::family(ZAtomKind::Pruefer, red_set), e),
             "Pruefer submodule at " + red_set.to_string()))
      return out;
    if (d >= ch.l() &&
        !run(d, ext_verdict(loc_probe, e),
             "the first localization extends into the entry"))
      return out;
    if (d > ch.l() &&
        !run(d, hom_verdict(loc_probe, e),
             "the first localization maps into the entry"))
      return out;
  }
  if (unknown) {
    out.verdict = ItemVerdict::Unknown;
    out.note = unknown_note;
  }
  return out;
}

}  // namespace

Report check_hom_oracle(const Corpus& c, int64_t pairs) {
  Report r;
  r.suite = "hom-oracle";
  const int64_t n = static_cast<int64_t>(c.items.size());
  if (n == 0) return r;
  std::mt19937_64 rng(c.seed ^ 0x9e3779b97f4a7c15ull);
  for (int64_t p = 0; p < pairs; ++p) {
    const GradedComplex& x = c.items[pick(rng, n)];
    const GradedComplex& y = c.items[pick(rng, n)];
    const int64_t k = -4 + pick(rng, 9);
    const FgAb oracle = oracle_derived_hom_z(x, y, k);
    const HomVerdict engine = derived_hom(x, y, k);
    const auto group = verdict_group(engine);
    json repro;
    repro["x"] = graded_complex_to_json(x);
    repro["y"] = graded_complex_to_json(y);
    repro["k"] = k;
    repro["oracle"] = fgab_to_json(oracle);
    repro["engine"] = hom_verdict_to_json(engine);
    if (!group)
      r.record("oracle-pair", ItemVerdict::Unknown,
               "engine verdict is not an exact group", std::move(repro));
    else if (*group == oracle)
      r.record("oracle-pair", ItemVerdict::Pass, "", json());
    else
      r.record("oracle-pair", ItemVerdict::Fail,
               "engine " + group->to_string() + " vs oracle " +
                   oracle.to_string(),
               std::move(repro));
  }
  return r;
}

Report check_plus_dual(const Corpus& c) {
  Report r;
  r.suite = "plus-dual";
  for (const auto& x : c.items) {
    const GradedComplex d = plus_dual(x);
    bool ok = true;
    std::string note;
    for (const auto& [n, e] : x.explicit_entries())
      if (d.entry(-n) != plus_dual_expr(e)) {
        ok = false;
        note = "mismatch at degree " + std::to_string(-n);
        break;
      }
    for (const auto& [n, e] : d.explicit_entries()) {
      (void)e;
      if (ok && d.entry(n) != plus_dual_expr(x.entry(-n))) {
        ok = false;
        note = "stray entry at degree " + std::to_string(n);
      }
    }
    json repro;
    repro["x"] = graded_complex_to_json(x);
    r.record("dual-degreewise", ok ? ItemVerdict::Pass : ItemVerdict::Fail,
             note, ok ? json() : std::move(repro));
  }
  return r;
}

Report check_ttriple(const SupportFiltration& f, const Corpus& c) {
  Report r;
  r.suite = "ttriple";
  for (const auto& x : c.items) {
    json repro;
    repro["filtration"] = filtration_to_json(f);
    repro["x"] = graded_complex_to_json(x);
    try {
      const TruncationTriangle tri = truncate(x, f);
      const GradedComplex& u = tri.u_part();
      const GradedComplex& v = tri.v_part();
      if (!aisle_member(u, f)) {
        repro["u"] = graded_complex_to_json(u);
        r.record("triangle", ItemVerdict::Fail,
                 "lower part escapes the aisle", std::move(repro));
        continue;
      }
      if (!coaisle_member(v, f)) {
        repro["v"] = graded_complex_to_json(v);
        r.record("triangle", ItemVerdict::Fail,
                 "upper part escapes the coaisle", std::move(repro));
        continue;
      }
      int64_t klo = -kOrthWindow;
      if (const auto range = witness_range(u, v); range && range->first < klo)
        klo = range->first;
      const WindowScan s = scan_window(u, v, klo, 0);
      if (s.nonzero) {
        repro["u"] = graded_complex_to_json(u);
        repro["v"] = graded_complex_to_json(v);
        repro["window"] = s.detail;
        r.record("triangle", ItemVerdict::Fail,
                 "nonnegative shift of the lower part maps to the upper part",
                 std::move(repro));
        continue;
      }
      const auto cx = euler_q(x);
      const auto cu = euler_q(u);
      const auto cv = euler_q(v);
      if (cx && cu && cv && *cx != *cu + *cv) {
        repro["u"] = graded_complex_to_json(u);
        repro["v"] = graded_complex_to_json(v);
        r.record("triangle", ItemVerdict::Fail,
                 "rational Euler characteristic is not additive",
                 std::move(repro));
        continue;
      }
      if (s.unknown) {
        repro["window"] = s.detail;
        r.record("triangle", ItemVerdict::Unknown,
                 "orthogonality window has unknown verdicts",
                 std::move(repro));
        continue;
      }
      r.record("triangle", ItemVerdict::Pass, "", json());
    } catch (const UnsupportedEntryError& e) {
      r.record("triangle", ItemVerdict::Unknown, e.what(), std::move(repro));
    } catch (const std::invalid_argument& e) {
      r.record("triangle", ItemVerdict::Fail, e.what(), std::move(repro));
    }
  }
  return r;
}

Report check_cosilting(const GradedComplex& c, const SupportFiltration& f,
                       const Corpus& corpus) {
  Report r;
  r.suite = "cosilting";
  {
    json repro;
    repro["c"] = graded_complex_to_json(c);
    repro["filtration"] = filtration_to_json(f);
    r.record("certificate-membership",
             coaisle_member(c, f) ? ItemVerdict::Pass : ItemVerdict::Fail,
             "the candidate must itself lie in the upper part",
             std::move(repro));
  }
  for (const auto& x : corpus.items) {
    const bool member = coaisle_member(x, f);
    const auto range = witness_range(x, c);
    // widen the base window when the degree spread between the item and the
    // candidate pushes the first possible witness past it
    int64_t khi = kOrthWindow;
    if (range && range->second > khi) khi = range->second;
    const WindowScan s = scan_window(x, c, 1, khi);
    json repro;
    repro["x"] = graded_complex_to_json(x);
    repro["member"] = member;
    repro["window"] = s.detail;
    if (s.unknown && !s.nonzero) {
      r.record("orthogonality", ItemVerdict::Unknown,
               "window verdicts not all decided", std::move(repro));
    } else if (member == !s.nonzero) {
      r.record("orthogonality", ItemVerdict::Pass, "", json());
    } else {
      r.record("orthogonality", ItemVerdict::Fail,
               member ? "member with a nonzero forbidden map"
                      : "non-member orthogonal to the candidate",
               std::move(repro));
    }
    if (x.is_zero()) continue;
    if (!range) {
      r.record("cogenerator", ItemVerdict::Unknown,
               "no finite witness range", std::move(repro));
      continue;
    }
    const WindowScan w = scan_window(x, c, range->first, range->second);
    if (w.nonzero)
      r.record("cogenerator", ItemVerdict::Pass, "", json());
    else if (w.unknown)
      r.record("cogenerator", ItemVerdict::Unknown,
               "witness scan left unknowns", std::move(repro));
    else
      r.record("cogenerator", ItemVerdict::Fail,
               "nonzero object sees no shift of the candidate",
               std::move(repro));
  }
  return r;
}

Report check_silting(const GradedComplex& t, const ZEpiChain& chain,
                     const Corpus& corpus) {
  Report r;
  r.suite = "silting";
  {
    json repro;
    repro["t"] = graded_complex_to_json(t);
    repro["chain"] = zchain_to_json(chain);
    const AisleProbe cert = silting_aisle_probe(t, chain);
    r.record("certificate-membership", cert.verdict,
             cert.verdict == ItemVerdict::Pass
                 ? ""
                 : "the candidate must itself lie in the aisle; " + cert.note,
             cert.verdict == ItemVerdict::Pass ? json() : std::move(repro));
  }
  for (const auto& x : corpus.items) {
    const AisleProbe mem = silting_aisle_probe(x, chain);
    const auto range = witness_range(t, x);
    int64_t khi = kOrthWindow;
    if (range && range->second > khi) khi = range->second;
    const WindowScan s = scan_window(t, x, 1, khi);
    json repro;
    repro["x"] = graded_complex_to_json(x);
    repro["member"] = mem.verdict == ItemVerdict::Pass;
    repro["window"] = s.detail;
    if (mem.verdict == ItemVerdict::Unknown) {
      r.record("orthogonality", ItemVerdict::Unknown,
               "membership probe undecided; " + mem.note, std::move(repro));
    } else if (s.unknown && !s.nonzero) {
      r.record("orthogonality", ItemVerdict::Unknown,
               "window verdicts not all decided", std::move(repro));
    } else if ((mem.verdict == ItemVerdict::Pass) == !s.nonzero) {
      r.record("orthogonality", ItemVerdict::Pass, "", json());
    } else {
      r.record("orthogonality", ItemVerdict::Fail,
               mem.verdict == ItemVerdict::Pass
                   ? "member receiving a forbidden positive shift"
                   : "non-member orthogonal to the candidate; " + mem.note,
               std::move(repro));
    }
    if (x.is_zero()) continue;
    if (!range) {
      r.record("generator", ItemVerdict::Unknown, "no finite witness range",
               std::move(repro));
      continue;
    }
    const WindowScan w = scan_window(t, x, range->first, range->second);
    if (w.nonzero)
      r.record("generator", ItemVerdict::Pass, "", json());
    else if (w.unknown)
      r.record("generator", ItemVerdict::Unknown,
               "witness scan left unknowns", std::move(repro));
    else
      r.record("generator", ItemVerdict::Fail,
               "candidate sees no shift of a nonzero object",
               std::move(repro));
  }
  return r;
}

Report check_psi_duality(const GradedComplex& t, const GradedComplex& c) {
  Report r;
  r.suite = "psi-duality";
  const GradedComplex d = plus_dual(t);
  if (d == c) {
    r.record("structural", ItemVerdict::Pass, "", json());
    return r;
  }
  json repro;
  repro["t"] = graded_complex_to_json(t);
  repro["expected"] = graded_complex_to_json(c);
  repro["dual"] = graded_complex_to_json(d);
  std::string note = "dual of the first argument differs";
  for (const auto& [n, e] : c.explicit_entries())
    if (d.entry(n) != e) {
      note = "first difference at degree " + std::to_string(n);
      break;
    }
  r.record("structural", ItemVerdict::Fail, note, std::move(repro));
  return r;
}

Report check_psi_duality_kron(const Fq& fq, const KronComplex& t,
                              const KronComplex& c) {
  Report r;
  r.suite = "psi-duality-kron";
  const KronComplex d = plus_dual(t);
  if (d == c) {
    r.record("structural", ItemVerdict::Pass, "", json());
    return r;
  }
  json repro;
  repro["t"] = kron_complex_to_json(fq, t);
  repro["expected"] = kron_complex_to_json(fq, c);
  repro["dual"] = kron_complex_to_json(fq, d);
  r.record("structural", ItemVerdict::Fail,
           "dual of the first argument differs", std::move(repro));
  return r;
}

Report check_kron_cosilting(const Fq& fq, const KronComplex& c,
                            const KronTStr& t, const KronCorpus& corpus) {
  Report r;
  r.suite = "kron-cosilting";
  {
    json repro;
    repro["c"] = kron_complex_to_json(fq, c);
    const Membership m = tstructure_member_kron(fq, c, t);
    r.record("certificate-membership",
             m == Membership::In
                 ? ItemVerdict::Pass
                 : (m == Membership::Unknown ? ItemVerdict::Unknown
                                             : ItemVerdict::Fail),
             "the candidate must itself lie in the upper part",
             std::move(repro));
  }
  // explicit degree spread of the candidate, for the witness scan
  int64_t clo = 0, chi = -1;
  for (const auto& [n, e] : c.entries()) {
    (void)e;
    if (clo > chi) clo = chi = n;
    clo = std::min(clo, n);
    chi = std::max(chi, n);
  }
  for (const auto& x : corpus.items) {
    const Membership mem = tstructure_member_kron(fq, x, t);
    bool nonzero = false, unk = false;
    std::vector<std::string> detail;
    for (int64_t k = 1; k <= kOrthWindow; ++k) {
      const KronVerdict v = derived_hom(fq, x, c, k);
      detail.push_back("k=" + std::to_string(k) + ": " +
                       (v.known_zero()
                            ? std::string("zero")
                            : (v.known_nonzero() ? "nonzero" : "unknown")));
      if (v.known_nonzero()) nonzero = true;
      if (v.is_unknown()) unk = true;
    }
    json repro;
    repro["x"] = kron_complex_to_json(fq, x);
    repro["window"] = detail;
    if (mem == Membership::Unknown || (unk && !nonzero)) {
      r.record("orthogonality", ItemVerdict::Unknown,
               "membership or window not decided", std::move(repro));
    } else if ((mem == Membership::In) == !nonzero) {
      r.record("orthogonality", ItemVerdict::Pass, "", json());
    } else {
      r.record("orthogonality", ItemVerdict::Fail,
               mem == Membership::In
                   ? "member with a nonzero forbidden map"
                   : "non-member orthogonal to the candidate",
               std::move(repro));
    }
    if (x.entries().empty() || clo > chi) continue;
    int64_t xlo = 0, xhi = -1;
    for (const auto& [n, e] : x.entries()) {
      (void)e;
      if (xlo > xhi) xlo = xhi = n;
      xlo = std::min(xlo, n);
      xhi = std::max(xhi, n);
    }
    bool witness = false, wunk = false;
    for (int64_t k = clo - xhi - 1; k <= chi - xlo + 1; ++k) {
      const KronVerdict v = derived_hom(fq, x, c, k);
      if (v.known_nonzero()) witness = true;
      if (v.is_unknown()) wunk = true;
    }
    if (witness)
      r.record("cogenerator", ItemVerdict::Pass, "", json());
    else
      r.record("cogenerator",
               wunk ? ItemVerdict::Unknown : ItemVerdict::Fail,
               wunk ? "witness scan left unknowns"
                    : "nonzero object sees no shift of the candidate",
               std::move(repro));
  }
  return r;
}

}  // namespace tsilt
