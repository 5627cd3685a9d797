#include "tsilt/kronlat.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tsilt {

namespace {

KronRep algebra_rep(const Fq& f) {
  (void)f;
  return direct_sum(KronRep::proj(1), KronRep::proj(2));
}

// express each column of rhs in the basis given by the columns of s
FqMat solve_into_basis(const Fq& f, const FqMat& s, const FqMat& rhs) {
  FqMat out(s.cols, rhs.cols);
  for (int64_t j = 0; j < rhs.cols; ++j) {
    std::vector<int64_t> b(rhs.rows);
    for (int64_t i = 0; i < rhs.rows; ++i) b[i] = rhs.at(i, j);
    auto sol = fq_solve(f, s, b);
    if (!sol)
      throw std::logic_error("span is not closed under the structure maps");
    for (int64_t i = 0; i < s.cols; ++i) out.at(i, j) = (*sol)[i];
  }
  return out;
}

// the trace of n in m: the subrepresentation spanned by the images of all
// homomorphisms from n, with its inclusion into m
struct TraceData {
  FqMat s1;
  FqMat s2;
  KronRep sub;
};

TraceData trace_submodule(const Fq& f, const KronRep& n, const KronRep& m) {
  FqMat u1(m.d1, 0), u2(m.d2, 0);
  for (const auto& h : hom_basis(f, n, m)) {
    u1 = fq_hstack(u1, h.f1);
    u2 = fq_hstack(u2, h.f2);
  }
  FqMat s1 = fq_column_space(f, u1);
  FqMat s2 = fq_column_space(f, u2);
  KronRep sub(s1.cols, s2.cols, solve_into_basis(f, s2, fq_mul(f, m.a, s1)),
              solve_into_basis(f, s2, fq_mul(f, m.b, s1)));
  return {std::move(s1), std::move(s2), std::move(sub)};
}

// Extend q by copies of n along a basis of the extension group, one copy
// per basis cocycle. A class is a pair of maps N_1 -> Q_2 modulo the
// coboundaries delta(phi1, phi2) = (Qa phi1 - phi2 Na, Qb phi1 - phi2 Nb),
// so a complement of the image of delta spans the group.
KronRep universal_extension(const Fq& f, const KronRep& n, const KronRep& q) {
  const int64_t want = ext1_dim(f, n, q);
  if (want == 0) return q;
  const int64_t csz = q.d2 * n.d1;
  FqMat delta(2 * csz, q.d1 * n.d1 + q.d2 * n.d2);
  int64_t col = 0;
  for (int64_t r = 0; r < q.d1; ++r)
    for (int64_t s = 0; s < n.d1; ++s, ++col)
      for (int64_t i = 0; i < q.d2; ++i) {
        delta.at(i * n.d1 + s, col) = q.a.at(i, r);
        delta.at(csz + i * n.d1 + s, col) = q.b.at(i, r);
      }
  for (int64_t u = 0; u < q.d2; ++u)
    for (int64_t v = 0; v < n.d2; ++v, ++col)
      for (int64_t j = 0; j < n.d1; ++j) {
        delta.at(u * n.d1 + j, col) = f.neg(n.a.at(v, j));
        delta.at(csz + u * n.d1 + j, col) = f.neg(n.b.at(v, j));
      }
  FqMat basis = fq_column_space(f, delta);
  int64_t rank = basis.cols;
  std::vector<int64_t> picked;
  for (int64_t k = 0; k < 2 * csz && rank < 2 * csz; ++k) {
    FqMat unit(2 * csz, 1);
    unit.at(k, 0) = 1;
    FqMat cand = fq_hstack(basis, unit);
    if (fq_rank(f, cand) > rank) {
      basis = std::move(cand);
      ++rank;
      picked.push_back(k);
    }
  }
  if (static_cast<int64_t>(picked.size()) != want)
    throw std::logic_error("cocycle complement does not match the extension count");

  const int64_t e1 = q.d1 + want * n.d1;
  const int64_t e2 = q.d2 + want * n.d2;
  KronRep out(e1, e2, FqMat(e2, e1), FqMat(e2, e1));
  for (int64_t i = 0; i < q.d2; ++i)
    for (int64_t j = 0; j < q.d1; ++j) {
      out.a.at(i, j) = q.a.at(i, j);
      out.b.at(i, j) = q.b.at(i, j);
    }
  for (size_t t = 0; t < picked.size(); ++t) {
    const int64_t k = picked[t];
    const int64_t kk = k % csz;
    FqMat& tgt = (k < csz) ? out.a : out.b;
    tgt.at(kk / n.d1, q.d1 + static_cast<int64_t>(t) * n.d1 + kk % n.d1) = 1;
    for (int64_t p = 0; p < n.d2; ++p)
      for (int64_t r = 0; r < n.d1; ++r) {
        const int64_t row = q.d2 + static_cast<int64_t>(t) * n.d2 + p;
        const int64_t c2 = q.d1 + static_cast<int64_t>(t) * n.d1 + r;
        out.a.at(row, c2) = n.a.at(p, r);
        out.b.at(row, c2) = n.b.at(p, r);
      }
  }
  if (hom_dim(f, n, out) != 0 || ext1_dim(f, n, out) != 0)
    throw std::logic_error("universal extension missed the perpendicular category");
  return out;
}

struct ReflParts {
  KronRep image;
  KronRep trace;
  int64_t new_copies = 0;
};

ReflParts reflect_parts(const Fq& f, const KronRep& n, const KronRep& m) {
  TraceData tr = trace_submodule(f, n, m);
  KronRep q = hom_cokernel(f, tr.sub, m, KronHom{tr.s1, tr.s2});
  if (hom_dim(f, n, q) != 0)
    throw std::logic_error("trace quotient left maps behind");
  const int64_t cnt = ext1_dim(f, n, q);
  return {universal_extension(f, n, q), std::move(tr.sub), cnt};
}

}  // namespace

KronEpi KronEpi::zero() { return KronEpi(KronEpiTag::Zero, 0, {}); }

KronEpi KronEpi::id() { return KronEpi(KronEpiTag::Id, 0, {}); }

KronEpi KronEpi::pp_loc(int64_t i) {
  if (i < 0) throw std::invalid_argument("negative orbit index");
  return KronEpi(KronEpiTag::PPLoc, i, {});
}

KronEpi KronEpi::pi_loc(int64_t i) {
  if (i < 0) throw std::invalid_argument("negative orbit index");
  return KronEpi(KronEpiTag::PILoc, i, {});
}

KronEpi KronEpi::ul(std::vector<QuasiSimple> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return id();
  return KronEpi(KronEpiTag::UL, 0, std::move(pts));
}

int64_t KronEpi::index() const {
  if (tag_ != KronEpiTag::PPLoc && tag_ != KronEpiTag::PILoc)
    throw std::domain_error("only orbit localizations carry an index");
  return index_;
}

const std::vector<QuasiSimple>& KronEpi::points() const {
  if (tag_ != KronEpiTag::UL)
    throw std::domain_error("only point localizations carry points");
  return points_;
}

bool KronEpi::operator<(const KronEpi& o) const {
  if (tag_ != o.tag_) return tag_ < o.tag_;
  if (index_ != o.index_) return index_ < o.index_;
  return points_ < o.points_;
}

std::string KronEpi::to_string() const {
  switch (tag_) {
    case KronEpiTag::Zero:
      return "0";
    case KronEpiTag::Id:
      return "id";
    case KronEpiTag::PPLoc:
      return "pp_loc(" + std::to_string(index_) + ")";
    case KronEpiTag::PILoc:
      return "pi_loc(" + std::to_string(index_) + ")";
    case KronEpiTag::UL: {
      std::string s = "ul{";
      for (size_t i = 0; i < points_.size(); ++i) {
        if (i) s += ",";
        s += points_[i].to_string();
      }
      return s + "}";
    }
  }
  return "?";
}

bool kron_leq(const KronEpi& x, const KronEpi& y) {
  if (x == y) return true;
  if (x.tag() == KronEpiTag::Zero || y.tag() == KronEpiTag::Id) return true;
  if (y.tag() == KronEpiTag::Zero || x.tag() == KronEpiTag::Id) return false;
  if (x.tag() == KronEpiTag::UL && y.tag() == KronEpiTag::UL)
    return std::includes(x.points().begin(), x.points().end(),
                         y.points().begin(), y.points().end());
  return false;
}

KronEpi kron_meet(const KronEpi& x, const KronEpi& y) {
  if (kron_leq(x, y)) return x;
  if (kron_leq(y, x)) return y;
  if (x.tag() == KronEpiTag::UL && y.tag() == KronEpiTag::UL) {
    std::vector<QuasiSimple> pts = x.points();
    pts.insert(pts.end(), y.points().begin(), y.points().end());
    return KronEpi::ul(std::move(pts));
  }
  return KronEpi::zero();
}

KronEpi kron_join(const KronEpi& x, const KronEpi& y) {
  if (kron_leq(x, y)) return y;
  if (kron_leq(y, x)) return x;
  if (x.tag() == KronEpiTag::UL && y.tag() == KronEpiTag::UL) {
    std::vector<QuasiSimple> common;
    std::set_intersection(x.points().begin(), x.points().end(),
                          y.points().begin(), y.points().end(),
                          std::back_inserter(common));
    return KronEpi::ul(std::move(common));
  }
  return KronEpi::id();
}

KronRep exceptional_module(const Fq& f, const KronEpi& e) {
  switch (e.tag()) {
    case KronEpiTag::PPLoc:
      return preproj(f, e.index());
    case KronEpiTag::PILoc:
      return preinj(f, e.index());
    default:
      throw UnsupportedEpiError("class has no single exceptional module");
  }
}

KronEpi transpose_epi(const KronEpi& e) {
  switch (e.tag()) {
    case KronEpiTag::PPLoc:
      if (e.index() == 0) return KronEpi::pp_loc(1);
      if (e.index() == 1) return KronEpi::pp_loc(0);
      return KronEpi::pi_loc(e.index() - 2);
    case KronEpiTag::PILoc:
      return KronEpi::pp_loc(e.index() + 2);
    default:
      return e;
  }
}

KronRep reflect(const Fq& f, const KronRep& m, const KronEpi& e) {
  switch (e.tag()) {
    case KronEpiTag::Id:
      return m;
    case KronEpiTag::Zero:
      return KronRep::zero();
    case KronEpiTag::UL:
      throw UnsupportedEpiError(
          "point localizations have no finite dimensional reflection");
    default:
      break;
  }
  return reflect_parts(f, exceptional_module(f, e), m).image;
}

KronReflData reflect_algebra(const Fq& f, const KronEpi& e) {
  const KronRep a = algebra_rep(f);
  switch (e.tag()) {
    case KronEpiTag::Id:
      return {a, KronRep::zero(), KronRep::zero()};
    case KronEpiTag::Zero:
      return {KronRep::zero(), a, KronRep::zero()};
    case KronEpiTag::UL:
      throw UnsupportedEpiError(
          "point localizations have no finite dimensional reflection");
    default:
      break;
  }
  const KronRep n = exceptional_module(f, e);
  ReflParts parts = reflect_parts(f, n, a);
  // the unit is the trace quotient followed by the extension inclusion, so
  // its kernel is the trace and its cokernel the freshly added copies
  return {std::move(parts.image), std::move(parts.trace),
          repeat_rep(n, parts.new_copies)};
}

KronChain::KronChain(int64_t offset, std::vector<KronEpi> levels)
    : offset_(offset), levels_(std::move(levels)) {}

KronEpi KronChain::level(int64_t degree) const {
  if (degree < offset_) return KronEpi::zero();
  const int64_t k = degree - offset_;
  if (k < static_cast<int64_t>(levels_.size())) return levels_[k];
  return KronEpi::id();
}

KronChain KronChain::canonical() const {
  int64_t off = offset_;
  auto lv = levels_;
  size_t lead = 0;
  while (lead < lv.size() && lv[lead].tag() == KronEpiTag::Zero) ++lead;
  lv.erase(lv.begin(), lv.begin() + static_cast<int64_t>(lead));
  off += static_cast<int64_t>(lead);
  while (!lv.empty() && lv.back().tag() == KronEpiTag::Id) lv.pop_back();
  return KronChain(off, std::move(lv));
}

std::string KronChain::to_string() const {
  std::ostringstream os;
  os << "chain@" << offset_ << "[";
  for (size_t i = 0; i < levels_.size(); ++i) {
    if (i) os << ", ";
    os << levels_[i].to_string();
  }
  os << "]";
  return os.str();
}

std::string KronChainDiagnostics::to_string() const {
  if (valid) return "ok";
  std::string s;
  for (size_t i = 0; i < errors.size(); ++i) {
    if (i) s += "; ";
    s += errors[i];
  }
  return s;
}

KronChainDiagnostics validate_kron_chain(const KronChain& c) {
  KronChainDiagnostics d;
  const auto& lv = c.levels();
  for (size_t j = 0; j + 1 < lv.size(); ++j)
    if (!kron_leq(lv[j], lv[j + 1])) {
      d.valid = false;
      d.errors.push_back("NOT_MONOTONE(" + std::to_string(j) + ")");
    }
  return d;
}

namespace {

// modules whose hom and ext vanishing carve out the level's perpendicular
// category; cogeneration by the level is hom vanishing against the same list
std::vector<KronExpr> level_generators(const Fq& f, const KronEpi& e) {
  switch (e.tag()) {
    case KronEpiTag::Id:
    case KronEpiTag::Zero:
      return {};
    case KronEpiTag::PPLoc:
    case KronEpiTag::PILoc:
      return {KronExpr::indec(exceptional_module(f, e))};
    case KronEpiTag::UL: {
      std::vector<KronExpr> out;
      for (const auto& s : e.points())
        out.push_back(KronExpr::indec(quasi_simple_rep(f, s)));
      return out;
    }
  }
  return {};
}

Membership member_hrs(const Fq& f, const KronComplex& x, int64_t l) {
  bool unknown = false;
  for (const auto& [deg, ex] : x.entries()) {
    if (ex.is_zero()) continue;
    if (deg < l) return Membership::Out;
    if (deg > l) continue;
    // the heart degree must be torsion-free, that is receive nothing from
    // any preinjective; the finite part bounds how deep to probe
    int64_t span = 0;
    for (const auto& t : ex.terms())
      if (!t.is_atom) span += t.rep.total_dim();
    for (int64_t j = 0; j <= span + 1; ++j) {
      KronVerdict v = hom_verdict(f, KronExpr::indec(preinj(f, j)), ex);
      if (v.known_nonzero()) return Membership::Out;
      if (v.is_unknown()) unknown = true;
    }
  }
  return unknown ? Membership::Unknown : Membership::In;
}

}  // namespace

Membership tstructure_member_kron(const Fq& f, const KronComplex& x,
                                  const KronChain& c) {
  bool unknown = false;
  for (const auto& [deg, ex] : x.entries()) {
    if (ex.is_zero()) continue;
    const KronEpi lo = c.level(deg);
    if (lo.tag() == KronEpiTag::Zero) return Membership::Out;
    for (const auto& g : level_generators(f, lo)) {
      KronVerdict v = hom_verdict(f, g, ex);
      if (v.known_nonzero()) return Membership::Out;
      if (v.is_unknown()) unknown = true;
    }
    const KronEpi hi = c.level(deg + 1);
    if (hi.tag() == KronEpiTag::Zero) return Membership::Out;
    for (const auto& g : level_generators(f, hi)) {
      KronVerdict vh = hom_verdict(f, g, ex);
      KronVerdict ve = ext_verdict(f, g, ex);
      if (vh.known_nonzero() || ve.known_nonzero()) return Membership::Out;
      if (vh.is_unknown() || ve.is_unknown()) unknown = true;
    }
  }
  return unknown ? Membership::Unknown : Membership::In;
}

Membership tstructure_member_kron(const Fq& f, const KronComplex& x,
                                  const KronTStr& t) {
  if (std::holds_alternative<HrsAt>(t))
    return member_hrs(f, x, std::get<HrsAt>(t).level);
  return tstructure_member_kron(f, x, std::get<KronChain>(t));
}

KronParams KronParams::hrs(int64_t s) {
  KronParams p;
  p.kind = KronCase::Hrs;
  p.shift = s;
  return p;
}

KronParams KronParams::fin_dim(KronEpi e, int64_t l, int64_t m) {
  if (e.tag() == KronEpiTag::UL)
    throw std::invalid_argument("window case needs a finite dimensional class");
  if (l > m) throw std::invalid_argument("window must satisfy l <= m");
  KronParams p;
  p.kind = KronCase::FinDim;
  p.epi = std::move(e);
  p.l = l;
  p.m = m;
  return p;
}

KronParams KronParams::point_chain(int64_t l,
                                   std::vector<std::vector<QuasiSimple>> sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  while (!sets.empty() && sets.back().empty()) sets.pop_back();
  for (size_t j = 0; j + 1 < sets.size(); ++j)
    if (!std::includes(sets[j].begin(), sets[j].end(), sets[j + 1].begin(),
                       sets[j + 1].end()))
      throw std::invalid_argument("point sets must decrease along the chain");
  KronParams p;
  p.kind = KronCase::PointChain;
  p.l = l;
  p.sets = std::move(sets);
  return p;
}

KronTStr tstr_of_params(const KronParams& p) {
  switch (p.kind) {
    case KronCase::Hrs:
      return HrsAt{p.shift};
    case KronCase::FinDim: {
      std::vector<KronEpi> lv(static_cast<size_t>(p.m - p.l + 1), p.epi);
      return KronChain(p.l, std::move(lv)).canonical();
    }
    case KronCase::PointChain: {
      std::vector<KronEpi> lv;
      for (const auto& s : p.sets) lv.push_back(KronEpi::ul(s));
      return KronChain(p.l, std::move(lv)).canonical();
    }
  }
  throw std::logic_error("unreachable");
}

std::optional<KronChain> chain_of_params(const KronParams& p) {
  KronTStr t = tstr_of_params(p);
  if (std::holds_alternative<KronChain>(t)) return std::get<KronChain>(t);
  return std::nullopt;
}

KronComplex build_kron_silting(const Fq& f, const KronParams& p) {
  KronComplex t;
  auto add = [&](int64_t deg, const KronExpr& e) {
    t.set_entry(deg, t.entry(deg).direct_sum(e));
  };
  switch (p.kind) {
    case KronCase::Hrs:
      add(-p.shift, KronExpr::atom(KronAtom::lukas()));
      return t;
    case KronCase::FinDim: {
      KronReflData d = reflect_algebra(f, transpose_epi(p.epi));
      if (!d.b.is_zero()) add(-p.l, KronExpr::from_rep(f, d.b));
      if (!d.coker.is_zero()) add(-p.m, KronExpr::from_rep(f, d.coker));
      if (!d.ker.is_zero()) add(-(p.m + 1), KronExpr::from_rep(f, d.ker));
      return t;
    }
    case KronCase::PointChain: {
      if (p.sets.empty())
        add(-p.l, KronExpr::from_rep(f, algebra_rep(f)));
      else
        add(-p.l, KronExpr::atom(KronAtom::loc_points(p.sets[0])));
      for (size_t k = 0; k < p.sets.size(); ++k) {
        const std::vector<QuasiSimple> next =
            (k + 1 < p.sets.size()) ? p.sets[k + 1] : std::vector<QuasiSimple>{};
        for (const auto& s : p.sets[k])
          if (!std::binary_search(next.begin(), next.end(), s))
            add(-(static_cast<int64_t>(k) + p.l),
                KronExpr::atom(KronAtom::pruefer(s)));
      }
      return t;
    }
  }
  throw std::logic_error("unreachable");
}

KronComplex build_kron_cosilting(const Fq& f, const KronParams& p) {
  KronComplex c;
  auto add = [&](int64_t deg, const KronExpr& e) {
    c.set_entry(deg, c.entry(deg).direct_sum(e));
  };
  switch (p.kind) {
    case KronCase::Hrs:
      add(p.shift, KronExpr::atom(KronAtom::w_cotilt()));
      return c;
    case KronCase::FinDim: {
      KronReflData d = reflect_algebra(f, transpose_epi(p.epi));
      if (!d.b.is_zero()) add(p.l, kron_expr_dual(KronExpr::from_rep(f, d.b)));
      if (!d.coker.is_zero())
        add(p.m, kron_expr_dual(KronExpr::from_rep(f, d.coker)));
      if (!d.ker.is_zero())
        add(p.m + 1, kron_expr_dual(KronExpr::from_rep(f, d.ker)));
      return c;
    }
    case KronCase::PointChain: {
      if (p.sets.empty())
        add(p.l, kron_expr_dual(KronExpr::from_rep(f, algebra_rep(f))));
      else
        add(p.l, KronExpr::atom(KronAtom::loc_points(p.sets[0], true)));
      for (size_t k = 0; k < p.sets.size(); ++k) {
        const std::vector<QuasiSimple> next =
            (k + 1 < p.sets.size()) ? p.sets[k + 1] : std::vector<QuasiSimple>{};
        for (const auto& s : p.sets[k])
          if (!std::binary_search(next.begin(), next.end(), s))
            add(static_cast<int64_t>(k) + p.l,
                KronExpr::atom(KronAtom::adic(s)));
      }
      return c;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<std::pair<KronChain, KronComplex>> enumerate_compact_silting(
    const Fq& f, int64_t index_bound, int64_t length_bound) {
  if (index_bound < 0 || length_bound < 0)
    throw std::invalid_argument("bounds must be nonnegative");
  std::vector<std::pair<KronChain, KronComplex>> out;
  std::set<std::string> seen;
  auto shift_key = [](const KronComplex& t) {
    std::ostringstream os;
    const int64_t base = t.is_zero() ? 0 : t.min_degree();
    for (const auto& [deg, ex] : t.entries())
      os << (deg - base) << ":" << ex.to_string() << ";";
    return os.str();
  };
  auto emit = [&](const KronChain& c, const KronComplex& t) {
    if (seen.insert(shift_key(t)).second) out.emplace_back(c.canonical(), t);
  };
  emit(KronChain(0, {}), KronComplex::stalk(
                             0, KronExpr::from_rep(f, algebra_rep(f))));
  // the proper levels are pairwise incomparable, so a monotone chain through
  // the finite dimensional part is a constant run of a single class
  std::vector<KronEpi> classes;
  for (int64_t i = 0; i <= index_bound; ++i) {
    classes.push_back(KronEpi::pp_loc(i));
    classes.push_back(KronEpi::pi_loc(i));
  }
  for (const auto& e : classes) {
    const KronReflData d = reflect_algebra(f, transpose_epi(e));
    for (int64_t r = 1; r <= length_bound; ++r) {
      KronComplex t;
      auto add = [&](int64_t deg, const KronRep& m) {
        if (!m.is_zero())
          t.set_entry(deg, t.entry(deg).direct_sum(KronExpr::from_rep(f, m)));
      };
      add(0, d.b);
      add(-(r - 1), d.coker);
      add(-r, d.ker);
      emit(KronChain(0, std::vector<KronEpi>(static_cast<size_t>(r), e)), t);
    }
  }
  return out;
}

}  // namespace tsilt
