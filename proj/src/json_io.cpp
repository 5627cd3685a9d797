#include "tsilt/json_io.hpp"

namespace tsilt {

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw JsonFormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int64_t need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer())
    throw JsonFormatError(std::string("field '") + key + "' must be an integer");
  return v.get<int64_t>();
}

std::string need_str(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string())
    throw JsonFormatError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const json& need_array(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_array())
    throw JsonFormatError(std::string("field '") + key + "' must be an array");
  return v;
}

std::vector<int64_t> int_list(const json& v, const char* what) {
  if (!v.is_array())
    throw JsonFormatError(std::string(what) + " must be an array of integers");
  std::vector<int64_t> out;
  for (const auto& x : v) {
    if (!x.is_number_integer())
      throw JsonFormatError(std::string(what) + " must contain only integers");
    out.push_back(x.get<int64_t>());
  }
  return out;
}

json mult_to_json(const Mult& m) {
  if (m.is_omega()) return json("omega");
  return json(m.count());
}

Mult mult_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "omega") return Mult::omega();
  if (j.is_number_integer()) return Mult::finite(j.get<int64_t>());
  throw JsonFormatError("multiplicity must be an integer or \"omega\"");
}

json flavor_to_json(Flavor f) {
  return json(f == Flavor::Product ? "product" : "sum");
}

Flavor flavor_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "sum") return Flavor::Sum;
    if (s == "product") return Flavor::Product;
  }
  throw JsonFormatError("flavor must be \"sum\" or \"product\"");
}

}  // namespace

json prime_set_to_json(const PrimeSet& s) {
  json j;
  j["kind"] = s.is_finite() ? "finite" : "cofinite";
  j[s.is_finite() ? "primes" : "excluded"] = s.basis();
  return j;
}

PrimeSet prime_set_from_json(const json& j) {
  const std::string kind = need_str(j, "kind");
  if (kind == "finite")
    return PrimeSet::finite(int_list(need(j, "primes"), "primes"));
  if (kind == "cofinite")
    return PrimeSet::cofinite(int_list(need(j, "excluded"), "excluded"));
  throw JsonFormatError("prime set kind must be \"finite\" or \"cofinite\"");
}

json fgab_to_json(const FgAb& g) {
  json j;
  j["rank"] = g.rank();
  j["torsion"] = g.invariant_factors();
  return j;
}

FgAb fgab_from_json(const json& j) {
  return FgAb::from_cyclic_orders(need_int(j, "rank"),
                                  int_list(need(j, "torsion"), "torsion"));
}

json zatom_to_json(const ZAtom& a) {
  json j;
  switch (a.kind()) {
    case ZAtomKind::Pruefer:
      j["atom"] = "pruefer";
      break;
    case ZAtomKind::Adic:
      j["atom"] = "adic";
      break;
    case ZAtomKind::Rationals:
      j["atom"] = "rationals";
      break;
    case ZAtomKind::Loc:
      j["atom"] = "loc";
      break;
    case ZAtomKind::DualLoc:
      j["atom"] = "dual_loc";
      break;
  }
  if (a.kind() != ZAtomKind::Rationals)
    j["primes"] = prime_set_to_json(a.primes());
  return j;
}

ZAtom zatom_from_json(const json& j) {
  const std::string kind = need_str(j, "atom");
  if (kind == "rationals") return ZAtom::rationals();
  const PrimeSet s = prime_set_from_json(need(j, "primes"));
  if (kind == "pruefer") return ZAtom::pruefer_family(s);
  if (kind == "adic") return ZAtom::adic_family(s);
  if (kind == "loc") return ZAtom::loc(s);
  if (kind == "dual_loc") return ZAtom::dual_loc(s);
  throw JsonFormatError("unknown atom kind '" + kind + "'");
}

json zexpr_to_json(const ZExpr& e) {
  json j;
  j["fg"] = fgab_to_json(e.fg());
  json terms = json::array();
  for (const auto& t : e.terms()) {
    json jt;
    jt["value"] = zatom_to_json(t.atom);
    jt["mult"] = mult_to_json(t.mult);
    jt["flavor"] = flavor_to_json(t.flavor);
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  return j;
}

ZExpr zexpr_from_json(const json& j) {
  ZExpr out = ZExpr::from_fg(fgab_from_json(need(j, "fg")));
  for (const auto& jt : need_array(j, "terms"))
    out = out.direct_sum(ZExpr::atom(zatom_from_json(need(jt, "value")),
                                     mult_from_json(need(jt, "mult")),
                                     flavor_from_json(need(jt, "flavor"))));
  return out;
}

json tail_spec_to_json(const TailSpec& t) {
  json j;
  j["direction"] = t.direction == TailDirection::Down ? "down" : "up";
  j["start_degree"] = t.start_degree;
  j["prime_index"] = t.prime_index;
  j["kind"] = t.kind == ZAtomKind::Pruefer ? "pruefer" : "adic";
  j["flavor"] = flavor_to_json(t.flavor);
  return j;
}

TailSpec tail_spec_from_json(const json& j) {
  TailSpec t;
  const std::string dir = need_str(j, "direction");
  if (dir == "down")
    t.direction = TailDirection::Down;
  else if (dir == "up")
    t.direction = TailDirection::Up;
  else
    throw JsonFormatError("tail direction must be \"down\" or \"up\"");
  t.start_degree = need_int(j, "start_degree");
  t.prime_index = need_int(j, "prime_index");
  const std::string kind = need_str(j, "kind");
  if (kind == "pruefer")
    t.kind = ZAtomKind::Pruefer;
  else if (kind == "adic")
    t.kind = ZAtomKind::Adic;
  else
    throw JsonFormatError("tail kind must be \"pruefer\" or \"adic\"");
  t.flavor = flavor_from_json(need(j, "flavor"));
  return t;
}

json graded_complex_to_json(const GradedComplex& c) {
  json j;
  json entries = json::array();
  for (const auto& [deg, e] : c.explicit_entries()) {
    json je;
    je["degree"] = deg;
    je["value"] = zexpr_to_json(e);
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  if (c.tail()) j["tail"] = tail_spec_to_json(*c.tail());
  return j;
}

GradedComplex graded_complex_from_json(const json& j) {
  GradedComplex c;
  for (const auto& je : need_array(j, "entries"))
    c.set_entry(need_int(je, "degree"), zexpr_from_json(need(je, "value")));
  if (j.contains("tail")) c.set_tail(tail_spec_from_json(j.at("tail")));
  return c;
}

json spec_subset_to_json(const SpecSubset& s) {
  json j;
  if (s.is_all()) {
    j["all"] = true;
  } else {
    j["all"] = false;
    j["points"] = prime_set_to_json(s.points());
  }
  return j;
}

SpecSubset spec_subset_from_json(const json& j) {
  const json& a = need(j, "all");
  if (!a.is_boolean()) throw JsonFormatError("field 'all' must be a boolean");
  if (a.get<bool>()) return SpecSubset::all();
  return SpecSubset::closed(prime_set_from_json(need(j, "points")));
}

json filtration_to_json(const SupportFiltration& f) {
  json j;
  j["low"] = spec_subset_to_json(f.low());
  json steps = json::array();
  for (const auto& [deg, s] : f.steps()) {
    json js;
    js["degree"] = deg;
    js["value"] = spec_subset_to_json(s);
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  j["tail_rule"] = f.tail_rule() == SupportFiltration::TailRule::TailFamily
                       ? "tail_family"
                       : "empty";
  j["tail_offset"] = f.tail_offset();
  return j;
}

SupportFiltration filtration_from_json(const json& j) {
  std::vector<std::pair<int64_t, SpecSubset>> steps;
  for (const auto& js : need_array(j, "steps"))
    steps.emplace_back(need_int(js, "degree"),
                       spec_subset_from_json(need(js, "value")));
  const std::string rule = need_str(j, "tail_rule");
  SupportFiltration::TailRule tr;
  if (rule == "empty")
    tr = SupportFiltration::TailRule::Empty;
  else if (rule == "tail_family")
    tr = SupportFiltration::TailRule::TailFamily;
  else
    throw JsonFormatError("tail rule must be \"empty\" or \"tail_family\"");
  return SupportFiltration(spec_subset_from_json(need(j, "low")),
                           std::move(steps), tr, need_int(j, "tail_offset"));
}

json zepi_to_json(const ZEpi& e) {
  json j;
  if (e.is_zero_ring()) {
    j["zero"] = true;
  } else {
    j["zero"] = false;
    j["inverted"] = prime_set_to_json(e.inverted());
  }
  return j;
}

ZEpi zepi_from_json(const json& j) {
  const json& z = need(j, "zero");
  if (!z.is_boolean()) throw JsonFormatError("field 'zero' must be a boolean");
  if (z.get<bool>()) return ZEpi::zero_ring();
  return ZEpi::loc(prime_set_from_json(need(j, "inverted")));
}

json zchain_to_json(const ZEpiChain& c) {
  json j;
  j["l"] = c.l();
  if (c.has_tail()) {
    j["tail_offset"] = c.tail_offset();
  } else {
    json sets = json::array();
    for (const auto& s : c.sets()) sets.push_back(prime_set_to_json(s));
    j["sets"] = std::move(sets);
  }
  return j;
}

ZEpiChain zchain_from_json(const json& j) {
  const int64_t l = need_int(j, "l");
  if (j.contains("tail_offset"))
    return ZEpiChain::from_tail(l, need_int(j, "tail_offset"));
  std::vector<PrimeSet> sets;
  for (const auto& js : need_array(j, "sets"))
    sets.push_back(prime_set_from_json(js));
  return ZEpiChain::from_list(l, std::move(sets));
}

json hom_verdict_to_json(const HomVerdict& v) {
  json j;
  j["status"] = v.status_string();
  switch (v.status()) {
    case VerdictStatus::Group:
      j["value"] = fgab_to_json(v.group_value());
      break;
    case VerdictStatus::Atomic:
      j["value"] = zexpr_to_json(v.atomic_value());
      break;
    default:
      break;
  }
  j["note"] = v.note();
  return j;
}

json kron_verdict_to_json(const KronVerdict& v) {
  json j;
  switch (v.status()) {
    case KronVerdictStatus::Zero:
      j["status"] = "zero";
      break;
    case KronVerdictStatus::NonZero:
      j["status"] = "nonzero";
      break;
    case KronVerdictStatus::Unknown:
      j["status"] = "unknown";
      break;
  }
  if (v.dimension()) j["dim"] = *v.dimension();
  j["note"] = v.note();
  return j;
}

json fq_to_json(const Fq& f) {
  json j;
  j["q"] = f.q();
  return j;
}

Fq fq_from_json(const json& j) { return Fq(need_int(j, "q")); }

namespace {

json fq_mat_to_json(const FqMat& m) {
  json rows = json::array();
  for (int64_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int64_t k = 0; k < m.cols; ++k) row.push_back(m.at(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

FqMat fq_mat_from_json(const Fq& f, const json& j, int64_t rows, int64_t cols,
                       const char* what) {
  if (!j.is_array() || static_cast<int64_t>(j.size()) != rows)
    throw JsonFormatError(std::string(what) + " must have one row per sink "
                                              "dimension");
  FqMat m(rows, cols);
  for (int64_t i = 0; i < rows; ++i) {
    const auto row = int_list(j.at(i), what);
    if (static_cast<int64_t>(row.size()) != cols)
      throw JsonFormatError(std::string(what) +
                            " row length must match the source dimension");
    for (int64_t k = 0; k < cols; ++k) {
      if (row[k] < 0 || row[k] >= f.q())
        throw JsonFormatError(std::string(what) +
                              " entries must lie in the field range");
      m.at(i, k) = row[k];
    }
  }
  return m;
}

}  // namespace

json kron_rep_to_json(const Fq& f, const KronRep& m) {
  json j;
  j["field"] = fq_to_json(f);
  j["d"] = json::array({m.d1, m.d2});
  j["a"] = fq_mat_to_json(m.a);
  j["b"] = fq_mat_to_json(m.b);
  return j;
}

KronRep kron_rep_from_json(const Fq& f, const json& j) {
  if (j.contains("field") && need_int(j.at("field"), "q") != f.q())
    throw JsonFormatError("representation field does not match the context");
  const auto d = int_list(need(j, "d"), "d");
  if (d.size() != 2 || d[0] < 0 || d[1] < 0)
    throw JsonFormatError("dimension vector must be two nonnegative integers");
  return KronRep(d[0], d[1], fq_mat_from_json(f, need(j, "a"), d[1], d[0], "a"),
                 fq_mat_from_json(f, need(j, "b"), d[1], d[0], "b"));
}

json quasi_simple_to_json(const QuasiSimple& s) {
  const auto [x, y] = s.coords();
  return json::array({x, y});
}

QuasiSimple quasi_simple_from_json(const json& j) {
  const auto c = int_list(j, "point");
  if (c.size() != 2)
    throw JsonFormatError("point must be a pair of homogeneous coordinates");
  if (c[1] == 1) return QuasiSimple::at(c[0]);
  if (c[1] == 0 && c[0] == 1) return QuasiSimple::infinity();
  throw JsonFormatError("point must be [lambda, 1] or [1, 0]");
}

json kron_atom_to_json(const KronAtom& a) {
  json j;
  switch (a.kind()) {
    case KronAtomKind::Pruefer:
      j["atom"] = "pruefer";
      j["point"] = quasi_simple_to_json(a.point());
      return j;
    case KronAtomKind::Adic:
      j["atom"] = "adic";
      j["point"] = quasi_simple_to_json(a.point());
      return j;
    case KronAtomKind::Generic:
      j["atom"] = "generic";
      return j;
    case KronAtomKind::Lukas:
      j["atom"] = "lukas";
      return j;
    case KronAtomKind::WCotilt:
      j["atom"] = "w_cotilt";
      return j;
    case KronAtomKind::LocTarget:
      j["atom"] = "loc";
      switch (a.loc_kind()) {
        case LocRefKind::Points: {
          j["ref"] = "points";
          json pts = json::array();
          for (const auto& p : a.points())
            pts.push_back(quasi_simple_to_json(p));
          j["points"] = std::move(pts);
          break;
        }
        case LocRefKind::Preproj:
          j["ref"] = "preproj";
          j["i"] = a.index();
          break;
        case LocRefKind::Preinj:
          j["ref"] = "preinj";
          j["i"] = a.index();
          break;
      }
      j["dual"] = a.dualized();
      return j;
  }
  throw JsonFormatError("unrepresentable atom");
}

KronAtom kron_atom_from_json(const json& j) {
  const std::string kind = need_str(j, "atom");
  if (kind == "pruefer")
    return KronAtom::pruefer(quasi_simple_from_json(need(j, "point")));
  if (kind == "adic")
    return KronAtom::adic(quasi_simple_from_json(need(j, "point")));
  if (kind == "generic") return KronAtom::generic();
  if (kind == "lukas") return KronAtom::lukas();
  if (kind == "w_cotilt") return KronAtom::w_cotilt();
  if (kind == "loc") {
    const json& d = need(j, "dual");
    if (!d.is_boolean())
      throw JsonFormatError("field 'dual' must be a boolean");
    const bool dual = d.get<bool>();
    const std::string ref = need_str(j, "ref");
    if (ref == "points") {
      std::vector<QuasiSimple> pts;
      for (const auto& jp : need_array(j, "points"))
        pts.push_back(quasi_simple_from_json(jp));
      return KronAtom::loc_points(std::move(pts), dual);
    }
    if (ref == "preproj") return KronAtom::loc_preproj(need_int(j, "i"), dual);
    if (ref == "preinj") return KronAtom::loc_preinj(need_int(j, "i"), dual);
    throw JsonFormatError("unknown localization reference '" + ref + "'");
  }
  throw JsonFormatError("unknown atom kind '" + kind + "'");
}

json kron_expr_to_json(const Fq& f, const KronExpr& e) {
  json terms = json::array();
  for (const auto& t : e.terms()) {
    json jt;
    if (t.is_atom)
      jt["value"] = kron_atom_to_json(t.atom);
    else
      jt["value"] = kron_rep_to_json(f, t.rep);
    jt["mult"] = mult_to_json(t.mult);
    jt["flavor"] = flavor_to_json(t.flavor);
    terms.push_back(std::move(jt));
  }
  json j;
  j["terms"] = std::move(terms);
  return j;
}

KronExpr kron_expr_from_json(const Fq& f, const json& j) {
  KronExpr out;
  for (const auto& jt : need_array(j, "terms")) {
    const json& v = need(jt, "value");
    const Mult m = mult_from_json(need(jt, "mult"));
    const Flavor fl = flavor_from_json(need(jt, "flavor"));
    // finite summands get decomposed again rather than trusted blindly
    if (v.is_object() && v.contains("atom"))
      out = out.direct_sum(KronExpr::atom(kron_atom_from_json(v), m, fl));
    else
      for (const auto& piece : decompose(f, kron_rep_from_json(f, v))) {
        KronExpr one = KronExpr::indec(piece, m, fl);
        out = out.direct_sum(one);
      }
  }
  return out;
}

json kron_complex_to_json(const Fq& f, const KronComplex& c) {
  json entries = json::array();
  for (const auto& [deg, e] : c.entries()) {
    json je;
    je["degree"] = deg;
    je["value"] = kron_expr_to_json(f, e);
    entries.push_back(std::move(je));
  }
  json j;
  j["entries"] = std::move(entries);
  return j;
}

KronComplex kron_complex_from_json(const Fq& f, const json& j) {
  KronComplex c;
  for (const auto& je : need_array(j, "entries"))
    c.set_entry(need_int(je, "degree"),
                kron_expr_from_json(f, need(je, "value")));
  return c;
}

json kron_epi_to_json(const KronEpi& e) {
  json j;
  switch (e.tag()) {
    case KronEpiTag::Zero:
      j["epi"] = "zero";
      return j;
    case KronEpiTag::Id:
      j["epi"] = "id";
      return j;
    case KronEpiTag::PPLoc:
      j["epi"] = "pp_loc";
      j["i"] = e.index();
      return j;
    case KronEpiTag::PILoc:
      j["epi"] = "pi_loc";
      j["i"] = e.index();
      return j;
    case KronEpiTag::UL: {
      j["epi"] = "ul";
      json pts = json::array();
      for (const auto& p : e.points()) pts.push_back(quasi_simple_to_json(p));
      j["points"] = std::move(pts);
      return j;
    }
  }
  throw JsonFormatError("unrepresentable epimorphism class");
}

KronEpi kron_epi_from_json(const json& j) {
  const std::string kind = need_str(j, "epi");
  if (kind == "zero") return KronEpi::zero();
  if (kind == "id") return KronEpi::id();
  if (kind == "pp_loc") return KronEpi::pp_loc(need_int(j, "i"));
  if (kind == "pi_loc") return KronEpi::pi_loc(need_int(j, "i"));
  if (kind == "ul") {
    std::vector<QuasiSimple> pts;
    for (const auto& jp : need_array(j, "points"))
      pts.push_back(quasi_simple_from_json(jp));
    return KronEpi::ul(std::move(pts));
  }
  throw JsonFormatError("unknown epimorphism kind '" + kind + "'");
}

json kron_chain_to_json(const KronChain& c) {
  json j;
  j["offset"] = c.offset();
  json levels = json::array();
  for (const auto& e : c.levels()) levels.push_back(kron_epi_to_json(e));
  j["levels"] = std::move(levels);
  return j;
}

KronChain kron_chain_from_json(const json& j) {
  std::vector<KronEpi> levels;
  for (const auto& je : need_array(j, "levels"))
    levels.push_back(kron_epi_from_json(je));
  return KronChain(need_int(j, "offset"), std::move(levels));
}

json kron_params_to_json(const KronParams& p) {
  json j;
  switch (p.kind) {
    case KronCase::Hrs:
      j["case"] = "hrs";
      j["shift"] = p.shift;
      return j;
    case KronCase::FinDim:
      j["case"] = "fin_dim";
      j["epi"] = kron_epi_to_json(p.epi);
      j["l"] = p.l;
      j["m"] = p.m;
      return j;
    case KronCase::PointChain: {
      j["case"] = "point_chain";
      j["l"] = p.l;
      json sets = json::array();
      for (const auto& s : p.sets) {
        json one = json::array();
        for (const auto& pt : s) one.push_back(quasi_simple_to_json(pt));
        sets.push_back(std::move(one));
      }
      j["sets"] = std::move(sets);
      return j;
    }
  }
  throw JsonFormatError("unrepresentable parameter set");
}

KronParams kron_params_from_json(const json& j) {
  const std::string kind = need_str(j, "case");
  if (kind == "hrs") return KronParams::hrs(need_int(j, "shift"));
  if (kind == "fin_dim")
    return KronParams::fin_dim(kron_epi_from_json(need(j, "epi")),
                               need_int(j, "l"), need_int(j, "m"));
  if (kind == "point_chain") {
    std::vector<std::vector<QuasiSimple>> sets;
    for (const auto& js : need_array(j, "sets")) {
      if (!js.is_array())
        throw JsonFormatError("each point set must be an array");
      std::vector<QuasiSimple> one;
      for (const auto& jp : js) one.push_back(quasi_simple_from_json(jp));
      sets.push_back(std::move(one));
    }
    return KronParams::point_chain(need_int(j, "l"), std::move(sets));
  }
  throw JsonFormatError("unknown parameter case '" + kind + "'");
}

}  // namespace tsilt
