#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "tsilt/dercat.hpp"
#include "tsilt/kronlat.hpp"
#include "tsilt/specz.hpp"
#include "tsilt/zchains.hpp"

namespace tsilt {

// object-key insertion order is preserved so serialization is byte stable
using json = nlohmann::ordered_json;

// thrown by every reader on a document that does not match its schema
struct JsonFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json prime_set_to_json(const PrimeSet& s);
PrimeSet prime_set_from_json(const json& j);

json fgab_to_json(const FgAb& g);
FgAb fgab_from_json(const json& j);

json zatom_to_json(const ZAtom& a);
ZAtom zatom_from_json(const json& j);

json zexpr_to_json(const ZExpr& e);
ZExpr zexpr_from_json(const json& j);

json tail_spec_to_json(const TailSpec& t);
TailSpec tail_spec_from_json(const json& j);

json graded_complex_to_json(const GradedComplex& c);
GradedComplex graded_complex_from_json(const json& j);

json spec_subset_to_json(const SpecSubset& s);
SpecSubset spec_subset_from_json(const json& j);

json filtration_to_json(const SupportFiltration& f);
SupportFiltration filtration_from_json(const json& j);

json zepi_to_json(const ZEpi& e);
ZEpi zepi_from_json(const json& j);

json zchain_to_json(const ZEpiChain& c);
ZEpiChain zchain_from_json(const json& j);

// verdicts serialize one way only; they are outputs, never inputs
json hom_verdict_to_json(const HomVerdict& v);
json kron_verdict_to_json(const KronVerdict& v);

json fq_to_json(const Fq& f);
Fq fq_from_json(const json& j);

json kron_rep_to_json(const Fq& f, const KronRep& m);
KronRep kron_rep_from_json(const Fq& f, const json& j);

json quasi_simple_to_json(const QuasiSimple& s);
QuasiSimple quasi_simple_from_json(const json& j);

json kron_atom_to_json(const KronAtom& a);
KronAtom kron_atom_from_json(const json& j);

json kron_expr_to_json(const Fq& f, const KronExpr& e);
KronExpr kron_expr_from_json(const Fq& f, const json& j);

json kron_complex_to_json(const Fq& f, const KronComplex& c);
KronComplex kron_complex_from_json(const Fq& f, const json& j);

json kron_epi_to_json(const KronEpi& e);
KronEpi kron_epi_from_json(const json& j);

json kron_chain_to_json(const KronChain& c);
KronChain kron_chain_from_json(const json& j);

json kron_params_to_json(const KronParams& p);
KronParams kron_params_from_json(const json& j);

}  // namespace tsilt
