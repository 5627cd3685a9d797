#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsilt/dercat.hpp"
#include "tsilt/fgab.hpp"
#include "tsilt/json_io.hpp"
#include "tsilt/kronlat.hpp"
#include "tsilt/kronrep.hpp"
#include "tsilt/specz.hpp"
#include "tsilt/zchains.hpp"

namespace tsilt {

// Orthogonality suites probe the window [1, kOrthWindow] of shifts; on the
// hereditary base rings Hom vanishing is degreewise local, so a window of
// this size is conclusive for the bounded corpora used here.
inline constexpr int64_t kOrthWindow = 4;

// Share of UNKNOWN verdicts a suite tolerates before its exit code turns 2.
inline constexpr double kUnknownThreshold = 0.05;

struct CorpusBounds {
  int64_t max_width = 3;   // nonzero cohomologies per complex
  int64_t max_rank = 2;    // free rank per entry
  int64_t max_order = 256; // order bound for the torsion subgroup of an entry
  int64_t min_degree = -3;
  int64_t max_degree = 3;
};

// Reproducible family of bounded complexes of finitely generated groups.
struct Corpus {
  uint64_t seed = 0;
  CorpusBounds bounds;
  std::vector<GradedComplex> items;
};

Corpus make_z_corpus(uint64_t seed, int64_t count, const CorpusBounds& b);

// Finite dimensional analogue over one Kronecker field.
struct KronCorpus {
  uint64_t seed = 0;
  std::vector<KronComplex> items;
};

KronCorpus make_kron_corpus(const Fq& f, uint64_t seed, int64_t count,
                            int64_t max_dim, int64_t min_degree,
                            int64_t max_degree);

enum class ItemVerdict { Pass, Fail, Unknown };

struct ReportItem {
  std::string check;
  ItemVerdict verdict = ItemVerdict::Pass;
  std::string note;
  json reproducer; // exact inputs, enough to rerun the single check
};

// Aggregated outcome of one suite. Only non-passing items are itemized; a
// FAIL always carries its reproducer.
struct Report {
  std::string suite;
  int64_t passed = 0;
  int64_t failed = 0;
  int64_t unknown = 0;
  std::vector<ReportItem> items;

  int64_t total() const { return passed + failed + unknown; }
  void record(const std::string& check, ItemVerdict v, std::string note,
              json reproducer);
  // 0 all pass, 1 any fail, 2 unknown share above the tolerated threshold
  int exit_code() const;
  json to_json() const;
  std::string to_string() const;
};

// Resolution-based derived Hom oracle: builds two-term free resolutions of
// every cohomology, totals them into a complex of free modules, and reads
// Hom_D(x, y[k]) off the integer Hom complex by Smith normal form. Rejects
// inputs with non-finitely-generated entries or tails.
FgAb oracle_derived_hom_z(const GradedComplex& x, const GradedComplex& y,
                          int64_t k);

// Engine vs oracle agreement on seeded random pairs drawn from the corpus.
Report check_hom_oracle(const Corpus& c, int64_t pairs);

// Degreewise character duality: entry n of the dual is the dual of entry -n.
Report check_plus_dual(const Corpus& c);

// Truncation triangles: both halves land in their parts, the shifted first
// half is orthogonal to the second, and the rational Euler characteristic is
// additive along the triangle.
Report check_ttriple(const SupportFiltration& f, const Corpus& c);

// Cosilting certificate: c lies in the upper part, membership of corpus
// items is equivalent to Hom vanishing against c in the window, and every
// nonzero item admits a nonzero map to some shift of c.
Report check_cosilting(const GradedComplex& c, const SupportFiltration& f,
                       const Corpus& corpus);

// Silting certificate, the generator-side mirror image. The aisle of the
// silting structure is not the support-rule aisle: an entry at degree d has
// to be divisible at every prime the chain still inverts at step l - d, so
// membership is probed against the chain itself.
Report check_silting(const GradedComplex& t, const ZEpiChain& chain,
                     const Corpus& corpus);

// Structural comparison of the character dual of t against c.
Report check_psi_duality(const GradedComplex& t, const GradedComplex& c);
Report check_psi_duality_kron(const Fq& fq, const KronComplex& t,
                              const KronComplex& c);

// Kronecker-side cosilting certificate against a parametrized structure.
Report check_kron_cosilting(const Fq& fq, const KronComplex& c,
                            const KronTStr& t, const KronCorpus& corpus);

} // namespace tsilt
