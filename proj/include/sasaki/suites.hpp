#pragma once

#include "sasaki/biharmonic.hpp"
#include "sasaki/config.hpp"
#include "sasaki/pseudohopf.hpp"
#include "sasaki/report.hpp"

namespace sasaki {

extern const char* kToolVersion;

/// Everything a command needs after the conventions are pinned: the diff
/// engine configuration, the d(eta) convention, and the adjudicated curvature
/// trace constant.
struct SuiteContext {
  RunConfig config;
  SpaceFormParams params;
  DiffConfig diff;
  DetaConvention deta;
  BiharmonicConstants constants;
};

DiffConfig diff_from_config(const RunConfig& c);

/// Runs the measurement protocol for the curvature-trace constant k: the two
/// worked-example surfaces plus three seeded gated surfaces; the consensus
/// measured value selects the branch unless the config pins one.
struct KAdjudication {
  double measured_k = 0.0;
  int samples = 0;
  double spread = 0.0;  // max - min over defined samples
  std::string branch;   // "lemma", "alt" or "neither"
  double k_lemma = 0.0, k_alt = 0.0;
};
KAdjudication adjudicate_k(const SpaceFormParams& pr, const DiffConfig& cfg, std::uint64_t seed);

SuiteContext make_context(const RunConfig& config);

/// Seeded gated test surface: a z-independent quadratic-plus-linear level set
/// with nonvanishing mean curvature, expressed in the DSL.
dsl::Expr random_gated_expr(int m, SeededRng& rng);

ResidualReport run_axioms(const RunConfig& config, int phi_sign = 1);
ResidualReport run_curvature(const RunConfig& config);
ResidualReport run_surface(const RunConfig& config);
ResidualReport run_biharmonic(const RunConfig& config);
ResidualReport run_pseudohopf(const RunConfig& config);
ResidualReport run_constants(const RunConfig& config);

}  // namespace sasaki
