#pragma once

#include <optional>
#include <vector>

#include "cachecast/config.hpp"
#include "cachecast/learner.hpp"
#include "cachecast/sim.hpp"

namespace cachecast {

/// Analytic table: scenarios drawn from the configured user law, or from the
/// uniform assumption (the learner's prior and the mismatched-knowledge
/// policy variant).
ValueTable build_analytic_table(const ExperimentConfig& cfg, const CellLayout& layout,
                                bool uniform_assumption, int workers);

struct LearnTrajectoryPoint {
  int t = 0;
  double max_rel_error = 0.0;  // vs reference table; 0 when no reference given
  double last_delta = 0.0;
};

struct LearnRun {
  ValueTable final_table;
  std::vector<LearnTrajectoryPoint> trajectory;
  bool converged = false;
  int events_consumed = 0;
};

/// Feed a synthetic request stream drawn from the configured (true) user law
/// into the learner. Stops at the convergence threshold when asked, else
/// consumes max_events. Trajectory checkpoints sample the error against
/// `reference` when provided.
LearnRun run_learning(const ExperimentConfig& cfg, const CellLayout& layout,
                      const ValueTable& prior, const ValueTable* reference,
                      std::size_t max_events, double tau, std::uint64_t seed,
                      bool stop_at_convergence, int checkpoint_every = 0);

/// Lazily-built value tables for the policy variants of one experiment.
struct ExperimentAssets {
  CellLayout layout;
  std::optional<ValueTable> true_table;
  std::optional<ValueTable> uniform_table;
  std::optional<ValueTable> learned_table;

  const ValueTable* table_for(PolicySpec::Tables kind) const;
};

/// Builds the layout and whichever tables the given policies require.
ExperimentAssets prepare_assets(const ExperimentConfig& cfg,
                                const std::vector<PolicySpec>& policies, int workers);

/// One sweep grid point; the whole catalog is re-parameterized per cell.
struct SweepCell {
  double value = 0.0;  // the swept parameter's value (0 when no sweep)
  std::vector<FileSpec> files;
  double proactive_period = 0.0;
};

std::vector<SweepCell> expand_sweep(const ExperimentConfig& cfg);

/// Assembles episode inputs. All referenced objects must outlive the inputs;
/// `cell.files` backs the catalog.
SimInputs make_sim_inputs(const ExperimentConfig& cfg, const ExperimentAssets& assets,
                          const SweepCell& cell, const PolicySpec& spec,
                          const ReactivePolicy& policy);

}  // namespace cachecast
