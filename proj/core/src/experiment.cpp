#include "cachecast/experiment.hpp"

#include <stdexcept>

#include "cachecast/scenario.hpp"

namespace cachecast {

ValueTable build_analytic_table(const ExperimentConfig& cfg, const CellLayout& layout,
                                bool uniform_assumption, int workers) {
  const UserDistribution dist =
      uniform_assumption ? UserDistribution::uniform() : cfg.users;
  const FileSpec& ref = cfg.files.front();
  const ScenarioSet scn =
      make_scenario_set(layout, dist, cfg.shadowing, cfg.interference,
                        ref.segment_bits, cfg.phy, cfg.table_budget, cfg.table_seed);
  ValueTable t = build_value_table(scn, ref.num_segments,
                                   cfg.required_max_stages(), workers);
  t.scenario_seed = cfg.table_seed;
  t.scenario_budget = cfg.table_budget;
  return t;
}

LearnRun run_learning(const ExperimentConfig& cfg, const CellLayout& layout,
                      const ValueTable& prior, const ValueTable* reference,
                      std::size_t max_events, double tau, std::uint64_t seed,
                      bool stop_at_convergence, int checkpoint_every) {
  LearnRun run;
  ValueLearner learner(prior, tau);
  RandomStream rng(seed);
  const FileSpec& ref_file = cfg.files.front();
  for (std::size_t t = 1; t <= max_events; ++t) {
    const RequestEvent ev = draw_request_event(ref_file, 0.0, cfg.users, layout,
                                               cfg.shadowing, cfg.interference, rng);
    learner.observe(ev, cfg.phy);
    if (checkpoint_every > 0 &&
        (t % checkpoint_every == 0 || t == max_events)) {
      LearnTrajectoryPoint pt;
      pt.t = static_cast<int>(t);
      pt.last_delta = learner.last_delta();
      if (reference != nullptr)
        pt.max_rel_error = max_relative_error(learner.table(), *reference);
      run.trajectory.push_back(pt);
    }
    if (stop_at_convergence && learner.converged()) break;
  }
  run.final_table = learner.table();
  run.converged = learner.converged();
  run.events_consumed = learner.iterations();
  return run;
}

const ValueTable* ExperimentAssets::table_for(PolicySpec::Tables kind) const {
  switch (kind) {
    case PolicySpec::Tables::True:
      return true_table ? &*true_table : nullptr;
    case PolicySpec::Tables::Uniform:
      return uniform_table ? &*uniform_table : nullptr;
    case PolicySpec::Tables::Learned:
      return learned_table ? &*learned_table : nullptr;
  }
  return nullptr;
}

ExperimentAssets prepare_assets(const ExperimentConfig& cfg,
                                const std::vector<PolicySpec>& policies, int workers) {
  ExperimentAssets assets;
  assets.layout = cfg.layout();

  bool need_true = false, need_uniform = false, need_learned = false;
  for (const auto& p : policies) {
    if (!p.needs_tables()) continue;
    switch (p.tables) {
      case PolicySpec::Tables::True: need_true = true; break;
      case PolicySpec::Tables::Uniform: need_uniform = true; break;
      case PolicySpec::Tables::Learned: need_learned = true; break;
    }
  }
  if (need_learned) need_uniform = true;  // the learner's prior

  if (need_true)
    assets.true_table = build_analytic_table(cfg, assets.layout, false, workers);
  if (need_uniform)
    assets.uniform_table = build_analytic_table(cfg, assets.layout, true, workers);
  if (need_learned) {
    const double tau = cfg.learn.tau_relative * assets.uniform_table->star(1);
    assets.learned_table =
        run_learning(cfg, assets.layout, *assets.uniform_table, nullptr,
                     cfg.learn.events, tau, cfg.learn.seed,
                     /*stop_at_convergence=*/true)
            .final_table;
  }
  return assets;
}

std::vector<SweepCell> expand_sweep(const ExperimentConfig& cfg) {
  std::vector<SweepCell> cells;
  if (!cfg.sweep.enabled) {
    cells.push_back({0.0, cfg.files, cfg.proactive.period});
    return cells;
  }
  for (double v : cfg.sweep.values) {
    SweepCell cell;
    cell.value = v;
    cell.files = cfg.files;
    cell.proactive_period = cfg.proactive.period;
    if (cfg.sweep.parameter == "lambda_t") {
      for (auto& f : cell.files) f.arrival_rate = v / f.lifetime;
    } else if (cfg.sweep.parameter == "proactive_period") {
      cell.proactive_period = v;
    } else {
      throw std::invalid_argument("unknown sweep parameter: " + cfg.sweep.parameter);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

SimInputs make_sim_inputs(const ExperimentConfig& cfg, const ExperimentAssets& assets,
                          const SweepCell& cell, const PolicySpec& spec,
                          const ReactivePolicy& policy) {
  SimInputs in;
  in.files = &cell.files;
  in.layout = &assets.layout;
  in.dist = &cfg.users;
  in.shadowing = &cfg.shadowing;
  in.interference = cfg.interference;
  in.phy = &cfg.phy;
  in.truncation_epsilon = cfg.truncation_epsilon;
  in.policy = &policy;
  in.table = spec.needs_tables() ? assets.table_for(spec.tables) : nullptr;
  if (spec.needs_tables() && in.table == nullptr)
    throw std::logic_error("make_sim_inputs: required table was not built");
  in.proactive.enabled = spec.proactive;
  in.proactive.period = cell.proactive_period;
  in.proactive.tau_prime = cfg.proactive.tau_prime;
  return in;
}

}  // namespace cachecast
