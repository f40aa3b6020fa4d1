#include "cachecast/value_table.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cachecast {

namespace {

struct Candidate {
  int target;  // -1 = requesting user, else cache index
  double theta;
  double cost;
};

struct DfsState {
  const Scenario* sc = nullptr;
  const std::vector<int>* segments = nullptr;
  const std::vector<std::vector<Candidate>>* cands = nullptr;
  const std::function<double(const CacheState&)>* next = nullptr;
  CacheState* scratch = nullptr;
  double best_value = std::numeric_limits<double>::infinity();
  double best_cost = 0.0;
  double best_next = 0.0;

  void run(std::size_t pos, double cost_so_far) {
    if (pos == segments->size()) {
      const double nv = (*next)(*scratch);
      const double v = cost_so_far + nv;
      if (v < best_value) {
        best_value = v;
        best_cost = cost_so_far;
        best_next = nv;
      }
      return;
    }
    const int s = (*segments)[pos];
    const int nc = scratch->num_caches();
    for (const Candidate& cand : (*cands)[pos]) {
      int flipped[CacheState::kMaxCaches];
      int nflip = 0;
      for (int c = 0; c < nc; ++c) {
        if (!scratch->get(c, s) && sc->theta_cache[c] >= cand.theta) {
          scratch->set(c, s);
          flipped[nflip++] = c;
        }
      }
      run(pos + 1, cost_so_far + cand.cost);
      for (int k = 0; k < nflip; ++k) scratch->clear(flipped[k], s);
    }
  }
};

}  // namespace

BackupResult stage_backup(const CacheState& state, const ScenarioSet& scn,
                          const std::function<double(const CacheState&)>& next) {
  if (scn.size() == 0) throw std::invalid_argument("stage_backup: empty scenario set");
  const int nc = state.num_caches();
  const int ns = state.num_segments();

  CacheState scratch = state;
  std::vector<int> segments;
  std::vector<std::vector<Candidate>> cands;
  segments.reserve(ns);
  cands.resize(ns);

  double sum_cost = 0.0, sum_next = 0.0;
  double sum_v = 0.0, sum_v2 = 0.0;

  for (const Scenario& sc : scn.scenarios) {
    // Demanded segments for this request.
    segments.clear();
    if (sc.serving_cache.has_value()) {
      const int c = static_cast<int>(*sc.serving_cache);
      for (int s = 0; s < ns; ++s)
        if (!state.get(c, s)) segments.push_back(s);
    } else {
      for (int s = 0; s < ns; ++s) segments.push_back(s);
    }

    // Per-segment target candidates: the user first, then undecoded caches
    // with strictly worse statistic, best first. Caches at or above the
    // chosen target's statistic decode the multicast for free.
    std::size_t combos = 1;
    for (std::size_t pos = 0; pos < segments.size(); ++pos) {
      const int s = segments[pos];
      auto& list = cands[pos];
      list.clear();
      list.push_back({-1, sc.theta_user, sc.cost_user});
      for (int c = 0; c < nc; ++c) {
        if (!state.get(c, s) && sc.theta_cache[c] < sc.theta_user &&
            sc.cost_pair[c] < kInfeasibleCost) {
          list.push_back({c, sc.theta_cache[c], sc.cost_pair[c]});
        }
      }
      std::sort(list.begin() + 1, list.end(), [](const Candidate& a, const Candidate& b) {
        if (a.theta != b.theta) return a.theta > b.theta;
        return a.target < b.target;
      });
      combos *= list.size();
      if (combos > (1u << 22))
        throw std::runtime_error("stage_backup: per-stage action space too large");
    }

    DfsState dfs;
    dfs.sc = &sc;
    dfs.segments = &segments;
    dfs.cands = &cands;
    dfs.next = &next;
    dfs.scratch = &scratch;
    dfs.run(0, 0.0);

    sum_cost += dfs.best_cost;
    sum_next += dfs.best_next;
    const double v = dfs.best_cost + dfs.best_next;
    sum_v += v;
    sum_v2 += v * v;
  }

  const double k = static_cast<double>(scn.size());
  BackupResult r;
  r.mean_cost = sum_cost / k;
  r.mean_next = sum_next / k;
  if (scn.size() > 1) {
    const double mean_v = sum_v / k;
    const double var = std::max(0.0, (sum_v2 - k * mean_v * mean_v) / (k - 1.0));
    r.stderr_value = std::sqrt(var / k);
  }
  return r;
}

double ValueTable::star(int stages) const {
  check_range(stages);
  return v_star[stages - 1];
}

double ValueTable::one(int cache, int stages) const {
  check_range(stages);
  return v_one.at(cache)[stages - 1];
}

void ValueTable::check_range(int stages) const {
  if (stages < 1 || stages > max_stages)
    throw std::out_of_range("ValueTable: stage count outside table range");
}

ValueTable build_value_table(const ScenarioSet& scn, int num_segments, int max_stages,
                             int num_workers) {
  if (scn.size() == 0) throw std::invalid_argument("build_value_table: empty scenario set");
  if (max_stages < 1) throw std::invalid_argument("build_value_table: max_stages must be >= 1");
  const int nc = static_cast<int>(scn.scenarios.front().theta_cache.size());

  ValueTable t;
  t.num_caches = nc;
  t.num_segments = num_segments;
  t.segment_bits = scn.segment_bits;
  t.max_stages = max_stages;
  t.v_star.resize(max_stages);
  t.v_star_stderr.resize(max_stages);
  t.v_one.assign(nc, std::vector<double>(max_stages));
  t.v_one_stderr.assign(nc, std::vector<double>(max_stages));

  // v_star column: the state stays all-cached forever.
  const CacheState star = CacheState::all_cached(nc, num_segments);
  double prev = 0.0;
  for (int m = 1; m <= max_stages; ++m) {
    const BackupResult r =
        stage_backup(star, scn, [&](const CacheState&) { return prev; });
    t.v_star[m - 1] = r.value();
    t.v_star_stderr[m - 1] = m * r.stderr_value;
    prev = t.v_star[m - 1];
  }

  // v_one columns are independent across cache nodes; the canonical missing
  // segment is the last one (v_one is segment-independent).
  auto build_column = [&](int i) {
    const CacheState one = CacheState::all_but(nc, num_segments, i, num_segments - 1);
    double prev_one = 0.0;
    double acc_stderr = 0.0;
    for (int m = 1; m <= max_stages; ++m) {
      const double prev_star = (m == 1) ? 0.0 : t.v_star[m - 2];
      const BackupResult r = stage_backup(one, scn, [&](const CacheState& st) {
        return st.full() ? prev_star : prev_one;
      });
      t.v_one[i][m - 1] = r.value();
      acc_stderr += r.stderr_value;  // conservative: stages share the draws
      t.v_one_stderr[i][m - 1] = acc_stderr;
      prev_one = t.v_one[i][m - 1];
    }
  };

  const int workers = std::max(1, std::min(num_workers, nc));
  if (workers == 1) {
    for (int i = 0; i < nc; ++i) build_column(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> cursor{0};
    for (int wkr = 0; wkr < workers; ++wkr) {
      pool.emplace_back([&] {
        for (int i = cursor.fetch_add(1); i < nc; i = cursor.fetch_add(1))
          build_column(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return t;
}

double FileValueView::approx_value(const CacheState& state, int stages) const {
  table_->check_range(stages);
  double v = base_scale_ * table_->star(stages);
  for (int c = 0; c < state.num_caches(); ++c) {
    const int z = state.zeros_in_row(c);
    if (z > 0) v += z * diff(c, stages);
  }
  return v;
}

double approx_value(const CacheState& state, int stages, const ValueTable& table) {
  return FileValueView(table, table.num_segments, table.segment_bits)
      .approx_value(state, stages);
}

double approx_value_cross_file(const CacheState& state, int stages,
                               const ValueTable& table, int file_segments,
                               double file_segment_bits) {
  return FileValueView(table, file_segments, file_segment_bits)
      .approx_value(state, stages);
}

ValueBounds bounds(const CacheState& state, int stages, const ValueTable& table,
                   const ScenarioSet& scn) {
  table.check_range(stages);
  ValueBounds b;
  b.upper = approx_value(state, stages, table);
  double penalty1 = 0.0;
  for (int c = 0; c < state.num_caches(); ++c) {
    const int z = state.zeros_in_row(c);
    if (z > 0) penalty1 += z * table.diff(c, 1);
  }
  b.lower = table.star(stages) + penalty1;
  b.refined_upper =
      stage_backup(state, scn, [&](const CacheState& st) {
        return stages == 1 ? 0.0 : approx_value(st, stages - 1, table);
      }).value();
  return b;
}

std::vector<double> poisson_mixture_weights(double mean, double epsilon,
                                            int max_stages) {
  const int horizon = std::min(truncation_horizon(mean, epsilon), max_stages);
  std::vector<double> w(horizon + 1);
  for (int n = 0; n <= horizon; ++n) w[n] = poisson_pmf(mean, n);
  return w;
}

double cost_to_go_lower_bound(const CacheState& state, double remaining_lifetime,
                              double arrival_rate, const FileValueView& view,
                              double epsilon) {
  if (remaining_lifetime < 0.0)
    throw std::invalid_argument("cost_to_go_lower_bound: negative lifetime");
  const double mean = arrival_rate * remaining_lifetime;
  if (mean == 0.0) return 0.0;
  double penalty1 = 0.0;
  for (int c = 0; c < state.num_caches(); ++c) {
    const int z = state.zeros_in_row(c);
    if (z > 0) penalty1 += z * view.diff(c, 1);
  }
  const auto w = poisson_mixture_weights(mean, epsilon, view.max_stages());
  double out = 0.0;
  for (int n = 1; n < static_cast<int>(w.size()); ++n)
    out += w[n] * (view.star(n) + penalty1);
  return out;
}

void save_value_table(const ValueTable& table, std::ostream& out) {
  out << "cachecast-value-table v1\n";
  out << "num_caches " << table.num_caches << "\n";
  out << "num_segments " << table.num_segments << "\n";
  out << std::setprecision(17);
  out << "segment_bits " << table.segment_bits << "\n";
  out << "max_stages " << table.max_stages << "\n";
  out << "scenario_budget " << table.scenario_budget << "\n";
  out << "scenario_seed " << table.scenario_seed << "\n";
  out << "columns N v_star";
  for (int c = 1; c <= table.num_caches; ++c) out << " v_one_" << c;
  out << "\n";
  for (int n = 1; n <= table.max_stages; ++n) {
    out << n << " " << table.v_star[n - 1];
    for (int c = 0; c < table.num_caches; ++c) out << " " << table.v_one[c][n - 1];
    out << "\n";
  }
}

void save_value_table(const ValueTable& table, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open table file for writing: " + path);
  save_value_table(table, f);
}

ValueTable load_value_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "cachecast-value-table v1")
    throw std::runtime_error("value table: unsupported format or version");
  ValueTable t;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "num_caches") {
      ls >> t.num_caches;
    } else if (key == "num_segments") {
      ls >> t.num_segments;
    } else if (key == "segment_bits") {
      ls >> t.segment_bits;
    } else if (key == "max_stages") {
      ls >> t.max_stages;
    } else if (key == "scenario_budget") {
      ls >> t.scenario_budget;
    } else if (key == "scenario_seed") {
      ls >> t.scenario_seed;
    } else if (key == "columns") {
      have_columns = true;
      break;
    } else {
      throw std::runtime_error("value table: unknown header key '" + key + "'");
    }
  }
  if (!have_columns || t.num_caches < 0 || t.max_stages < 1)
    throw std::runtime_error("value table: incomplete header");
  t.v_star.assign(t.max_stages, 0.0);
  t.v_one.assign(t.num_caches, std::vector<double>(t.max_stages, 0.0));
  for (int n = 1; n <= t.max_stages; ++n) {
    if (!std::getline(in, line))
      throw std::runtime_error("value table: truncated rows");
    std::istringstream ls(line);
    int row_n = 0;
    ls >> row_n;
    if (row_n != n) throw std::runtime_error("value table: row order mismatch");
    ls >> t.v_star[n - 1];
    for (int c = 0; c < t.num_caches; ++c) ls >> t.v_one[c][n - 1];
    if (!ls) throw std::runtime_error("value table: malformed row");
  }
  return t;
}

ValueTable load_value_table_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open table file: " + path);
  return load_value_table(f);
}

}  // namespace cachecast
