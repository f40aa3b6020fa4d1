#include "cachecast/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cachecast {

std::string PolicySpec::label() const {
  std::string s;
  switch (base) {
    case Base::Proposed: s = "proposed"; break;
    case Base::Baseline1: s = "baseline1"; break;
    case Base::Baseline2: s = "baseline2"; break;
  }
  if (base == Base::Proposed && tables == Tables::Uniform) s += ":uniform";
  if (base == Base::Proposed && tables == Tables::Learned) s += ":learned";
  if (proactive) s += "+proactive";
  return s;
}

PolicySpec PolicySpec::parse(const std::string& text) {
  PolicySpec spec;
  std::string body = text;
  const auto plus = body.find('+');
  if (plus != std::string::npos) {
    const std::string suffix = body.substr(plus + 1);
    if (suffix != "proactive")
      throw std::invalid_argument("unknown policy suffix: +" + suffix);
    spec.proactive = true;
    body = body.substr(0, plus);
  }
  std::string tables;
  const auto colon = body.find(':');
  if (colon != std::string::npos) {
    tables = body.substr(colon + 1);
    body = body.substr(0, colon);
  }
  if (body == "proposed") {
    spec.base = Base::Proposed;
  } else if (body == "baseline1") {
    spec.base = Base::Baseline1;
  } else if (body == "baseline2") {
    spec.base = Base::Baseline2;
  } else {
    throw std::invalid_argument("unknown policy: " + body);
  }
  if (spec.proactive && spec.base != Base::Proposed)
    throw std::invalid_argument("+proactive applies to the proposed policy only");
  if (!tables.empty()) {
    if (spec.base != Base::Proposed)
      throw std::invalid_argument("table source only applies to the proposed policy");
    if (tables == "uniform") {
      spec.tables = Tables::Uniform;
    } else if (tables == "learned") {
      spec.tables = Tables::Learned;
    } else if (tables == "true") {
      spec.tables = Tables::True;
    } else {
      throw std::invalid_argument("unknown table source: " + tables);
    }
  }
  return spec;
}

std::unique_ptr<ReactivePolicy> make_policy(PolicySpec::Base base) {
  switch (base) {
    case PolicySpec::Base::Proposed: return std::make_unique<ProposedPolicy>();
    case PolicySpec::Base::Baseline1: return std::make_unique<Baseline1Policy>();
    case PolicySpec::Base::Baseline2: return std::make_unique<Baseline2Policy>();
  }
  throw std::logic_error("unreachable");
}

namespace {

struct TimelineEntry {
  double time = 0.0;
  bool proactive = false;
  std::size_t file_index = 0;  // reactive only
  std::size_t event_index = 0; // index into that file's request list
};

}  // namespace

EpisodeResult run_episode(const SimInputs& inputs, std::uint64_t master_seed,
                          std::uint64_t episode_index, bool keep_events) {
  if (inputs.files == nullptr || inputs.files->empty())
    throw std::invalid_argument("run_episode: empty file catalog");
  if (inputs.policy == nullptr)
    throw std::invalid_argument("run_episode: no policy");
  if (inputs.proactive.enabled && inputs.table == nullptr)
    throw std::invalid_argument("run_episode: proactive multicast requires a value table");
  inputs.proactive.validate();

  const auto& files = *inputs.files;
  const std::uint64_t base = substream_seed(master_seed, episode_index);
  RandomStream request_rng(substream_seed(base, 0));
  RandomStream proactive_rng(substream_seed(base, 1));

  // Request streams per file, drawn in catalog order.
  std::vector<std::vector<RequestEvent>> requests;
  requests.reserve(files.size());
  for (const auto& f : files)
    requests.push_back(generate_requests(f, *inputs.dist, *inputs.layout,
                                         *inputs.shadowing, inputs.interference,
                                         request_rng));

  double t_begin = files.front().start_time;
  double t_end = files.front().end_time();
  for (const auto& f : files) {
    t_begin = std::min(t_begin, f.start_time);
    t_end = std::max(t_end, f.end_time());
  }

  std::vector<TimelineEntry> timeline;
  for (std::size_t fi = 0; fi < files.size(); ++fi)
    for (std::size_t k = 0; k < requests[fi].size(); ++k)
      timeline.push_back({requests[fi][k].arrival_time, false, fi, k});
  if (inputs.proactive.enabled) {
    for (double t = t_begin + inputs.proactive.period; t < t_end;
         t += inputs.proactive.period)
      timeline.push_back({t, true, 0, 0});
  }
  // Simultaneous events run reactive-first.
  std::stable_sort(timeline.begin(), timeline.end(),
                   [](const TimelineEntry& a, const TimelineEntry& b) {
                     if (a.time != b.time) return a.time < b.time;
                     if (a.proactive != b.proactive) return !a.proactive;
                     if (a.file_index != b.file_index) return a.file_index < b.file_index;
                     return a.event_index < b.event_index;
                   });

  std::vector<CacheState> states;
  std::vector<FileValueView> views;
  states.reserve(files.size());
  views.reserve(files.size());
  for (const auto& f : files) {
    states.emplace_back(static_cast<int>(inputs.layout->num_caches()), f.num_segments);
    if (inputs.table != nullptr)
      views.emplace_back(*inputs.table, f.num_segments, f.segment_bits);
  }
  std::vector<int> ordinals(files.size(), 0);
  std::vector<double> cache_pathloss(inputs.layout->num_caches());
  for (std::size_t c = 0; c < inputs.layout->num_caches(); ++c)
    cache_pathloss[c] = pathloss_gain(inputs.layout->cache_nodes[c].position,
                                      {0.0, 0.0}, inputs.layout->pathloss_exponent);

  EpisodeResult out;
  out.episode_index = episode_index;
  out.file_energy.assign(files.size(), 0.0);
  out.file_symbols.assign(files.size(), 0.0);

  auto account = [&](std::size_t fi, EventRecord& rec, int segment, double power,
                     double symbols_real, const std::vector<std::size_t>& receivers) {
    const double n_tx = std::ceil(symbols_real);
    const double energy = power * n_tx;
    rec.segments.push_back({segment, power, n_tx, receivers});
    rec.energy += energy;
    rec.symbols += n_tx;
    out.total_energy += energy;
    out.total_symbols += n_tx;
    out.file_energy[fi] += energy;
    out.file_symbols[fi] += n_tx;
  };

  for (const auto& entry : timeline) {
    if (!entry.proactive) {
      const std::size_t fi = entry.file_index;
      const RequestEvent& ev = requests[fi][entry.event_index];
      ordinals[fi] += 1;

      SchedulerContext ctx;
      ctx.state = &states[fi];
      ctx.event = &ev;
      ctx.file = &files[fi];
      ctx.phy = inputs.phy;
      ctx.values = inputs.table != nullptr ? &views[fi] : nullptr;
      ctx.remaining_lifetime = files[fi].end_time() - ev.arrival_time;
      ctx.truncation_epsilon = inputs.truncation_epsilon;
      ctx.request_ordinal = ordinals[fi];

      const Decision decision = inputs.policy->decide(ctx);
      validate_decision(decision, ctx);

      EventRecord rec;
      rec.time = ev.arrival_time;
      rec.proactive = false;
      rec.file_index = static_cast<int>(fi);
      rec.ordinal = ordinals[fi];
      rec.covered = ev.user.serving_cache.has_value();
      for (const auto& sd : decision.segments) {
        const double n_tx = std::ceil(sd.symbols);
        // The decode set is re-derived at the transmitted symbol count; every
        // cache that can decode keeps the segment, targeted or not.
        const auto realized =
            receiving_set(ev, sd.power, n_tx, files[fi].segment_bits, *inputs.phy);
        account(fi, rec, sd.segment, sd.power, sd.symbols, realized);
        for (std::size_t c : realized) states[fi].set(static_cast<int>(c), sd.segment);
      }
      if (keep_events) out.events.push_back(std::move(rec));
    } else {
      // Fresh shadowing draw per cache node at every opportunity.
      std::vector<LinkState> links(inputs.layout->num_caches());
      std::vector<double> thetas(inputs.layout->num_caches());
      for (std::size_t c = 0; c < links.size(); ++c) {
        links[c] = {cache_pathloss[c], inputs.shadowing->draw(proactive_rng),
                    inputs.interference};
        thetas[c] = theta(links[c], *inputs.phy);
      }
      std::vector<ProactiveFileContext> ctxs;
      for (std::size_t fi = 0; fi < files.size(); ++fi) {
        if (entry.time < files[fi].start_time || entry.time >= files[fi].end_time())
          continue;
        ProactiveFileContext pc;
        pc.file_index = fi;
        pc.arrival_rate = files[fi].arrival_rate;
        pc.remaining_lifetime = files[fi].end_time() - entry.time;
        pc.segment_bits = files[fi].segment_bits;
        pc.state = &states[fi];
        pc.values = &views[fi];
        ctxs.push_back(pc);
      }
      if (ctxs.empty()) continue;
      const ProactiveDecision d =
          proactive_decide(ctxs, thetas, *inputs.phy, inputs.proactive.tau_prime,
                           inputs.truncation_epsilon);
      if (!d.transmit) continue;

      const std::size_t fi = d.file_index;
      EventRecord rec;
      rec.time = entry.time;
      rec.proactive = true;
      rec.file_index = static_cast<int>(fi);
      const double n_tx = std::ceil(d.symbols);
      std::vector<std::size_t> realized;
      for (std::size_t c = 0; c < thetas.size(); ++c) {
        if (!states[fi].get(static_cast<int>(c), d.segment) &&
            n_tx * symbol_rate(thetas[c], d.power, *inputs.phy) >=
                files[fi].segment_bits * (1.0 - 1e-9))
          realized.push_back(c);
      }
      account(fi, rec, d.segment, d.power, d.symbols, realized);
      for (std::size_t c : realized) states[fi].set(static_cast<int>(c), d.segment);
      if (keep_events) out.events.push_back(std::move(rec));
    }
  }
  return out;
}

SeedStats run_many(const SimInputs& inputs, std::uint64_t master_seed, int n_seeds,
                   int workers) {
  if (n_seeds < 1) throw std::invalid_argument("run_many: n_seeds must be >= 1");
  SeedStats stats;
  stats.per_seed_cost.assign(n_seeds, 0.0);
  stats.per_seed_file_cost.assign(n_seeds, {});

  const double w = inputs.phy->symbol_weight;
  auto run_one = [&](int s) {
    const EpisodeResult r = run_episode(inputs, master_seed, s, false);
    stats.per_seed_cost[s] = r.total_cost(w);
    std::vector<double> fc(inputs.files->size());
    for (std::size_t i = 0; i < fc.size(); ++i) fc[i] = r.file_cost(i, w);
    stats.per_seed_file_cost[s] = std::move(fc);
  };

  const int pool_size = std::max(1, std::min(workers, n_seeds));
  if (pool_size == 1) {
    for (int s = 0; s < n_seeds; ++s) run_one(s);
  } else {
    std::atomic<int> cursor{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < pool_size; ++t) {
      pool.emplace_back([&] {
        for (int s = cursor.fetch_add(1); s < n_seeds; s = cursor.fetch_add(1))
          run_one(s);
      });
    }
    for (auto& th : pool) th.join();
  }

  stats.mean = mean_of(stats.per_seed_cost);
  stats.stderr_mean = stderr_of(stats.per_seed_cost);
  return stats;
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / (static_cast<double>(n) * (n - 1.0)));
}

}  // namespace cachecast
