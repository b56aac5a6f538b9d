#include "commands.hpp"

#include <filesystem>
#include <sstream>
#include <vector>

#include "config.hpp"
#include "dynregret/variations.hpp"
#include "output.hpp"
#include "stats.hpp"
#include "suites.hpp"

namespace dynregret::cli {

namespace {

// grid maxima in run summaries are skipped past this many loss evaluations
constexpr double kSummaryGridBudget = 1e8;
constexpr std::size_t kSummaryGrid = 1001;

ExperimentConfig prepare(const std::string& path, const Overrides& overrides) {
  ExperimentConfig config = load_config(path);
  if (overrides.seeds) {
    if (*overrides.seeds == 0) throw ConfigError("--seeds must be positive");
    config.n_seeds = *overrides.seeds;
  }
  if (overrides.seed) config.base_seed = *overrides.seed;
  if (overrides.out) config.out_dir = *overrides.out;
  if (overrides.thin) config.thin = *overrides.thin;
  validate(config);
  return config;
}

std::string out_path(const ExperimentConfig& config, const char* name) {
  return (std::filesystem::path(config.out_dir) / name).string();
}

nlohmann::json variations_json(const LossSequence& seq) {
  std::size_t points = kSummaryGrid;
  if (seq.dim() == 2) points *= kSummaryGrid;
  if (seq.dim() > 2 || static_cast<double>(seq.distinct_count()) * static_cast<double>(points) > kSummaryGridBudget) {
    return {{"path_variation", path_variation(seq)}, {"grid_resolution", nullptr}};
  }
  return compute_variations(seq, kSummaryGrid);
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace

int cmd_run(const std::string& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = prepare(config_path, overrides);
    if (config.horizons.size() != 1) throw ConfigError("run takes a single T; use sweep for a T list");
    if (config.policies.size() != 1) throw ConfigError("run takes a single policy; use sweep for a policy list");
    const std::size_t horizon = config.horizons.front();
    const PolicyEntry& policy = config.policies.front();
    // the single traced run is the first Monte-Carlo seed
    const std::uint64_t seed = config.base_seed + 1;
    const LossSequence seq = build_sequence(config, horizon, derive_seed(seed, Stream::kAdversary));
    const FeedbackKind feedback = build_feedback(config, policy, seq.dim());

    RunOptions options;
    options.thin = config.thin;
    if (seq.dim() <= 2 && seq.distinct_count() * kSummaryGrid <= kSummaryGridBudget) options.static_grid = kSummaryGrid;
    const RunTrace trace = run(policy.spec, seq, feedback, seed, options);

    nlohmann::json summary = {{"command", "run"},
                              {"config", config.raw},
                              {"seed", seed},
                              {"T", horizon},
                              {"policy", policy.spec},
                              {"feedback", feedback},
                              {"sequence", seq.descriptor()},
                              {"step", trace.step},
                              {"totals", trace.totals},
                              {"audit", trace.audit},
                              {"thin", trace.thin},
                              {"variations", variations_json(seq)}};
    const auto bound = applicable_bound(policy.spec, seq, feedback, trace.step);
    summary["bound"] = bound ? nlohmann::json(*bound) : nlohmann::json(nullptr);

    if (config.n_seeds > 1) {
      const auto generate = [&](std::uint64_t adversary) { return build_sequence(config, horizon, adversary); };
      summary["monte_carlo"] = monte_carlo(policy.spec, generate, feedback, config.n_seeds, config.base_seed);
    }

    std::ostringstream csv;
    write_trace_csv(csv, trace);
    write_file(out_path(config, "trace.csv"), csv.str());
    write_file(out_path(config, "summary.json"), dump_json(summary));

    out << "dynamic_regret " << format_double(trace.totals.dynamic_regret) << '\n';
    if (bound) out << "bound " << format_double(*bound) << '\n';
    if (summary.contains("monte_carlo")) {
      const auto& mc = summary["monte_carlo"];
      out << "mean_regret " << format_double(mc["mean_regret"].get<double>()) << " std_error "
          << format_double(mc["std_error"].get<double>()) << " over " << config.n_seeds << " seeds\n";
    }
    out << "wrote " << out_path(config, "trace.csv") << " and " << out_path(config, "summary.json") << '\n';
    return kExitOk;
  });
}

int cmd_sweep(const std::string& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = prepare(config_path, overrides);
    std::ostringstream csv;
    csv << "T,policy,mean_regret,bound,std_error\n";
    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json slopes = nlohmann::json::object();
    for (const PolicyEntry& policy : config.policies) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (std::size_t horizon : config.horizons) {
        const auto generate = [&](std::uint64_t adversary) { return build_sequence(config, horizon, adversary); };
        const std::size_t dim = generate(derive_seed(config.base_seed + 1, Stream::kAdversary)).dim();
        const FeedbackKind feedback = build_feedback(config, policy, dim);
        const MonteCarloSummary mc = monte_carlo(policy.spec, generate, feedback, config.n_seeds, config.base_seed);
        csv << horizon << ',' << policy.label << ',' << format_double(mc.mean_regret) << ','
            << (mc.bound ? format_double(*mc.bound) : std::string()) << ',' << format_double(mc.std_error) << '\n';
        nlohmann::json row = mc;
        row["T"] = horizon;
        row["policy"] = policy.label;
        rows.push_back(std::move(row));
        xs.push_back(static_cast<double>(horizon));
        ys.push_back(mc.mean_regret);
      }
      if (xs.size() >= 2) {
        bool positive = true;
        for (double y : ys) positive = positive && y > 0.0;
        if (positive) {
          const double slope = loglog_slope(xs, ys);
          slopes[policy.label] = slope;
          out << policy.label << " log-log slope " << format_double(slope) << '\n';
        } else {
          slopes[policy.label] = nullptr;
          out << policy.label << " log-log slope undefined (non-positive mean regret)\n";
        }
      }
    }
    write_file(out_path(config, "rates.csv"), csv.str());
    write_file(out_path(config, "sweep.json"),
               dump_json({{"command", "sweep"}, {"config", config.raw}, {"rows", rows}, {"slopes", slopes}}));
    out << "wrote " << out_path(config, "rates.csv") << " and " << out_path(config, "sweep.json") << '\n';
    return kExitOk;
  });
}

int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err) {
  std::vector<int> ids;
  try {
    ids = suite_criteria(suite);
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  bool all = true;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id);
    out << format_result(r) << std::endl;
    all = all && r.passed;
  }
  return all ? kExitOk : kExitRuntime;
}

}  // namespace dynregret::cli
