#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "recnum/checkpoint.hpp"
#include "recnum/csv.hpp"
#include "recnum/gradcheck.hpp"
#include "recnum/reference_data.hpp"
#include "recnum/svg.hpp"

namespace recnum::cli {

namespace fs = std::filesystem;

std::vector<int> parse_numeral_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(item));
    } else {
      int lo = std::stoi(item.substr(0, dots));
      int hi = std::stoi(item.substr(dots + 2));
      if (hi < lo) {
        throw std::invalid_argument("bad range '" + item + "'");
      }
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("empty numeral list '" + text + "'");
  }
  return out;
}

namespace {

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

std::string path_in(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

SvgSeries frontier_series(const std::vector<Candidate>& points) {
  SvgSeries s;
  s.label = "frontier";
  s.color = "#1f77b4";
  s.draw_line = true;
  for (const Candidate& c : points) {
    s.points.emplace_back(c.lexicon_size, c.avg_complexity);
  }
  return s;
}

std::vector<Candidate> frontier_points_from_csv(const std::string& path,
                                                int range_max) {
  std::vector<Candidate> points;
  for (const FrontierRow& row : read_frontier_csv(path)) {
    points.push_back(Candidate{DMPair(row.digits, row.multipliers, range_max),
                               row.lexicon_size, row.avg_ms_complexity});
  }
  return points;
}

}  // namespace

int cmd_analyze(const AnalyzeArgs& args) {
  DMPair dm(args.digits, args.multipliers, args.support);
  Lexicon lexicon = minimal_lexicon(dm);
  NeedDistribution dist(args.support);
  double avg = avg_ms_complexity(lexicon, dist);

  std::printf("D = [%s], M = [%s], support 1..%d\n",
              join_values(dm.digits()).c_str(),
              join_values(dm.multipliers()).c_str(), args.support);
  std::printf("lexicon_size      %d\n", lexicon_size(dm));
  std::printf("avg_ms_complexity %s\n\n", format_real(avg).c_str());
  std::printf("%5s  %-24s %s\n", "n", "expression", "complexity");
  for (int n = 1; n <= lexicon.n_max(); ++n) {
    std::printf("%5d  %-24s %d\n", n, render(lexicon.entry(n)).c_str(),
                lexicon.complexity(n));
  }

  if (!args.out_dir.empty()) {
    ensure_dir(args.out_dir);
    write_lexicon_csv(lexicon, path_in(args.out_dir, "lmin.csv"));
    std::vector<Candidate> row = {Candidate{dm, lexicon_size(dm), avg}};
    write_frontier_csv(row, path_in(args.out_dir, "summary.csv"));
  }
  return 0;
}

int cmd_pareto(const ParetoArgs& args) {
  const ExperimentConfig& config = args.config;
  ensure_dir(config.out_dir);
  save_config(config, path_in(config.out_dir, "config.json"));

  std::mt19937_64 rng(config.seed);
  Frontier frontier = run_ga(config.ga, rng);
  frontier.seed = config.seed;
  write_frontier_csv(frontier.points,
                     path_in(config.out_dir, "frontier.csv"));

  std::vector<SvgSeries> series = {frontier_series(frontier.points)};
  if (!args.overlay_csv.empty()) {
    SvgSeries overlay;
    overlay.label = "overlay";
    overlay.color = "#d62728";
    for (const OverlayPoint& p : read_overlay_csv(args.overlay_csv)) {
      overlay.points.emplace_back(p.lexicon_size, p.avg_ms_complexity);
    }
    series.push_back(std::move(overlay));
  }
  SvgChartOptions options;
  options.title = "Estimated Pareto frontier";
  options.x_label = "lexicon size";
  options.y_label = "avg morphosyntactic complexity";
  write_file(path_in(config.out_dir, "pareto.svg"),
             render_chart(series, options));

  std::printf("frontier: %zu points -> %s\n", frontier.points.size(),
              path_in(config.out_dir, "frontier.csv").c_str());
  return 0;
}

int cmd_evolve(const EvolveArgs& args) {
  const ExperimentConfig& config = args.config;
  const EvolutionConfig& evo = config.evolution;

  std::vector<int> digits = args.digits;
  std::vector<int> multipliers = args.multipliers;
  if (args.start_index) {
    const auto& starts = evolution_start_grammars();
    if (*args.start_index < 1 ||
        *args.start_index > static_cast<int>(starts.size())) {
      throw std::invalid_argument("--start must be in 1.." +
                                  std::to_string(starts.size()));
    }
    digits = starts[*args.start_index - 1].digits;
    multipliers = starts[*args.start_index - 1].multipliers;
  }
  DMPair start(digits, multipliers, evo.communication_range);
  {
    std::vector<int> missing =
        uncovered_numerals(start, SearchBounds{evo.communication_range, 0});
    if (!missing.empty()) {
      throw CoverageError(std::move(missing));
    }
  }

  ensure_dir(config.out_dir);
  save_config(config, path_in(config.out_dir, "config.json"));

  std::mt19937_64 rng(config.seed);
  std::vector<TrajectoryRecord> records;
  std::unique_ptr<NeuralCommunicationModel> model;
  if (!args.checkpoint_in.empty()) {
    AgentCheckpoint ckpt = load_agents(args.checkpoint_in);
    model = std::make_unique<NeuralCommunicationModel>(ckpt.config,
                                                       evo.pretrain_epochs,
                                                       config.seed);
    model->speaker() = std::move(ckpt.speaker);
    model->listener() = std::move(ckpt.listener);
    model->speaker_optimizer() = std::move(ckpt.speaker_opt);
    model->listener_optimizer() = std::move(ckpt.listener_opt);
  } else {
    model = std::make_unique<NeuralCommunicationModel>(
        evo.agent, evo.pretrain_epochs, config.seed);
  }
  records = run_evolution(start, evo, *model, rng, config.seed);
  write_trajectory_csv(records, path_in(config.out_dir, "trajectory.csv"));
  if (!args.checkpoint_out.empty()) {
    save_agents(args.checkpoint_out, model->speaker(), model->listener(),
                model->speaker_optimizer(), model->listener_optimizer());
  }

  // The trajectory is plotted over a frontier: either one passed in or a
  // fresh estimate with this run's GA settings.
  std::vector<Candidate> frontier_points;
  if (!args.frontier_csv.empty()) {
    frontier_points =
        frontier_points_from_csv(args.frontier_csv, config.ga.range_max);
  } else {
    std::mt19937_64 ga_rng(config.seed);
    Frontier frontier = run_ga(config.ga, ga_rng);
    frontier_points = frontier.points;
    write_frontier_csv(frontier_points,
                       path_in(config.out_dir, "frontier.csv"));
  }

  std::vector<SvgSeries> series = {frontier_series(frontier_points)};
  SvgSeries traj;
  traj.label = "trajectory";
  traj.color = "#2ca02c";
  traj.draw_line = true;
  for (const TrajectoryRecord& r : records) {
    traj.points.emplace_back(r.lexicon_size, r.avg_ms_complexity);
  }
  series.push_back(std::move(traj));
  SvgSeries start_pt;
  start_pt.label = "start";
  start_pt.color = "#d62728";
  start_pt.points.emplace_back(records.front().lexicon_size,
                               records.front().avg_ms_complexity);
  series.push_back(std::move(start_pt));

  SvgChartOptions options;
  options.title = "Grammar evolution trajectory";
  options.x_label = "lexicon size";
  options.y_label = "avg morphosyntactic complexity";
  write_file(path_in(config.out_dir, "evolve.svg"),
             render_chart(series, options));

  const TrajectoryRecord& last = records.back();
  std::printf("steps %d: size %d -> %d, avg complexity %s -> %s\n",
              static_cast<int>(records.size()) - 1,
              records.front().lexicon_size, last.lexicon_size,
              format_real(records.front().avg_ms_complexity).c_str(),
              format_real(last.avg_ms_complexity).c_str());
  return 0;
}

int cmd_report_m(const ReportMArgs& args) {
  std::vector<FrontierRow> rows = read_frontier_csv(args.frontier_csv);
  if (rows.empty()) {
    throw std::runtime_error("'" + args.frontier_csv + "' has no data rows");
  }
  std::map<int, int> counts;
  for (const FrontierRow& row : rows) {
    counts[static_cast<int>(row.multipliers.size())] += 1;
  }
  std::vector<std::pair<int, int>> bars(counts.begin(), counts.end());

  std::printf("%-14s %s\n", "m_cardinality", "count");
  for (const auto& [cardinality, count] : bars) {
    std::printf("%-14d %d\n", cardinality, count);
  }

  if (!args.out_dir.empty()) {
    ensure_dir(args.out_dir);
    write_m_histogram_csv(bars, path_in(args.out_dir, "m_histogram.csv"));
    std::vector<SvgBar> svg_bars;
    for (const auto& [cardinality, count] : bars) {
      svg_bars.push_back(
          SvgBar{std::to_string(cardinality), static_cast<double>(count)});
    }
    SvgChartOptions options;
    options.title = "Multiplier count across frontier lexicons";
    options.x_label = "|M|";
    options.y_label = "lexicons";
    write_file(path_in(args.out_dir, "m_histogram.svg"),
               render_bar_chart(svg_bars, options));
  }
  return 0;
}

int cmd_gradcheck(const GradcheckArgs& args) {
  bool all_ok = true;
  for (int i = 0; i < args.seeds; ++i) {
    std::uint64_t seed = args.seed + static_cast<std::uint64_t>(i);
    GradCheckResult r = gradient_check(seed);
    bool ok = r.passed(args.tolerance);
    all_ok = all_ok && ok;
    std::printf("seed %llu: speaker %.3e listener %.3e  %s\n",
                static_cast<unsigned long long>(seed), r.speaker_rel_error,
                r.listener_rel_error, ok ? "ok" : "FAIL");
  }
  return all_ok ? 0 : 1;
}

}  // namespace recnum::cli
