#include "mtm/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "mtm/generator.hpp"
#include "mtm/metrics.hpp"
#include "mtm/motif_code.hpp"
#include "mtm/motif_counter.hpp"
#include "mtm/profile_io.hpp"
#include "mtm/transitions.hpp"

namespace mtm::cli {

namespace fs = std::filesystem;

namespace {

bool wildcard_match(std::string_view pattern, std::string_view name) {
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t star = std::string_view::npos;
  std::size_t resume = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      resume = n;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      n = ++resume;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

TemporalGraph load_graph(const std::string& path) { return read_events_file(path).graph; }

std::string counts_csv(const SpectrumCounts& sc) {
  std::ostringstream s;
  s << "code,count\n";
  for (const auto& [code, n] : sc.counts) s << code.to_string() << ',' << n << '\n';
  return s.str();
}

nlohmann::json counts_json(const SpectrumCounts& sc) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [code, n] : sc.counts) counts[code.to_string()] = n;
  return {{"l", sc.l}, {"delta_c", sc.delta_c}, {"total", sc.total}, {"counts", std::move(counts)}};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

}  // namespace

std::string run_output_path(const std::string& out, std::size_t run, std::size_t runs) {
  if (runs <= 1) return out;
  const fs::path p(out);
  fs::path name = p.stem();
  name += "_" + std::to_string(run);
  name += p.extension();
  return (p.parent_path() / name).string();
}

std::vector<std::string> expand_paths(const std::vector<std::string>& patterns) {
  std::vector<std::string> paths;
  for (const auto& pattern : patterns) {
    const fs::path p(pattern);
    const std::string name = p.filename().string();
    if (name.find_first_of("*?") == std::string::npos) {
      if (!fs::is_regular_file(p)) throw std::runtime_error("no such file '" + pattern + "'");
      paths.push_back(pattern);
      continue;
    }
    const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    std::vector<std::string> found;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      if (entry.is_regular_file() && wildcard_match(name, entry.path().filename().string())) {
        found.push_back((p.has_parent_path() ? dir / entry.path().filename()
                                             : entry.path().filename())
                            .string());
      }
    }
    if (found.empty()) throw std::runtime_error("no file matches '" + pattern + "'");
    std::sort(found.begin(), found.end());
    paths.insert(paths.end(), found.begin(), found.end());
  }
  return paths;
}

void cmd_extract(const RunConfig& config, std::ostream& out) {
  const ParseResult parsed = read_events_file(config.input);
  const TransitionProfile profile =
      extract_profile(parsed.graph, ExtractionParams{config.delta, config.l_max});
  save_profile(profile, config.output);
  out << "events           " << profile.event_count << '\n'
      << "self-loops       " << parsed.self_loops_dropped << " dropped\n"
      << "cold events      " << profile.cold_event_count << " (" << std::fixed
      << std::setprecision(4) << cold_event_fraction(profile) << ")\n"
      << "transition types " << observed_transition_type_count(profile) << " of "
      << transition_type_total(profile.params.l_max) << '\n'
      << "mu               " << profile.mu << '\n';
  out.unsetf(std::ios::floatfield);
}

std::vector<std::string> cmd_generate(const RunConfig& config, std::ostream& out) {
  const TransitionProfile profile = load_profile(config.profile);
  std::vector<std::string> written;
  for (std::size_t i = 0; i < config.runs; ++i) {
    GenerationConfig gen;
    gen.seed = config.seed + i;
    gen.l_max = profile.params.l_max;
    const TemporalGraph g = generate(profile, gen);
    const std::string path = run_output_path(config.output, i, config.runs);
    write_events_file(g, path, "mtm generate seed=" + std::to_string(gen.seed));
    out << path << ' ' << g.size() << " events\n";
    written.push_back(path);
  }
  return written;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Motif transition model toolkit for temporal graphs", "mtm"};
  app.require_subcommand(1);
  RunConfig config;
  std::size_t l = 3;
  std::string format = "json";
  bool exclusive = false;
  unsigned workers = 0;
  std::vector<std::size_t> sizes{2, 3, 4};
  std::size_t windows = 10;
  std::vector<std::string> synthetic_patterns;
  std::string csv_dir;

  auto* spectrum = app.add_subcommand("spectrum", "List every motif code with l events");
  spectrum->add_option("--l", l, "Events per motif")->required()->check(CLI::Range(1, 6));

  auto* extract = app.add_subcommand("extract", "Learn a transition profile from an edge list");
  extract->add_option("input", config.input, "Edge list")->required();
  extract->add_option("--lmax", config.l_max, "Maximum motif size")
      ->capture_default_str()
      ->check(CLI::Range(2, 6));
  extract->add_option("--delta", config.delta, "Transition time limit in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  extract->add_option("--out", config.output, "Profile JSON")->required();

  auto* gen = app.add_subcommand("generate", "Generate synthetic graphs from a profile");
  gen->add_option("--profile", config.profile, "Profile JSON")->required();
  gen->add_option("--seed", config.seed, "Seed of the first run")->capture_default_str();
  gen->add_option("--runs", config.runs, "Number of graphs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", config.output, "Output edge list")->required();

  auto* count = app.add_subcommand("count", "Count temporal motifs");
  count->add_option("input", config.input, "Edge list")->required();
  count->add_option("--l", l, "Events per motif")->capture_default_str()->check(CLI::Range(2, 4));
  count->add_option("--delta-c", config.delta_c, "Gap limit in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  count->add_option("--format", format, "json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));
  auto* incl = count->add_flag("--delta-c-inclusive", "Gap may equal delta-c (default)");
  count->add_flag("--delta-c-exclusive", exclusive, "Gap must be below delta-c")->excludes(incl);
  count->add_option("--workers", workers, "Worker threads");
  count->add_option("--out", config.output, "Output file");

  auto* stats = app.add_subcommand("stats", "Global statistics of an edge list");
  stats->add_option("input", config.input, "Edge list")->required();
  stats->add_option("--format", format, "json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));

  auto* compare = app.add_subcommand("compare", "Compare synthetic graphs with an original");
  compare->add_option("original", config.input, "Original edge list")->required();
  compare->add_option("synthetics", synthetic_patterns, "Synthetic edge lists or patterns")
      ->required();
  compare->add_option("--delta-c", config.delta_c, "Gap limit in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compare->add_option("--l", sizes, "Motif sizes")->delimiter(',')->check(CLI::Range(2, 4));
  compare->add_option("--windows", windows, "Time windows")->capture_default_str();
  compare->add_option("--workers", workers, "Worker threads");
  compare->add_option("--out", config.output, "Report JSON");
  compare->add_option("--csv-dir", csv_dir, "Directory for CSV tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (spectrum->parsed()) {
      for (const auto& code : enumerate_codes(l)) out << code.to_string() << '\n';
    } else if (extract->parsed()) {
      cmd_extract(config, out);
    } else if (gen->parsed()) {
      cmd_generate(config, out);
    } else if (count->parsed()) {
      const TemporalGraph g = load_graph(config.input);
      const SpectrumCounts sc =
          count_motifs(g, l, config.delta_c, CountOptions{!exclusive, workers});
      emit(format == "csv" ? counts_csv(sc) : counts_json(sc).dump(1) + "\n", config.output, out);
    } else if (stats->parsed()) {
      const GlobalStats s = global_stats(load_graph(config.input));
      if (format == "csv") {
        std::ostringstream t;
        t << std::setprecision(10) << "metric,value\n";
        for (const char* name : kGlobalStatNames) t << name << ',' << stat_value(s, name) << '\n';
        t << "node_count," << s.node_count << '\n';
        out << t.str();
      } else {
        out << stats_to_json(s).dump(1) << '\n';
      }
    } else if (compare->parsed()) {
      const TemporalGraph original = load_graph(config.input);
      std::vector<TemporalGraph> synthetics;
      for (const auto& path : expand_paths(synthetic_patterns)) synthetics.push_back(load_graph(path));
      CompareOptions opts;
      opts.delta_c = config.delta_c;
      opts.sizes = sizes;
      opts.window_count = windows;
      opts.count.workers = workers;
      const CompareReport report = compare_report(original, synthetics, opts);
      if (!config.output.empty()) write_text(config.output, report_to_json(report).dump(1) + "\n");
      if (!csv_dir.empty()) {
        fs::create_directories(csv_dir);
        for (const auto& [name, table] : report_to_csv(report)) {
          write_text((fs::path(csv_dir) / (name + ".csv")).string(), table);
        }
      }
      out << report_summary(report);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace mtm::cli
