#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "looptiles/board.hpp"
#include "looptiles/render.hpp"
#include "looptiles/search.hpp"
#include "looptiles/service.hpp"
#include "looptiles/tracer.hpp"
#include "looptiles/verifier.hpp"
#include "looptiles/wire.hpp"

namespace looptiles {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

namespace cli {

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct ConfigSource {
  std::string path = "-";
  std::string mode;    // overrides header when non-empty
  std::string policy;

  Configuration load() const {
    ParseDefaults d;
    Configuration c = parse_config(read_input(path), d);
    if (!mode.empty()) c = c.with_mode(parse_mode(mode));
    if (!policy.empty()) c = c.with_policy(parse_policy(policy));
    return c;
  }
};

inline void add_source(CLI::App* sub, ConfigSource& src, bool required = false) {
  sub->add_option("config", src.path, "grid text or JSON file ('-' for stdin)")->required(required);
  sub->add_option("--mode", src.mode, "torus | capped (overrides the file)")
      ->check(CLI::IsMember({"torus", "capped"}));
  sub->add_option("--policy", src.policy, "distinct | free (overrides the file)")
      ->check(CLI::IsMember({"distinct", "free"}));
}

inline void print_human(std::ostream& out, const AnalysisReport& r) {
  out << grid_rows(r.config) << "\n";
  out << "loops: " << r.loop_count << "  crossings: " << r.total_crossings
      << "  parity: " << (r.parity_ok ? "ok" : "MISMATCH") << "\n";
  for (std::size_t i = 0; i < r.loops.size(); ++i) {
    const auto& l = r.loops[i];
    out << "  loop " << i << ": length " << l.length;
    if (l.winding) {
      out << "  winding (" << l.winding->wx << "," << l.winding->wy << ") "
          << (l.winding->planar() ? "planar" : "torus");
    }
    out << "  deflection " << l.net_deflection << "  weave " << (l.weave_ok ? "ok" : "BROKEN")
        << "\n";
  }
  out << "suite: " << (r.suite.ok ? "pass" : "FAIL");
  for (const auto& [name, status] : r.suite.checks) {
    if (status != "pass") out << "  " << name << "=" << status;
  }
  out << "\n";
}

inline void print_verification(std::ostream& out, const VerificationReport& r) {
  out << "configs: " << r.configs << "  loops: " << r.loops << "  crossings: " << r.crossings
      << "\n";
  for (const auto& [name, t] : r.checks) {
    out << "  " << name << ": " << status_name(t.status()) << " (" << t.evaluated
        << " evaluated, " << t.failures << " failed)\n";
  }
  for (const auto& cx : r.counterexamples) {
    out << "counterexample [" << cx.check << "] loop " << cx.loop_index << ": " << cx.detail;
    if (cx.seed) out << " (seed " << *cx.seed << ")";
    out << "\n" << cx.config;
  }
}

}  // namespace cli

/// Entry point shared by the executable and the tests.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explorer for the curved crossing-tile loop puzzle", "looptiles"};
  app.require_subcommand(1);

  bool json_out = false;
  cli::ConfigSource src;

  auto* analyze_cmd = app.add_subcommand("analyze", "trace loops and report invariants");
  cli::add_source(analyze_cmd, src);
  analyze_cmd->add_flag("--json", json_out, "structured output");

  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
  std::string suite = "basic";
  std::int64_t random_count = 0;
  std::uint64_t seed = 1;
  std::string rand_policy = "distinct";
  int rows = 4, cols = 4;
  verify_cmd->add_option("config", src.path, "configuration file; omit with --random");
  verify_cmd->add_option("--suite", suite, "basic | all (all adds the toggle property)")
      ->check(CLI::IsMember({"basic", "all"}));
  verify_cmd->add_option("--random", random_count, "verify N seeded random configurations");
  verify_cmd->add_option("--seed", seed, "first seed for --random");
  verify_cmd->add_option("--policy", rand_policy, "policy for --random")
      ->check(CLI::IsMember({"distinct", "free"}));
  verify_cmd->add_option("--rows", rows);
  verify_cmd->add_option("--cols", cols);
  verify_cmd->add_flag("--json", json_out);

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustively verify every configuration of a small torus");
  std::int64_t budget = kDefaultOracleBudget;
  int orows = 2, ocols = 2;
  oracle_cmd->add_option("--rows", orows);
  oracle_cmd->add_option("--cols", ocols);
  oracle_cmd->add_option("--budget", budget, "maximum number of configurations");
  bool oracle_toggles = false;
  oracle_cmd->add_flag("--toggles", oracle_toggles, "also check every single-side toggle");
  oracle_cmd->add_flag("--json", json_out);

  auto* search_cmd = app.add_subcommand("search", "hill-climb towards an objective");
  SearchParams sp;
  std::string objective = "max-loops";
  std::string search_policy = "distinct";
  search_cmd->add_option("--objective", objective)
      ->check(CLI::IsMember({"max-loops", "min-loops", "max-longest", "max-torus"}));
  search_cmd->add_option("--policy", search_policy)->check(CLI::IsMember({"distinct", "free"}));
  search_cmd->add_option("--budget", sp.budget, "total evaluations");
  search_cmd->add_option("--restarts", sp.restarts);
  search_cmd->add_option("--seed", sp.seed);
  search_cmd->add_flag("--json", json_out);

  auto* gray_cmd = app.add_subcommand("gray", "enumerate one-bit-adjacent placements on the 4x4 torus");
  bool stats = false;
  bool list = false;
  gray_cmd->add_flag("--stats", stats, "loop statistics per placement");
  gray_cmd->add_flag("--list", list, "print every placement");
  gray_cmd->add_flag("--json", json_out);

  auto* magic_cmd = app.add_subcommand("magic", "enumerate pandiagonal magic squares of the codes");
  magic_cmd->add_flag("--list", list, "print every square");
  magic_cmd->add_flag("--stats", stats, "loop statistics per square");
  magic_cmd->add_flag("--json", json_out);

  auto* render_cmd = app.add_subcommand("render", "write an SVG drawing");
  cli::add_source(render_cmd, src);
  std::string out_path;
  RenderOptions ropt;
  bool no_weave = false, no_colors = false, no_grid = false;
  render_cmd->add_option("--out", out_path, "output file ('-' for stdout)")->required();
  render_cmd->add_option("--tile", ropt.tile_size, "tile size in px")->check(CLI::PositiveNumber);
  render_cmd->add_flag("--no-weave", no_weave);
  render_cmd->add_flag("--no-colors", no_colors);
  render_cmd->add_flag("--no-grid", no_grid);
  render_cmd->add_flag("--labels", ropt.show_labels);

  auto* toggle_cmd = app.add_subcommand("toggle", "flip one side crossing and report the loop delta");
  cli::add_source(toggle_cmd, src);
  int trow = 0, tcol = 0;
  std::string tside;
  toggle_cmd->add_option("--row", trow)->required();
  toggle_cmd->add_option("--col", tcol)->required();
  toggle_cmd->add_option("--side", tside, "left | top | right | bottom")->required();
  toggle_cmd->add_flag("--json", json_out);

  auto* random_cmd = app.add_subcommand("random", "emit seeded random configurations");
  int count = 1;
  std::string rmode = "torus";
  random_cmd->add_option("--rows", rows);
  random_cmd->add_option("--cols", cols);
  random_cmd->add_option("--policy", rand_policy)->check(CLI::IsMember({"distinct", "free"}));
  random_cmd->add_option("--mode", rmode)->check(CLI::IsMember({"torus", "capped"}));
  random_cmd->add_option("--seed", seed);
  random_cmd->add_option("--count", count)->check(CLI::PositiveNumber);
  random_cmd->add_flag("--json", json_out);

  auto* serve_cmd = app.add_subcommand("serve", "run the local JSON service");
  int port = 8080;
  std::string host = "127.0.0.1";
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--host", host);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) {
      const AnalysisReport r = analyze(src.load());
      if (json_out) out << report_to_json(r).dump(2) << "\n";
      else cli::print_human(out, r);
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      SuiteOptions opts;
      opts.toggles = suite == "all";
      VerificationReport r;
      if (random_count > 0) {
        r = run_random_suite(Dims{rows, cols}, parse_policy(rand_policy), random_count, seed, opts);
      } else {
        r = run_suite(src.load(), opts);
      }
      if (json_out) out << verification_to_json(r).dump(2) << "\n";
      else cli::print_verification(out, r);
      return r.ok() ? kExitOk : kExitCheckFailed;
    }

    if (oracle_cmd->parsed()) {
      SuiteOptions opts;
      opts.toggles = oracle_toggles;
      const VerificationReport r =
          exhaustive_oracle(Dims{orows, ocols}, TilePolicy::Free, budget, opts);
      if (json_out) out << verification_to_json(r).dump(2) << "\n";
      else {
        cli::print_verification(out, r);
        out << "loop counts:";
        for (auto [k, v] : r.loop_count_hist) out << " " << k << ":" << v;
        out << "\nloop lengths:";
        for (auto [k, v] : r.length_hist) out << " " << k << ":" << v;
        out << "\n";
      }
      return r.ok() ? kExitOk : kExitCheckFailed;
    }

    if (search_cmd->parsed()) {
      sp.objective = parse_objective(objective);
      sp.policy = parse_policy(search_policy);
      const SearchResult r = local_search(sp);
      if (json_out) {
        out << search_to_json(r).dump(2) << "\n";
      } else {
        const LoopSet set = trace(r.best_config);
        out << serialize_grid(r.best_config);
        out << objective_name(r.objective) << ": " << r.best_score << "  (evaluations "
            << r.evaluations << ", seed " << r.seed << ")\nloop lengths:";
        for (const auto& l : set.loops) out << " " << l.length();
        out << "\n";
      }
      return kExitOk;
    }

    auto loop_stats = [](const Configuration& c) {
      const LoopSet set = trace(c);
      std::vector<int> lengths;
      int torus = 0;
      for (const auto& l : set.loops) {
        lengths.push_back(l.length());
        torus += classify(l, set.dims) == LoopClass::TorusLoop;
      }
      std::sort(lengths.begin(), lengths.end(), std::greater<>());
      return std::make_pair(lengths, torus);
    };

    if (gray_cmd->parsed() || magic_cmd->parsed()) {
      const bool gray = gray_cmd->parsed();
      std::vector<Configuration> configs;
      json summary;
      if (gray) {
        GrayEnumeration g = enumerate_gray(Dims{4, 4});
        configs = std::move(g.configs);
        summary = {{"count", g.raw_count}, {"upToTranslation", g.up_to_translation}};
      } else {
        configs = enumerate_pandiagonal();
        summary = {{"count", configs.size()}};
      }
      if (json_out) {
        json items = json::array();
        for (const auto& c : configs) {
          json item = {{"grid", grid_rows(c)}};
          if (stats) {
            auto [lengths, torus] = loop_stats(c);
            item["loopLengths"] = lengths;
            item["torusLoops"] = torus;
          }
          items.push_back(std::move(item));
        }
        summary["schema"] = kSchemaVersion;
        summary["configs"] = std::move(items);
        out << summary.dump(2) << "\n";
      } else {
        out << "count: " << summary["count"].get<std::int64_t>();
        if (gray) out << "  up to translation: " << summary["upToTranslation"].get<std::int64_t>();
        out << "\n";
        if (list || stats) {
          for (const auto& c : configs) {
            std::string line = grid_rows(c);
            for (auto& ch : line) if (ch == '\n') ch = '/';
            out << line;
            if (stats) {
              auto [lengths, torus] = loop_stats(c);
              out << "  loops " << lengths.size() << " torus " << torus << " lengths";
              for (int l : lengths) out << " " << l;
            }
            out << "\n";
          }
        }
      }
      return kExitOk;
    }

    if (render_cmd->parsed()) {
      ropt.show_weave = !no_weave;
      ropt.show_loops_colored = !no_colors;
      ropt.show_grid = !no_grid;
      const std::string svg = render_svg(src.load(), ropt);
      if (out_path == "-") {
        out << svg;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
        f << svg;
      }
      return kExitOk;
    }

    if (toggle_cmd->parsed()) {
      const ToggleResult t = toggle_side(src.load(), trow, tcol, parse_side(tside));
      if (json_out) {
        out << json{{"schema", kSchemaVersion},
                    {"config", config_to_json(t.config)},
                    {"loopsBefore", t.loops_before},
                    {"loopsAfter", t.loops_after},
                    {"deltaLoops", t.delta_loops},
                    {"deltaCrossings", t.delta_crossings}}
                   .dump(2)
            << "\n";
      } else {
        out << serialize_grid(t.config) << "loops " << t.loops_before << " -> " << t.loops_after
            << "  deltaLoops " << t.delta_loops << "  deltaCrossings " << t.delta_crossings
            << "\n";
      }
      return kExitOk;
    }

    if (random_cmd->parsed()) {
      json items = json::array();
      for (int i = 0; i < count; ++i) {
        const Configuration c = random_config(Dims{rows, cols}, parse_policy(rand_policy),
                                              seed + static_cast<std::uint64_t>(i), parse_mode(rmode));
        if (json_out) items.push_back(config_to_json(c));
        else out << (i ? "\n" : "") << serialize_grid(c);
      }
      if (json_out) out << (count == 1 ? items[0] : items).dump(2) << "\n";
      return kExitOk;
    }

    if (serve_cmd->parsed()) {
      Service service;
      err << "listening on http://" << host << ":" << port << "\n";
      return service.listen(host, port) ? kExitOk : kExitCheckFailed;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace looptiles
