// Command-line front end for the plcmarket toolkit.
//
// Exit codes: 0 accept/success, 1 reject/not found, 2 input error,
// 3 internal invariant violation.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plcmarket/plcmarket.hpp"

namespace {

using namespace plcmarket;
using io::Json;

constexpr int kOk = 0;
constexpr int kNotFound = 1;
constexpr int kInputError = 2;
constexpr int kInvariant = 3;

/// Writes to `path`, or to stdout when it is empty.
void emit(const std::string& path, const Json& j) {
  if (path.empty())
    std::cout << io::dump(j);
  else
    io::write_json_file(path, j);
}

struct Common {
  std::string out;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-o,--output", c.out, "Output file (stdout when omitted)");
  cmd->add_flag("--json", c.json, "Machine-readable report on stdout");
}

std::vector<Interval> parse_box(const std::string& text, std::size_t goods) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(Errc::Schema, "--box expects LO:HI");
  Interval iv{parse_rational(text.substr(0, colon)), parse_rational(text.substr(colon + 1))};
  return std::vector<Interval>(goods, iv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier and reduction toolkit for PLC exchange markets"};
  app.require_subcommand(1);

  // gen-mn
  Common gen_common;
  std::size_t gen_n = 2;
  auto* gen = app.add_subcommand("gen-mn", "Emit the price-regulating market M_n");
  gen->add_option("--n", gen_n, "Number of goods (>= 2)")->required();
  add_common(gen, gen_common);

  // reduce
  Common reduce_common;
  std::string reduce_game, reduce_meta;
  auto* reduce = app.add_subcommand("reduce", "Compile a sparse bimatrix game into a market");
  reduce->add_option("--game", reduce_game, "Game JSON")->required();
  reduce->add_option("--meta", reduce_meta, "Where to write the trader index metadata");
  add_common(reduce, reduce_common);

  // verify
  Common verify_common;
  std::string verify_market, verify_prices, verify_mode = "approximate", verify_eps = "0",
                                            verify_meta;
  auto* verify_cmd = app.add_subcommand("verify", "Check a price vector and emit a certificate");
  verify_cmd->add_option("--market", verify_market, "Market JSON")->required();
  verify_cmd->add_option("--prices", verify_prices, "Prices JSON")->required();
  verify_cmd->add_option("--mode", verify_mode, "exact | approximate | quasi");
  verify_cmd->add_option("--eps", verify_eps, "RAT, N^-K, or n^-K (needs --meta)");
  verify_cmd->add_option("--meta", verify_meta, "Reduction metadata, for n^-K");
  add_common(verify_cmd, verify_common);

  // extract
  Common extract_common;
  std::string extract_prices, extract_meta;
  auto* extract = app.add_subcommand("extract", "Read mixed strategies off a price vector");
  extract->add_option("--prices", extract_prices, "Prices JSON")->required();
  extract->add_option("--meta", extract_meta, "Reduction metadata")->required();
  add_common(extract, extract_common);

  // check-nash
  Common nash_common;
  std::string nash_game, nash_profile, nash_eps = "n^-6";
  auto* nash = app.add_subcommand("check-nash", "Well-supported Nash check");
  nash->add_option("--game", nash_game, "Game JSON")->required();
  nash->add_option("--profile", nash_profile, "Strategy JSON {x, y}")->required();
  nash->add_option("--eps", nash_eps, "n^-K or RAT");
  add_common(nash, nash_common);

  // solve-game
  Common solve_common;
  std::string solve_game;
  std::size_t solve_max_n = 4;
  auto* solve = app.add_subcommand("solve-game", "Exact support enumeration (small games)");
  solve->add_option("--game", solve_game, "Game JSON")->required();
  solve->add_option("--max-n", solve_max_n, "Largest n accepted");
  add_common(solve, solve_common);

  // search-eq
  Common search_common;
  std::string search_market, search_meta, search_eps = "N^-13", search_box = "1:2";
  SearchConfig search_cfg;
  auto* search = app.add_subcommand("search-eq", "Exploratory grid search for an equilibrium");
  search->add_option("--market", search_market, "Market JSON")->required();
  search->add_option("--meta", search_meta, "Reduction metadata, for n^-K");
  search->add_option("--eps", search_eps, "Target epsilon: RAT, N^-K, or n^-K");
  search->add_option("--box", search_box, "Per-coordinate interval LO:HI");
  search->add_option("--grid-k", search_cfg.grid_k, "Subdivisions per coordinate");
  search->add_option("--rounds", search_cfg.refine_rounds, "Refinement rounds");
  search->add_option("--samples", search_cfg.random_samples, "Random samples per round");
  search->add_option("--max-points", search_cfg.max_points, "Grid budget per round");
  search->add_option("--seed", search_cfg.seed, "Sampling seed");
  add_common(search, search_common);

  // validate
  Common validate_common;
  std::vector<std::string> validate_paths;
  auto* validate = app.add_subcommand("validate", "Schema and class checks for input files");
  validate->add_option("files", validate_paths, "Files to check")->required();
  add_common(validate, validate_common);

  // pipeline
  Common pipeline_common;
  PipelineConfig pipeline_cfg;
  bool pipeline_no_search = false;
  auto* pipeline = app.add_subcommand("pipeline", "reduce -> search -> extract -> check-nash");
  pipeline->add_option("--game", pipeline_cfg.game_path, "Game JSON")->required();
  pipeline->add_option("--out", pipeline_cfg.out_dir, "Artifact directory");
  pipeline->add_option("--seed", pipeline_cfg.seed, "Sampling seed");
  pipeline->add_option("--grid-k", pipeline_cfg.grid_k, "Subdivisions per coordinate");
  pipeline->add_option("--rounds", pipeline_cfg.refine_rounds, "Refinement rounds");
  pipeline->add_option("--samples", pipeline_cfg.random_samples, "Random samples per round");
  pipeline->add_option("--eps", pipeline_cfg.market_eps, "Market epsilon (default N^-13)");
  pipeline->add_option("--nash-eps", pipeline_cfg.nash_eps, "Nash epsilon (default n^-6)");
  pipeline->add_flag("--no-search", pipeline_no_search, "Stop after the reduction");
  add_common(pipeline, pipeline_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*gen) {
      auto m = build_mn(gen_n);
      emit(gen_common.out, io::to_json(m));
      if (gen_common.json && !gen_common.out.empty())
        std::cout << io::dump(Json{{"n_goods", m.n_goods()}, {"n_traders", m.n_traders()}});
      return kOk;
    }

    if (*reduce) {
      auto game = io::game_from_json(io::read_json_file(reduce_game));
      auto [market, meta] = build_reduced_market(game);
      emit(reduce_common.out, io::to_json(market));
      if (!reduce_meta.empty()) io::write_json_file(reduce_meta, io::to_json(meta));
      if (reduce_common.json)
        std::cout << io::dump(class_report_json(classify_market(market, 27, 23)));
      return kOk;
    }

    if (*verify_cmd) {
      auto m = io::market_from_json(io::read_json_file(verify_market));
      auto p = io::prices_from_json(io::read_json_file(verify_prices));
      std::optional<std::size_t> game_n;
      if (!verify_meta.empty()) game_n = io::meta_from_json(io::read_json_file(verify_meta)).n;
      auto eps = parse_epsilon(verify_eps, game_n, m.n_goods());
      auto cert = verify(m, p, parse_mode(verify_mode), eps);
      emit(verify_common.out, io::to_json(cert));
      if (verify_common.json && !verify_common.out.empty())
        std::cout << io::dump(Json{{"verdict", cert.accepted ? "accept" : "reject"},
                                   {"reason", cert.reason}});
      return cert.accepted ? kOk : kNotFound;
    }

    if (*extract) {
      auto p = io::prices_from_json(io::read_json_file(extract_prices));
      auto meta = io::meta_from_json(io::read_json_file(extract_meta));
      try {
        auto profile = extract_strategies(p, meta);
        if (profile.clamped > 0)
          std::cerr << "warning: clamped " << profile.clamped
                    << " negative entries (prices outside [1,2])\n";
        emit(extract_common.out, io::profile_to_json(profile.x, profile.y));
        return kOk;
      } catch (const Error& e) {
        if (e.code() != Errc::DegenerateExtraction) throw;
        std::cerr << e.what() << "\n";
        return kNotFound;
      }
    }

    if (*nash) {
      auto game = io::game_from_json(io::read_json_file(nash_game));
      auto [x, y] = io::profile_from_json(io::read_json_file(nash_profile));
      auto eps = parse_epsilon(nash_eps, game.n, std::nullopt);
      auto violation = check_wsne(game, x, y, eps);
      auto report = violation_json(violation);
      report["epsilon"] = io::to_json(eps);
      emit(nash_common.out, report);
      return violation ? kNotFound : kOk;
    }

    if (*solve) {
      auto game = io::game_from_json(io::read_json_file(solve_game));
      Json list = Json::array();
      for (const auto& eq : solve_game_support_enum(game, solve_max_n)) {
        auto entry = io::profile_to_json(eq.x, eq.y);
        entry["row_value"] = io::to_json(eq.row_value);
        entry["column_value"] = io::to_json(eq.column_value);
        list.push_back(std::move(entry));
      }
      emit(solve_common.out, Json{{"equilibria", std::move(list)}});
      return kOk;
    }

    if (*search) {
      auto m = io::market_from_json(io::read_json_file(search_market));
      std::optional<std::size_t> game_n;
      if (!search_meta.empty()) game_n = io::meta_from_json(io::read_json_file(search_meta)).n;
      search_cfg.epsilon = parse_epsilon(search_eps, game_n, m.n_goods());
      search_cfg.box = parse_box(search_box, m.n_goods());
      auto report = search_equilibrium(m, search_cfg);
      Json trace = Json::array();
      for (const auto& [round, score] : report.trace) trace.push_back({round, io::to_json(score)});
      Json summary{{"accepted", report.accepted},
                   {"evaluated", report.evaluated},
                   {"trace", std::move(trace)}};
      if (report.best_price) {
        summary["best_price"] = io::to_json(report.best_price->values());
        summary["best_max_relative_imbalance"] = io::to_json(report.best_max_relative_imbalance);
      }
      if (report.best_price && !search_common.out.empty())
        io::write_json_file(search_common.out, io::to_json(*report.best_price));
      if (search_common.json || search_common.out.empty()) std::cout << io::dump(summary);
      return report.accepted ? kOk : kNotFound;
    }

    if (*validate) {
      bool all_valid = true;
      Json list = Json::array();
      for (const auto& check : validate_files(validate_paths)) {
        all_valid = all_valid && check.valid;
        Json entry{{"path", check.path}, {"kind", check.kind}, {"valid", check.valid},
                   {"details", check.details}};
        if (!check.message.empty()) entry["message"] = check.message;
        list.push_back(std::move(entry));
        if (!validate_common.json)
          std::cout << (check.valid ? "ok      " : "INVALID ") << check.kind << "  " << check.path
                    << (check.message.empty() ? "" : "  (" + check.message + ")") << "\n";
      }
      if (validate_common.json) std::cout << io::dump(list);
      if (!validate_common.out.empty()) io::write_json_file(validate_common.out, list);
      return all_valid ? kOk : kInputError;
    }

    if (*pipeline) {
      pipeline_cfg.search = !pipeline_no_search;
      auto result = run_pipeline(pipeline_cfg);
      if (pipeline_common.json) std::cout << io::dump(result.summary);
      return result.exit_code;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::InvariantViolation ? kInvariant : kInputError;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
