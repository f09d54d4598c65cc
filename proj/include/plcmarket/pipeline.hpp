#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "plcmarket/economy_graph.hpp"
#include "plcmarket/json_io.hpp"
#include "plcmarket/reduction.hpp"
#include "plcmarket/search.hpp"
#include "plcmarket/support_enum.hpp"

namespace plcmarket {

/// Parses an epsilon given as a rational ("1/64"), as "N^-K" (N = number of
/// goods) or as "n^-K" (n = game size).
inline Rational parse_epsilon(const std::string& text, std::optional<std::size_t> game_n,
                              std::optional<std::size_t> goods) {
  if (text.size() > 3 && (text[0] == 'n' || text[0] == 'N') && text.substr(1, 2) == "^-") {
    auto base = text[0] == 'n' ? game_n : goods;
    if (!base)
      throw Error(Errc::Schema, "epsilon '" + text + "' needs " +
                                    (text[0] == 'n' ? "a game size" : "a goods count"));
    Rational exponent = parse_rational(text.substr(3));
    if (denominator_of(exponent) != 1 || exponent < 0 || exponent > 64)
      throw Error(Errc::Schema, "epsilon exponent must be an integer in [0, 64]");
    return pow(rat(1, static_cast<long>(*base)), numerator_of(exponent).convert_to<unsigned>());
  }
  Rational eps = parse_rational(text);
  if (eps < 0) throw Error(Errc::Schema, "epsilon must be non-negative");
  return eps;
}

struct PipelineConfig {
  std::string game_path;
  std::string out_dir = ".";
  bool search = true;
  std::size_t grid_k = 2;
  std::size_t refine_rounds = 2;
  std::size_t random_samples = 8;
  std::uint64_t seed = 0;
  std::string market_eps = "N^-13";
  std::string nash_eps = "n^-6";
};

struct PipelineResult {
  int exit_code = 0;
  io::Json summary;
};

inline io::Json class_report_json(const MarketClassReport& r) {
  io::Json out{{"is_2_linear", r.is_2_linear},
               {"alpha_requested", io::to_json(r.alpha_requested)},
               {"is_alpha_bounded", r.is_alpha_bounded},
               {"t_requested", r.t_requested},
               {"is_t_sparse", r.is_t_sparse},
               {"sparsity_t", r.sparsity_t},
               {"strongly_connected", r.strongly_connected}};
  out["alpha_bound"] = r.alpha_bound ? io::to_json(*r.alpha_bound) : io::Json(nullptr);
  return out;
}

inline io::Json violation_json(const std::optional<WsneViolation>& v) {
  if (!v) return io::Json{{"result", "pass"}};
  return io::Json{{"result", "fail"},
                  {"side", v->side == WsneViolation::Side::Row ? "row" : "column"},
                  {"i", v->i},
                  {"j", v->j}};
}

/// reduce -> (search) -> extract -> check_wsne, writing market.json,
/// meta.json, prices.json (when an equilibrium is accepted), strat.json and
/// summary.json into cfg.out_dir.
inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  namespace fs = std::filesystem;
  BimatrixGame game = io::game_from_json(io::read_json_file(cfg.game_path));
  auto [market, meta] = build_reduced_market(game);
  fs::create_directories(cfg.out_dir);
  auto path = [&](const char* name) { return (fs::path(cfg.out_dir) / name).string(); };

  PipelineResult result;
  io::Json& summary = result.summary;
  summary["game_n"] = game.n;
  summary["n_goods"] = market.n_goods();
  summary["n_traders"] = market.n_traders();

  auto cls = classify_market(market, 27, 23);
  summary["structure"] = class_report_json(cls);
  if (!cls.all()) throw Error(Errc::InvariantViolation, "reduced market misses its structural class");
  io::write_json_file(path("market.json"), io::to_json(market));
  io::write_json_file(path("meta.json"), io::to_json(meta));

  Rational market_eps = parse_epsilon(cfg.market_eps, game.n, market.n_goods());
  Rational nash_eps = parse_epsilon(cfg.nash_eps, game.n, market.n_goods());
  summary["market_epsilon"] = io::to_json(market_eps);
  summary["nash_epsilon"] = io::to_json(nash_eps);

  if (game.n <= 4) {
    io::Json equilibria = io::Json::array();
    for (const auto& eq : solve_game_support_enum(game)) {
      auto entry = io::profile_to_json(eq.x, eq.y);
      entry["check_wsne_eps0"] = violation_json(check_wsne(game, eq.x, eq.y, 0));
      equilibria.push_back(std::move(entry));
    }
    summary["support_enumeration"] = std::move(equilibria);
  }

  if (!cfg.search) {
    summary["search"] = "skipped";
    summary["nash_check"] = "skipped";
    io::write_json_file(path("summary.json"), summary);
    return result;
  }

  SearchConfig search = SearchConfig::uniform_box(market.n_goods(), 1, 2);
  search.grid_k = cfg.grid_k;
  search.refine_rounds = cfg.refine_rounds;
  search.random_samples = cfg.random_samples;
  search.seed = cfg.seed;
  search.epsilon = market_eps;
  auto found = search_equilibrium(market, search);

  io::Json trace = io::Json::array();
  for (const auto& [round, score] : found.trace) trace.push_back({round, io::to_json(score)});
  io::Json search_json{{"accepted", found.accepted},
                       {"evaluated", found.evaluated},
                       {"trace", std::move(trace)},
                       {"seed", cfg.seed},
                       {"grid_k", cfg.grid_k},
                       {"refine_rounds", cfg.refine_rounds}};
  if (found.best_price) {
    search_json["best_price"] = io::to_json(found.best_price->values());
    search_json["best_max_relative_imbalance"] = io::to_json(found.best_max_relative_imbalance);
  }
  if (found.certificate && !found.certificate->accepted)
    search_json["verifier_reason"] = found.certificate->reason;
  summary["search"] = std::move(search_json);

  // Past these thresholds a failed Nash check would contradict the reduction.
  const bool guaranteed = market_eps <= pow(rat(1, static_cast<long>(market.n_goods())), 13) &&
                          nash_eps >= pow(rat(1, static_cast<long>(game.n)), 6);
  const int broken = guaranteed ? 3 : 1;
  result.exit_code = 1;
  if (found.best_price) {
    if (found.accepted) io::write_json_file(path("prices.json"), io::to_json(*found.best_price));
    try {
      auto profile = extract_strategies(*found.best_price, meta);
      io::write_json_file(path("strat.json"), io::profile_to_json(profile.x, profile.y));
      summary["strategies_source"] = found.accepted ? "equilibrium" : "incumbent";
      summary["clamped_entries"] = profile.clamped;
      if (found.accepted) {
        auto violation = check_wsne(game, profile.x, profile.y, nash_eps);
        summary["nash_check"] = violation_json(violation);
        result.exit_code = violation ? broken : 0;
      } else {
        summary["nash_check"] = "skipped-by-precision";
      }
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateExtraction) throw;
      summary["strategies_source"] = "none";
      summary["extraction"] = e.what();
      summary["nash_check"] = found.accepted ? "degenerate" : "skipped-by-precision";
      if (found.accepted) result.exit_code = broken;
    }
  } else {
    summary["nash_check"] = "skipped-by-precision";
  }
  io::write_json_file(path("summary.json"), summary);
  return result;
}

struct FileCheck {
  std::string path;
  std::string kind;
  bool valid = false;
  std::string message;
  io::Json details;
};

/// Schema and semantic checks for any of the toolkit's file formats; the kind
/// is detected from the top-level keys.
inline FileCheck validate_file(const std::string& file) {
  FileCheck check{file, "unknown", false, {}, io::Json::object()};
  try {
    auto j = io::read_json_file(file);
    if (!j.is_object()) throw Error(Errc::Schema, "top level must be an object");
    if (j.contains("A")) {
      check.kind = "game";
      auto g = io::game_from_json(j);
      check.details["n"] = g.n;
    } else if (j.contains("prices")) {
      check.kind = "prices";
      auto p = io::prices_from_json(j);
      check.details["normalized"] = p.normalized();
    } else if (j.contains("x") && j.contains("y")) {
      check.kind = "profile";
      io::profile_from_json(j);
    } else if (j.contains("verdict")) {
      check.kind = "certificate";
      auto verdict = j.at("verdict");
      if (verdict != "accept" && verdict != "reject") throw Error(Errc::Schema, "bad verdict");
      parse_mode(j.at("mode").get<std::string>());
      io::rational_from_json(j.at("epsilon"), "epsilon");
    } else if (j.contains("n_goods") && j.contains("n")) {
      check.kind = "meta";
      auto meta = io::meta_from_json(j);
      check.details["n"] = meta.n;
    } else if (j.contains("n_goods")) {
      check.kind = "market";
      auto m = io::market_from_json(j);
      check.details = class_report_json(classify_market(m, 27, 23));
      check.details["n_goods"] = m.n_goods();
      check.details["n_traders"] = m.n_traders();
    } else {
      throw Error(Errc::Schema, "unrecognized file format");
    }
    check.valid = true;
  } catch (const Error& e) {
    check.message = e.what();
  } catch (const io::Json::exception& e) {
    check.message = e.what();
  }
  return check;
}

inline std::vector<FileCheck> validate_files(const std::vector<std::string>& paths) {
  std::vector<FileCheck> out;
  for (const auto& p : paths) out.push_back(validate_file(p));
  return out;
}

}  // namespace plcmarket
