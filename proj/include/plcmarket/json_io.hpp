#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plcmarket/game.hpp"
#include "plcmarket/market.hpp"
#include "plcmarket/reduction.hpp"
#include "plcmarket/verifier.hpp"

namespace plcmarket::io {

using Json = nlohmann::json;

inline Json to_json(const Rational& q) { return to_string(q); }

/// Accepts "num/den" strings, "num" strings, and JSON integers.
inline Rational rational_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const Error& e) {
    throw Error(e.code(), where + ": " + e.what());
  }
  throw Error(Errc::Schema, where + ": expected a rational string \"num/den\"");
}

inline Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

inline RationalVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error(Errc::Schema, where + ": expected an array");
  RationalVector out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(rational_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

inline const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::Schema, where + ": missing \"" + key + "\"");
  return j.at(key);
}

// ---- PLC functions and markets

inline Json to_json(const PLCFunction& f) {
  if (f.is_zero()) return Json{{"kind", "zero"}};
  return Json{{"slopes", to_json(f.slopes())}, {"breaks", to_json(f.breakpoints())}};
}

inline PLCFunction plc_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw Error(Errc::Schema, where + ": expected an object");
  if (j.contains("kind")) {
    if (j.at("kind") == "zero") return PLCFunction::zero();
    if (j.at("kind") != "segments")
      throw Error(Errc::Schema, where + ": unknown kind");
  }
  auto slopes = vector_from_json(require(j, "slopes", where), where + ".slopes");
  RationalVector breaks;
  if (j.contains("breaks")) breaks = vector_from_json(j.at("breaks"), where + ".breaks");
  try {
    return validate_plc(std::move(slopes), std::move(breaks));
  } catch (const Error& e) {
    throw Error(e.code(), where + ": " + e.what());
  }
}

inline Json to_json(const Market& m) {
  Json traders = Json::array();
  for (const auto& t : m.traders()) {
    Json utilities = Json::array();
    for (const auto& r : t.utilities) utilities.push_back(to_json(r));
    Json trader{{"endowment", to_json(t.endowment)}, {"utilities", std::move(utilities)}};
    if (!t.label.empty()) trader["label"] = t.label;
    traders.push_back(std::move(trader));
  }
  return Json{{"n_goods", m.n_goods()}, {"traders", std::move(traders)}};
}

inline Market market_from_json(const Json& j) {
  const auto& goods = require(j, "n_goods", "market");
  if (!goods.is_number_unsigned() || goods.get<std::size_t>() == 0)
    throw Error(Errc::Schema, "market.n_goods: expected a positive integer");
  const auto& list = require(j, "traders", "market");
  if (!list.is_array()) throw Error(Errc::Schema, "market.traders: expected an array");
  std::vector<TraderSpec> traders;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string where = "market.traders[" + std::to_string(i) + "]";
    TraderSpec t;
    t.endowment = vector_from_json(require(list[i], "endowment", where), where + ".endowment");
    const auto& utilities = require(list[i], "utilities", where);
    if (!utilities.is_array()) throw Error(Errc::Schema, where + ".utilities: expected an array");
    for (std::size_t k = 0; k < utilities.size(); ++k)
      t.utilities.push_back(
          plc_from_json(utilities[k], where + ".utilities[" + std::to_string(k) + "]"));
    if (list[i].contains("label")) t.label = list[i].at("label").get<std::string>();
    traders.push_back(std::move(t));
  }
  return Market(goods.get<std::size_t>(), std::move(traders));
}

// ---- prices

inline Json to_json(const PriceVector& p) {
  return Json{{"prices", to_json(p.values())}, {"normalized", p.normalized()}};
}

inline PriceVector prices_from_json(const Json& j) {
  return PriceVector(vector_from_json(require(j, "prices", "prices"), "prices.prices"));
}

// ---- games and strategies

inline Json to_json(const RationalMatrix& M) {
  Json out = Json::array();
  for (const auto& row : M) out.push_back(to_json(row));
  return out;
}

inline Json to_json(const BimatrixGame& g) {
  return Json{{"n", g.n}, {"A", to_json(g.A)}, {"B", to_json(g.B)}};
}

inline RationalMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error(Errc::Schema, where + ": expected an array of rows");
  RationalMatrix M;
  for (std::size_t r = 0; r < j.size(); ++r)
    M.push_back(vector_from_json(j[r], where + "[" + std::to_string(r) + "]"));
  return M;
}

inline BimatrixGame game_from_json(const Json& j) {
  auto A = matrix_from_json(require(j, "A", "game"), "game.A");
  auto B = matrix_from_json(require(j, "B", "game"), "game.B");
  if (j.contains("n") && (!j.at("n").is_number_unsigned() || j.at("n").get<std::size_t>() != A.size()))
    throw Error(Errc::ShapeMismatch, "game.n does not match the size of A");
  return validate_game(std::move(A), std::move(B));
}

inline Json profile_to_json(const MixedStrategy& x, const MixedStrategy& y) {
  return Json{{"x", to_json(x.weights)}, {"y", to_json(y.weights)}};
}

inline std::pair<MixedStrategy, MixedStrategy> profile_from_json(const Json& j) {
  MixedStrategy x{vector_from_json(require(j, "x", "profile"), "profile.x")};
  MixedStrategy y{vector_from_json(require(j, "y", "profile"), "profile.y")};
  if (!x.valid() || !y.valid()) throw Error(Errc::Schema, "profile: x and y must be distributions");
  return {std::move(x), std::move(y)};
}

// ---- reduction metadata

inline Json to_json(const ReducedMarketMeta& meta) {
  Json traders = Json::array();
  for (const auto& t : meta.traders) {
    Json entry{{"family", std::string(1, family_letter(t.family))}, {"i", t.i}};
    if (t.family != TraderFamily::I) entry["j"] = t.j;
    traders.push_back(std::move(entry));
  }
  return Json{{"n", meta.n}, {"n_goods", meta.n_goods}, {"traders", std::move(traders)}};
}

inline ReducedMarketMeta meta_from_json(const Json& j) {
  ReducedMarketMeta meta;
  meta.n = require(j, "n", "meta").get<std::size_t>();
  meta.n_goods = require(j, "n_goods", "meta").get<std::size_t>();
  if (meta.n < 2 || meta.n_goods != 2 * meta.n + 2)
    throw Error(Errc::Schema, "meta: n_goods must equal 2n + 2 with n >= 2");
  for (const auto& t : require(j, "traders", "meta")) {
    ReducedTrader r{};
    auto family = t.at("family").get<std::string>();
    if (family == "S") r.family = TraderFamily::S;
    else if (family == "U") r.family = TraderFamily::U;
    else if (family == "V") r.family = TraderFamily::V;
    else if (family == "I") r.family = TraderFamily::I;
    else throw Error(Errc::Schema, "meta: unknown family '" + family + "'");
    r.i = t.at("i").get<std::size_t>();
    if (t.contains("j")) r.j = t.at("j").get<std::size_t>();
    meta.traders.push_back(r);
  }
  return meta;
}

// ---- certificates

inline Json to_json(const ClearingReport& report) {
  Json out = Json::array();
  for (const auto& g : report.goods)
    out.push_back(Json{{"good", g.good},
                       {"supply", to_json(g.supply)},
                       {"allocated", to_json(g.allocated)},
                       {"imbalance", to_json(g.imbalance)},
                       {"bound", to_json(g.bound)}});
  return out;
}

inline Json to_json(const Certificate& cert) {
  Json out{{"verdict", cert.accepted ? "accept" : "reject"},
           {"mode", mode_name(cert.mode)},
           {"epsilon", to_json(cert.epsilon)},
           {"report", to_json(cert.report)}};
  if (!cert.reason.empty()) out["reason"] = cert.reason;
  if (cert.allocation) {
    Json allocation = Json::array();
    for (const auto& x : *cert.allocation) allocation.push_back(to_json(x));
    out["allocation"] = std::move(allocation);
  }
  return out;
}

// ---- files

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Schema, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::Schema, path + ": " + e.what());
  }
}

/// Two-space indented, trailing newline. Key order is sorted, so output is
/// byte-stable for equal values.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Schema, "cannot write '" + path + "'");
  out << dump(j);
}

}  // namespace plcmarket::io
