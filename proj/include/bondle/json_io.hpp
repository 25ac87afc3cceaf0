#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bondle/algebra.hpp"
#include "bondle/cluster.hpp"
#include "bondle/diagram.hpp"
#include "bondle/statesum.hpp"
#include "bondle/weights.hpp"

namespace bondle {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline BondedDiagram load_bgc(const std::string& path) {
  try {
    return parse_bgc(read_file(path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

namespace detail {

using Rows = std::vector<std::vector<std::int64_t>>;

inline Rows rows_field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<Rows>();
  } catch (const json::exception&) {
    throw Error(std::string("field '") + key + "' must be a list of integer rows");
  }
}

inline std::int64_t int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw Error(std::string("field '") + key + "' must be an integer");
  return j.at(key).get<std::int64_t>();
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(what + ": " + e.what());
  }
}

}  // namespace detail

// {"n", "star", "starbar", "r1", "r2", "r3" (rows or null), "affine"?}
inline json to_json(const FiniteBondle& B) {
  json j{{"n", B.n}, {"star", B.star.rows()}, {"starbar", B.starbar.rows()}, {"r1", B.r1.rows()}, {"r2", B.r2.rows()}};
  j["r3"] = B.r3 ? json(B.r3->rows()) : json(nullptr);
  if (B.affine) {
    json a{{"a", B.affine->a}, {"b", B.affine->b}};
    a["m"] = B.affine->m ? json(*B.affine->m) : json(nullptr);
    j["affine"] = a;
  }
  return j;
}

inline FiniteBondle bondle_from_json(const json& j) {
  if (!j.is_object()) throw Error("bondle document must be a JSON object");
  const auto n = detail::int_field(j, "n");
  if (n <= 0) throw Error("field 'n' must be positive");
  std::optional<detail::Rows> r3;
  if (j.contains("r3") && !j.at("r3").is_null()) r3 = detail::rows_field(j, "r3");
  auto B = new_table_bondle(static_cast<std::size_t>(n), detail::rows_field(j, "star"), detail::rows_field(j, "starbar"),
                            detail::rows_field(j, "r1"), detail::rows_field(j, "r2"), r3);
  if (j.contains("affine") && j.at("affine").is_object()) {
    const auto& a = j.at("affine");
    AffineParams p{detail::int_field(a, "a"), detail::int_field(a, "b"), std::nullopt};
    if (a.contains("m") && !a.at("m").is_null()) p.m = detail::int_field(a, "m");
    B.affine = p;
  }
  return B;
}

inline FiniteBondle load_bondle(const std::string& path) {
  try {
    return bondle_from_json(detail::parse_json(read_file(path), path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

// {"m", "phi", "phi1", "phi2", "constant"?}
inline json to_json(const BoltzmannWeights& W) {
  json j{{"m", W.m}, {"phi", W.phi.rows()}, {"phi1", W.phi1.rows()}, {"phi2", W.phi2.rows()}};
  if (W.constant) j["constant"] = {{"a", W.constant->first}, {"b", W.constant->second}};
  return j;
}

inline BoltzmannWeights weights_from_json(const json& j) {
  if (!j.is_object()) throw Error("weights document must be a JSON object");
  const auto m = detail::int_field(j, "m");
  if (m <= 0) throw Error("field 'm' must be positive");
  const auto phi = detail::rows_field(j, "phi");
  const auto n = phi.size();
  auto W = make_weights(m, table_from_rows(phi, n, m, "phi"), table_from_rows(detail::rows_field(j, "phi1"), n, m, "phi1"),
                        table_from_rows(detail::rows_field(j, "phi2"), n, m, "phi2"));
  if (j.contains("constant") && j.at("constant").is_object())
    W.constant = std::make_pair(detail::int_field(j.at("constant"), "a"), detail::int_field(j.at("constant"), "b"));
  return W;
}

inline BoltzmannWeights load_weights(const std::string& path) {
  try {
    return weights_from_json(detail::parse_json(read_file(path), path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

// Counts are emitted as JSON integers when they fit in 64 bits, else as
// decimal strings.
inline json count_json(const Count& c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) return json(static_cast<std::uint64_t>(c));
  return json(c.str());
}

inline Count count_from_json(const json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) return Count(j.get<std::uint64_t>());
  if (j.is_string()) return Count(j.get<std::string>());
  throw Error("count must be an integer or a decimal string");
}

// {"m", "coeffs", "rendered", "colorings"}
inline json to_json(const StateSum& S) {
  json coeffs = json::array();
  for (const auto& a : S.coeffs) coeffs.push_back(count_json(a));
  return {{"m", S.m}, {"coeffs", coeffs}, {"rendered", render(S)}, {"colorings", count_json(S.total())}};
}

inline StateSum state_sum_from_json(const json& j) {
  StateSum S;
  S.m = detail::int_field(j, "m");
  for (const auto& a : j.at("coeffs")) S.coeffs.push_back(count_from_json(a));
  if (static_cast<std::int64_t>(S.coeffs.size()) != S.m) throw Error("coeffs must have exactly m entries");
  return S;
}

inline json to_json(const AxiomReport& R) {
  json v = json::array();
  for (const auto& x : R.violations) v.push_back({{"axiom", x.axiom}, {"witness", x.witness}});
  return {{"passed", R.passed}, {"violations", v}};
}

// {"stage1": [{"colorings", "members"}], "stage2": [{"colorings", "state_sum",
// "members"}], "distinguished_pairs": [[a, b]]}
inline json to_json(const ClusterReport& R) {
  json s1 = json::array(), s2 = json::array(), pairs = json::array();
  for (const auto& [count, names] : R.stage1) s1.push_back({{"colorings", count_json(count)}, {"members", names}});
  for (const auto& [k, names] : R.stage2)
    s2.push_back({{"colorings", count_json(k.first)}, {"state_sum", to_json(k.second)}, {"members", names}});
  for (const auto& [a, b] : R.distinguished_pairs) pairs.push_back({a, b});
  return {{"stage1", s1}, {"stage2", s2}, {"distinguished_pairs", pairs}};
}

inline ClusterReport cluster_report_from_json(const json& j) {
  ClusterReport R;
  for (const auto& c : j.at("stage1")) R.stage1[count_from_json(c.at("colorings"))] = c.at("members").get<std::vector<std::string>>();
  for (const auto& c : j.at("stage2"))
    R.stage2[{count_from_json(c.at("colorings")), state_sum_from_json(c.at("state_sum"))}] =
        c.at("members").get<std::vector<std::string>>();
  for (const auto& p : j.at("distinguished_pairs")) R.distinguished_pairs.emplace_back(p.at(0), p.at(1));
  return R;
}

}  // namespace bondle
