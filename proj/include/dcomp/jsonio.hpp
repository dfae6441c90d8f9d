#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcomp/common.hpp"
#include "dcomp/function.hpp"
#include "dcomp/region.hpp"
#include "dcomp/sensitivity.hpp"
#include "dcomp/smoothness.hpp"
#include "dcomp/source.hpp"

namespace dcomp {

using nlohmann::json;

namespace detail {

inline std::string label_of(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os << v.get<double>();
    return os.str();
  }
  throw std::invalid_argument("function table: labels must be strings or numbers");
}

inline double prob_of(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return std::stod(v.get<std::string>());
  throw std::invalid_argument("probabilities must be numbers or decimal strings");
}

inline std::vector<double> prob_vector(const json& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) out.push_back(prob_of(e));
  return out;
}

inline std::vector<double> prob_matrix(const json& v) {
  std::vector<double> out;
  for (const json& row : v)
    for (const json& e : row) out.push_back(prob_of(e));
  return out;
}

}  // namespace detail

// {"x_size":…, "y_size":…, "table": [[z,…],…]} row-major in x. A top-level
// "n" marks an explicit block-function table over word indices instead.
inline SingleLetterFunction single_letter_from_json(const json& j) {
  int xs = j.at("x_size").get<int>();
  int ys = j.at("y_size").get<int>();
  const json& t = j.at("table");
  require(t.is_array() && t.size() == static_cast<std::size_t>(xs),
          "function table: needs x_size rows");
  std::vector<std::string> raw;
  raw.reserve(static_cast<std::size_t>(xs) * ys);
  for (const json& row : t) {
    require(row.is_array() && row.size() == static_cast<std::size_t>(ys),
            "function table: each row needs y_size entries");
    for (const json& v : row) raw.push_back(detail::label_of(v));
  }
  return SingleLetterFunction(xs, ys, raw);
}

inline VectorFunction vector_function_from_json(const json& j) {
  if (!j.contains("n")) {
    throw std::invalid_argument("explicit vector function needs an \"n\" field");
  }
  int n = j.at("n").get<int>();
  int xs = j.at("x_size").get<int>();
  int ys = j.at("y_size").get<int>();
  const json& t = j.at("table");
  std::vector<std::string> raw;
  for (const json& row : t)
    for (const json& v : row) raw.push_back(detail::label_of(v));
  return VectorFunction::explicit_table(n, xs, ys, raw);
}

inline SourceModel source_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  int xs = j.at("x_size").get<int>();
  int ys = j.at("y_size").get<int>();
  if (kind == "iid") return SourceModel::iid(xs, ys, detail::prob_matrix(j.at("p")));
  if (kind == "markov")
    return SourceModel::markov(xs, ys, detail::prob_matrix(j.at("transition")),
                               detail::prob_vector(j.at("initial")));
  if (kind == "mixture") {
    std::vector<SourceModel> comps;
    for (const json& c : j.at("components")) comps.push_back(source_from_json(c));
    return SourceModel::mixture(std::move(comps), detail::prob_vector(j.at("weights")));
  }
  if (kind == "two_symbolwise_iid")
    return SourceModel::two_symbolwise(xs, ys, detail::prob_matrix(j.at("p2")));
  if (kind == "theorem9")
    return SourceModel::theorem9(xs, ys, detail::prob_of(j.at("rho")),
                                 detail::prob_of(j.at("epsilon")));
  throw std::invalid_argument("unknown source kind: " + kind);
}

inline json to_json(const RateRegion& r) {
  return json{{"r1_min", r.r1_min}, {"r2_min", r.r2_min}, {"sum_min", r.sum_min}};
}

inline json word_to_json(const Word& w) { return json(w); }

inline json witness_to_json(const SensitivityWitness& w) {
  json j{{"property", w.property}, {"position", w.position}};
  j["x"] = w.x;
  j["x_hat"] = w.x_hat;
  j["y"] = w.y;
  j["y_hat"] = w.y_hat;
  return j;
}

inline json report_to_json(const SensitivityReport& r) {
  json j{{"sensitive_given_Y", r.sensitive_given_y},
         {"sensitive_given_X", r.sensitive_given_x},
         {"jointly_sensitive", r.jointly_sensitive},
         {"totally_sensitive", r.totally_sensitive},
         {"highly_sensitive_given_Y", r.highly_sensitive_given_y},
         {"highly_sensitive_given_X", r.highly_sensitive_given_x}};
  json ws = json::array();
  for (const SensitivityWitness& w : r.witnesses) ws.push_back(witness_to_json(w));
  j["witnesses"] = ws;
  return j;
}

inline json verdict_to_json(const SmoothnessVerdict& v) {
  json j{{"smooth_wrt_X", v.smooth_wrt_x},
         {"smooth_wrt_Y", v.smooth_wrt_y},
         {"q", v.q},
         {"q_given_Y", v.q_given_y},
         {"q_given_X", v.q_given_x},
         {"weakly_smooth_wrt_Y", v.weakly_smooth_wrt_y},
         {"weak_q", v.weak_q},
         {"block_length_checked", v.block_length}};
  if (v.model_q) j["model_q"] = *v.model_q;
  if (v.violation) {
    j["violation"] = json{{"side", v.violation->y_side ? "Y" : "X"},
                          {"x", v.violation->x},
                          {"y", v.violation->y},
                          {"flipped", v.violation->flipped},
                          {"position", v.violation->position}};
  }
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// Minimal deterministic CSV writer: header row, then one line per record.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  void row(const std::vector<std::string>& cells) {
    require(cells.size() == header_.size(), "csv row width mismatch");
    rows_.push_back(cells);
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
    os << "\n";
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << "\n";
    }
    return os.str();
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Structural validation against the shipped schema subset: type, required,
// properties, items, enum.
inline bool validate_schema(const json& value, const json& schema, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (schema.contains("type")) {
    std::string t = schema["type"].get<std::string>();
    if (t == "object" && !value.is_object()) return fail("expected object");
    if (t == "array" && !value.is_array()) return fail("expected array");
    if (t == "string" && !value.is_string()) return fail("expected string");
    if (t == "number" && !value.is_number()) return fail("expected number");
    if (t == "integer" && !value.is_number_integer()) return fail("expected integer");
    if (t == "boolean" && !value.is_boolean()) return fail("expected boolean");
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const json& e : schema["enum"]) ok = ok || e == value;
    if (!ok) return fail("value not in enum");
  }
  if (schema.contains("required"))
    for (const json& k : schema["required"])
      if (!value.contains(k.get<std::string>()))
        return fail("missing required key " + k.get<std::string>());
  if (schema.contains("properties") && value.is_object())
    for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
      if (value.contains(it.key()) && !validate_schema(value.at(it.key()), it.value(), why))
        return false;
  if (schema.contains("items") && value.is_array())
    for (const json& e : value)
      if (!validate_schema(e, schema["items"], why)) return false;
  return true;
}

}  // namespace dcomp
