#ifndef LEVELMAT_JSON_IO_HPP
#define LEVELMAT_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "levelmat/latent.hpp"
#include "levelmat/level.hpp"
#include "levelmat/matrix.hpp"
#include "levelmat/parse.hpp"
#include "levelmat/resolution.hpp"

namespace levelmat {

using json = nlohmann::ordered_json;

/// Malformed JSON document or a document missing required fields.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses inline JSON, or reads the file named after a leading '@'.
inline json read_json_argument(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw InputError("cannot open " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<std::string> ring_variables(const json& j) {
  if (!j.is_object() || !j.contains("ring")) return {"x", "y", "z"};
  const json& r = j.at("ring");
  if (r.is_array()) return r.get<std::vector<std::string>>();
  if (r.contains("vars")) return r.at("vars").get<std::vector<std::string>>();
  return {"x", "y", "z"};
}

inline json latent_to_json(const LatentData& c) {
  return json{{"d", c.d}, {"m", c.m}, {"delta", c.delta}, {"epsilon", c.epsilon}};
}

inline LatentData latent_from_json(const json& j) {
  try {
    LatentData c;
    c.d = require(j, "d").get<int>();
    c.m = require(j, "m").get<int>();
    c.delta = require(j, "delta").get<std::vector<int>>();
    c.epsilon = require(j, "epsilon").get<std::vector<int>>();
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad latent data: ") + e.what());
  }
}

inline json latent_report_to_json(const LatentReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations) v.push_back({{"condition", to_string(x.condition)}, {"detail", x.detail}});
  return json{{"latent", latent_to_json(rep.candidate)}, {"valid", rep.valid()}, {"violations", v}};
}

template <class F>
json poly_list_to_json(const std::vector<Polynomial<F>>& v) {
  json out = json::array();
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

template <class F>
std::vector<Polynomial<F>> poly_list_from_json(const RingPtr<F>& ring, const json& j) {
  if (!j.is_array()) throw InputError("expected a list of polynomials");
  std::vector<Polynomial<F>> out;
  for (const auto& e : j) out.push_back(parse_poly(ring, e.get<std::string>()));
  return out;
}

/// {"rows": r, "cols": c, "entries": [[...], ...]}
template <class F>
json matrix_to_json(const PolyMatrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(poly_list_to_json(m.row(i)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

/// Accepts the object form above or a bare list of rows.
template <class F>
PolyMatrix<F> matrix_from_json(const RingPtr<F>& ring, const json& j) {
  const json& entries = j.is_object() ? require(j, "entries") : j;
  if (!entries.is_array() || entries.empty()) throw InputError("expected a nonempty list of matrix rows");
  std::vector<std::vector<Polynomial<F>>> rows;
  for (const auto& r : entries) {
    if (!r.is_array()) throw InputError("matrix rows must be lists");
    std::vector<Polynomial<F>> row;
    for (const auto& e : r) {
      if (e.is_number_integer())
        row.push_back(ring->constant(e.get<long long>()));
      else
        row.push_back(parse_poly(ring, e.get<std::string>()));
    }
    rows.push_back(std::move(row));
  }
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw InputError("matrix rows have different lengths");
  auto m = PolyMatrix<F>::from_rows(ring, rows);
  if (j.is_object() && ((j.contains("rows") && j.at("rows").get<std::size_t>() != m.rows()) ||
                        (j.contains("cols") && j.at("cols").get<std::size_t>() != m.cols())))
    throw InputError("matrix rows/cols do not match its entries");
  return m;
}

inline json shape_report_to_json(const ShapeReport& rep) {
  json f = json::array();
  for (const auto& x : rep.failures)
    f.push_back({{"block", std::string(1, x.block)},
                 {"row", x.row + 1},
                 {"col", x.col + 1},
                 {"expected", x.expected < 0 ? json("zero") : json(x.expected)},
                 {"found", x.found}});
  return json{{"ok", rep.ok()}, {"checked", rep.checked}, {"failures", f}};
}

inline json certification_to_json(const Certification& c) {
  return json{{"shape", c.shape},
              {"ht_eta", c.ht_eta ? json(*c.ht_eta) : json(nullptr)},
              {"ht_B", c.ht_B ? json(*c.ht_B) : json(nullptr)},
              {"field", c.field},
              {"level", c.level()}};
}

template <class F>
json level_to_json(const LevelMatrix<F>& eta) {
  return json{{"latent", latent_to_json(eta.latent)},
              {"A", matrix_to_json(eta.A)},
              {"B", matrix_to_json(eta.B)},
              {"certified", certification_to_json(eta.certification)}};
}

template <class F>
json graded_map_to_json(const GradedMap<F>& g) {
  json j = matrix_to_json(g.matrix);
  j["target_shifts"] = g.target_shifts;
  j["source_shifts"] = g.source_shifts;
  return j;
}

template <class F>
json complex_to_json(const GradedComplex<F>& cx) {
  json maps = json::array();
  for (const auto& m : cx.maps) maps.push_back(graded_map_to_json(m));
  return json{{"modules", cx.modules}, {"maps", maps}};
}

template <class F>
GradedComplex<F> complex_from_json(const RingPtr<F>& ring, const json& j) {
  GradedComplex<F> cx;
  try {
    cx.modules = require(j, "modules").get<std::vector<std::vector<int>>>();
    for (const auto& m : require(j, "maps")) {
      GradedMap<F> g{matrix_from_json(ring, m), {}, {}};
      if (m.contains("target_shifts")) g.target_shifts = m.at("target_shifts").get<std::vector<int>>();
      if (m.contains("source_shifts")) g.source_shifts = m.at("source_shifts").get<std::vector<int>>();
      cx.maps.push_back(std::move(g));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad complex: ") + e.what());
  }
  for (std::size_t k = 0; k < cx.maps.size() && k + 1 < cx.modules.size(); ++k) {
    if (cx.maps[k].target_shifts.empty()) cx.maps[k].target_shifts = cx.modules[k];
    if (cx.maps[k].source_shifts.empty()) cx.maps[k].source_shifts = cx.modules[k + 1];
  }
  return cx;
}

inline json hilbert_to_json(const HilbertNumerator& h) {
  return json{{"numerator", h.to_string()},
              {"coefficients", h.coeffs},
              {"N(1)", h.value},
              {"N'(1)", h.first},
              {"N''(1)", h.second},
              {"codimension", h.codimension},
              {"multiplicity", h.multiplicity}};
}

}  // namespace levelmat

#endif  // LEVELMAT_JSON_IO_HPP
