// Copyright 2026 The qdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON wire formats. Complex numbers are [re, im] pairs; matrices are
// row-major arrays of rows. Parsing is strict: unknown fields are rejected
// and every error names the offending field.

#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdd/decoupling.hpp"
#include "qdd/lindblad.hpp"
#include "qdd/shallow_pocket.hpp"

namespace qdd {

using Json = nlohmann::ordered_json;

/// A malformed model, scheme or experiment description. The message names
/// the JSON field responsible.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void reject_unknown_fields(const Json& j, const std::string& path,
                                  std::initializer_list<const char*> known) {
  if (!j.is_object()) throw config_error(path + ": expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* name : known)
      if (item.key() == name) {
        ok = true;
        break;
      }
    if (!ok) throw config_error(path + ": unknown field \"" + item.key() + "\"");
  }
}

inline const Json& require_field(const Json& j, const std::string& path,
                                 const char* name) {
  const auto it = j.find(name);
  if (it == j.end())
    throw config_error(path + ": missing required field \"" + name + "\"");
  return *it;
}

inline double parse_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw config_error(path + ": expected a number");
  return j.get<double>();
}

inline std::uint64_t parse_seed(const Json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw config_error(path + ": expected a nonnegative integer seed");
  if (j.is_number_integer() && j.get<std::int64_t>() < 0)
    throw config_error(path + ": expected a nonnegative integer seed");
  return j.get<std::uint64_t>();
}

}  // namespace detail

inline Complex parse_complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw config_error(path + ": expected a complex entry [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json complex_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

/// Parses a square complex matrix given as an array of rows of [re, im]
/// pairs.
inline Operator parse_operator(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw config_error(path + ": expected a nonempty array of matrix rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Operator m(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
      throw config_error(path + "[" + std::to_string(i) +
                         "]: expected a square matrix row of length " +
                         std::to_string(rows));
    for (Eigen::Index k = 0; k < rows; ++k)
      m(i, k) = parse_complex(row[static_cast<std::size_t>(k)],
                              path + "[" + std::to_string(i) + "][" +
                                  std::to_string(k) + "]");
  }
  return m;
}

inline Json operator_json(const Operator& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline LindbladModel parse_model(const Json& j, const std::string& path) {
  detail::reject_unknown_fields(j, path, {"H", "Ls"});
  LindbladModel model;
  model.H = parse_operator(detail::require_field(j, path, "H"), path + ".H");
  const Json& ls = detail::require_field(j, path, "Ls");
  if (!ls.is_array()) throw config_error(path + ".Ls: expected an array of matrices");
  for (std::size_t k = 0; k < ls.size(); ++k)
    model.Ls.push_back(parse_operator(ls[k], path + ".Ls[" + std::to_string(k) + "]"));
  try {
    model.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(path + ": " + e.what());
  }
  return model;
}

inline Json model_json(const LindbladModel& model) {
  Json j;
  j["H"] = operator_json(model.H);
  Json ls = Json::array();
  for (const Operator& l : model.Ls) ls.push_back(operator_json(l));
  j["Ls"] = std::move(ls);
  return j;
}

inline DDScheme parse_scheme(const Json& j, const std::string& path) {
  detail::reject_unknown_fields(j, path, {"V", "order", "tau"});
  DDScheme scheme;
  const Json& v = detail::require_field(j, path, "V");
  if (!v.is_array() || v.empty())
    throw config_error(path + ".V: expected a nonempty array of unitaries");
  for (std::size_t k = 0; k < v.size(); ++k)
    scheme.kicks.push_back(parse_operator(v[k], path + ".V[" + std::to_string(k) + "]"));

  const Json& order = detail::require_field(j, path, "order");
  if (order.is_string() && order.get<std::string>() == "cyclic") {
    scheme.order = KickOrder::Cyclic;
  } else if (order.is_object()) {
    detail::reject_unknown_fields(order, path + ".order", {"random"});
    scheme.order = KickOrder::Random;
    scheme.seed =
        detail::parse_seed(detail::require_field(order, path + ".order", "random"),
                           path + ".order.random");
  } else {
    throw config_error(path + ".order: expected \"cyclic\" or {\"random\": seed}");
  }

  scheme.tau = detail::parse_number(detail::require_field(j, path, "tau"),
                                    path + ".tau");
  try {
    scheme.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(path + ": " + e.what());
  }
  return scheme;
}

inline Json scheme_json(const DDScheme& scheme) {
  Json j;
  Json v = Json::array();
  for (const Operator& kick : scheme.kicks) v.push_back(operator_json(kick));
  j["V"] = std::move(v);
  if (scheme.order == KickOrder::Cyclic)
    j["order"] = "cyclic";
  else
    j["order"] = Json{{"random", scheme.seed}};
  j["tau"] = scheme.tau;
  return j;
}

inline SpectralModel parse_spectral_model(const Json& j, const std::string& path) {
  detail::reject_unknown_fields(j, path, {"levels", "rho"});
  SpectralModel sm;
  const Json& levels = detail::require_field(j, path, "levels");
  if (!levels.is_array() || levels.empty())
    throw config_error(path + ".levels: expected a nonempty array");
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const std::string lp = path + ".levels[" + std::to_string(n) + "]";
    detail::reject_unknown_fields(levels[n], lp, {"E", "P"});
    SpectralLevel lvl;
    lvl.energy = detail::parse_number(detail::require_field(levels[n], lp, "E"),
                                      lp + ".E");
    lvl.projector = parse_operator(detail::require_field(levels[n], lp, "P"),
                                   lp + ".P");
    sm.levels.push_back(std::move(lvl));
  }
  sm.rho = parse_operator(detail::require_field(j, path, "rho"), path + ".rho");
  try {
    sm.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(path + ": " + e.what());
  }
  return sm;
}

inline Json spectral_model_json(const SpectralModel& sm) {
  Json j;
  Json levels = Json::array();
  for (const SpectralLevel& lvl : sm.levels) {
    Json entry;
    entry["E"] = lvl.energy;
    entry["P"] = operator_json(lvl.projector);
    levels.push_back(std::move(entry));
  }
  j["levels"] = std::move(levels);
  j["rho"] = operator_json(sm.rho);
  return j;
}

}  // namespace qdd
