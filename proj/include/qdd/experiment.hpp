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

// Configuration-driven experiment runner. One self-describing JSON config
// per experiment; identical configs produce byte-identical outputs. CSV
// numbers are shortest round-trip decimals, locale-independent.

#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdd/collision.hpp"
#include "qdd/decoupling.hpp"
#include "qdd/lindblad.hpp"
#include "qdd/operators.hpp"
#include "qdd/serialization.hpp"
#include "qdd/shallow_pocket.hpp"

namespace qdd {

/// A numerical invariant failed at runtime (e.g. a computed map is not
/// completely positive at the requested tolerance). Distinct from
/// config_error so the CLI can map the two to different exit codes.
class invariant_violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  Generator,
  Evolve,
  DdAverage,
  CollisionStudy,
  Pocket,
  Kernels,
  Contrast
};

enum class OutputFormat { Csv, JsonFormat };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Generator;
  std::optional<LindbladModel> model;
  std::optional<SpectralModel> spectral_model;
  std::optional<DDScheme> scheme;
  std::vector<double> times;
  std::vector<double> taus;
  std::vector<double> hs;
  std::vector<std::uint64_t> seeds;
  double total_time = 0.0;
  long steps = 0;
  int steps_per_kick = 1;
  Operator rho;
  Operator obs_y;
  Operator obs_x;
  double cp_tol = kDefaultTol;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
};

namespace detail {

inline std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Generator: return "generator";
    case ExperimentKind::Evolve: return "evolve";
    case ExperimentKind::DdAverage: return "dd-average";
    case ExperimentKind::CollisionStudy: return "collision-study";
    case ExperimentKind::Pocket: return "pocket";
    case ExperimentKind::Kernels: return "kernels";
    case ExperimentKind::Contrast: return "contrast";
  }
  return "?";
}

inline ExperimentKind parse_kind(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "generator") return ExperimentKind::Generator;
    if (s == "evolve") return ExperimentKind::Evolve;
    if (s == "dd-average") return ExperimentKind::DdAverage;
    if (s == "collision-study") return ExperimentKind::CollisionStudy;
    if (s == "pocket") return ExperimentKind::Pocket;
    if (s == "kernels") return ExperimentKind::Kernels;
    if (s == "contrast") return ExperimentKind::Contrast;
  }
  throw config_error(
      "kind: expected one of generator, evolve, dd-average, collision-study, "
      "pocket, kernels, contrast");
}

inline Json load_json_file(const std::filesystem::path& file, const std::string& field) {
  std::ifstream in(file);
  if (!in) throw config_error(field + ": cannot read file \"" + file.string() + "\"");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw config_error(field + ": invalid JSON in \"" + file.string() + "\": " +
                       e.what());
  }
}

inline Json resolve_ref(const Json& j, const std::filesystem::path& base_dir,
                        const std::string& field) {
  if (j.is_string()) {
    const std::filesystem::path ref = j.get<std::string>();
    return load_json_file(ref.is_absolute() ? ref : base_dir / ref, field);
  }
  return j;
}

inline std::vector<double> parse_number_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw config_error(path + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

inline std::string config_schema_text() {
  return R"(Experiment configuration (JSON object)

Common fields
  kind     one of: generator | evolve | dd-average | collision-study |
           pocket | kernels | contrast                     (required)
  output   {"path": <file>, "format": "csv"|"json"}        (required)

Model references ("model", "spectral_model") are either inline objects or a
string path to a JSON file, resolved relative to the config file.

  model           {"H": <matrix>, "Ls": [<matrix>, ...]}
  spectral_model  {"levels": [{"E": <num>, "P": <matrix>}, ...],
                   "rho": <matrix>}
  scheme          {"V": [<matrix>, ...],
                   "order": "cyclic" | {"random": <seed>}, "tau": <num>}

Matrices are arrays of rows; every entry is a complex pair [re, im].

Per kind
  generator        model, scheme; optional tolerances.
                   Emits the generator, the kick-averaged generator and
                   their max-norm difference (json or csv summary).
  dd-average       model, scheme. Emits the averaged model (H = 0,
                   collapse ops v^dag L v / sqrt(#V)) as reusable JSON.
  evolve           model, rho, times. CSV of the state trajectory.
  collision-study  model, scheme, T, taus (descending); optional seeds
                   (random ordering only), steps_per_kick, tolerances.
                   CSV: tau, ordering, error_vs_lbar, error_vs_identity,
                   empirical_order; final row is the Richardson limit.
  pocket           spectral_model, scheme, steps. CSV of map distances to
                   the identity, with and without kicks.
  kernels          spectral_model, Y, X, times, hs. CSV grid of the exact
                   and Markov two-time kernels and their difference.
  contrast         model, spectral_model, scheme, T, taus, steps; optional
                   tolerances. Runs the collision study and the kicked
                   pocket evolution on the same semigroup and emits one
                   verdict row per dilation.

  tolerances       {"cp": <num >= 0>} - complete-positivity tolerance for
                   runtime map checks (default 1e-10). A violation exits
                   with status 2.

Exit codes: 0 success, 1 malformed config, 2 numerical-invariant violation.
)";
}

inline ExperimentConfig parse_experiment_config(const Json& j,
                                                const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw config_error("config: expected a JSON object");
  ExperimentConfig cfg;
  cfg.kind = detail::parse_kind(detail::require_field(j, "config", "kind"));
  const std::string kind = detail::kind_name(cfg.kind);

  auto allowed = [&](std::initializer_list<const char*> fields) {
    detail::reject_unknown_fields(
        j, "config",
        {"kind", "model", "spectral_model", "scheme", "T", "times", "taus", "hs",
         "seeds", "steps", "steps_per_kick", "rho", "Y", "X", "tolerances",
         "output"});
    for (const auto& item : j.items()) {
      if (item.key() == "kind" || item.key() == "output") continue;
      bool used = false;
      for (const char* name : fields)
        if (item.key() == name) {
          used = true;
          break;
        }
      if (!used)
        throw config_error("config." + item.key() + ": field not used by kind \"" +
                           kind + "\"");
    }
  };

  switch (cfg.kind) {
    case ExperimentKind::Generator:
      allowed({"model", "scheme", "tolerances"});
      break;
    case ExperimentKind::DdAverage:
      allowed({"model", "scheme"});
      break;
    case ExperimentKind::Evolve:
      allowed({"model", "rho", "times", "tolerances"});
      break;
    case ExperimentKind::CollisionStudy:
      allowed({"model", "scheme", "T", "taus", "seeds", "steps_per_kick",
               "tolerances"});
      break;
    case ExperimentKind::Pocket:
      allowed({"spectral_model", "scheme", "steps"});
      break;
    case ExperimentKind::Kernels:
      allowed({"spectral_model", "Y", "X", "times", "hs"});
      break;
    case ExperimentKind::Contrast:
      allowed({"model", "spectral_model", "scheme", "T", "taus", "steps",
               "tolerances"});
      break;
  }

  auto need = [&](const char* name) -> const Json& {
    return detail::require_field(j, "config", name);
  };

  const bool needs_model = cfg.kind == ExperimentKind::Generator ||
                           cfg.kind == ExperimentKind::DdAverage ||
                           cfg.kind == ExperimentKind::Evolve ||
                           cfg.kind == ExperimentKind::CollisionStudy ||
                           cfg.kind == ExperimentKind::Contrast;
  if (needs_model)
    cfg.model = parse_model(detail::resolve_ref(need("model"), base_dir, "model"),
                            "model");

  const bool needs_spectral = cfg.kind == ExperimentKind::Pocket ||
                              cfg.kind == ExperimentKind::Kernels ||
                              cfg.kind == ExperimentKind::Contrast;
  if (needs_spectral)
    cfg.spectral_model = parse_spectral_model(
        detail::resolve_ref(need("spectral_model"), base_dir, "spectral_model"),
        "spectral_model");

  const bool needs_scheme = cfg.kind != ExperimentKind::Evolve &&
                            cfg.kind != ExperimentKind::Kernels;
  if (needs_scheme) {
    cfg.scheme = parse_scheme(need("scheme"), "scheme");
    if (cfg.model &&
        cfg.scheme->kicks.front().rows() != cfg.model->dim())
      throw config_error("scheme.V: kick dimension does not match model");
    if (cfg.spectral_model &&
        cfg.scheme->kicks.front().rows() != cfg.spectral_model->dim())
      throw config_error("scheme.V: kick dimension does not match spectral_model");
  }

  if (cfg.kind == ExperimentKind::Evolve) {
    cfg.rho = parse_operator(need("rho"), "rho");
    if (cfg.rho.rows() != cfg.model->dim())
      throw config_error("rho: dimension does not match model");
    if (!is_density_matrix(cfg.rho))
      throw config_error("rho: not a density matrix within tolerance");
    cfg.times = detail::parse_number_list(need("times"), "times");
    if (cfg.times.empty()) throw config_error("times: must be nonempty");
    for (const double t : cfg.times)
      if (t < 0) throw config_error("times: entries must be nonnegative");
  }

  if (cfg.kind == ExperimentKind::CollisionStudy ||
      cfg.kind == ExperimentKind::Contrast) {
    cfg.total_time = detail::parse_number(need("T"), "T");
    if (!(cfg.total_time > 0)) throw config_error("T: must be positive");
    cfg.taus = detail::parse_number_list(need("taus"), "taus");
    if (cfg.taus.empty()) throw config_error("taus: must be nonempty");
    for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
      if (!(cfg.taus[i] > 0)) throw config_error("taus: entries must be positive");
      if (i > 0 && cfg.taus[i] >= cfg.taus[i - 1])
        throw config_error("taus: entries must be strictly descending");
    }
  }

  if (cfg.kind == ExperimentKind::CollisionStudy) {
    if (const auto it = j.find("seeds"); it != j.end()) {
      if (cfg.scheme->order != KickOrder::Random)
        throw config_error("seeds: only valid with random kick ordering");
      if (!it->is_array() || it->empty())
        throw config_error("seeds: expected a nonempty array of integers");
      for (std::size_t i = 0; i < it->size(); ++i)
        cfg.seeds.push_back(detail::parse_seed(
            (*it)[i], "seeds[" + std::to_string(i) + "]"));
    }
    if (const auto it = j.find("steps_per_kick"); it != j.end()) {
      if (!it->is_number_integer() || it->get<std::int64_t>() < 1)
        throw config_error("steps_per_kick: expected an integer >= 1");
      cfg.steps_per_kick = static_cast<int>(it->get<std::int64_t>());
    }
  }

  if (cfg.kind == ExperimentKind::Pocket || cfg.kind == ExperimentKind::Contrast) {
    const Json& s = need("steps");
    if (!s.is_number_integer() || s.get<std::int64_t>() < 0)
      throw config_error("steps: expected an integer >= 0");
    cfg.steps = static_cast<long>(s.get<std::int64_t>());
  }

  if (cfg.kind == ExperimentKind::Kernels) {
    cfg.obs_y = parse_operator(need("Y"), "Y");
    cfg.obs_x = parse_operator(need("X"), "X");
    if (cfg.obs_y.rows() != cfg.spectral_model->dim())
      throw config_error("Y: dimension does not match spectral_model");
    if (cfg.obs_x.rows() != cfg.spectral_model->dim())
      throw config_error("X: dimension does not match spectral_model");
    cfg.times = detail::parse_number_list(need("times"), "times");
    cfg.hs = detail::parse_number_list(need("hs"), "hs");
    if (cfg.times.empty()) throw config_error("times: must be nonempty");
    if (cfg.hs.empty()) throw config_error("hs: must be nonempty");
    for (const double t : cfg.times)
      if (t < 0) throw config_error("times: entries must be nonnegative");
    for (const double h : cfg.hs)
      if (h < 0) throw config_error("hs: entries must be nonnegative");
  }

  if (const auto it = j.find("tolerances"); it != j.end()) {
    detail::reject_unknown_fields(*it, "tolerances", {"cp"});
    cfg.cp_tol = detail::parse_number(
        detail::require_field(*it, "tolerances", "cp"), "tolerances.cp");
    if (cfg.cp_tol < 0) throw config_error("tolerances.cp: must be nonnegative");
  }

  const Json& output = detail::require_field(j, "config", "output");
  detail::reject_unknown_fields(output, "output", {"path", "format"});
  const Json& path = detail::require_field(output, "output", "path");
  if (!path.is_string() || path.get<std::string>().empty())
    throw config_error("output.path: expected a nonempty string");
  cfg.output_path = path.get<std::string>();
  const Json& format = detail::require_field(output, "output", "format");
  if (format.is_string() && format.get<std::string>() == "csv")
    cfg.format = OutputFormat::Csv;
  else if (format.is_string() && format.get<std::string>() == "json")
    cfg.format = OutputFormat::JsonFormat;
  else
    throw config_error("output.format: expected \"csv\" or \"json\"");

  return cfg;
}

inline ExperimentConfig load_experiment_config(const std::filesystem::path& file) {
  return parse_experiment_config(detail::load_json_file(file, "config"),
                                 file.has_parent_path()
                                     ? file.parent_path()
                                     : std::filesystem::path("."));
}

namespace detail {

inline void require_format(const ExperimentConfig& cfg, OutputFormat wanted) {
  if (cfg.format != wanted)
    throw config_error("output.format: kind \"" + kind_name(cfg.kind) +
                       "\" emits " +
                       (wanted == OutputFormat::Csv ? std::string("csv")
                                                    : std::string("json")) +
                       " only");
}

// Runtime checks behind exit code 2: complete positivity of a computed
// Schrodinger map at the configured tolerance, and unit-trace transport.
inline void check_cptp(const SuperOperator& map, double cp_tol,
                       const std::string& what) {
  const CpResult cp = cp_check(map, cp_tol);
  if (!cp.completely_positive)
    throw invariant_violation(what + ": map is not completely positive (min Choi "
                              "eigenvalue " +
                              format_number(cp.min_eigenvalue) + ", tolerance " +
                              format_number(cp_tol) + ")");
  const Operator id = identity(map.dim);
  if (max_abs_diff(dual(map).apply(id), id) > 1e-11)
    throw invariant_violation(what + ": map is not trace preserving");
}

struct Csv {
  std::string text;

  explicit Csv(const std::string& header) { text = header + "\n"; }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text += ',';
      text += cells[i];
    }
    text += '\n';
  }
};

struct RunOutput {
  std::string bytes;
  std::vector<std::string> notes;
};

inline RunOutput run_generator(const ExperimentConfig& cfg) {
  const SuperOperator gen = generator_superop(*cfg.model, Picture::Heisenberg);
  const AveragedModel averaged = averaged_generator(*cfg.model, cfg.scheme->kicks);
  const SuperOperator gen_avg =
      generator_superop(averaged.model, Picture::Heisenberg);
  const double diff = max_abs(gen.mat - gen_avg.mat);

  check_cptp(semigroup_map(dual(gen), 1.0), cfg.cp_tol, "exp(generator)");

  if (cfg.format == OutputFormat::JsonFormat) {
    Json out;
    out["kind"] = "generator";
    out["generator"] = operator_json(gen.mat);
    out["averaged_generator"] = operator_json(gen_avg.mat);
    out["difference_max_norm"] = diff;
    out["h_phase"] = complex_json(averaged.h_phase);
    return {out.dump(2) + "\n", {}};
  }
  Csv csv("difference_max_norm,generator_max_norm,averaged_max_norm");
  csv.row({format_number(diff), format_number(max_abs(gen.mat)),
           format_number(max_abs(gen_avg.mat))});
  return {csv.text, {}};
}

inline RunOutput run_dd_average(const ExperimentConfig& cfg) {
  require_format(cfg, OutputFormat::JsonFormat);
  const AveragedModel averaged = averaged_generator(*cfg.model, cfg.scheme->kicks);
  Json out;
  out["kind"] = "dd-average";
  out["model"] = model_json(averaged.model);
  out["h_phase"] = complex_json(averaged.h_phase);
  out["generator"] =
      operator_json(generator_superop(averaged.model, Picture::Heisenberg).mat);
  return {out.dump(2) + "\n", {}};
}

inline RunOutput run_evolve(const ExperimentConfig& cfg) {
  require_format(cfg, OutputFormat::Csv);
  const SuperOperator gen = generator_superop(*cfg.model, Picture::Schrodinger);
  const Eigen::Index d = cfg.model->dim();

  std::string header = "t";
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k) {
      header += ",rho_" + std::to_string(i) + std::to_string(k) + "_re";
      header += ",rho_" + std::to_string(i) + std::to_string(k) + "_im";
    }
  Csv csv(header);
  for (const double t : cfg.times) {
    const SuperOperator map = semigroup_map(gen, t);
    check_cptp(map, cfg.cp_tol, "evolve at t=" + format_number(t));
    const Operator state = map.apply(cfg.rho);
    std::vector<std::string> cells{format_number(t)};
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index k = 0; k < d; ++k) {
        cells.push_back(format_number(state(i, k).real()));
        cells.push_back(format_number(state(i, k).imag()));
      }
    csv.row(cells);
  }
  return {csv.text, {}};
}

inline void study_rows(Csv& csv, const std::vector<StudyRow>& rows) {
  for (const StudyRow& r : rows)
    csv.row({format_number(r.tau), r.ordering, format_number(r.error_vs_lbar),
             format_number(r.error_vs_identity), format_number(r.empirical_order)});
}

inline RunOutput run_collision_study(const ExperimentConfig& cfg) {
  require_format(cfg, OutputFormat::Csv);
  for (const double tau : cfg.taus) {
    DDScheme probe = *cfg.scheme;
    probe.tau = tau;
    const CollisionConfig config =
        make_collision_config(*cfg.model, probe, cfg.total_time, cfg.steps_per_kick);
    check_cptp(step_map_vacuum(cfg.model.value(), config.tau()), cfg.cp_tol,
               "collision step at tau=" + format_number(config.tau()));
  }

  Csv csv("tau,ordering,error_vs_lbar,error_vs_identity,empirical_order");
  if (cfg.seeds.empty()) {
    study_rows(csv, convergence_study(*cfg.model, *cfg.scheme, cfg.total_time,
                                      cfg.taus));
  } else {
    for (const std::uint64_t seed : cfg.seeds) {
      DDScheme s = *cfg.scheme;
      s.seed = seed;
      study_rows(csv, convergence_study(*cfg.model, s, cfg.total_time, cfg.taus));
    }
  }
  return {csv.text, {}};
}

inline RunOutput run_pocket(const ExperimentConfig& cfg) {
  require_format(cfg, OutputFormat::Csv);
  const SpectralModel& sm = *cfg.spectral_model;
  const Eigen::Index d = sm.dim();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d * d, d * d);

  Csv csv("step,t,error_free_vs_identity,error_dd_vs_identity");
  for (long k = 0; k <= cfg.steps; ++k) {
    const double t = double(k) * cfg.scheme->tau;
    const SuperOperator free_map = cauchy_semigroup(sm, t);
    if (max_abs_diff(free_map.apply(identity(d)), identity(d)) > 1e-11)
      throw invariant_violation("pocket: free map is not unital at t=" +
                                format_number(t));
    const SuperOperator dd =
        dd_pocket_evolution(sm, *cfg.scheme, static_cast<std::size_t>(k));
    csv.row({std::to_string(k), format_number(t),
             format_number(max_abs(free_map.mat - id)),
             format_number(max_abs(dd.mat - id))});
  }
  return {csv.text, {}};
}

inline RunOutput run_kernels(const ExperimentConfig& cfg) {
  require_format(cfg, OutputFormat::Csv);
  Csv csv("t,h,shallow_re,shallow_im,markov_re,markov_im,abs_difference");
  for (const double t : cfg.times)
    for (const double h : cfg.hs) {
      const Complex shallow =
          two_time_kernel(*cfg.spectral_model, cfg.obs_y, cfg.obs_x, t, h);
      const Complex markov =
          markov_two_time(*cfg.spectral_model, cfg.obs_y, cfg.obs_x, t, h);
      csv.row({format_number(t), format_number(h), format_number(shallow.real()),
               format_number(shallow.imag()), format_number(markov.real()),
               format_number(markov.imag()), format_number(std::abs(shallow - markov))});
    }
  return {csv.text, {}};
}

inline RunOutput run_contrast(const ExperimentConfig& cfg) {
  require_format(cfg, OutputFormat::Csv);
  const SpectralModel& sm = *cfg.spectral_model;
  const Eigen::Index d = cfg.model->dim();

  // Both dilations must reduce to the same semigroup.
  const Eigen::MatrixXcd from_model =
      expm(cfg.total_time * generator_superop(*cfg.model, Picture::Schrodinger).mat);
  const Eigen::MatrixXcd from_spectral =
      dual(cauchy_semigroup(sm, cfg.total_time)).mat;
  if (max_abs(from_model - from_spectral) > 1e-9)
    throw config_error(
        "model/spectral_model: the two dilations do not share a semigroup");

  const std::vector<StudyRow> study =
      convergence_study(*cfg.model, *cfg.scheme, cfg.total_time, cfg.taus);
  const double collision_err = study.back().error_vs_identity;

  const SuperOperator pocket_map =
      dd_pocket_evolution(sm, *cfg.scheme, static_cast<std::size_t>(cfg.steps));
  const double pocket_err = max_abs(
      pocket_map.mat - Eigen::MatrixXcd::Identity(d * d, d * d));

  constexpr double kDecoupled = 1e-12;
  Csv csv("dilation,error_vs_identity,decoupled");
  csv.row({"collision", format_number(collision_err),
           collision_err <= kDecoupled ? "true" : "false"});
  csv.row({"pocket", format_number(pocket_err),
           pocket_err <= kDecoupled ? "true" : "false"});

  std::vector<std::string> notes;
  notes.push_back("collision dilation: " +
                  std::string(collision_err <= kDecoupled ? "decoupled" : "not decoupled") +
                  " (extrapolated distance to identity " +
                  format_number(collision_err) + ")");
  notes.push_back("pocket dilation: " +
                  std::string(pocket_err <= kDecoupled ? "decoupled" : "not decoupled") +
                  " (distance to identity " + format_number(pocket_err) + ")");
  return {csv.text, notes};
}

}  // namespace detail

struct RunResult {
  std::filesystem::path output_file;
  std::vector<std::string> notes;
};

/// Executes an experiment and writes its output file. `out_dir`, when
/// given, is prepended to relative output paths. Throws config_error for
/// malformed inputs and invariant_violation for runtime numerical failures.
inline RunResult run_experiment(const ExperimentConfig& cfg,
                                const std::optional<std::filesystem::path>& out_dir =
                                    std::nullopt) {
  detail::RunOutput out;
  switch (cfg.kind) {
    case ExperimentKind::Generator: out = detail::run_generator(cfg); break;
    case ExperimentKind::DdAverage: out = detail::run_dd_average(cfg); break;
    case ExperimentKind::Evolve: out = detail::run_evolve(cfg); break;
    case ExperimentKind::CollisionStudy: out = detail::run_collision_study(cfg); break;
    case ExperimentKind::Pocket: out = detail::run_pocket(cfg); break;
    case ExperimentKind::Kernels: out = detail::run_kernels(cfg); break;
    case ExperimentKind::Contrast: out = detail::run_contrast(cfg); break;
  }

  std::filesystem::path target = cfg.output_path;
  if (out_dir && target.is_relative()) target = *out_dir / target;
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec)
      throw config_error("output.path: cannot create directory \"" +
                         target.parent_path().string() + "\": " + ec.message());
  }
  std::ofstream file(target, std::ios::binary);
  if (!file)
    throw config_error("output.path: cannot open \"" + target.string() +
                       "\" for writing");
  file << out.bytes;
  file.close();
  if (!file)
    throw config_error("output.path: failed writing \"" + target.string() + "\"");
  return {target, std::move(out.notes)};
}

}  // namespace qdd
