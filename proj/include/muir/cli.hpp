#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "muir/scenario_io.hpp"
#include "muir/scenarios.hpp"
#include "muir/search.hpp"

// Command-line front end: `check` evaluates relations on a scenario file,
// `repro` replays the pinned reproduction scenarios, `search` runs the
// genetic violation search and `sweep` grids searches or random scans over
// dimensions and relation parameters. Results land as append-only CSV rows
// plus a JSON witness log with enough detail (states, bases, genomes,
// optimizer witnesses) to re-check any reported number independently.
//
// Exit codes: 0 = completed with no violation, 1 = input or usage error,
// 2 = at least one certified violation found.

namespace muir::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_violation = 2;

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt(bool b) { return b ? "true" : "false"; }

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Result rows (CSV)
// ---------------------------------------------------------------------------

/// One evaluation row. Optional fields print empty; wall time is the last
/// column so deterministic comparisons can strip it.
struct ResultRow {
  std::string relation;
  int dim = 0;
  std::uint64_t seed = 0;
  std::optional<int> generation;
  std::optional<double> lhs, rhs, slack;
  std::optional<bool> violated;
  std::string method;
  std::optional<double> fitness, scale;
  double wall_ms = 0.0;

  static std::string header() {
    return "relation,dim,seed,generation,lhs,rhs,slack,violated,method,fitness,scale,"
           "wall_ms";
  }

  std::string to_csv() const {
    std::ostringstream os;
    os << relation << ',' << dim << ',' << seed << ',';
    if (generation) os << *generation;
    os << ',';
    if (lhs) os << detail::fmt(*lhs);
    os << ',';
    if (rhs) os << detail::fmt(*rhs);
    os << ',';
    if (slack) os << detail::fmt(*slack);
    os << ',';
    if (violated) os << detail::fmt(*violated);
    os << ',' << method << ',';
    if (fitness) os << detail::fmt(*fitness);
    os << ',';
    if (scale) os << detail::fmt(*scale);
    os << ',' << detail::fmt(wall_ms);
    return os.str();
  }
};

struct OutputSink {
  std::filesystem::path dir;
  std::ostream& out;
  std::ofstream csv;
  Json witness = Json::array();

  OutputSink(const std::filesystem::path& directory, std::ostream& console)
      : dir(directory), out(console) {
    std::filesystem::create_directories(dir);
    const bool fresh = !std::filesystem::exists(dir / "results.csv") ||
                       std::filesystem::file_size(dir / "results.csv") == 0;
    csv.open(dir / "results.csv", std::ios::app);
    if (fresh) csv << ResultRow::header() << '\n';
  }

  void row(const ResultRow& r) {
    csv << r.to_csv() << '\n';
    out << r.to_csv() << '\n';
  }

  void add_witness(Json j) { witness.push_back(std::move(j)); }

  ~OutputSink() {
    if (!witness.empty()) {
      std::ofstream w(dir / "witness.json");
      w << witness.dump(2) << '\n';
    }
  }
};

inline Json report_to_json(const RelationReport& r) {
  Json j;
  j["relation"] = r.relation_id;
  j["sense"] = r.sense == RelationReport::Sense::upper_bound ? "<=" : ">=";
  j["lhs"] = r.lhs;
  j["rhs"] = r.degenerate_rhs ? Json("inf") : Json(r.rhs);
  j["slack"] = r.degenerate_rhs ? Json("inf") : Json(r.slack);
  j["violated"] = r.violated;
  j["tolerance"] = r.tolerance;
  j["method"] = r.method;
  j["coefficient"] = r.coefficient;
  j["degenerate_rhs"] = r.degenerate_rhs;
  j["open_conjecture"] = r.open_conjecture;
  if (r.witness_indices)
    j["witness_indices"] = Json::array({r.witness_indices->first, r.witness_indices->second});
  if (r.witness_unitary) j["witness_unitary"] = io_detail::to_json(*r.witness_unitary);
  return j;
}

// ---------------------------------------------------------------------------
// Shared option plumbing
// ---------------------------------------------------------------------------

struct CommonOptions {
  std::string out_dir;
  bool serial = false;

  std::filesystem::path resolve_out() const {
    if (!out_dir.empty()) return out_dir;
    if (const char* env = std::getenv("MUIR_OUT_DIR")) return env;
    return "muir-out";
  }

  int resolve_threads() const {
    if (serial) return 1;
    if (const char* env = std::getenv("MUIR_THREADS")) {
      const int n = std::atoi(env);
      if (n > 0) return n;
    }
    return 1;
  }
};

/// Accepts a number, "inf" (min-entropy order) or "free" (searched gene).
inline std::optional<double> parse_alpha(const std::string& text) {
  if (text.empty() || text == "free") return std::nullopt;
  if (text == "inf" || text == "infinity") return alpha_infinity;
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--alpha", "expected a positive number, 'inf' or 'free'");
  }
}

inline std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    const auto range = token.find("..");
    if (range != std::string::npos) {
      const int lo = std::stoi(token.substr(0, range));
      const int hi = std::stoi(token.substr(range + 2));
      for (int d = lo; d <= hi; ++d) dims.push_back(d);
    } else if (!token.empty()) {
      dims.push_back(std::stoi(token));
    }
  }
  return dims;
}

inline std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> alphas;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    alphas.push_back(token == "inf" || token == "infinity" ? alpha_infinity
                                                           : std::stod(token));
  }
  return alphas;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

/// Evaluates one relation on a parsed scenario document. Relations are
/// matched to the document's system kind; the accessible-information bound
/// accepts either an ensemble document or a bipartite one (using the
/// ensemble Alice's measurement prepares).
inline RelationReport evaluate_document_relation(const ScenarioDocument& doc,
                                                 const std::string& relation,
                                                 const EvaluationSpec& spec) {
  if (std::holds_alternative<SingleScenario>(doc.payload)) {
    const auto& s = std::get<SingleScenario>(doc.payload);
    if (relation == relation_id::maassen_uffink)
      return eval_maassen_uffink(s.state, s.basis1, s.basis2);
    if (relation == relation_id::renyi_mu) {
      if (!spec.alpha)
        throw std::invalid_argument("renyi-mu requires --alpha (or an evaluation block)");
      return eval_renyi_mu(s.state, s.basis1, s.basis2, *spec.alpha);
    }
    throw std::invalid_argument("relation '" + relation +
                                "' needs a bipartite or ensemble scenario");
  }
  if (std::holds_alternative<EnsembleScenario>(doc.payload)) {
    const auto& s = std::get<EnsembleScenario>(doc.payload);
    if (relation == relation_id::hall) return eval_hall(s);
    throw std::invalid_argument("relation '" + relation +
                                "' cannot run on an ensemble scenario");
  }
  const auto& s = std::get<MeasurementScenario>(doc.payload);
  if (relation == relation_id::one_vs_two) return eval_one_vs_two(s);
  if (relation == relation_id::one_vs_two_sq) return eval_one_vs_two_sq(s);
  if (relation == relation_id::one_vs_two_max) return eval_one_vs_two_max(s);
  if (relation == relation_id::two_vs_two) return eval_two_vs_two(s, spec.budget);
  if (relation == relation_id::two_vs_two_state) return eval_two_vs_two_state(s);
  if (relation == relation_id::exotic) return eval_exotic(s, spec.exponent_p);
  if (relation == relation_id::two_vs_two_sum)
    return eval_two_vs_two_sum(s, spec.budget);
  if (relation == relation_id::hall)
    return eval_hall(ensemble_from_measurement(s));
  if (relation == relation_id::maassen_uffink || relation == relation_id::renyi_mu)
    throw std::invalid_argument("relation '" + relation +
                                "' needs a single-system scenario");
  throw std::invalid_argument("unknown relation id '" + relation + "'");
}

struct CheckOptions {
  CommonOptions common;
  std::string scenario_path;
  std::vector<std::string> relations;
  std::string alpha_text;
  std::optional<double> p;
  std::optional<int> budget_generations;
  std::optional<std::uint64_t> seed;
};

inline int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  std::ifstream in(opt.scenario_path);
  if (!in) {
    err << "error: cannot open scenario file '" << opt.scenario_path << "'\n";
    return exit_input_error;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  std::optional<ScenarioDocument> parsed;
  try {
    parsed = parse_scenario_text(buffer.str());
  } catch (const ScenarioFormatError& e) {
    err << "error: " << opt.scenario_path << ": " << e.what() << '\n';
    return exit_input_error;
  }
  const ScenarioDocument& doc = *parsed;

  EvaluationSpec spec = doc.evaluation.value_or(EvaluationSpec{});
  if (!opt.alpha_text.empty()) spec.alpha = parse_alpha(opt.alpha_text);
  if (opt.p) spec.exponent_p = *opt.p;
  if (opt.budget_generations) spec.budget.generations = *opt.budget_generations;
  if (opt.seed) spec.budget.seed = *opt.seed;

  std::vector<std::string> relations =
      !opt.relations.empty() ? opt.relations : spec.relations;
  if (relations.empty()) {
    err << "error: no relation requested (use --relation or an evaluation block)\n";
    return exit_input_error;
  }

  OutputSink sink(opt.common.resolve_out(), out);
  bool any_violation = false;
  for (const std::string& relation : relations) {
    detail::Stopwatch watch;
    RelationReport report;
    try {
      report = evaluate_document_relation(doc, relation, spec);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return exit_input_error;
    }
    any_violation = any_violation || report.violated;
    ResultRow row;
    row.relation = report.relation_id;
    row.dim = std::holds_alternative<MeasurementScenario>(doc.payload)
                  ? std::get<MeasurementScenario>(doc.payload).dim
                  : (std::holds_alternative<SingleScenario>(doc.payload)
                         ? std::get<SingleScenario>(doc.payload).state.dim()
                         : std::get<EnsembleScenario>(doc.payload).ensemble.dim());
    row.seed = spec.budget.seed;
    row.lhs = report.lhs;
    row.rhs = report.rhs;
    row.slack = report.slack;
    row.violated = report.violated;
    row.method = report.method;
    row.wall_ms = watch.ms();
    sink.row(row);
    Json w;
    w["scenario"] = to_json(doc);
    w["report"] = report_to_json(report);
    sink.add_witness(std::move(w));
  }
  return any_violation ? exit_violation : exit_ok;
}

// ---------------------------------------------------------------------------
// repro
// ---------------------------------------------------------------------------

struct ReproOptions {
  CommonOptions common;
  std::string id;
  bool all = false;
};

inline int cmd_repro(const ReproOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<std::string> ids;
  if (opt.all) {
    ids = scenario_registry_ids();
  } else if (!opt.id.empty()) {
    ids.push_back(opt.id);
  } else {
    err << "error: repro needs --id <name> or --all\n";
    return exit_input_error;
  }

  const std::filesystem::path dir = opt.common.resolve_out();
  std::filesystem::create_directories(dir);
  const bool fresh = !std::filesystem::exists(dir / "repro_results.csv") ||
                     std::filesystem::file_size(dir / "repro_results.csv") == 0;
  std::ofstream csv(dir / "repro_results.csv", std::ios::app);
  if (fresh) csv << "scenario,check,observed,expected,tolerance,status,wall_ms\n";

  bool all_pass = true;
  for (const std::string& id : ids) {
    NamedScenario named = [&]() -> NamedScenario {
      try {
        return make_named_scenario(id);
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
      }
    }();
    detail::Stopwatch watch;
    for (const ReproCheck& check : named.run_checks()) {
      const bool pass = check.pass();
      all_pass = all_pass && pass;
      const std::string line = id + "," + check.name + "," +
                               detail::fmt(check.observed) + "," +
                               detail::fmt(check.expected) + "," +
                               detail::fmt(check.tolerance) + "," +
                               (pass ? "pass" : "FAIL") + "," +
                               detail::fmt(watch.ms());
      csv << line << '\n';
      out << line << '\n';
    }
  }
  return all_pass ? exit_ok : exit_input_error;
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

struct SearchOptions {
  CommonOptions common;
  std::string relation;
  int dim = 2;
  std::uint64_t seed = 0;
  int generations = 2000;
  std::string mode = "pure";
  int population = 25;
  int elite = 3;
  double mutation_rate = 0.1;
  double crossover_rate = 0.7;
  int budget_generations = 60;
  int budget_restarts = 1;
  std::string alpha_text = "free";
  double p = 0.5;
};

/// Serializes the winning scenario with the evaluation parameters needed to
/// reproduce the logged numbers through `check`.
inline ScenarioDocument best_scenario_document(const SearchTarget& target,
                                               const SearchRecord& record) {
  const ScenarioCodec codec = codec_for(target);
  EvaluationSpec spec;
  spec.relations = {target.relation_id};
  if (target.relation_id == relation_id::renyi_mu)
    spec.alpha = target.alpha ? *target.alpha
                              : decode_alpha(record.best_genome.genes.back());
  spec.exponent_p = target.exponent_p;
  spec.budget = record.reverified ? target.coeff_budget.scaled(10) : target.coeff_budget;

  ScenarioDocument doc{[&]() -> decltype(ScenarioDocument::payload) {
                         switch (codec.kind) {
                           case SystemKind::single:
                             return decode_single(record.best_genome, codec);
                           case SystemKind::ensemble:
                             return decode_ensemble(record.best_genome, codec);
                           default:
                             return decode_scenario(record.best_genome, codec);
                         }
                       }(),
                       spec};
  return doc;
}

inline int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err) {
  SearchTarget target;
  target.relation_id = opt.relation;
  target.dim = opt.dim;
  target.mode = opt.mode == "mixed" ? StateMode::mixed : StateMode::pure;
  target.alpha = parse_alpha(opt.alpha_text);
  target.exponent_p = opt.p;
  target.coeff_budget.generations = opt.budget_generations;
  target.coeff_budget.restarts = opt.budget_restarts;
  target.coeff_budget.seed = opt.seed;

  ga::GaConfig config;
  config.population_size = opt.population;
  config.elite_count = opt.elite;
  config.generations = opt.generations;
  config.seed = opt.seed;
  config.mutation_rate = opt.mutation_rate;
  config.crossover_rate = opt.crossover_rate;

  detail::Stopwatch watch;
  SearchRecord record;
  try {
    record = run_search(target, config, opt.common.resolve_threads());
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }

  OutputSink sink(opt.common.resolve_out(), out);
  for (const SearchRow& row : record.rows) {
    ResultRow r;
    r.relation = target.relation_id;
    r.dim = target.dim;
    r.seed = config.seed;
    r.generation = row.generation;
    r.method = "search";
    r.fitness = row.best_fitness;
    r.scale = row.scale;
    sink.row(r);
  }
  const RelationReport& report = record.best_report;
  ResultRow final_row;
  final_row.relation = target.relation_id;
  final_row.dim = target.dim;
  final_row.seed = config.seed;
  final_row.lhs = report.lhs;
  final_row.rhs = report.rhs;
  final_row.slack = report.slack;
  final_row.violated = report.violated;
  final_row.method = report.method;
  final_row.fitness = record.verified_fitness;
  final_row.wall_ms = watch.ms();
  sink.row(final_row);

  const ScenarioDocument best = best_scenario_document(target, record);
  {
    std::ofstream f(sink.dir / "best_scenario.json");
    f << to_json(best).dump(2) << '\n';
  }
  Json w;
  w["target"] = Json{{"relation", target.relation_id},
                     {"dim", target.dim},
                     {"mode", opt.mode},
                     {"seed", config.seed},
                     {"generations", config.generations}};
  w["raw_best_fitness"] = record.best_fitness;
  w["verified_fitness"] = record.verified_fitness;
  w["reverified"] = record.reverified;
  w["evaluations"] = record.evaluations;
  w["genome"] = record.best_genome.genes;
  w["report"] = report_to_json(report);
  w["scenario"] = to_json(best);
  sink.add_witness(std::move(w));

  out << "# best fitness " << detail::fmt(record.verified_fitness) << " ("
      << (report.violated ? "violation" : "no violation") << ")\n";
  return report.violated ? exit_violation : exit_ok;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOptions {
  CommonOptions common;
  std::string relation;
  std::string dims_text;
  std::string alphas_text;
  std::uint64_t seed = 0;
  std::string method = "ga";  // ga | scan
  int samples = 10000;
  int generations = 500;
  std::string mode = "pure";
  int budget_generations = 60;
  double p = 0.5;
};

namespace detail {

struct CellResult {
  double min_slack = std::numeric_limits<double>::infinity();
  double best_fitness = -std::numeric_limits<double>::infinity();
  bool violated = false;
};

/// Random scan of one sweep cell: `samples` seeded scenarios, reporting the
/// worst slack over the non-degenerate draws.
inline CellResult scan_cell(const std::string& relation, int d,
                            std::optional<double> alpha, double p, StateMode mode,
                            int samples, std::uint64_t seed, int budget_generations) {
  CellResult cell;
  ga::Rng rng(ga::mix_seed(seed, 0x7377656570ull));
  EvaluationSpec spec;
  spec.alpha = alpha;
  spec.exponent_p = p;
  spec.budget.generations = budget_generations;
  spec.budget.seed = seed;
  for (int i = 0; i < samples; ++i) {
    RelationReport report;
    if (relation == relation_id::maassen_uffink || relation == relation_id::renyi_mu) {
      const DensityOperator rho = mode == StateMode::pure
                                      ? DensityOperator::from_pure(random_pure_state(d, rng))
                                      : random_density_operator(d, rng);
      const OrthonormalBasis b1 = random_basis(d, rng);
      const OrthonormalBasis b2 = random_basis(d, rng);
      report = relation == relation_id::maassen_uffink
                   ? eval_maassen_uffink(rho, b1, b2)
                   : eval_renyi_mu(rho, b1, b2, alpha.value_or(alpha_infinity));
    } else {
      const NamedScenario named = random_scenario(d, mode, rng());
      const ScenarioDocument doc{named.scenario, std::nullopt};
      report = evaluate_document_relation(doc, relation, spec);
    }
    if (report.degenerate_rhs) continue;
    cell.min_slack = std::min(cell.min_slack, report.slack);
    cell.best_fitness = std::max(cell.best_fitness, -report.slack);
    cell.violated = cell.violated || report.violated;
  }
  return cell;
}

}  // namespace detail

inline int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  const std::vector<int> dims = parse_dims(opt.dims_text);
  if (dims.empty()) {
    err << "error: empty dimension range\n";
    return exit_input_error;
  }
  std::vector<std::optional<double>> alphas;
  if (opt.relation == relation_id::renyi_mu) {
    for (double a : parse_alphas(opt.alphas_text)) alphas.emplace_back(a);
    if (alphas.empty()) {
      err << "error: renyi-mu sweep needs a nonempty --alphas list\n";
      return exit_input_error;
    }
  } else {
    alphas.emplace_back(std::nullopt);
  }

  OutputSink sink(opt.common.resolve_out(), out);
  bool any_violation = false;
  int cell_index = 0;
  for (int d : dims) {
    for (const std::optional<double>& alpha : alphas) {
      detail::Stopwatch watch;
      const std::uint64_t cell_seed = ga::mix_seed(opt.seed, cell_index);
      detail::CellResult cell;
      const StateMode mode =
          opt.mode == "mixed" ? StateMode::mixed : StateMode::pure;
      try {
        if (opt.method == "scan") {
          cell = detail::scan_cell(opt.relation, d, alpha, opt.p, mode, opt.samples,
                                   cell_seed, opt.budget_generations);
        } else {
          SearchTarget target;
          target.relation_id = opt.relation;
          target.dim = d;
          target.mode = mode;
          target.alpha = alpha;
          target.exponent_p = opt.p;
          target.coeff_budget.generations = opt.budget_generations;
          target.coeff_budget.seed = cell_seed;
          ga::GaConfig config;
          config.generations = opt.generations;
          config.seed = cell_seed;
          const SearchRecord record =
              run_search(target, config, opt.common.resolve_threads());
          cell.best_fitness = record.verified_fitness;
          cell.min_slack = -record.verified_fitness;
          cell.violated = record.best_report.violated;
        }
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
      }
      any_violation = any_violation || cell.violated;

      std::string label = opt.relation;
      if (alpha)
        label += std::string("[alpha=") +
                 (*alpha == alpha_infinity ? "inf" : detail::fmt(*alpha)) + "]";
      ResultRow row;
      row.relation = label;
      row.dim = d;
      row.seed = cell_seed;
      row.slack = cell.min_slack;
      row.violated = cell.violated;
      row.method = opt.method;
      row.fitness = cell.best_fitness;
      row.wall_ms = watch.ms();
      sink.row(row);
      ++cell_index;
    }
  }
  return any_violation ? exit_violation : exit_ok;
}

// ---------------------------------------------------------------------------
// argument wiring
// ---------------------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mutual-information uncertainty relations toolkit"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "evaluate relations on a scenario file");
  check_cmd->add_option("--scenario", check.scenario_path, "scenario JSON file")
      ->required();
  check_cmd->add_option("--relation", check.relations, "relation id(s) to evaluate")
      ->delimiter(',');
  check_cmd->add_option("--alpha", check.alpha_text, "Renyi order (number or 'inf')");
  double check_p = 0.5;
  auto* check_p_opt = check_cmd->add_option("--p", check_p, "overlap exponent");
  int check_budget = 0;
  auto* check_budget_opt =
      check_cmd->add_option("--budget", check_budget, "optimizer generations");
  std::uint64_t check_seed = 0;
  auto* check_seed_opt = check_cmd->add_option("--seed", check_seed, "optimizer seed");
  check_cmd->add_option("--out", check.common.out_dir, "output directory");
  check_cmd->add_flag("--serial", check.common.serial, "force single-threaded");

  ReproOptions repro;
  auto* repro_cmd = app.add_subcommand("repro", "replay pinned reproduction scenarios");
  repro_cmd->add_option("--id", repro.id, "scenario id");
  repro_cmd->add_flag("--all", repro.all, "run the whole registry");
  repro_cmd->add_option("--out", repro.common.out_dir, "output directory");

  SearchOptions search;
  auto* search_cmd = app.add_subcommand("search", "genetic violation search");
  search_cmd->add_option("--relation", search.relation, "target relation id")->required();
  search_cmd->add_option("--dim", search.dim, "local dimension")->required();
  search_cmd->add_option("--seed", search.seed, "master seed")->required();
  search_cmd->add_option("--generations", search.generations, "generations");
  search_cmd->add_option("--mode", search.mode, "state mode: pure|mixed")
      ->check(CLI::IsMember({"pure", "mixed"}));
  search_cmd->add_option("--population", search.population, "population size");
  search_cmd->add_option("--elite", search.elite, "elite count");
  search_cmd->add_option("--mutation-rate", search.mutation_rate, "per-gene rate");
  search_cmd->add_option("--crossover-rate", search.crossover_rate, "per-pair rate");
  search_cmd->add_option("--budget", search.budget_generations,
                         "coefficient optimizer generations");
  search_cmd->add_option("--budget-restarts", search.budget_restarts,
                         "coefficient optimizer restarts");
  search_cmd->add_option("--alpha", search.alpha_text,
                         "Renyi order (number, 'inf' or 'free')");
  search_cmd->add_option("--p", search.p, "overlap exponent");
  search_cmd->add_option("--out", search.common.out_dir, "output directory");
  search_cmd->add_flag("--serial", search.common.serial, "force single-threaded");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "grid of searches or random scans");
  sweep_cmd->add_option("--relation", sweep.relation, "target relation id")->required();
  sweep_cmd->add_option("--dim", sweep.dims_text, "dimensions, e.g. 2,3,4 or 2..8")
      ->required();
  sweep_cmd->add_option("--alphas", sweep.alphas_text, "Renyi orders, e.g. 2,4,inf");
  sweep_cmd->add_option("--seed", sweep.seed, "master seed")->required();
  sweep_cmd->add_option("--method", sweep.method, "ga|scan")
      ->check(CLI::IsMember({"ga", "scan"}));
  sweep_cmd->add_option("--samples", sweep.samples, "random scenarios per cell (scan)");
  sweep_cmd->add_option("--generations", sweep.generations, "generations per cell (ga)");
  sweep_cmd->add_option("--mode", sweep.mode, "state mode: pure|mixed")
      ->check(CLI::IsMember({"pure", "mixed"}));
  sweep_cmd->add_option("--budget", sweep.budget_generations,
                        "coefficient optimizer generations");
  sweep_cmd->add_option("--p", sweep.p, "overlap exponent");
  sweep_cmd->add_option("--out", sweep.common.out_dir, "output directory");
  sweep_cmd->add_flag("--serial", sweep.common.serial, "force single-threaded");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }

  try {
    if (check_cmd->parsed()) {
      if (*check_p_opt) check.p = check_p;
      if (*check_budget_opt) check.budget_generations = check_budget;
      if (*check_seed_opt) check.seed = check_seed;
      return cmd_check(check, out, err);
    }
    if (repro_cmd->parsed()) return cmd_repro(repro, out, err);
    if (search_cmd->parsed()) return cmd_search(search, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  err << "error: no command\n";
  return exit_input_error;
}

}  // namespace muir::cli
