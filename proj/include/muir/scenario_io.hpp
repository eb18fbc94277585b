#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "muir/relations.hpp"

// Scenario files: JSON documents holding a state, the measurement bases and
// an optional evaluation block. Complex numbers are two-element [re, im]
// arrays at full double precision; vectors are lists of complex numbers,
// matrices and bases are lists of such lists (a basis lists its vectors).
// Parse and validation errors carry the JSON path of the offending field.

namespace muir {

using Json = nlohmann::json;

struct EvaluationSpec {
  std::vector<std::string> relations;
  std::optional<double> alpha;  // alpha_infinity serializes as "inf"
  double exponent_p = 0.5;
  OptimizerBudget budget;
};

struct ScenarioDocument {
  std::variant<MeasurementScenario, SingleScenario, EnsembleScenario> payload;
  std::optional<EvaluationSpec> evaluation;

  const std::string& label() const {
    return std::visit([](const auto& s) -> const std::string& { return s.label; },
                      payload);
  }
};

/// Validation failure with the JSON path of the offending field.
struct ScenarioFormatError : std::runtime_error {
  explicit ScenarioFormatError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what) {}
};

namespace io_detail {

inline Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const ComplexVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

/// A basis serializes as its list of vectors (the columns).
inline Json basis_to_json(const OrthonormalBasis& b) {
  Json a = Json::array();
  for (int k = 0; k < b.dim(); ++k) a.push_back(to_json(ComplexVector(b.vector(k))));
  return a;
}

inline Complex complex_from(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ScenarioFormatError(path, "expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexVector vector_from(const Json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ScenarioFormatError(path, "expected a list of " + std::to_string(dim) +
                                        " complex entries");
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i)
    v(i) = complex_from(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

inline ComplexMatrix matrix_from(const Json& j, int rows, int cols,
                                 const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw ScenarioFormatError(path,
                              "expected " + std::to_string(rows) + " matrix rows");
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    m.row(i) =
        vector_from(j[i], cols, path + "[" + std::to_string(i) + "]").transpose();
  return m;
}

inline OrthonormalBasis basis_from(const Json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ScenarioFormatError(path, "expected " + std::to_string(dim) + " basis vectors");
  ComplexMatrix cols(dim, dim);
  for (int k = 0; k < dim; ++k)
    cols.col(k) = vector_from(j[k], dim, path + "[" + std::to_string(k) + "]");
  try {
    return OrthonormalBasis(std::move(cols));
  } catch (const std::invalid_argument& e) {
    throw ScenarioFormatError(path, e.what());
  }
}

inline Json state_to_json(const DensityOperator& rho, bool as_pure_if_possible = true) {
  if (as_pure_if_possible && rho.purity() > 1.0 - 1e-12) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix);
    return Json{{"pure", to_json(ComplexVector(es.eigenvectors().col(rho.dim() - 1)))}};
  }
  return Json{{"density", to_json(rho.matrix)}};
}

inline DensityOperator state_from(const Json& j, int dim, const std::string& path) {
  try {
    if (j.contains("pure")) {
      const ComplexVector v = vector_from(j.at("pure"), dim, path + ".pure");
      return DensityOperator::from_pure(PureState(v));
    }
    if (j.contains("density"))
      return DensityOperator(matrix_from(j.at("density"), dim, dim, path + ".density"));
  } catch (const std::invalid_argument& e) {
    throw ScenarioFormatError(path, e.what());
  }
  throw ScenarioFormatError(path, "expected a 'pure' or 'density' state");
}

}  // namespace io_detail

inline Json to_json(const ScenarioDocument& doc) {
  Json j;
  if (std::holds_alternative<MeasurementScenario>(doc.payload)) {
    const auto& s = std::get<MeasurementScenario>(doc.payload);
    j["system"] = "bipartite";
    j["dim"] = s.dim;
    j["label"] = s.label;
    j["state"] = io_detail::state_to_json(s.state);
    Json alice = Json::array(), bob = Json::array();
    for (const auto& b : s.alice_bases) alice.push_back(io_detail::basis_to_json(b));
    for (const auto& b : s.bob_bases) bob.push_back(io_detail::basis_to_json(b));
    j["alice_bases"] = alice;
    j["bob_bases"] = bob;
    if (s.state_unitary) j["state_unitary"] = io_detail::to_json(*s.state_unitary);
  } else if (std::holds_alternative<SingleScenario>(doc.payload)) {
    const auto& s = std::get<SingleScenario>(doc.payload);
    j["system"] = "single";
    j["dim"] = s.state.dim();
    j["label"] = s.label;
    j["state"] = io_detail::state_to_json(s.state);
    j["bases"] = Json::array({io_detail::basis_to_json(s.basis1),
                              io_detail::basis_to_json(s.basis2)});
  } else {
    const auto& s = std::get<EnsembleScenario>(doc.payload);
    j["system"] = "ensemble";
    j["dim"] = s.ensemble.dim();
    j["label"] = s.label;
    Json weights = Json::array(), states = Json::array();
    for (double w : s.ensemble.weights) weights.push_back(w);
    for (const auto& st : s.ensemble.states)
      states.push_back(io_detail::state_to_json(st));
    j["ensemble"] = Json{{"weights", weights}, {"states", states}};
    j["bases"] = Json::array({io_detail::basis_to_json(s.basis1),
                              io_detail::basis_to_json(s.basis2)});
  }
  if (doc.evaluation) {
    const EvaluationSpec& e = *doc.evaluation;
    Json ev;
    ev["relations"] = e.relations;
    if (e.alpha)
      ev["alpha"] = *e.alpha == alpha_infinity ? Json("inf") : Json(*e.alpha);
    ev["p"] = e.exponent_p;
    ev["budget"] = Json{{"restarts", e.budget.restarts},
                        {"generations", e.budget.generations},
                        {"population", e.budget.population},
                        {"elite", e.budget.elite},
                        {"seed", e.budget.seed}};
    j["evaluation"] = ev;
  }
  return j;
}

inline ScenarioDocument scenario_from_json(const Json& j) {
  if (!j.is_object()) throw ScenarioFormatError("$", "document must be an object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer())
    throw ScenarioFormatError("$.dim", "missing integer dimension");
  const int dim = j.at("dim").get<int>();
  if (dim < 1 || dim > 16)
    throw ScenarioFormatError("$.dim", "dimension must be in 1..16");
  const std::string system = j.value("system", "bipartite");
  const std::string label = j.value("label", "");

  ScenarioDocument doc{
      SingleScenario(DensityOperator(ComplexMatrix::Identity(1, 1)),
                     OrthonormalBasis::computational(1),
                     OrthonormalBasis::computational(1)),
      std::nullopt};

  auto bases_from = [&](const char* key, int expected_min,
                        int expected_max) -> std::vector<OrthonormalBasis> {
    if (!j.contains(key))
      throw ScenarioFormatError(std::string("$.") + key, "missing basis list");
    const Json& list = j.at(key);
    if (!list.is_array() || static_cast<int>(list.size()) < expected_min ||
        static_cast<int>(list.size()) > expected_max)
      throw ScenarioFormatError(std::string("$.") + key,
                                "expected between " + std::to_string(expected_min) +
                                    " and " + std::to_string(expected_max) + " bases");
    std::vector<OrthonormalBasis> out;
    for (std::size_t i = 0; i < list.size(); ++i)
      out.push_back(io_detail::basis_from(
          list[i], dim, std::string("$.") + key + "[" + std::to_string(i) + "]"));
    return out;
  };

  if (system == "bipartite") {
    if (!j.contains("state")) throw ScenarioFormatError("$.state", "missing state");
    DensityOperator state =
        io_detail::state_from(j.at("state"), dim * dim, "$.state");
    std::vector<OrthonormalBasis> alice = bases_from("alice_bases", 1, 2);
    std::vector<OrthonormalBasis> bob = bases_from("bob_bases", 1, 2);
    MeasurementScenario s(dim, std::move(state), std::move(alice), std::move(bob),
                          label);
    if (j.contains("state_unitary")) {
      const ComplexMatrix v =
          io_detail::matrix_from(j.at("state_unitary"), dim, dim, "$.state_unitary");
      try {
        s.state_unitary = UnitaryOperator(v).matrix;
      } catch (const std::invalid_argument& e) {
        throw ScenarioFormatError("$.state_unitary", e.what());
      }
    }
    doc.payload = std::move(s);
  } else if (system == "single") {
    if (!j.contains("state")) throw ScenarioFormatError("$.state", "missing state");
    DensityOperator state = io_detail::state_from(j.at("state"), dim, "$.state");
    std::vector<OrthonormalBasis> bases = bases_from("bases", 2, 2);
    doc.payload = SingleScenario(std::move(state), std::move(bases[0]),
                                 std::move(bases[1]), label);
  } else if (system == "ensemble") {
    if (!j.contains("ensemble") || !j.at("ensemble").is_object())
      throw ScenarioFormatError("$.ensemble", "missing ensemble block");
    const Json& e = j.at("ensemble");
    if (!e.contains("weights") || !e.at("weights").is_array())
      throw ScenarioFormatError("$.ensemble.weights", "missing weights");
    std::vector<double> weights;
    for (std::size_t i = 0; i < e.at("weights").size(); ++i) {
      const Json& w = e.at("weights")[i];
      if (!w.is_number())
        throw ScenarioFormatError("$.ensemble.weights[" + std::to_string(i) + "]",
                                  "weight must be a number");
      weights.push_back(w.get<double>());
    }
    if (!e.contains("states") || !e.at("states").is_array())
      throw ScenarioFormatError("$.ensemble.states", "missing states");
    std::vector<DensityOperator> states;
    for (std::size_t i = 0; i < e.at("states").size(); ++i)
      states.push_back(io_detail::state_from(
          e.at("states")[i], dim, "$.ensemble.states[" + std::to_string(i) + "]"));
    std::vector<OrthonormalBasis> bases = bases_from("bases", 2, 2);
    try {
      doc.payload = EnsembleScenario(Ensemble(std::move(weights), std::move(states)),
                                     std::move(bases[0]), std::move(bases[1]), label);
    } catch (const std::invalid_argument& err) {
      throw ScenarioFormatError("$.ensemble", err.what());
    }
  } else {
    throw ScenarioFormatError("$.system",
                              "unknown system kind '" + system + "'");
  }

  if (j.contains("evaluation")) {
    const Json& ev = j.at("evaluation");
    if (!ev.is_object())
      throw ScenarioFormatError("$.evaluation", "must be an object");
    EvaluationSpec spec;
    if (ev.contains("relations")) {
      if (!ev.at("relations").is_array())
        throw ScenarioFormatError("$.evaluation.relations", "must be a list");
      for (const auto& r : ev.at("relations")) spec.relations.push_back(r.get<std::string>());
    }
    if (ev.contains("alpha")) {
      const Json& a = ev.at("alpha");
      if (a.is_string() && (a.get<std::string>() == "inf"))
        spec.alpha = alpha_infinity;
      else if (a.is_number())
        spec.alpha = a.get<double>();
      else
        throw ScenarioFormatError("$.evaluation.alpha", "expected a number or \"inf\"");
    }
    spec.exponent_p = ev.value("p", 0.5);
    if (ev.contains("budget")) {
      const Json& b = ev.at("budget");
      spec.budget.restarts = b.value("restarts", spec.budget.restarts);
      spec.budget.generations = b.value("generations", spec.budget.generations);
      spec.budget.population = b.value("population", spec.budget.population);
      spec.budget.elite = b.value("elite", spec.budget.elite);
      spec.budget.seed = b.value("seed", spec.budget.seed);
    }
    doc.evaluation = std::move(spec);
  }
  return doc;
}

/// Parses a scenario document from text. Syntax errors carry the byte
/// position reported by the JSON parser; semantic errors carry the path.
inline ScenarioDocument parse_scenario_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ScenarioFormatError("$ (byte " + std::to_string(e.byte) + ")", e.what());
  }
  return scenario_from_json(j);
}

}  // namespace muir
