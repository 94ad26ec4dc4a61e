#pragma once

#include "logvor/cells.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace logvor {

using json = nlohmann::json;

/// Number, decimal string, or rational string "p/q".
double parse_real(const json& j);

SymMat symmat_from_json(const json& j);
json to_json(const SymMat& s);

Graph graph_from_json(const json& j);
json to_json(const Graph& g);
Digraph digraph_from_json(const json& j);
json to_json(const Digraph& g);

/// Models carry a "kind" discriminator; vertex indices are 1-based.
Model model_from_json(const json& j);
json to_json(const Model& model);

SolverOptions solver_options_from_json(const json& j);
json to_json(const SolverOptions& opts);

json to_json(const CriticalPoint& p);
json to_json(const MembershipVerdict& v);
json to_json(const Decomposition& d);

/// Value as printed with 15 significant digits; non-finite values become null.
json round15(double x);
/// Recursively applies round15 to every floating point number.
json rounded(const json& j);

/// Contents of a problem file: a model plus optional sigma, sample, and
/// solver options.
struct Problem {
    Model model;
    std::optional<SymMat> sigma;
    std::optional<SymMat> sample;
    SolverOptions solver;
};

Problem problem_from_json(const json& j);
json load_json(const std::string& path);
Problem load_problem(const std::string& path);

} // namespace logvor
