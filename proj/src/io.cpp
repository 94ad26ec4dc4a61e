#include "logvor/io.hpp"

#include "logvor/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace logvor {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

double parse_decimal(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') parse_error("not a number: \"" + text + "\"");
    return v;
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) parse_error(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

int parse_int(const json& j, const char* what) {
    if (!j.is_number_integer()) parse_error(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::vector<Edge> parse_pairs(const json& j, int m) {
    if (!j.is_array()) parse_error("edge list must be an array");
    std::vector<Edge> out;
    for (const json& e : j) {
        if (!e.is_array() || e.size() != 2) parse_error("each edge must be a pair [i, j]");
        const int i = parse_int(e[0], "vertex") - 1;
        const int k = parse_int(e[1], "vertex") - 1;
        if (i < 0 || k < 0 || i >= m || k >= m) parse_error("vertex index out of range 1..m");
        out.emplace_back(i, k);
    }
    return out;
}

json pairs_to_json(const std::vector<Edge>& edges) {
    json out = json::array();
    for (const auto& [i, j] : edges) out.push_back({i + 1, j + 1});
    return out;
}

} // namespace

double parse_real(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) parse_error("expected a number or numeric string");
    const std::string text = j.get<std::string>();
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_decimal(text);
    const double den = parse_decimal(text.substr(slash + 1));
    if (den == 0.0) parse_error("zero denominator in \"" + text + "\"");
    return parse_decimal(text.substr(0, slash)) / den;
}

SymMat symmat_from_json(const json& j) {
    const int m = parse_int(field(j, "dim"), "dim");
    const json& upper = field(j, "upper");
    if (m < 1) parse_error("dim must be positive");
    if (!upper.is_array() || upper.size() != static_cast<std::size_t>(m * (m + 1) / 2)) {
        parse_error("upper must hold dim*(dim+1)/2 entries");
    }
    Eigen::MatrixXd a(m, m);
    std::size_t p = 0;
    for (int i = 0; i < m; ++i)
        for (int k = i; k < m; ++k) a(i, k) = a(k, i) = parse_real(upper[p++]);
    return SymMat(a);
}

json to_json(const SymMat& s) {
    json upper = json::array();
    for (int i = 0; i < s.dim(); ++i)
        for (int k = i; k < s.dim(); ++k) upper.push_back(s(i, k));
    return {{"dim", s.dim()}, {"upper", upper}};
}

Graph graph_from_json(const json& j) {
    const int m = parse_int(field(j, "m"), "m");
    return Graph(m, j.contains("edges") ? parse_pairs(j.at("edges"), m) : std::vector<Edge>{});
}

json to_json(const Graph& g) { return {{"m", g.size()}, {"edges", pairs_to_json(g.edges())}}; }

Digraph digraph_from_json(const json& j) {
    const int m = parse_int(field(j, "m"), "m");
    return Digraph(m, j.contains("arcs") ? parse_pairs(j.at("arcs"), m) : std::vector<Edge>{});
}

json to_json(const Digraph& g) { return {{"m", g.size()}, {"arcs", pairs_to_json(g.arcs())}}; }

Model model_from_json(const json& j) {
    const json& kind_field = field(j, "kind");
    if (!kind_field.is_string()) parse_error("kind must be a string");
    const std::string kind = kind_field.get<std::string>();
    Model model;
    if (kind == "linear_concentration") {
        const json& basis = field(j, "basis");
        if (!basis.is_array()) parse_error("basis must be an array");
        LinearConcentration lc;
        for (const json& b : basis) lc.basis.push_back(symmat_from_json(b));
        model = std::move(lc);
    } else if (kind == "undirected_graph") {
        model = UndirectedGraph{graph_from_json(j)};
    } else if (kind == "dag") {
        model = Dag{digraph_from_json(j)};
    } else if (kind == "bivariate_correlation") {
        model = BivariateCorrelation{};
    } else if (kind == "equicorrelation") {
        model = Equicorrelation{parse_int(field(j, "m"), "m")};
    } else if (kind == "unrestricted_correlation") {
        model = UnrestrictedCorrelation{parse_int(field(j, "m"), "m")};
    } else if (kind == "ci_union") {
        model = CiUnion{};
    } else {
        parse_error("unknown model kind \"" + kind + "\"");
    }
    validate_model(model);
    return model;
}

json to_json(const Model& model) {
    json out{{"kind", std::string(model_kind(model))}};
    if (const auto* lc = std::get_if<LinearConcentration>(&model)) {
        json basis = json::array();
        for (const SymMat& b : lc->basis) basis.push_back(to_json(b));
        out["basis"] = basis;
    } else if (const auto* ug = std::get_if<UndirectedGraph>(&model)) {
        out.update(to_json(ug->graph));
    } else if (const auto* dag = std::get_if<Dag>(&model)) {
        out.update(to_json(dag->dag));
    } else if (const auto* eq = std::get_if<Equicorrelation>(&model)) {
        out["m"] = eq->m;
    } else if (const auto* uc = std::get_if<UnrestrictedCorrelation>(&model)) {
        out["m"] = uc->m;
    }
    return out;
}

SolverOptions solver_options_from_json(const json& j) {
    SolverOptions opts;
    if (!j.is_object()) parse_error("solver options must be an object");
    if (j.contains("starts")) opts.starts = parse_int(j.at("starts"), "starts");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) parse_error("seed must be a non-negative integer");
        opts.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("tol")) opts.tol = parse_real(j.at("tol"));
    if (j.contains("max_iter")) opts.max_iter = parse_int(j.at("max_iter"), "max_iter");
    if (opts.starts < 1 || opts.max_iter < 1 || !(opts.tol > 0.0)) parse_error("solver options out of range");
    return opts;
}

json to_json(const SolverOptions& opts) {
    return {{"starts", opts.starts}, {"seed", opts.seed}, {"tol", opts.tol}, {"max_iter", opts.max_iter}};
}

json to_json(const CriticalPoint& p) {
    return {{"point", to_json(p.sigma)},
            {"loglik", p.loglik},
            {"source", std::string(point_source_name(p.source))},
            {"residual", p.residual}};
}

json to_json(const MembershipVerdict& v) {
    json out{{"status", std::string(cell_status_name(v.status))}, {"margin", v.margin}};
    if (v.witness) out["witness"] = {{"point", to_json(v.witness->sigma)}, {"loglik", v.witness->loglik}};
    if (v.best_effort) out["best_effort"] = true;
    return out;
}

json to_json(const Decomposition& d) {
    auto one_based = [](const IndexSet& vs) {
        json out = json::array();
        for (int v : vs) out.push_back(v + 1);
        return out;
    };
    return {{"U", one_based(d.U)}, {"T", one_based(d.T)}, {"W", one_based(d.W)}};
}

json round15(double x) {
    if (!std::isfinite(x)) return nullptr;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

json rounded(const json& j) {
    if (j.is_number_float()) return round15(j.get<double>());
    if (j.is_array() || j.is_object()) {
        json out = j;
        for (auto& item : out) item = rounded(item);
        return out;
    }
    return j;
}

Problem problem_from_json(const json& j) {
    if (!j.is_object()) parse_error("problem file must hold a JSON object");
    Problem p;
    p.model = model_from_json(field(j, "model"));
    const int m = model_matrix_dim(p.model);
    auto matrix_field = [&](const char* name) -> std::optional<SymMat> {
        if (!j.contains(name)) return std::nullopt;
        SymMat s = symmat_from_json(j.at(name));
        if (s.dim() != m) parse_error(std::string(name) + " does not match the model size");
        return s;
    };
    p.sigma = matrix_field("sigma");
    p.sample = matrix_field("sample");
    if (j.contains("solver")) p.solver = solver_options_from_json(j.at("solver"));
    return p;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        parse_error(path + ": " + e.what());
    }
    return j;
}

Problem load_problem(const std::string& path) { return problem_from_json(load_json(path)); }

} // namespace logvor
