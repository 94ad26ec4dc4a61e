#include "logvor/cli.hpp"

#include "logvor/error.hpp"
#include "logvor/figures.hpp"
#include "logvor/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

namespace logvor {

namespace {

struct LoadFailure {
    std::string message;
};

std::optional<std::uint64_t> env_seed() {
    const char* raw = std::getenv("LOGVOR_SEED");
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (*end != '\0') throw LoadFailure{"LOGVOR_SEED must be a non-negative integer"};
    return v;
}

/// Problem with the seed default taken from LOGVOR_SEED unless the file sets one.
Problem load(const std::string& path) {
    try {
        const json j = load_json(path);
        Problem p = problem_from_json(j);
        const bool explicit_seed = j.contains("solver") && j.at("solver").contains("seed");
        if (!explicit_seed) {
            if (auto seed = env_seed()) p.solver.seed = *seed;
        }
        return p;
    } catch (const std::exception& e) {
        throw LoadFailure{e.what()};
    }
}

const SymMat& require(const std::optional<SymMat>& m, const char* name) {
    if (!m) throw LoadFailure{std::string("problem file has no \"") + name + "\""};
    return *m;
}

void print(std::ostream& out, const json& j) { out << rounded(j).dump(2) << '\n'; }

int cmd_points(const std::string& path, bool all, std::ostream& out) {
    const Problem p = load(path);
    const SymMat& s = require(p.sample, "sample");
    const auto points = critical_points(p.model, s, p.solver);
    if (points.empty()) throw Error(ErrorKind::NoConvergence, "no critical point found");
    json report{{"model", std::string(model_kind(p.model))},
                {"ml_degree_one", has_unique_critical_point(p.model)}};
    if (std::holds_alternative<UnrestrictedCorrelation>(p.model)) report["best_effort"] = true;
    if (all) {
        json list = json::array();
        for (const auto& pt : points) list.push_back(to_json(pt));
        report["critical_points"] = list;
    } else {
        report["mle"] = to_json(points.front());
    }
    print(out, report);
    return kExitOk;
}

int cmd_membership(const std::string& path, std::ostream& out) {
    const Problem p = load(path);
    const SymMat& sigma = require(p.sigma, "sigma");
    const SymMat& s = require(p.sample, "sample");
    if (!model_contains(p.model, sigma, 1e-9)) throw LoadFailure{"sigma is not a point of the model"};
    MembershipOptions opts;
    opts.solver = p.solver;
    const MembershipVerdict v = cell_membership(p.model, sigma, s, opts);
    print(out, to_json(v));
    return v.status == CellStatus::InCell ? kExitOk : kExitRejected;
}

int cmd_sample(const std::string& path, int count, std::optional<std::uint64_t> seed, double radius,
               std::ostream& out) {
    const Problem p = load(path);
    const SymMat& sigma = require(p.sigma, "sigma");
    if (!model_contains(p.model, sigma, 1e-9)) throw LoadFailure{"sigma is not a point of the model"};
    const std::uint64_t used = seed ? *seed : p.solver.seed;
    json list = json::array();
    for (const SymMat& s : sample_spectrahedron(p.model, sigma, count, used, radius)) list.push_back(to_json(s));
    print(out, {{"seed", used}, {"samples", list}});
    return kExitOk;
}

int cmd_decompose(const std::string& path, std::ostream& out) {
    const Problem p = load(path);
    const auto* ug = std::get_if<UndirectedGraph>(&p.model);
    if (!ug) throw LoadFailure{"decompose needs an undirected_graph model"};
    const Graph& g = ug->graph;
    const ChordalityResult chordal = is_chordal(g);
    json cliques = json::array();
    for (const IndexSet& c : maximal_cliques(g)) {
        json one = json::array();
        for (int v : c) one.push_back(v + 1);
        cliques.push_back(one);
    }
    json report{{"chordal", chordal.chordal}, {"maximal_cliques", cliques}};
    const auto dec = find_reducible_decomposition(g);
    report["decomposition"] = dec ? to_json(*dec) : json(nullptr);
    if (dec && p.sigma && p.sample) {
        const CellProjection proj = project_cell(g, *p.sigma, *p.sample);
        report["projection"] = {{"s1", to_json(proj.s1)}, {"s2", to_json(proj.s2)}, {"m", to_json(proj.m)}};
    }
    print(out, report);
    return kExitOk;
}

int cmd_figure(const std::string& name, const std::string& out_path, int grid, std::ostream& out) {
    const FigureGrid fig = figure_grid(name, grid);
    // Written to a sibling file first so readers never see a partial grid.
    const std::filesystem::path target(out_path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream file(tmp);
        if (!file) throw LoadFailure{"cannot write " + tmp.string()};
        write_csv(fig, file);
        if (!file) throw LoadFailure{"write failed for " + tmp.string()};
    }
    std::filesystem::rename(tmp, target);
    out << "wrote " << fig.rows.size() << " rows to " << out_path << '\n';
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Logarithmic Voronoi cells of Gaussian models", "logvor"};
    app.require_subcommand(1);

    std::string file;
    bool all = false;
    auto* mle = app.add_subcommand("mle", "Maximum likelihood estimate for the sample");
    mle->add_option("FILE", file, "Problem file")->required();
    mle->add_flag("--all", all, "Print every critical point");

    auto* crit = app.add_subcommand("critical-points", "All real PD critical points, best first");
    crit->add_option("FILE", file, "Problem file")->required();

    auto* member = app.add_subcommand("membership", "Decide whether the sample lies in the cell at sigma");
    member->add_option("FILE", file, "Problem file")->required();

    int count = 1;
    std::optional<std::uint64_t> seed;
    double radius = 0.0;
    auto* sample = app.add_subcommand("sample", "Draw points of the log-normal spectrahedron at sigma");
    sample->add_option("FILE", file, "Problem file")->required();
    sample->add_option("--count", count, "Number of samples")->check(CLI::NonNegativeNumber);
    sample->add_option("--seed", seed, "RNG seed (default: LOGVOR_SEED or 0)");
    sample->add_option("--radius", radius, "Proposal radius (default: half the smallest eigenvalue)");

    auto* decompose = app.add_subcommand("decompose", "Chordality, cliques and clique-separator split");
    decompose->add_option("FILE", file, "Problem file")->required();

    std::string name, out_path;
    int grid = 0;
    auto* figure = app.add_subcommand("figure", "Write a figure grid as CSV");
    figure->add_option("NAME", name, "Figure name")->required();
    figure->add_option("--out", out_path, "Output CSV path")->required();
    figure->add_option("--grid", grid, "Points per axis");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (*mle) return cmd_points(file, all, out);
        if (*crit) return cmd_points(file, true, out);
        if (*member) return cmd_membership(file, out);
        if (*sample) {
            if (!seed) {
                if (auto env = env_seed()) seed = *env;
            }
            return cmd_sample(file, count, seed, radius, out);
        }
        if (*decompose) return cmd_decompose(file, out);
        if (*figure) return cmd_figure(name, out_path, grid, out);
    } catch (const LoadFailure& e) {
        err << "error: " << e.message << '\n';
        return kExitParse;
    } catch (const Error& e) {
        err << "error: " << error_kind_name(e.kind()) << ": " << e.what() << '\n';
        return e.kind() == ErrorKind::UnknownFigure ? kExitParse : kExitSolver;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitParse;
}

} // namespace logvor
