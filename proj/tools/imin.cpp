#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "imin/errors.hpp"
#include "imin/graph.hpp"
#include "imin/io.hpp"
#include "imin/minimizer.hpp"
#include "imin/oracle.hpp"
#include "imin/wmpmpsc.hpp"

namespace {

void emit(const nlohmann::json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw imin::Error("cannot write " + out_path);
        out << j.dump(2) << '\n';
    }
}

imin::Instance load(const std::string& path) {
    imin::Instance inst = imin::read_instance_file(path);
    if (inst.beta_below_one())
        std::cerr << "warning: beta < 1; the interference bounds assume beta >= 1\n";
    return inst;
}

int run_gen(const std::string& kind, int n, std::uint64_t seed, double side,
            double alpha, double beta, double xi_max, const std::string& out_path) {
    imin::Instance inst = kind == "expchain"
                              ? imin::gen_exponential_chain(n)
                              : imin::gen_random_geometric(n, seed, side, alpha, beta, xi_max);
    emit(imin::instance_to_json(inst), out_path);
    return 0;
}

int run_solve(const std::string& instance_path, const std::string& out_path,
              const std::string& csv_path) {
    const imin::Instance inst = load(instance_path);
    const imin::Solution solution = imin::minimize_interference(inst);
    emit(imin::solution_to_json(solution), out_path);
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw imin::Error("cannot write " + csv_path);
        imin::write_iteration_csv(csv, solution.logs);
    }
    return 0;
}

int run_oracle(const std::string& instance_path, int limit) {
    const imin::Instance inst = load(instance_path);
    const auto result = imin::brute_force_opt(inst, limit);
    if (!result) {
        std::cerr << "error: feasibility graph is disconnected\n";
        return 2;
    }
    nlohmann::json j;
    j["opt"] = result->opt;
    nlohmann::json edges = nlohmann::json::array();
    for (const imin::Edge& e : result->best_edges)
        edges.push_back(nlohmann::json::array({e.u, e.v}));
    j["edges"] = std::move(edges);
    j["explored"] = result->explored;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_baseline(const std::string& instance_path, const std::string& out_path) {
    const imin::Instance inst = load(instance_path);
    emit(imin::solution_to_json(imin::nearest_neighbor_baseline(inst)), out_path);
    return 0;
}

int run_compare(const std::string& instance_path, int limit) {
    const imin::Instance inst = load(instance_path);
    const imin::Solution solution = imin::minimize_interference(inst);
    const imin::Solution baseline = imin::nearest_neighbor_baseline(inst);
    const auto oracle = imin::brute_force_opt(inst, limit);
    if (!oracle) {
        std::cerr << "error: feasibility graph is disconnected\n";
        return 2;
    }
    std::cout << "n,opt,alg_I,baseline_I,ratio,iterations\n";
    std::cout << inst.size() << ',' << imin::format_double(oracle->opt) << ','
              << imin::format_double(solution.report.max) << ','
              << imin::format_double(baseline.report.max) << ','
              << imin::format_double(solution.report.max / oracle->opt) << ','
              << solution.logs.size() << '\n';
    return 0;
}

int run_rounding_stats(const std::string& instance_path, int trials, std::uint64_t seed) {
    const imin::Instance inst = load(instance_path);
    const imin::NetworkGraph graph = imin::build_graph(inst);
    imin::ComponentSet singletons(graph.n);
    if (singletons.count() < 2) throw imin::Error("need at least two nodes");
    const imin::CoverMapping mapping =
        imin::build_cover_instance(inst, graph, singletons, {});
    const imin::LinearProgram lp = imin::formulate_lp(mapping.wmpmpsc);
    const imin::LpSolution lp_solution = imin::solve(lp);
    if (lp_solution.status != imin::LpStatus::Optimal)
        throw imin::Error("iteration-1 relaxation is infeasible");
    const auto m = static_cast<int>(mapping.wmpmpsc.sets.size());
    const Eigen::VectorXd x = lp_solution.x.head(m);

    std::cout << "trial,seed,accepted,max_weight\n";
    int accepted = 0;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
        const auto cover =
            imin::randomized_round(mapping.wmpmpsc, x, lp_solution.z_value, trial_seed);
        std::cout << t << ',' << trial_seed << ',' << (cover ? 1 : 0) << ',';
        if (cover) {
            ++accepted;
            std::cout << imin::format_double(cover->max_weight);
        }
        std::cout << '\n';
    }
    std::cout << "summary," << seed << ',' << accepted << ','
              << imin::format_double(static_cast<double>(accepted) / trials) << '\n';
    std::cerr << "z_prime=" << imin::format_double(lp_solution.z_value) << " sets=" << m
              << " acceptance_rate="
              << imin::format_double(static_cast<double>(accepted) / trials) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Connected low-interference power assignment for wireless nodes"};
    app.require_subcommand(1);

    std::string instance_path, out_path, csv_path, kind;
    int n = 8, limit = 16, trials = 500;
    std::uint64_t seed = 1;
    double side = 10.0, alpha = 2.0, beta = 1.0, xi_max = 400.0;

    CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("kind", kind, "expchain or geometric")->required()
        ->check(CLI::IsMember({"expchain", "geometric"}));
    gen->add_option("-n,--nodes", n, "node count")->required();
    gen->add_option("--seed", seed, "RNG seed (geometric)");
    gen->add_option("--side", side, "area edge length (geometric)");
    gen->add_option("--alpha", alpha, "path-loss exponent (geometric)");
    gen->add_option("--beta", beta, "acceptance threshold (geometric)");
    gen->add_option("--xi-max", xi_max, "maximum transmission power (geometric)");
    gen->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* solve = app.add_subcommand("solve", "minimize interference");
    solve->add_option("instance", instance_path, "instance file")->required();
    solve->add_option("--out", out_path, "result file (default stdout)");
    solve->add_option("--log-csv", csv_path, "per-iteration CSV log");

    CLI::App* oracle = app.add_subcommand("oracle", "exact optimum by enumeration");
    oracle->add_option("instance", instance_path, "instance file")->required();
    oracle->add_option("--limit", limit, "max edge count to enumerate");

    CLI::App* baseline = app.add_subcommand("baseline", "nearest-neighbor baseline");
    baseline->add_option("instance", instance_path, "instance file")->required();
    baseline->add_option("--out", out_path, "result file (default stdout)");

    CLI::App* compare = app.add_subcommand("compare", "solve + oracle + baseline, one CSV row");
    compare->add_option("instance", instance_path, "instance file")->required();
    compare->add_option("--limit", limit, "max edge count for the oracle");

    CLI::App* stats = app.add_subcommand("rounding-stats",
                                         "randomized-rounding trials on the first iteration");
    stats->add_option("instance", instance_path, "instance file")->required();
    stats->add_option("--trials", trials, "trial count")->check(CLI::PositiveNumber);
    stats->add_option("--seed", seed, "base RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(kind, n, seed, side, alpha, beta, xi_max, out_path);
        if (solve->parsed()) return run_solve(instance_path, out_path, csv_path);
        if (oracle->parsed()) return run_oracle(instance_path, limit);
        if (baseline->parsed()) return run_baseline(instance_path, out_path);
        if (compare->parsed()) return run_compare(instance_path, limit);
        if (stats->parsed()) return run_rounding_stats(instance_path, trials, seed);
    } catch (const imin::DisconnectedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const imin::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
