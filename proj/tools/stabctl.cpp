// stabctl: scenario-driven front end for the stability workbench.
//
// Subcommands: walls | chambers | locate | stability |
//   quiver {check,hn,jh,sequiv} | cone {hodge,kplus,bogomolov,identity,path} |
//   approx {split,omega} | vgit scan
//
// Exit codes: 0 success, 2 input error, 3 infeasible / failed certificate,
// 4 cap exceeded.

#include "CLI11.hpp"

#include "stab/error.hpp"
#include "stab/scenario.hpp"

#include <fstream>
#include <iostream>

using namespace stab;
using scenario::json;

namespace {

struct GlobalOpts {
    std::string scenario_path;
    std::string out_path;
    std::string format = "json";
    uint64_t seed = 0;
    std::string caps_json;
};

scenario::Scenario load(const GlobalOpts& g) {
    if (g.scenario_path.empty()) return scenario::Scenario{};
    return scenario::load_scenario(g.scenario_path);
}

scenario::Caps parse_caps(const GlobalOpts& g) {
    scenario::Caps caps;
    if (!g.caps_json.empty()) {
        json j = json::parse(g.caps_json);
        if (j.contains("subspace")) caps.subspace = j["subspace"].get<uint64_t>();
    }
    return caps;
}

// merge CLI-provided overrides on top of the scenario's params block
json merged_params(const scenario::Scenario& sc, const json& overrides) {
    json out = sc.params.is_object() ? sc.params : json::object();
    for (const auto& [k, v] : overrides.items()) out[k] = v;
    return out;
}

int emit(const json& report, const GlobalOpts& g) {
    std::string text = g.format == "csv" ? scenario::to_csv(report) : report.dump(2) + "\n";
    if (g.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(g.out_path);
        if (!out) {
            std::cerr << "cannot open output file: " << g.out_path << "\n";
            return 2;
        }
        out << text;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact multi-polarisation stability workbench"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--scenario", g.scenario_path, "scenario JSON file");
    app.add_option("--out", g.out_path, "write the report here instead of stdout");
    app.add_option("--format", g.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", g.seed, "seed for randomized searches");
    app.add_option("--caps", g.caps_json, "caps as JSON, e.g. {\"subspace\":1000000}");

    json overrides = json::object();
    std::string quiver_sub, cone_sub;
    std::string tau_str, theta_str, lambda_str;

    CLI::App* walls = app.add_subcommand("walls", "walls W_{i,F} for a target and family");
    CLI::App* chambers = app.add_subcommand("chambers", "chamber decomposition of sigma-space");
    CLI::App* locate = app.add_subcommand("locate", "wall signs at a sigma point");
    CLI::App* stability = app.add_subcommand("stability", "verdict against a family");
    std::string opt_target, opt_family, opt_sigma, opt_region;
    for (CLI::App* c : {walls, chambers, locate, stability}) {
        c->add_option("--target", opt_target, "target sheaf label");
        c->add_option("--family", opt_family, "family label");
        c->add_option("--region", opt_region, "full|positive");
    }
    locate->add_option("--sigma", opt_sigma, "comma-separated sigma entries");
    stability->add_option("--sigma", opt_sigma, "comma-separated sigma entries");

    CLI::App* quiver = app.add_subcommand("quiver", "quiver representation stability");
    std::string rep_label, rep2_label, strategy;
    for (const char* sub : {"check", "hn", "jh", "sequiv"}) quiver->add_subcommand(sub);
    quiver->require_subcommand(1);
    quiver->add_option("--rep", rep_label, "representation label");
    quiver->add_option("--rep2", rep2_label, "second representation (sequiv)");
    quiver->add_option("--sigma", opt_sigma, "comma-separated sigma entries");
    quiver->add_option("--strategy", strategy, "exhaustive|seeded");

    CLI::App* cone_cmd = app.add_subcommand("cone", "intersection-theoretic cone computations");
    for (const char* sub : {"hodge", "kplus", "bogomolov", "identity", "path"})
        cone_cmd->add_subcommand(sub);
    cone_cmd->require_subcommand(1);
    std::string tensor_label;
    cone_cmd->add_option("--tensor", tensor_label, "tensor label (scenario or bundled name)");

    CLI::App* approx = app.add_subcommand("approx", "real ample class decomposition");
    CLI::App* split = approx->add_subcommand("split", "two-weight split of (tau, theta)");
    CLI::App* omega = approx->add_subcommand("omega", "decompose omega per scenario params");
    approx->require_subcommand(1);
    split->add_option("--tau", tau_str)->required();
    split->add_option("--theta", theta_str)->required();
    split->add_option("--lambda", lambda_str, "override the deterministic lambda rule");
    (void)omega;

    CLI::App* vgit_cmd = app.add_subcommand("vgit", "semistable-set traces over sigma paths");
    CLI::App* scan = vgit_cmd->add_subcommand("scan", "trace semistable sets along a path");
    vgit_cmd->require_subcommand(1);
    int scan_steps = -1;
    scan->add_option("--steps", scan_steps, "grid steps along the path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        scenario::Scenario sc = load(g);
        scenario::Caps caps = parse_caps(g);
        if (!opt_target.empty()) overrides["target"] = opt_target;
        if (!opt_family.empty()) overrides["family"] = opt_family;
        if (!opt_region.empty()) overrides["region"] = opt_region;
        if (!opt_sigma.empty()) {
            json arr = json::array();
            std::string cur;
            for (char ch : opt_sigma + ",") {
                if (ch == ',') {
                    if (!cur.empty()) arr.push_back(cur);
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            overrides["sigma"] = arr;
        }
        if (!rep_label.empty()) overrides["rep"] = rep_label;
        if (!rep2_label.empty()) overrides["rep2"] = rep2_label;
        if (!strategy.empty()) overrides["strategy"] = strategy;
        if (!tensor_label.empty()) overrides["tensor"] = tensor_label;
        if (scan_steps >= 0) overrides["steps"] = scan_steps;

        json report;
        if (*walls) {
            report = scenario::run_walls(sc, merged_params(sc, overrides));
        } else if (*chambers) {
            report = scenario::run_chambers(sc, merged_params(sc, overrides), ExecMode::Parallel);
        } else if (*locate) {
            report = scenario::run_locate(sc, merged_params(sc, overrides));
        } else if (*stability) {
            report = scenario::run_stability(sc, merged_params(sc, overrides));
        } else if (*quiver) {
            std::string sub = quiver->get_subcommands().front()->get_name();
            report = scenario::run_quiver(sc, sub, merged_params(sc, overrides), g.seed, caps);
        } else if (*cone_cmd) {
            std::string sub = cone_cmd->get_subcommands().front()->get_name();
            report = scenario::run_cone(sc, sub, merged_params(sc, overrides), ExecMode::Parallel);
        } else if (*approx) {
            if (*split) {
                std::optional<Rational> lambda;
                if (!lambda_str.empty()) lambda = Rational::from_string(lambda_str);
                report = scenario::run_approx_split(Scalar::parse(tau_str), Scalar::parse(theta_str),
                                                    lambda);
            } else {
                report = scenario::run_approx_omega(sc, merged_params(sc, overrides));
            }
        } else if (*vgit_cmd) {
            report = scenario::run_vgit_scan(sc, merged_params(sc, overrides), g.seed, caps);
        }
        report["schema"] = 1;
        report["seed"] = g.seed;
        return emit(report, g);
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 4;
    } catch (const infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
