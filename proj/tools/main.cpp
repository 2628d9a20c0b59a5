#include <CLI11.hpp>

#include "graspbo/cli/commands.hpp"

using namespace graspbo;

int main(int argc, char** argv) {
    CLI::App app{"grasp planning toolkit: implicit-surface models, palm-pose "
                 "Bayesian optimization, contact refinement, and baselines"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string log_level = "warn";
    app.add_option("--log-level", log_level, "trace|debug|info|warn|off")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "off"}));

    std::string config_path, mesh_path, hand_path, planner, seeds_expr, output_dir;
    double mesh_scale = 0.0;
    long evals = 0;
    double time_budget = 0.0;

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run config JSON");
        cmd->add_option("--mesh", mesh_path, "object mesh (.obj/.off)");
        cmd->add_option("--mesh-scale", mesh_scale, "uniform scale applied to the mesh");
        cmd->add_option("--hand", hand_path, "hand model JSON");
        cmd->add_option("--output-dir", output_dir, "output directory");
    };

    CLI::App* fit = app.add_subcommand("fit-gpis", "fit and persist the implicit surface model");
    add_run_flags(fit);

    CLI::App* plan = app.add_subcommand("plan", "run a grasp planner over seeds");
    add_run_flags(plan);
    plan->add_option("--planner", planner, "hpp|integrate|random|sa")
        ->check(CLI::IsMember({"hpp", "integrate", "random", "sa"}));
    plan->add_option("--seeds", seeds_expr, "seed list \"0..19\" or \"3\"");
    plan->add_option("--evals", evals, "evaluation budget applied to every planner");
    plan->add_option("--time-budget", time_budget, "wall-clock budget in seconds (0 = off)");

    std::vector<std::string> bundle_paths;
    std::string table_out;
    bool average_top = false;
    CLI::App* compare = app.add_subcommand("compare", "align result bundles into one table");
    compare->add_option("bundles", bundle_paths, "bundle JSON files")->required();
    compare->add_option("--out", table_out, "write CSV here instead of stdout");
    compare->add_flag("--average-top", average_top,
                      "average the top candidate list instead of per-seed bests");

    std::string scene_bundle, scene_out = "scene.json";
    std::size_t candidate_index = 0;
    CLI::App* exp = app.add_subcommand("export-scene", "dump one grasp for offline viewing");
    exp->add_option("bundle", scene_bundle, "result bundle JSON")->required();
    exp->add_option("--candidate", candidate_index, "index into the top candidate list");
    exp->add_option("--out", scene_out, "scene file path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    log::set_level(log_level);

    try {
        if (compare->parsed()) return cmd_compare(bundle_paths, table_out, average_top);
        if (exp->parsed()) return cmd_export_scene(scene_bundle, candidate_index, scene_out);

        RunConfig cfg;
        if (!config_path.empty()) cfg = RunConfig::load(config_path);
        if (!mesh_path.empty()) cfg.mesh_path = mesh_path;
        if (mesh_scale > 0.0) cfg.mesh_scale = mesh_scale;
        if (!hand_path.empty()) cfg.hand_path = hand_path;
        if (!planner.empty()) cfg.planner = planner;
        if (!seeds_expr.empty()) cfg.seeds = cli_detail::parse_seeds(json(seeds_expr));
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (evals > 0) {
            cfg.hpp.eval_cap = evals;
            cfg.hpp.n_iter = int(evals);  // eval_cap stops the loop first
            cfg.random.n_evals = int(evals);
            cfg.sa.n_evals = int(evals);
        }
        if (time_budget > 0.0) cfg.hpp.time_budget_s = time_budget;
        apply_env(cfg);

        if (fit->parsed()) return cmd_fit_gpis(cfg);
        return cmd_plan(cfg);
    } catch (const GraspboError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
}
