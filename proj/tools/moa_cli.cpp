// Experiment runner for the archiving library: execute archivers over
// sequences, emit trajectories and metrics, and reproduce the archiver
// classification matrix at desk scale.
//
//   moa run      --config experiment.json [--out DIR] [--seed N] [--fail-on-violation]
//   moa compare  --config experiment.json ...
//   moa classify --config experiment.json ...
//
// Exit codes: 0 success, 1 usage or format error, 2 violations found when
// --fail-on-violation is set.

#include <CLI11.hpp>

#include "moa/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bounded multi-objective archiving experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool fail_on_violation = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
        cmd->add_option("--out", out_dir, "output directory (overrides config)");
        cmd->add_option("--seed", seed, "master seed (overrides config)")
            ->each([&](const std::string&) { seed_set = true; });
        cmd->add_flag("--fail-on-violation", fail_on_violation,
                      "exit 2 when any violation witness is found");
    };
    CLI::App* run = app.add_subcommand("run", "run archivers over a sequence");
    CLI::App* compare = app.add_subcommand("compare", "compare archivers on one sequence");
    CLI::App* classify = app.add_subcommand("classify", "desk-scale property matrix");
    add_common(run);
    add_common(compare);
    add_common(classify);

    CLI11_PARSE(app, argc, argv);

    try {
        moa::exp::ExperimentConfig cfg = moa::exp::load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed_set) cfg.seed = seed;
        cfg.fail_on_violation = fail_on_violation;
        if (run->parsed()) return moa::exp::cmd_run(cfg, std::cout);
        if (compare->parsed()) return moa::exp::cmd_compare(cfg, std::cout);
        return moa::exp::cmd_classify(cfg, std::cout);
    } catch (const moa::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const moa::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
