#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qpurify/experiments.hpp"
#include "qpurify/qtypes.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitNumericFailure = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit entanglement distillation and purification experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;
    std::uint64_t seed_override = 0;
    bool seed_given = false;
    int threads_override = 0;

    CLI::App* cmd_run = app.add_subcommand("run", "execute an experiment config");
    cmd_run->add_option("config", config_path, "config file")->required();
    cmd_run->add_option("--output", output_override, "override the output path");
    cmd_run->add_option("--seed", seed_override, "override the seed")
        ->each([&](const std::string&) { seed_given = true; });
    cmd_run->add_option("--threads", threads_override, "worker threads for sweeps");

    CLI::App* cmd_validate = app.add_subcommand("validate", "check a config without running it");
    cmd_validate->add_option("config", config_path, "config file")->required();

    app.add_subcommand("list-experiments", "print the available experiment names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list-experiments")) {
            for (const std::string& name : qpurify::list_experiments()) std::cout << name << "\n";
            return kExitOk;
        }

        qpurify::ExperimentConfig config = qpurify::parse_config_file(config_path);
        if (!output_override.empty()) config.output_path = output_override;
        if (seed_given) config.seed = seed_override;
        if (threads_override > 0) config.threads = threads_override;

        if (app.got_subcommand("validate")) {
            const auto diags = qpurify::validate(config);
            for (const auto& d : diags) std::cerr << d.key << ": " << d.message << "\n";
            return diags.empty() ? kExitOk : kExitConfigError;
        }

        qpurify::run(config);
        return kExitOk;
    } catch (const qpurify::ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: numeric: " << e.what() << "\n";
        return kExitNumericFailure;
    }
}
