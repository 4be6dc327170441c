// emslb: run, validate and list EMS localization experiments.

#include "emslb/config.hpp"
#include "emslb/errors.hpp"
#include "emslb/experiment.hpp"
#include "emslb/kernels.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitAccuracy = 3;

int report(const std::exception& e, int code)
{
    std::cerr << "emslb: error: " << e.what() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"EMS retro-reflector simulation and localization bounds"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    int threads = 0;

    auto* run = app.add_subcommand("run", "run an experiment and write CSV");
    run->add_option("config", config_path, "config file or preset:NAME")->required();
    run->add_option("--seed", seed, "override experiment.seed");
    run->add_option("--out", out_path, "output CSV path (default: stdout)");
    run->add_option("--override", overrides, "key=value, dotted keys, repeatable");
    run->add_option("--threads", threads, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);

    auto* validate = app.add_subcommand("validate", "check a config and print its hash");
    validate->add_option("config", config_path, "config file or preset:NAME")->required();
    validate->add_option("--override", overrides, "key=value, dotted keys, repeatable");

    std::string dump_name;
    auto* presets = app.add_subcommand("presets", "list built-in presets");
    presets->add_option("--dump", dump_name, "print the JSON of one preset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*presets) {
            if (!dump_name.empty()) {
                std::cout << emslb::dump_config(emslb::preset_config(dump_name));
                return kExitOk;
            }
            for (const auto& name : emslb::preset_names()) {
                std::cout << name << "\t" << emslb::preset_description(name) << '\n';
            }
            return kExitOk;
        }

        if (seed) {
            overrides.push_back("experiment.seed=" + std::to_string(*seed));
        }
        const emslb::ScenarioConfig cfg = emslb::load_config(config_path, overrides);

        if (*validate) {
            emslb::make_scenario(cfg);
            std::cout << "ok " << cfg.experiment.type << " config-hash=" << emslb::config_hash(cfg) << '\n';
            return kExitOk;
        }

        if (threads > 0) {
            emslb::set_max_threads(threads);
        }
        const auto t0 = std::chrono::steady_clock::now();
        const emslb::ResultTable table = emslb::run_experiment(cfg);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        for (const auto& w : table.warnings) {
            std::cerr << "emslb: warning: " << w << '\n';
        }
        if (out_path.empty()) {
            std::cout << emslb::to_csv(table);
        } else {
            emslb::emit_csv(table, out_path);
        }
        std::cerr << "emslb: " << cfg.experiment.type << ": " << table.rows.size() << " rows in "
                  << seconds << " s\n";
        return kExitOk;
    } catch (const emslb::ValidationError& e) {
        return report(e, kExitValidation);
    } catch (const emslb::InvalidArgument& e) {
        return report(e, kExitValidation);
    } catch (const emslb::NumericalAccuracyError& e) {
        return report(e, kExitAccuracy);
    } catch (const emslb::UnidentifiableParameters& e) {
        return report(e, kExitAccuracy);
    } catch (const std::exception& e) {
        return report(e, kExitFailure);
    }
}
