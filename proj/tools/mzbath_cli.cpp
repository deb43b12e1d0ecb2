// mzbath - interferometer-in-a-thermal-bath simulator
//
//   mzbath <coeffs|evolve|interfere|sweep|selftest> [--config PATH] [--out PATH] [--svg]
//          [--seed N] [--quiet] [--section.key=value ...]

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mzbath/commands.hpp"
#include "mzbath/config.hpp"
#include "mzbath/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Two-level oscillator in a Mach-Zehnder interferometer coupled to a thermal bath"};
    app.set_version_flag("--version", std::string("mzbath ") + MZBATH_VERSION);
    app.require_subcommand(1);
    app.allow_extras();

    std::string config_path;
    std::string out;
    bool svg = false;
    bool quiet = false;
    std::uint64_t seed = 0;
    bool tamper = false;

    app.option_defaults()->always_capture_default();
    app.add_option("--config", config_path, "TOML config file (falls back to $MZBATH_CONFIG)");
    app.add_option("--out", out, "output CSV path (stdout when omitted)");
    app.add_flag("--svg", svg, "also write SVG plots next to --out (interfere)");
    auto* seed_opt = app.add_option("--seed", seed, "seed for randomized acceptance sampling");
    app.add_flag("--quiet", quiet, "suppress progress messages");

    const std::vector<std::pair<const char*, const char*>> commands{
        {"coeffs", "transient bath coefficients Delta(t), gamma(t)"},
        {"evolve", "master-equation evolution with entropy, coherence and heat columns"},
        {"interfere", "position and momentum pointer distributions"},
        {"sweep", "asymptotic entropy, coherence and mixedness over a parameter sweep"},
        {"selftest", "run the acceptance suite"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->allow_extras();
        sub->fallthrough();
        if (std::string(name) == "selftest") sub->add_flag("--tamper-tolerance", tamper)->group("");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return mzbath::kExitConfig;
    }

    const auto* sub = app.get_subcommands().front();
    std::vector<std::string> overrides = app.remaining(true);
    if (!out.empty()) overrides.push_back("--output.out=" + out);
    if (svg) overrides.push_back("--output.svg=true");
    if (quiet) overrides.push_back("--output.quiet=true");
    if (seed_opt->count() > 0) overrides.push_back("--output.seed=" + std::to_string(seed));

    if (config_path.empty())
        if (const char* env = std::getenv("MZBATH_CONFIG")) config_path = env;

    mzbath::RunConfig config;
    try {
        config = mzbath::load_config(config_path, overrides);
    } catch (const mzbath::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return mzbath::kExitConfig;
    }
    return mzbath::run_command(sub->get_name(), config, std::cout, std::cerr, tamper);
}
