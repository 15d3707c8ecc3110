#include "app.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include <dwring/error.hpp>

#include "commands.hpp"
#include "config.hpp"

#ifndef DWRING_VERSION
#define DWRING_VERSION "unknown"
#endif

namespace dwring::cli {

namespace {

struct Flags {
    std::string config;
    std::optional<std::string> output;
    std::optional<std::string> format;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;
};

void add_flags(CLI::App* sub, Flags& flags) {
    sub->add_option("--config", flags.config, "Run configuration (JSON)")->required();
    sub->add_option("--output", flags.output, "Output file (default: standard output)");
    sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", flags.seed, "Seed of the Lanczos start vectors");
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path + " for writing");
    file << text;
    if (!file) throw IoError("failed writing " + path);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Effective qubit couplings of spin rings with exchange-profile domain walls", "dwring"};
    app.set_version_flag("--version", DWRING_VERSION);
    app.require_subcommand(1);

    Flags flags;
    const std::pair<const char*, const char*> commands[] = {
        {"profile", "Exchange-profile tables"},
        {"spectrum", "Lowest energies over a parameter grid"},
        {"effective-exchange", "Projected qubit-qubit exchange of a ring pair"},
        {"composite", "Multi-triangle composites: pair couplings and gap comparison"},
    };
    for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << DWRING_VERSION << "\n";
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return config_error;
    }

    try {
        RunConfig config = load_config(flags.config);
        const Command selected = command_from_string(app.get_subcommands().front()->get_name());
        if (config.command != selected) {
            throw ConfigError("config command '" + to_string(config.command) + "' does not match '" +
                              to_string(selected) + "'");
        }
        if (flags.output) config.output = *flags.output;
        if (flags.format) config.format = *flags.format;
        if (flags.threads) config.threads = *flags.threads;
        if (flags.seed) config.seed = *flags.seed;

        const Table table = run_command(config);
        write_output(config.output, render(config, table), out);
        return ok;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return io_error;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const ConvergenceError& e) {
        err << "numeric error: " << e.what() << "\n";
        return numeric_error;
    } catch (const DegenerateGroundError& e) {
        err << "numeric error: " << e.what() << "\n";
        return numeric_error;
    } catch (const UseLanczosError& e) {
        err << "numeric error: " << e.what() << "\n";
        return numeric_error;
    } catch (const ContractViolation& e) {
        err << "numeric error: " << e.what() << "\n";
        return numeric_error;
    } catch (const std::exception& e) {
        // Invalid parameters of the physical model: AFM violations, ranges, indices.
        err << "config error: " << e.what() << "\n";
        return config_error;
    }
}

}  // namespace dwring::cli
