#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dwring::cli {

enum class Command { profile, spectrum, effective_exchange, composite };

std::string to_string(Command command);
Command command_from_string(const std::string& name);

/// Malformed or inconsistent run configuration. Exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output. Exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One scanned parameter. `pointer` is a JSON pointer into the input document,
/// e.g. "/rings/0/profile/params/phase".
struct GridAxis {
    std::string name;
    std::string pointer;
    std::vector<double> values;
};

struct Tolerances {
    double lanczos_tol = 1e-9;
    int lanczos_max_iter = 20000;
    double degeneracy_rel_tol = 1e-10;
    double validity_threshold = 0.25;
    double level_merge_rel = 1e-9;
};

struct RunConfig {
    Command command = Command::profile;
    nlohmann::json input;
    std::vector<GridAxis> grid;
    nlohmann::json options = nlohmann::json::object();
    Tolerances tolerances;
    std::string output;
    std::string format = "csv";
    std::uint64_t seed = 1;
    int threads = 1;

    /// Everything that determines the numbers: command, resolved input, grid,
    /// options, tolerances, seed. Threads and output path are left out.
    nlohmann::json echo() const;
};

/// Reads and validates a config file. Paths inside it are resolved relative
/// to the file's directory.
RunConfig load_config(const std::filesystem::path& path);

/// Validates a parsed config document. Unknown fields are rejected.
RunConfig parse_config(const nlohmann::json& document, const std::filesystem::path& base_dir);

/// Points of start..stop (inclusive unless endpoint is false).
std::vector<double> grid_values(double start, double stop, int points, bool endpoint);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace dwring::cli
