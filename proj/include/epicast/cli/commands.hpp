#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "epicast/epi.hpp"
#include "epicast/monitor.hpp"
#include "epicast/tdnn.hpp"

namespace epicast::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;

/**
 * Everything one CLI invocation needs. Every run carries a seed; derived
 * seeds are documented next to each command.
 */
struct RunConfig {
    std::string command;
    std::filesystem::path input;
    std::vector<std::string> models;  // empty means the command's default
    std::size_t horizon = 7;
    std::size_t window = kDefaultMonitorWindow;
    std::uint64_t seed = kDefaultSeed;
    std::filesystem::path out = ".";
    TdnnConfig tdnn;  // tdnn.seed is overwritten from `seed`
    std::string weight_mode = "last";

    // shelflife
    std::optional<std::size_t> train_len;  // default: length - 150, or half when shorter
    double threshold_pct = 5.0;

    // r0
    GenerationInterval generation_interval;
    std::size_t growth_window = 30;
    std::optional<double> population;

    bool svg = false;
    bool weekly = false;
};

/// Files produced by a command, written together by commit(). If any write
/// fails, files already written by this set are removed again.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void add(std::string name, std::string content);
    std::vector<std::filesystem::path> commit() const;

    const std::vector<std::pair<std::string, std::string>>& files() const noexcept { return files_; }

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

// Each builder computes a command's outputs without touching the disk.

/// forecast.csv: date,point_forecast,clamped_forecast (clamped = max(0, raw)).
/// Model seed: `seed`.
OutputSet build_forecast(const RunConfig& config);

/// adjust.csv: state,unadjusted,weight,correction,adjusted (national row
/// first, with an empty weight) plus adjust_summary.csv. National model
/// seed: `seed`; state i (0-based) uses seed + 100 (i + 1).
OutputSet build_adjust(const RunConfig& config);

/// monitor.csv, dominance.csv, timeline.csv, winners.csv. Origin T refits
/// with seed + T.
OutputSet build_monitor(const RunConfig& config);

/// ape.csv (t,ape,fitted_line) and shelflife.txt. Model seed: `seed`.
OutputSet build_shelflife(const RunConfig& config);

/// r0.csv: location,method,r0,ci_lower,ci_upper,mse.
OutputSet build_r0(const RunConfig& config);

/// Runs config.command end to end. Returns the process exit code; errors are
/// reported on stderr and leave no partial outputs behind.
int run(const RunConfig& config);

}  // namespace epicast::cli
