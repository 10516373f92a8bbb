#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gapex/mdp.hpp"

namespace gapex {

/// Environment file: the MDP plus one or more named reward tables and an
/// optional layout block describing generator-specific state roles.
struct EnvironmentFile {
    TabularMdp mdp;
    std::vector<std::pair<std::string, RewardFn>> rewards;
    nlohmann::json layout;  // may be null
};

void write_environment(const std::filesystem::path& path, const EnvironmentFile& env);
EnvironmentFile read_environment(const std::filesystem::path& path);

const RewardFn& find_reward(const EnvironmentFile& env, const std::string& name);

/// History CSV: header episode,step,state,action,next_state with 1-based
/// episode/step numbers and 0-based state/action indices.
void write_history_csv(const std::filesystem::path& path, const History& history);
History read_history_csv(const std::filesystem::path& path);

struct ResultRow {
    std::string method;
    int checkpoint_k = 0;
    double planning_error = 0.0;
    int mixture_size = 0;
    double optimal_value = 0.0;
};

/// Results CSV; the method column is included only when requested (multi-
/// method benchmark output).
void write_results_csv(const std::filesystem::path& path,
                       const std::vector<ResultRow>& rows, bool with_method_column);
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);

/// Shortest decimal form that round-trips a double ("%.17g" trimmed).
std::string format_double(double value);

}  // namespace gapex
