#include "gapex/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gapex {

namespace {

using nlohmann::json;

json tensor3(const std::vector<double>& data, int d0, int d1, int d2) {
    json out = json::array();
    std::size_t i = 0;
    for (int a = 0; a < d0; ++a) {
        json mid = json::array();
        for (int b = 0; b < d1; ++b) {
            json row = json::array();
            for (int c = 0; c < d2; ++c) row.push_back(data[i++]);
            mid.push_back(std::move(row));
        }
        out.push_back(std::move(mid));
    }
    return out;
}

std::vector<double> untensor3(const json& j, int d0, int d1, int d2,
                              const char* what) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(d0) * d1 * d2);
    if (!j.is_array() || static_cast<int>(j.size()) != d0) {
        throw MdpError(std::string(what) + ": bad outer dimension");
    }
    for (int a = 0; a < d0; ++a) {
        const json& mid = j[a];
        if (!mid.is_array() || static_cast<int>(mid.size()) != d1) {
            throw MdpError(std::string(what) + ": bad middle dimension");
        }
        for (int b = 0; b < d1; ++b) {
            const json& row = mid[b];
            if (!row.is_array() || static_cast<int>(row.size()) != d2) {
                throw MdpError(std::string(what) + ": bad inner dimension");
            }
            for (int c = 0; c < d2; ++c) out.push_back(row[c].get<double>());
        }
    }
    return out;
}

}  // namespace

void write_environment(const std::filesystem::path& path, const EnvironmentFile& env) {
    json j;
    j["S"] = env.mdp.num_states;
    j["A"] = env.mdp.num_actions;
    j["H"] = env.mdp.horizon;
    j["x1"] = env.mdp.initial_state;
    j["P"] = tensor3(env.mdp.transition, env.mdp.num_states, env.mdp.num_actions,
                     env.mdp.num_states);
    json rewards = json::array();
    for (const auto& [name, reward] : env.rewards) {
        json entry;
        entry["name"] = name;
        entry["r"] = tensor3(reward.r, reward.horizon, reward.num_states,
                             reward.num_actions);
        rewards.push_back(std::move(entry));
    }
    j["rewards"] = std::move(rewards);
    if (!env.layout.is_null()) j["layout"] = env.layout;

    std::ofstream out(path);
    if (!out) throw MdpError("cannot open " + path.string() + " for writing");
    out << j.dump(1) << '\n';
}

EnvironmentFile read_environment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MdpError("cannot open " + path.string());
    json j;
    in >> j;

    EnvironmentFile env;
    env.mdp.num_states = j.at("S").get<int>();
    env.mdp.num_actions = j.at("A").get<int>();
    env.mdp.horizon = j.at("H").get<int>();
    env.mdp.initial_state = j.at("x1").get<int>();
    env.mdp.transition = untensor3(j.at("P"), env.mdp.num_states, env.mdp.num_actions,
                                   env.mdp.num_states, "P");
    for (const json& entry : j.at("rewards")) {
        RewardFn reward;
        reward.horizon = env.mdp.horizon;
        reward.num_states = env.mdp.num_states;
        reward.num_actions = env.mdp.num_actions;
        reward.r = untensor3(entry.at("r"), reward.horizon, reward.num_states,
                             reward.num_actions, "r");
        env.rewards.emplace_back(entry.at("name").get<std::string>(),
                                 std::move(reward));
    }
    if (j.contains("layout")) env.layout = j["layout"];
    return env;
}

const RewardFn& find_reward(const EnvironmentFile& env, const std::string& name) {
    for (const auto& [reward_name, reward] : env.rewards) {
        if (reward_name == name) return reward;
    }
    throw MdpError("no reward named '" + name + "' in environment file");
}

void write_history_csv(const std::filesystem::path& path, const History& history) {
    std::ofstream out(path);
    if (!out) throw MdpError("cannot open " + path.string() + " for writing");
    out << "episode,step,state,action,next_state\n";
    for (int k = 0; k < history.episodes(); ++k) {
        const Trajectory& traj = history.trajectories[k];
        for (std::size_t h = 0; h < traj.steps.size(); ++h) {
            out << (k + 1) << ',' << (h + 1) << ',' << traj.steps[h].state << ','
                << traj.steps[h].action << ',' << traj.next_states[h] << '\n';
        }
    }
}

History read_history_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MdpError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "episode,step,state,action,next_state") {
        throw MdpError("bad history header in " + path.string());
    }
    History history;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        long episode, step, state, action, next_state;
        char c1, c2, c3, c4;
        if (!(ss >> episode >> c1 >> step >> c2 >> state >> c3 >> action >> c4 >>
              next_state)) {
            throw MdpError("bad history row: " + line);
        }
        if (episode < 1 || step < 1) throw MdpError("history indices must be 1-based");
        while (history.episodes() < episode) history.trajectories.emplace_back();
        Trajectory& traj = history.trajectories[episode - 1];
        if (static_cast<long>(traj.steps.size()) + 1 != step) {
            throw MdpError("history steps out of order in episode " +
                           std::to_string(episode));
        }
        traj.steps.push_back({static_cast<state_t>(state), static_cast<action_t>(action)});
        traj.next_states.push_back(static_cast<state_t>(next_state));
    }
    return history;
}

void write_results_csv(const std::filesystem::path& path,
                       const std::vector<ResultRow>& rows, bool with_method_column) {
    std::ofstream out(path);
    if (!out) throw MdpError("cannot open " + path.string() + " for writing");
    if (with_method_column) out << "method,";
    out << "checkpoint_k,planning_error,mixture_size,optimal_value\n";
    for (const ResultRow& row : rows) {
        if (with_method_column) out << row.method << ',';
        out << row.checkpoint_k << ',' << format_double(row.planning_error) << ','
            << row.mixture_size << ',' << format_double(row.optimal_value) << '\n';
    }
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MdpError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw MdpError("empty results file");
    const bool with_method = line.rfind("method,", 0) == 0;
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        ResultRow row;
        std::string field;
        if (with_method) {
            if (!std::getline(ss, field, ',')) throw MdpError("bad results row");
            row.method = field;
        }
        std::getline(ss, field, ',');
        row.checkpoint_k = std::stoi(field);
        std::getline(ss, field, ',');
        row.planning_error = std::stod(field);
        std::getline(ss, field, ',');
        row.mixture_size = std::stoi(field);
        std::getline(ss, field, ',');
        row.optimal_value = std::stod(field);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_double(double value) {
    char buf[40];
    // 17 significant digits round-trip any double; drop digits while the
    // value still parses back exactly.
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

}  // namespace gapex
