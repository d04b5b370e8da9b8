#include "ulam/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace ulam {

Config& config() {
    static Config cfg;
    return cfg;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

int load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    int applied = 0;
    std::string line;
    Config& cfg = config();
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "factorial_memo_cap") cfg.factorial_memo_cap = std::stoull(val);
        else if (key == "exact_cell_cap") cfg.exact_cell_cap = std::stoll(val);
        else if (key == "perm_enum_max_n") cfg.perm_enum_max_n = std::stoi(val);
        else if (key == "walk_enum_max_len") cfg.walk_enum_max_len = std::stoi(val);
        else if (key == "series_default_degree") cfg.series_default_degree = std::stoi(val);
        else if (key == "quad_start_nodes") cfg.quad_start_nodes = std::stoi(val);
        else if (key == "quad_max_nodes_1d") cfg.quad_max_nodes_1d = std::stoi(val);
        else if (key == "quad_max_nodes_2d") cfg.quad_max_nodes_2d = std::stoi(val);
        else if (key == "quad_tol") cfg.quad_tol = std::stod(val);
        else if (key == "mc_max_n") cfg.mc_max_n = std::stoi(val);
        else if (key == "mc_max_k") cfg.mc_max_k = std::stoi(val);
        else if (key == "mc_node_cap") cfg.mc_node_cap = std::stoll(val);
        else if (key == "partition_cell_cap") cfg.partition_cell_cap = std::stoll(val);
        else if (key == "bisect_max_iter") cfg.bisect_max_iter = std::stoi(val);
        else if (key == "bisect_tol") cfg.bisect_tol = std::stod(val);
        else throw std::runtime_error("unknown config key: " + key);
        ++applied;
    }
    return applied;
}

unsigned thread_budget() {
    if (const char* env = std::getenv("ULAMLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        return v >= 1 ? static_cast<unsigned>(v) : 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace ulam
