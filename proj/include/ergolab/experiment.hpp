#ifndef ERGOLAB_EXPERIMENT_HPP
#define ERGOLAB_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ergolab {

/// Everything a subcommand can consume. Unused fields are ignored by the
/// commands that do not know them; the CLI layer rejects unknown flags.
struct ExperimentConfig {
    std::string command;
    std::vector<std::string> system;

    long long n = 1000;
    long long lyap_n = 1000;
    int samples = 20;
    std::uint64_t seed = 1;
    std::vector<double> x;  // initial point; sampled from seed when empty

    std::vector<int> partition{2};
    std::vector<long long> m_list;
    std::vector<long long> p_list;
    std::vector<long long> checkpoints;

    int nphi = 33;
    double eps_cluster = 0.02;
    double tol = 0.1;

    double alpha = 0.1;
    double grid_step = 0.01;

    int cr_r = 2;
    double cr_lambda = 2.0;
    int cr_n0 = 5;
    int cr_nmax = 12;
    bool certify = false;
    long long orbit_steps = 0;  // 0: cover every built stage

    std::vector<double> blocks;
    double a_threshold = 0.0;
    int floor_guard = 50;

    std::string output;         // empty: stdout
    std::string format = "json";
};

struct ExperimentResult {
    int exit_code = 0;          // 0 ok, 2 inequality/certification failure
    nlohmann::json report;
    std::string csv;            // tabular view where one exists
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes the report in the configured format to the output path or stdout.
void emit(const ExperimentResult& res, const ExperimentConfig& cfg);

/// Full pipeline behind the binary: parse argv, run, emit.
/// Returns the process exit code (1 on usage errors).
int run_cli(int argc, const char* const* argv);
int run_cli_line(const std::string& command_line);

}  // namespace ergolab

#endif
