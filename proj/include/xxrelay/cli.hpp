#pragma once

#include <string>
#include <vector>

#include "xxrelay/basis.hpp"
#include "xxrelay/cluster.hpp"

namespace xxrelay {

inline constexpr const char* kToolName = "xxrelay";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kOutputDirEnv = "XXRELAY_OUT";

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    double step = 0.01;

    std::vector<double> points() const;
};

struct TimeGridSpec {
    double horizon = 20.0;
    double dt = 0.01;
};

// cluster selector from the config file; i == 0 means every valid position
struct ClusterSelector {
    int M = 2;
    int i = 0;
};

struct RunConfig {
    std::string mode;
    ChainConfig chain;
    double lambda = 0.7;
    double alpha = 0.0;
    GridSpec lambda_grid{0.5, 1.0, 0.01};
    GridSpec alpha_grid{0.0, 1.0, 0.02};
    TimeGridSpec time;
    std::vector<ClusterSelector> clusters;
    double epsilon_C = 0.1;
    int nodes = 32;
    int threads = 1;
    double threshold = 1e-6;
    bool independent_angles = false;
    std::string figure;
    // destination of the run artifacts; set by --out or the environment
    // override, never stored in configs or manifests
    std::string output_dir = "out";
};

// Parses and validates the JSON config document; accepts a previously written
// manifest as well (the embedded config object is unwrapped). Throws
// ConfigError on unknown keys, type mismatches, or invalid values.
RunConfig parse_config(const std::string& text);
RunConfig parse_config(const std::string& text, const std::string& mode_override);

std::string serialize_config(const RunConfig& config);

// concrete cluster list for a run: selectors expanded, epsilon_C applied
std::vector<ClusterSpec> expand_clusters(const RunConfig& config);

// Executes one mode, writing CSV artifacts, plot scripts, and manifest.json
// into output_dir. Returns 0; errors are reported by exception.
int run(const RunConfig& config);

// flag parsing and exit-code mapping: 0 ok, 2 invalid config, 3 numerical
// failure
int cli_main(int argc, char** argv);

}  // namespace xxrelay
