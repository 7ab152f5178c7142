#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cavq::cli {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;  ///< key=value, applied after the file
    std::vector<std::string> argv;       ///< recorded in manifests
};

struct PrepareArgs {
    CommonArgs common;
    std::optional<std::string> outcome;
    std::optional<std::string> fock_out;
};

struct WignerArgs {
    CommonArgs common;
    std::optional<double> tau3;
    std::string mode = "unit";
    bool numeric = false;
    std::string out;
};

struct ReadoutArgs {
    CommonArgs common;
    std::string taus = "0:1e-6:21";
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
    std::string out;
};

struct EstimateArgs {
    CommonArgs common;
    std::string data;
    double q_lo = 1e4;
    double q_hi = 1e8;
    bool fit_phase = false;
    std::optional<std::string> out;
};

struct ValidateArgs {
    double perturb = 0.0;
    std::optional<std::string> summary;
    std::vector<std::string> argv;
};

// Exit codes: 0 success, 1 validation or fit failure, 2 usage error.
int cmd_prepare(const PrepareArgs& a);
int cmd_wigner(const WignerArgs& a);
int cmd_readout(const ReadoutArgs& a);
int cmd_estimate(const EstimateArgs& a);
int cmd_validate(const ValidateArgs& a);

/// Parses "start:stop:count" or a comma-separated list.
std::vector<double> parse_taus(const std::string& spec);

}  // namespace cavq::cli
