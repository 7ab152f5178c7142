#pragma once

#include "cavq/params.hpp"
#include "cavq/protocol.hpp"
#include "cavq/wigner.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cavq {

/// Flat `key = value` configuration with `#` comments. Values set later (for
/// example from command-line flags) replace earlier ones.
class RunConfig {
public:
    static RunConfig parse(std::istream& in);
    static RunConfig load(const std::string& path);

    /// Sets a key; `line` is used only for diagnostics (0 for flags).
    void set(const std::string& key, const std::string& value, int line = 0);
    bool has(const std::string& key) const;
    void erase(const std::string& key);

    std::optional<double> number(const std::string& key) const;
    /// Throws ConfigError naming the key when absent.
    double require(const std::string& key) const;

    /// System parameters; `q_factor` is optional here.
    SystemParams params() const;
    double alpha() const;
    /// tau2_s when given, otherwise derived from `phi`.
    double tau2(const SystemParams& p) const;
    double target_phi(const SystemParams& p) const;
    Outcome outcome() const;
    ProtocolOptions protocol_options() const;
    /// Wigner export frame: "aligned" (default) rotates phase space so beta
    /// is real and positive; "lab" keeps the free-field rotation.
    bool wigner_aligned() const;
    int nmax() const;
    GridSpec grid() const;

    /// Every recognised key with its effective value, defaults expanded.
    std::map<std::string, std::string> resolved() const;
    const std::map<std::string, std::string>& raw() const { return values_; }

    static const std::vector<std::string>& known_keys();

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_;
};

}  // namespace cavq
