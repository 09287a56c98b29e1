#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "multistable/alpha.hpp"
#include "multistable/series.hpp"

namespace multistable {

// Raised for malformed or invalid configuration; the message carries
// file:line context where available.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlphaConfig {
  std::string kind = "constant";  // constant | affine | sinusoidal | table
  double a0 = 1.5;
  double a1 = 0.0;
  double freq = 1.0;
  double phase = 0.0;
  std::vector<double> knots, values;  // table kind
  std::optional<double> c, d;         // optional declared bounds

  AlphaFunction build(double horizon) const;
};

struct KernelConfig {
  std::string kind;     // indicator | min | zero
  double p_exponent = 1.7;

  Kernel build(double horizon) const;
};

struct CheckThresholds {
  double cf_sup = 0.03;
  double ks_p = 0.01;
};

struct CampaignConfig {
  std::string process = "independent";  // independent | field_based | general
  double horizon = 1.0;                 // T
  int n_terms = 1000;                   // series truncation N
  int n_paths = 1;                      // M
  int grid_points = 101;                // G
  std::uint64_t seed = 1;
  std::string output_dir;
  AlphaConfig alpha;
  std::optional<KernelConfig> kernel;
  CheckThresholds thresholds;
  bool inject_alpha_mismatch = false;  // test hook for the check suite

  ProcessKind process_kind() const;
  void validate() const;
};

// Parses a campaign config. `.json` files use the JSON schema; anything else
// uses the key-value text format:
//     process = "independent"
//     T = 1.0
//     n_terms = 5000
//     alpha = { kind = "affine", a0 = 1.2, a1 = 0.3 }
CampaignConfig load_config(const std::filesystem::path& file);

// Parses the text form from a string (line numbers reported from 1).
CampaignConfig parse_config_text(const std::string& text,
                                 const std::string& origin = "<config>");

// JSON round-trip of the effective config, for manifests.
std::string config_to_json(const CampaignConfig& cfg);

}  // namespace multistable
