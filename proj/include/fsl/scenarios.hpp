#pragma once

// Verification campaigns. Each returns a report; a failure carries the
// serialized input that reproduces it through the CLI.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fsl/io.hpp"

namespace fsl {

struct Failure {
  std::string check;
  io::Json input;  ///< replayable: files for the matching CLI subcommand
  std::string expected;
  std::string actual;
};

struct CheckTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct CampaignReport {
  std::string scenario;
  std::size_t trials = 0;
  std::vector<Failure> failures;
  double ms = 0;
  std::map<std::string, CheckTally> checks;

  bool passed() const noexcept { return failures.empty(); }
  /// Tallies `check`; on failure stores the counterexample.
  void record(const std::string& check, bool ok, const io::Json& input = {}, const std::string& expected = {},
              const std::string& actual = {});
  /// Folds another report in, prefixing its check names with its scenario.
  void absorb(const CampaignReport& other);
};

io::Json report_to_json(const CampaignReport& r);
/// Fixed-width table; carries no timings so that it is byte-stable.
std::string report_to_text(const CampaignReport& r);

struct Mod4Config {
  std::size_t surface_trials = 100;  ///< split over genus {1,2} × rank {2,4}
  std::size_t cp2_trials = 20;
  std::size_t max_pairing_rank = 3;
};

struct LinkingConfig {
  std::size_t trials = 100;
};

struct R1Config {
  std::size_t trials = 500;
  std::size_t max_rank = 6;
};

struct VerifyConfig {
  Mod4Config mod4;
  LinkingConfig linking;
  R1Config r1;
  unsigned dold_k_max = 5;
  unsigned power_sum_max = 16;
  unsigned long legendre_max = 100000;
  unsigned tilde_ph_max = 6;
  unsigned ch_psi2_max = 8;
  unsigned l_max = 6;
  unsigned hirzebruch_max = 3;
  unsigned thom_max = 12;
  unsigned adem_k_max = 3;
  unsigned adem_degree = 12;
  unsigned derham_degree = 8;

  /// Overrides every random-trial count (mod-4 surfaces, linking, r1).
  void set_trials(std::size_t n);
};

CampaignReport run_mult_mod4(const Mod4Config& config, std::uint64_t seed);
CampaignReport run_mult_mod4(std::size_t trials, std::uint64_t seed);
CampaignReport run_linking_campaign(std::size_t trials, std::uint64_t seed);
CampaignReport run_r1_campaign(const R1Config& config, std::uint64_t seed);
CampaignReport run_r1_campaign(std::size_t trials, std::uint64_t seed);
CampaignReport run_dold(unsigned k_max);
CampaignReport run_charclass_checks(const VerifyConfig& config);
CampaignReport run_fixture_checks();
CampaignReport run_verify_all(std::uint64_t seed, const VerifyConfig& config = {});

/// d(ℝP^n) from its integral homology: the 2-rank of the torsion in the
/// middle degree, mod 2 (n ≡ 1 mod 4).
int rp_derham_invariant(unsigned n);

/// σ(ℂP²) from the bundled triangulation with the trivial rank-1 system.
long cp2_signature();

}  // namespace fsl
