#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "balance/destroy.h"

namespace balance {

/// Sufficient statistics of one arm: reward sum w, pull count T and sum of
/// squared rewards q. Every derived quantity is O(1) from these.
struct ArmStats {
  double w = 0.0;
  int64_t T = 0;
  double q = 0.0;

  /// w/T, 0 for an unpulled arm.
  double mean() const { return T > 0 ? w / static_cast<double>(T) : 0.0; }
  /// q/T - mean^2 clamped at 0 against rounding, 0 for an unpulled arm.
  double variance() const;

  friend bool operator==(const ArmStats&, const ArmStats&) = default;
};

/// Records one non-negative reward.
void update(ArmStats& stats, double reward);

struct NormalGammaPrior {
  double mu0 = 0.0;
  double lambda0 = 0.01;
  double alpha0 = 1.0;
  double beta0 = 100.0;
};

/// Normal-Gamma parameters (mean, precision scale, shape, rate).
struct NormalGammaParams {
  double mu = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Conjugate update of the prior with the arm's observed rewards.
NormalGammaParams posterior(const ArmStats& stats, const NormalGammaPrior& prior);

struct RoulettePolicy {};
struct Ucb1Policy {
  double xi = 1000.0;
};
struct ThompsonPolicy {
  NormalGammaPrior prior;
};
struct UniformPolicy {};

using Policy = std::variant<RoulettePolicy, Ucb1Policy, ThompsonPolicy, UniformPolicy>;

std::string policy_name(const Policy& policy);
/// Throws std::invalid_argument for xi <= 0, lambda0 <= 0, alpha0 < 1 or
/// beta0 < 0.
void check_policy(const Policy& policy);

/// Arm k with probability w_k / sum(w); uniform when every weight is 0.
int select_roulette(std::span<const ArmStats> arms, Rng& rng);
/// argmax of mean_k + xi * sqrt(ln(T) / T_k); unpulled arms score +inf.
int select_ucb1(std::span<const ArmStats> arms, double xi, Rng& rng);
/// argmax over arms of a mean drawn from each arm's Normal-Gamma posterior
/// (precision ~ Gamma(shape, rate), mean ~ Normal(mu, 1 / (lambda * precision))).
int select_thompson(std::span<const ArmStats> arms, const NormalGammaPrior& prior, Rng& rng);
int select_uniform(std::span<const ArmStats> arms, Rng& rng);

/// Dispatches on the policy. Ties are broken uniformly at random.
int select_with(const Policy& policy, std::span<const ArmStats> arms, Rng& rng);

/// A policy over a fixed set of arms with round-robin warm-up: while any arm
/// is unpulled the lowest-index one is returned.
class BanditBank {
 public:
  BanditBank(Policy policy, int num_arms);

  int select(Rng& rng) const;
  void update(int arm, double reward) { balance::update(arms_.at(arm), reward); }

  std::span<const ArmStats> arms() const { return arms_; }
  int64_t total_pulls() const;
  const Policy& policy() const { return policy_; }

 private:
  Policy policy_;
  std::vector<ArmStats> arms_;
};

/// A destroy heuristic and a neighborhood size exponent e (size 2^e).
struct ArmChoice {
  HeuristicKind heuristic = HeuristicKind::kRandomUniform;
  int exponent = 1;

  int neighborhood_size() const { return 1 << exponent; }
  friend bool operator==(const ArmChoice&, const ArmChoice&) = default;
};

/// Strategy choosing (H, e) each iteration and learning from its reward.
class ArmScheme {
 public:
  virtual ~ArmScheme() = default;
  virtual ArmChoice select(Rng& rng) = 0;
  virtual void update(const ArmChoice& choice, double reward) = 0;
};

/// H-bandit over destroy heuristics; per heuristic an N-bandit over
/// exponents 1..E. Warm-up enumerates every (H, e) pair once, H outer.
class BiLevelBandit final : public ArmScheme {
 public:
  BiLevelBandit(const Policy& policy, int num_exponents, int num_heuristics = kNumHeuristics);

  ArmChoice select(Rng& rng) override;
  void update(const ArmChoice& choice, double reward) override;

  const BanditBank& heuristic_bandit() const { return heuristic_bandit_; }
  const BanditBank& size_bandit(HeuristicKind h) const { return size_bandits_[static_cast<int>(h)]; }
  int num_exponents() const { return num_exponents_; }

 private:
  int num_exponents_;
  BanditBank heuristic_bandit_;
  std::vector<BanditBank> size_bandits_;
};

/// Single bandit over the flattened |H| x E arm space.
class JointBandit final : public ArmScheme {
 public:
  JointBandit(const Policy& policy, int num_exponents, int num_heuristics = kNumHeuristics);

  ArmChoice select(Rng& rng) override;
  void update(const ArmChoice& choice, double reward) override;

  /// Row-major with the heuristic outer: h * E + (e - 1).
  int arm_index(const ArmChoice& choice) const;
  ArmChoice arm_choice(int index) const;
  const BanditBank& bank() const { return bank_; }

 private:
  int num_exponents_;
  BanditBank bank_;
};

/// Always the same pair; plain MAPF-LNS with a tuned configuration.
class FixedChoice final : public ArmScheme {
 public:
  explicit FixedChoice(ArmChoice choice) : choice_(choice) {}
  ArmChoice select(Rng&) override { return choice_; }
  void update(const ArmChoice&, double) override {}

 private:
  ArmChoice choice_;
};

}  // namespace balance
