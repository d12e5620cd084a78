#include "balance/bandits.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace balance {
namespace {

int uniform_index(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

// Uniform pick among the maximal scores.
int argmax_random_tie(std::span<const double> scores, Rng& rng) {
  const double best = *std::max_element(scores.begin(), scores.end());
  int ties = 0;
  for (double s : scores) ties += (s == best);
  int pick = ties > 1 ? uniform_index(rng, ties) : 0;
  for (size_t k = 0; k < scores.size(); ++k)
    if (scores[k] == best && pick-- == 0) return static_cast<int>(k);
  return 0;
}

}  // namespace

double ArmStats::variance() const {
  if (T == 0) return 0.0;
  const double m = mean();
  return std::max(0.0, q / static_cast<double>(T) - m * m);
}

void update(ArmStats& stats, double reward) {
  if (!(reward >= 0.0)) throw std::invalid_argument("bandit rewards must be non-negative");
  stats.w += reward;
  stats.T += 1;
  stats.q += reward * reward;
}

NormalGammaParams posterior(const ArmStats& stats, const NormalGammaPrior& prior) {
  if (stats.T == 0) return {prior.mu0, prior.lambda0, prior.alpha0, prior.beta0};
  const double n = static_cast<double>(stats.T);
  const double mean = stats.mean();
  const double dev = mean - prior.mu0;
  NormalGammaParams p;
  p.mu = (prior.lambda0 * prior.mu0 + n * mean) / (prior.lambda0 + n);
  p.lambda = prior.lambda0 + n;
  p.alpha = prior.alpha0 + n / 2.0;
  p.beta = prior.beta0 + 0.5 * (n * stats.variance() + prior.lambda0 * n * dev * dev / (prior.lambda0 + n));
  return p;
}

std::string policy_name(const Policy& policy) {
  struct {
    std::string operator()(const RoulettePolicy&) const { return "roulette"; }
    std::string operator()(const Ucb1Policy&) const { return "ucb1"; }
    std::string operator()(const ThompsonPolicy&) const { return "thompson"; }
    std::string operator()(const UniformPolicy&) const { return "random"; }
  } visitor;
  return std::visit(visitor, policy);
}

void check_policy(const Policy& policy) {
  if (const auto* ucb = std::get_if<Ucb1Policy>(&policy); ucb && !(ucb->xi > 0.0))
    throw std::invalid_argument("UCB1 exploration constant must be positive");
  if (const auto* ts = std::get_if<ThompsonPolicy>(&policy)) {
    if (!(ts->prior.lambda0 > 0.0)) throw std::invalid_argument("prior lambda0 must be positive");
    if (!(ts->prior.alpha0 >= 1.0)) throw std::invalid_argument("prior alpha0 must be >= 1");
    if (!(ts->prior.beta0 >= 0.0)) throw std::invalid_argument("prior beta0 must be >= 0");
  }
}

int select_roulette(std::span<const ArmStats> arms, Rng& rng) {
  double total = 0.0;
  for (const ArmStats& a : arms) total += a.w;
  if (total <= 0.0) return uniform_index(rng, static_cast<int>(arms.size()));
  const double ball = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  int last_positive = 0;
  for (size_t k = 0; k < arms.size(); ++k) {
    if (arms[k].w <= 0.0) continue;
    acc += arms[k].w;
    last_positive = static_cast<int>(k);
    if (ball < acc) return last_positive;
  }
  return last_positive;
}

int select_ucb1(std::span<const ArmStats> arms, double xi, Rng& rng) {
  int64_t total = 0;
  for (const ArmStats& a : arms) total += a.T;
  const double log_total = total > 0 ? std::log(static_cast<double>(total)) : 0.0;
  std::vector<double> scores(arms.size());
  for (size_t k = 0; k < arms.size(); ++k)
    scores[k] = arms[k].T == 0 ? std::numeric_limits<double>::infinity()
                               : arms[k].mean() + xi * std::sqrt(log_total / static_cast<double>(arms[k].T));
  return argmax_random_tie(scores, rng);
}

int select_thompson(std::span<const ArmStats> arms, const NormalGammaPrior& prior, Rng& rng) {
  std::vector<double> samples(arms.size());
  for (size_t k = 0; k < arms.size(); ++k) {
    const NormalGammaParams p = posterior(arms[k], prior);
    if (p.beta <= 0.0) {
      // Infinite precision: the mean is known exactly.
      samples[k] = p.mu;
      continue;
    }
    double precision = std::gamma_distribution<double>(p.alpha, 1.0 / p.beta)(rng);
    precision = std::max(precision, std::numeric_limits<double>::min());
    const double stddev = 1.0 / std::sqrt(p.lambda * precision);
    samples[k] = std::normal_distribution<double>(p.mu, stddev)(rng);
  }
  return argmax_random_tie(samples, rng);
}

int select_uniform(std::span<const ArmStats> arms, Rng& rng) {
  return uniform_index(rng, static_cast<int>(arms.size()));
}

int select_with(const Policy& policy, std::span<const ArmStats> arms, Rng& rng) {
  if (arms.size() == 1) return 0;
  struct {
    std::span<const ArmStats> arms;
    Rng& rng;
    int operator()(const RoulettePolicy&) const { return select_roulette(arms, rng); }
    int operator()(const Ucb1Policy& p) const { return select_ucb1(arms, p.xi, rng); }
    int operator()(const ThompsonPolicy& p) const { return select_thompson(arms, p.prior, rng); }
    int operator()(const UniformPolicy&) const { return select_uniform(arms, rng); }
  } visitor{arms, rng};
  return std::visit(visitor, policy);
}

BanditBank::BanditBank(Policy policy, int num_arms) : policy_(std::move(policy)), arms_(num_arms) {
  if (num_arms < 1) throw std::invalid_argument("a bandit needs at least one arm");
  check_policy(policy_);
}

int BanditBank::select(Rng& rng) const {
  for (size_t k = 0; k < arms_.size(); ++k)
    if (arms_[k].T == 0) return static_cast<int>(k);
  return select_with(policy_, arms_, rng);
}

int64_t BanditBank::total_pulls() const {
  int64_t total = 0;
  for (const ArmStats& a : arms_) total += a.T;
  return total;
}

BiLevelBandit::BiLevelBandit(const Policy& policy, int num_exponents, int num_heuristics)
    : num_exponents_(num_exponents), heuristic_bandit_(policy, num_heuristics) {
  if (num_exponents < 1) throw std::invalid_argument("E must be at least 1");
  if (num_heuristics < 1 || num_heuristics > kNumHeuristics)
    throw std::invalid_argument("unsupported number of destroy heuristics");
  size_bandits_.reserve(num_heuristics);
  for (int h = 0; h < num_heuristics; ++h) size_bandits_.emplace_back(policy, num_exponents);
}

ArmChoice BiLevelBandit::select(Rng& rng) {
  for (size_t h = 0; h < size_bandits_.size(); ++h) {
    const auto arms = size_bandits_[h].arms();
    for (size_t e = 0; e < arms.size(); ++e)
      if (arms[e].T == 0) return {static_cast<HeuristicKind>(h), static_cast<int>(e) + 1};
  }
  const int h = heuristic_bandit_.select(rng);
  const int e = size_bandits_[h].select(rng) + 1;
  return {static_cast<HeuristicKind>(h), e};
}

void BiLevelBandit::update(const ArmChoice& choice, double reward) {
  const int h = static_cast<int>(choice.heuristic);
  heuristic_bandit_.update(h, reward);
  size_bandits_.at(h).update(choice.exponent - 1, reward);
}

JointBandit::JointBandit(const Policy& policy, int num_exponents, int num_heuristics)
    : num_exponents_(num_exponents), bank_(policy, num_heuristics * std::max(num_exponents, 1)) {
  if (num_exponents < 1) throw std::invalid_argument("E must be at least 1");
  if (num_heuristics < 1 || num_heuristics > kNumHeuristics)
    throw std::invalid_argument("unsupported number of destroy heuristics");
}

ArmChoice JointBandit::select(Rng& rng) { return arm_choice(bank_.select(rng)); }

void JointBandit::update(const ArmChoice& choice, double reward) {
  bank_.update(arm_index(choice), reward);
}

int JointBandit::arm_index(const ArmChoice& choice) const {
  return static_cast<int>(choice.heuristic) * num_exponents_ + (choice.exponent - 1);
}

ArmChoice JointBandit::arm_choice(int index) const {
  return {static_cast<HeuristicKind>(index / num_exponents_), index % num_exponents_ + 1};
}

}  // namespace balance
