#pragma once

// Tabular TD control: exploration rule and the two update rules, generic over
// state type and action count.

#include <cstddef>

#include "camtune/rl/qtable.hpp"
#include "camtune/rng.hpp"

namespace camtune::rl {

/// Exploration follows the inverted convention: draw u in [0,1); u > epsilon
/// picks a uniformly random action, otherwise the greedy one. A larger
/// epsilon therefore means *less* exploration (epsilon = 1 is pure greedy).
template <typename State, std::size_t N>
std::size_t select_action(const QTable<State, N>& q, const State& s, double epsilon, Rng& rng) {
  const double u = rng.uniform01();
  if (u > epsilon) return rng.uniform_index(N);
  return q.greedy_action(s);
}

/// Moves current toward target by alpha. Exact at both ends: alpha = 0 keeps
/// current, alpha = 1 yields target, and target == current is a fixed point.
inline double td_step(double current, double target, double alpha) noexcept {
  if (alpha == 1.0) return target;
  return current + alpha * (target - current);
}

/// Q(s,a) += alpha * (r + gamma * Q(s',a') - Q(s,a)); returns the new Q(s,a).
template <typename State, std::size_t N>
double sarsa_update(QTable<State, N>& q, const State& s, std::size_t a, double reward,
                    const State& next_s, std::size_t next_a, double alpha, double gamma) {
  const double current = q.get(s, a);
  const double target = reward + gamma * q.get(next_s, next_a);
  const double updated = td_step(current, target, alpha);
  q.set(s, a, updated);
  return updated;
}

/// Off-policy variant bootstrapping from max_a'' Q(s',a'').
template <typename State, std::size_t N>
double q_learning_update(QTable<State, N>& q, const State& s, std::size_t a, double reward,
                         const State& next_s, double alpha, double gamma) {
  const double current = q.get(s, a);
  const double target = reward + gamma * q.max_value(next_s);
  const double updated = td_step(current, target, alpha);
  q.set(s, a, updated);
  return updated;
}

}  // namespace camtune::rl
