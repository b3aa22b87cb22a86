#pragma once

#include <array>
#include <bitset>
#include <cmath>
#include <cstddef>
#include <map>

#include "camtune/error.hpp"

namespace camtune::rl {

/// Sparse action-value table. Unset entries read as 0. State needs a strict
/// weak ordering; iteration (and therefore serialisation) is in State order.
template <typename State, std::size_t NumActions>
class QTable {
 public:
  static constexpr std::size_t kNumActions = NumActions;

  double get(const State& s, std::size_t a) const {
    const auto it = rows_.find(s);
    return it == rows_.end() ? 0.0 : it->second.q[a];
  }

  void set(const State& s, std::size_t a, double value) {
    if (a >= NumActions) throw InvalidArgument("action id out of range");
    if (!std::isfinite(value)) throw InvalidArgument("Q-values must be finite");
    Row& row = rows_[s];
    row.q[a] = value;
    row.stored.set(a);
  }

  /// argmax_a Q(s,a); ties go to the lowest action id.
  std::size_t greedy_action(const State& s) const {
    const auto it = rows_.find(s);
    if (it == rows_.end()) return 0;
    const auto& q = it->second.q;
    std::size_t best = 0;
    for (std::size_t a = 1; a < NumActions; ++a) {
      if (q[a] > q[best]) best = a;
    }
    return best;
  }

  double max_value(const State& s) const { return get(s, greedy_action(s)); }

  /// Number of explicitly stored (state, action) pairs.
  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (const auto& [s, row] : rows_) n += row.stored.count();
    return n;
  }

  bool empty() const noexcept { return rows_.empty(); }
  std::size_t state_count() const noexcept { return rows_.size(); }

  /// Calls f(state, action, value) for every stored pair.
  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [s, row] : rows_) {
      for (std::size_t a = 0; a < NumActions; ++a) {
        if (row.stored.test(a)) f(s, a, row.q[a]);
      }
    }
  }

  friend bool operator==(const QTable& lhs, const QTable& rhs) {
    return lhs.rows_ == rhs.rows_;
  }

 private:
  struct Row {
    std::array<double, NumActions> q{};
    std::bitset<NumActions> stored;
    friend bool operator==(const Row&, const Row&) = default;
  };
  std::map<State, Row> rows_;
};

}  // namespace camtune::rl
