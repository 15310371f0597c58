#pragma once

// Exact final-size distribution of continuous-time SIR on a tiny graph.
//
// The embedded jump chain of the Markov process is enumerated with
// memoization over the 3^n joint states. Each S-I edge fires at rate beta,
// each infected node recovers at rate gamma; the chain moves to each
// neighbor state with probability rate / total rate.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

class JumpChain {
 public:
  JumpChain(std::size_t n, std::vector<std::pair<int, int>> edges, double beta, double gamma)
      : n_(n), edges_(std::move(edges)), beta_(beta), gamma_(gamma) {}

  /// P(final removed count = r), r = 0..n, for `rho` initial infected
  /// chosen uniformly among all subsets of that size.
  std::vector<double> final_size_distribution(std::size_t rho) {
    std::vector<double> total(n_ + 1, 0.0);
    std::size_t subsets = 0;
    for (unsigned mask = 0; mask < (1u << n_); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != rho) continue;
      ++subsets;
      std::vector<int> state(n_, 0);
      for (std::size_t v = 0; v < n_; ++v) {
        if (mask & (1u << v)) state[v] = 1;
      }
      const auto& dist = solve(state);
      for (std::size_t r = 0; r <= n_; ++r) total[r] += dist[r];
    }
    for (double& p : total) p /= static_cast<double>(subsets);
    return total;
  }

 private:
  // state[v]: 0 = S, 1 = I, 2 = R
  const std::vector<double>& solve(const std::vector<int>& state) {
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;
    std::vector<double> out(n_ + 1, 0.0);
    double total_rate = 0.0;
    std::vector<std::pair<std::vector<int>, double>> moves;
    for (std::size_t v = 0; v < n_; ++v) {
      if (state[v] != 1) continue;
      auto next = state;
      next[v] = 2;
      moves.emplace_back(next, gamma_);
      total_rate += gamma_;
    }
    for (auto [a, b] : edges_) {
      for (auto [i, s] : {std::pair{a, b}, std::pair{b, a}}) {
        if (state[i] == 1 && state[s] == 0 && beta_ > 0.0) {
          auto next = state;
          next[s] = 1;
          moves.emplace_back(next, beta_);
          total_rate += beta_;
        }
      }
    }
    if (moves.empty()) {
      std::size_t removed = 0;
      for (int x : state) removed += x == 2;
      out[removed] = 1.0;
    } else {
      for (const auto& [next, rate] : moves) {
        const auto& sub = solve(next);
        for (std::size_t r = 0; r <= n_; ++r) out[r] += rate / total_rate * sub[r];
      }
    }
    return memo_.emplace(state, std::move(out)).first->second;
  }

  std::size_t n_;
  std::vector<std::pair<int, int>> edges_;
  double beta_;
  double gamma_;
  std::map<std::vector<int>, std::vector<double>> memo_;
};

}  // namespace oracle
