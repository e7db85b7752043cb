#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "entdist/error.hpp"
#include "entdist/network.hpp"

// Opportunistic cost calculus over an ordered distributing set.
//
// Every function takes its candidates in priority order: candidate j is used
// only if all candidates before it failed. The order is the caller's choice;
// the engine sorts by ascending downstream cost with ties broken by node id
// (see `priority_before`).

namespace entdist {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct EdgeQuality {
  double p = 0.0;      // success probability of the stored pair
  double omega = 0.0;  // usability of the stored pair

  /// Usability-weighted success probability p * omega.
  double weight() const noexcept { return p * omega; }

  friend bool operator==(const EdgeQuality&, const EdgeQuality&) = default;
};

struct Candidate {
  NodeId node = 0;
  EdgeQuality quality;
  double downstream_cost = 0.0;  // finalized cost from `node` to the target

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Priority order used by the engine.
inline bool priority_before(const Candidate& a, const Candidate& b) {
  if (a.downstream_cost != b.downstream_cost) return a.downstream_cost < b.downstream_cost;
  return a.node < b.node;
}

namespace detail {

inline void check_probability(double p, const char* op) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(op) + ": probability " + std::to_string(p) + " outside [0,1]");
}

/// 1 / (1 - prod(1 - x_j)), +inf when nothing can succeed.
template <typename Prob>
double anypath_set_cost(std::size_t n, Prob prob, const char* op) {
  double miss = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = prob(j);
    check_probability(x, op);
    miss *= 1.0 - x;
  }
  const double hit = 1.0 - miss;
  return hit > 0.0 ? 1.0 / hit : kInfinity;
}

/// x_j prod_{k<j}(1 - x_k) / (1 - prod_k(1 - x_k)) for every j. The
/// denominator is accumulated as the sum of the numerators, which equals
/// 1 - prod_k(1 - x_k) exactly in real arithmetic.
template <typename Prob>
std::vector<double> first_success_distribution(std::size_t n, Prob prob, const char* op) {
  std::vector<double> out(n);
  double miss = 1.0;
  double hit = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = prob(j);
    check_probability(x, op);
    out[j] = x * miss;
    hit += out[j];
    miss *= 1.0 - x;
  }
  if (!(hit > 0.0)) throw DomainError(std::string(op) + ": no candidate has positive success probability");
  for (double& v : out) v /= hit;
  return out;
}

template <typename Prob>
double expected_downstream(std::span<const Candidate> c, Prob prob, const char* op) {
  if (c.empty()) throw InvalidInput(std::string(op) + ": empty candidate list");
  const auto phi = first_success_distribution(c.size(), prob, op);
  double sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (phi[j] == 0.0) continue;  // an unselectable candidate contributes nothing, even at +inf
    sum += phi[j] * c[j].downstream_cost;
  }
  return sum;
}

}  // namespace detail

// --- unweighted -------------------------------------------------------------

/// Expected number of attempts until some candidate holds the pair.
inline double set_cost(std::span<const double> ps) {
  return detail::anypath_set_cost(ps.size(), [&](std::size_t j) { return ps[j]; }, "set_cost");
}

inline std::vector<double> selection_probabilities(std::span<const double> ps) {
  return detail::first_success_distribution(ps.size(), [&](std::size_t j) { return ps[j]; }, "selection_probability");
}

/// Probability that candidate j is the first to succeed, given that one does.
inline double selection_probability(std::span<const double> ps, std::size_t j) {
  if (j >= ps.size()) throw InvalidInput("selection_probability: index out of range");
  return selection_probabilities(ps)[j];
}

inline double relay_cost(std::span<const Candidate> c) {
  return detail::expected_downstream(c, [&](std::size_t j) { return c[j].quality.p; }, "relay_cost");
}

inline double total_cost_unweighted(std::span<const Candidate> c) {
  std::vector<double> ps;
  ps.reserve(c.size());
  for (const auto& cand : c) ps.push_back(cand.quality.p);
  const double head = set_cost(ps);
  if (std::isinf(head)) return kInfinity;
  return head + relay_cost(c);
}

// --- usability weighted -----------------------------------------------------

/// 1 / (p * omega); +inf for an unusable pair.
inline double pair_cost(const EdgeQuality& q) {
  const double w = q.weight();
  return w > 0.0 ? 1.0 / w : kInfinity;
}

inline double weighted_set_cost(std::span<const EdgeQuality> qs) {
  return detail::anypath_set_cost(qs.size(), [&](std::size_t j) { return qs[j].weight(); }, "weighted_set_cost");
}

inline std::vector<double> weighted_selection_probabilities(std::span<const EdgeQuality> qs) {
  return detail::first_success_distribution(
      qs.size(), [&](std::size_t j) { return qs[j].weight(); }, "weighted_selection_probability");
}

inline double weighted_selection_probability(std::span<const EdgeQuality> qs, std::size_t j) {
  if (j >= qs.size()) throw InvalidInput("weighted_selection_probability: index out of range");
  return weighted_selection_probabilities(qs)[j];
}

inline std::vector<double> weighted_selection_probabilities(std::span<const Candidate> c) {
  return detail::first_success_distribution(
      c.size(), [&](std::size_t j) { return c[j].quality.weight(); }, "weighted_selection_probability");
}

inline double weighted_relay_cost(std::span<const Candidate> c) {
  return detail::expected_downstream(c, [&](std::size_t j) { return c[j].quality.weight(); }, "weighted_relay_cost");
}

/// Cost from a node to the target through distributing set `c`.
inline double weighted_total_cost(std::span<const Candidate> c) {
  const double head = detail::anypath_set_cost(
      c.size(), [&](std::size_t j) { return c[j].quality.weight(); }, "weighted_total_cost");
  if (std::isinf(head)) return kInfinity;
  return head + weighted_relay_cost(c);
}

}  // namespace entdist
