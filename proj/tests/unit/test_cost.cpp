#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "entdist/cost.hpp"
#include "entdist/random.hpp"

using namespace entdist;
using Catch::Matchers::WithinAbs;

namespace {

// Enumerates all 2^n success patterns of independent attempts. Returns the
// probability that at least one succeeds and, per candidate, the probability
// that it is the first success in list order.
struct Enumeration {
  double any = 0.0;
  std::vector<double> first;
};

Enumeration enumerate(const std::vector<double>& ps) {
  Enumeration out;
  out.first.assign(ps.size(), 0.0);
  const std::size_t n = ps.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double prob = 1.0;
    for (std::size_t j = 0; j < n; ++j) prob *= (mask >> j & 1) ? ps[j] : 1.0 - ps[j];
    if (mask == 0) continue;
    out.any += prob;
    std::size_t j = 0;
    while (!(mask >> j & 1)) ++j;
    out.first[j] += prob;
  }
  return out;
}

std::vector<Candidate> candidates(const std::vector<double>& ps, const std::vector<double>& omegas,
                                  const std::vector<double>& downstream) {
  std::vector<Candidate> out;
  for (std::size_t j = 0; j < ps.size(); ++j) out.push_back({j + 1, {ps[j], omegas[j]}, downstream[j]});
  return out;
}

}  // namespace

TEST_CASE("set_cost", "[cost]") {
  CHECK(set_cost(std::vector<double>{0.5}) == 2.0);
  CHECK(set_cost(std::vector<double>{0.3, 1.0, 0.2}) == 1.0);
  CHECK_THAT(set_cost(std::vector<double>{0.5, 0.5}), WithinAbs(4.0 / 3.0, 1e-15));
  CHECK(std::isinf(set_cost(std::vector<double>{})));
  CHECK(std::isinf(set_cost(std::vector<double>{0.0, 0.0})));
  CHECK_THROWS_AS(set_cost(std::vector<double>{1.2}), DomainError);
  CHECK_THROWS_AS(set_cost(std::vector<double>{-0.1}), DomainError);
}

TEST_CASE("selection_probability", "[cost]") {
  CHECK(selection_probability(std::vector<double>{0.3}, 0) == 1.0);
  const std::vector<double> halves{0.5, 0.5};
  CHECK_THAT(selection_probability(halves, 0), WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(selection_probability(halves, 1), WithinAbs(1.0 / 3.0, 1e-15));
  CHECK_THROWS_AS(selection_probability(std::vector<double>{0.0, 0.0}, 0), DomainError);
  CHECK_THROWS_AS(selection_probability(halves, 2), InvalidInput);
}

TEST_CASE("cost functions agree with success-pattern enumeration", "[cost]") {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    std::vector<double> ps(n), omegas(n), down(n);
    for (std::size_t j = 0; j < n; ++j) {
      ps[j] = rng.uniform() < 0.15 ? 0.0 : rng.uniform();
      omegas[j] = rng.uniform();
      down[j] = rng.uniform(0.0, 10.0);
    }
    if (std::all_of(ps.begin(), ps.end(), [](double p) { return p == 0.0; })) ps[0] = 0.5;

    const auto e = enumerate(ps);
    CHECK_THAT(set_cost(ps), WithinAbs(1.0 / e.any, 1e-9 / e.any));
    const auto phi = selection_probabilities(ps);
    double expected_relay = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      CHECK_THAT(phi[j], WithinAbs(e.first[j] / e.any, 1e-12));
      expected_relay += e.first[j] / e.any * down[j];
    }
    const auto cands = candidates(ps, omegas, down);
    CHECK_THAT(relay_cost(cands), WithinAbs(expected_relay, 1e-10));

    std::vector<double> weights(n);
    for (std::size_t j = 0; j < n; ++j) weights[j] = ps[j] * omegas[j];
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) continue;
    const auto ew = enumerate(weights);
    double expected_weighted_relay = 0.0;
    for (std::size_t j = 0; j < n; ++j) expected_weighted_relay += ew.first[j] / ew.any * down[j];
    CHECK_THAT(weighted_relay_cost(cands), WithinAbs(expected_weighted_relay, 1e-10));
    const double expected_total = 1.0 / ew.any + expected_weighted_relay;
    CHECK_THAT(weighted_total_cost(cands), WithinAbs(expected_total, 1e-9 * expected_total));
  }
}

TEST_CASE("relay_cost and total_cost_unweighted", "[cost]") {
  CHECK(relay_cost(candidates({0.4}, {1.0}, {3.0})) == 3.0);
  CHECK_THAT(relay_cost(candidates({0.5, 0.5}, {1.0, 1.0}, {2.0, 4.0})), WithinAbs(8.0 / 3.0, 1e-15));
  CHECK(relay_cost(candidates({0.5, 0.9}, {1.0, 1.0}, {0.0, 0.0})) == 0.0);
  CHECK_THROWS_AS(relay_cost(std::vector<Candidate>{}), InvalidInput);

  CHECK(total_cost_unweighted(candidates({1.0}, {1.0}, {0.0})) == 1.0);
  CHECK(total_cost_unweighted(candidates({0.5}, {1.0}, {2.0})) == 4.0);
  CHECK(std::isinf(total_cost_unweighted(candidates({0.0}, {1.0}, {2.0}))));
}

TEST_CASE("pair_cost", "[cost]") {
  CHECK(pair_cost({1.0, 1.0}) == 1.0);
  CHECK(pair_cost({0.5, 0.5}) == 4.0);
  CHECK(std::isinf(pair_cost({0.7, 0.0})));

  Rng rng(12);
  for (int k = 0; k < 1000; ++k) {
    const double p = rng.uniform(0.01, 1.0), w = rng.uniform(0.01, 1.0);
    const double dp = rng.uniform(0.0, 1.0 - p), dw = rng.uniform(0.0, 1.0 - w);
    CHECK(pair_cost({p + dp, w}) <= pair_cost({p, w}));
    CHECK(pair_cost({p, w + dw}) <= pair_cost({p, w}));
  }
}

TEST_CASE("weighted forms", "[cost]") {
  const std::vector<EdgeQuality> single{{0.5, 0.5}};
  CHECK(weighted_set_cost(single) == 4.0);
  CHECK(std::isinf(weighted_set_cost(std::vector<EdgeQuality>{{0.0, 1.0}, {0.8, 0.0}})));
  CHECK(weighted_selection_probability(std::vector<EdgeQuality>{{0.3, 0.6}}, 0) == 1.0);

  const std::vector<EdgeQuality> halves{{0.5, 1.0}, {0.5, 1.0}};
  CHECK_THAT(weighted_selection_probability(halves, 0), WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(weighted_selection_probability(halves, 1), WithinAbs(1.0 / 3.0, 1e-15));
  CHECK_THROWS_AS(weighted_selection_probability(std::vector<EdgeQuality>{{0.5, 0.0}}, 0), DomainError);

  CHECK(weighted_relay_cost(candidates({0.3}, {0.2}, {5.0})) == 5.0);
  CHECK(weighted_relay_cost(candidates({0.3, 0.8}, {0.2, 0.9}, {0.0, 0.0})) == 0.0);
  CHECK_THAT(weighted_relay_cost(candidates({0.5, 0.5}, {1.0, 1.0}, {2.0, 4.0})), WithinAbs(8.0 / 3.0, 1e-15));

  CHECK(weighted_total_cost(candidates({1.0}, {1.0}, {0.0})) == 1.0);
  CHECK(weighted_total_cost(candidates({0.5}, {0.5}, {0.0})) == 4.0);
  CHECK(std::isinf(weighted_total_cost(candidates({0.0, 0.4}, {1.0, 0.0}, {1.0, 1.0}))));
  CHECK(std::isinf(weighted_total_cost(std::vector<Candidate>{})));
}

TEST_CASE("unit usability reduces weighted forms to unweighted ones exactly", "[cost]") {
  Rng rng(13);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + rng.below(8);
    std::vector<double> ps(n), ones(n, 1.0), down(n);
    for (std::size_t j = 0; j < n; ++j) {
      ps[j] = rng.uniform(0.01, 1.0);
      down[j] = rng.uniform(0.0, 20.0);
    }
    const auto c = candidates(ps, ones, down);
    std::vector<EdgeQuality> qs;
    for (const auto& x : c) qs.push_back(x.quality);
    CHECK(weighted_set_cost(qs) == set_cost(ps));
    CHECK(weighted_selection_probabilities(qs) == selection_probabilities(ps));
    CHECK(weighted_relay_cost(c) == relay_cost(c));
    CHECK(weighted_total_cost(c) == total_cost_unweighted(c));
  }
}

TEST_CASE("set_cost never grows when a usable candidate is added", "[cost]") {
  Rng rng(14);
  for (int k = 0; k < 2000; ++k) {
    std::vector<double> ps(rng.below(8));
    for (auto& p : ps) p = rng.uniform();
    const double before = set_cost(ps);
    ps.insert(ps.begin() + static_cast<std::ptrdiff_t>(rng.below(ps.size() + 1)), rng.uniform(1e-6, 1.0));
    CHECK(set_cost(ps) <= before);
    CHECK(set_cost(ps) >= 1.0);
  }
}

TEST_CASE("dropping trailing candidates costlier than the total never raises it", "[cost]") {
  // With ascending-downstream priority, appending a candidate yields a weighted
  // average of the previous total and the new downstream cost, so a suffix of
  // candidates that all exceed the total can be removed without loss.
  Rng rng(15);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t n = 2 + rng.below(6);
    std::vector<Candidate> c;
    for (std::size_t j = 0; j < n; ++j) c.push_back({j, {rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0)}, rng.uniform(0.0, 8.0)});
    std::sort(c.begin(), c.end(), priority_before);
    const double total = weighted_total_cost(c);
    auto pruned = c;
    while (pruned.size() > 1 && pruned.back().downstream_cost > total) {
      pruned.pop_back();
      CHECK(weighted_total_cost(pruned) <= total * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("appending a candidate averages the total with its downstream cost", "[cost]") {
  Rng rng(16);
  for (int k = 0; k < 2000; ++k) {
    std::vector<Candidate> c;
    const std::size_t n = 1 + rng.below(6);
    for (std::size_t j = 0; j < n; ++j) c.push_back({j, {rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0)}, rng.uniform(0.0, 8.0)});
    std::sort(c.begin(), c.end(), priority_before);
    const double before = weighted_total_cost(c);
    c.push_back({n, {rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0)}, c.back().downstream_cost + rng.uniform(0.0, 8.0)});
    const double after = weighted_total_cost(c);
    const double lo = std::min(before, c.back().downstream_cost);
    const double hi = std::max(before, c.back().downstream_cost);
    CHECK(after >= lo * (1.0 - 1e-12));
    CHECK(after <= hi * (1.0 + 1e-12));
  }
}
