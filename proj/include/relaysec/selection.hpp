#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "relaysec/buffer.hpp"
#include "relaysec/channel.hpp"
#include "relaysec/errors.hpp"
#include "relaysec/precoding.hpp"
#include "relaysec/rates.hpp"
#include "relaysec/rng.hpp"

namespace relaysec {

enum class Phase { Receive, Transmit };

inline const char* phase_name(Phase p) {
  return p == Phase::Receive ? "receive" : "transmit";
}

struct CandidateLink {
  Phase phase = Phase::Receive;
  std::vector<int> relay_set;  // ascending relay indices, nonempty
  double metric = 0.0;
};

struct SelectionDecision {
  Phase phase = Phase::Receive;
  std::vector<int> relay_set;
  double winning_metric = 0.0;
};

// Squared Euclidean ML residual || y - alpha*beta*H*x ||^2.
inline double ml_metric(const CVec& y, const CMat& H, const CVec& x,
                        double alpha, double beta) {
  if (H.cols() != x.rows() || H.rows() != y.rows())
    throw DimensionError("ml_metric: dimensions do not conform");
  return (y - (alpha * beta) * (H * x)).squaredNorm();
}

// All nonempty subsets of feasible relays with cardinality <= max_set_size,
// in lexicographic order of the ascending index sequences.
inline std::vector<std::vector<int>> enumerate_feasible_sets(
    const std::vector<BufferState>& buffers, int n_m, Phase phase,
    int max_set_size) {
  std::vector<int> feasible;
  for (int m = 0; m < static_cast<int>(buffers.size()); ++m) {
    const bool ok = phase == Phase::Receive ? can_receive(buffers[m], n_m)
                                            : can_transmit(buffers[m], n_m);
    if (ok) feasible.push_back(m);
  }
  std::vector<std::vector<int>> sets;
  std::vector<int> current;
  auto extend = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < feasible.size(); ++i) {
      current.push_back(feasible[i]);
      sets.push_back(current);
      if (static_cast<int>(current.size()) < max_set_size) self(self, i + 1);
      current.pop_back();
    }
  };
  if (max_set_size >= 1) extend(extend, 0);
  return sets;
}

// Per-slot probe signals for the ML criterion: one known unit-modulus pilot
// and the slot's actual noise realization of every link. The receive-side
// noise doubles as the noise of the block stored when a relay is selected.
struct SlotProbes {
  CVec source_pilot;                      // n_t, unit modulus
  std::vector<CVec> relay_noise;          // per relay, n_m
  std::vector<CVec> user_noise;           // per user, n_r
};

inline SlotProbes make_slot_probes(const ScenarioConfig& config,
                                   double noise_variance, RandomStream& rng) {
  SlotProbes probes;
  const double sigma = std::sqrt(noise_variance);
  probes.source_pilot = CVec(config.n_t);
  for (int i = 0; i < config.n_t; ++i) probes.source_pilot(i) = rng.unit_modulus();
  probes.relay_noise.resize(config.relays);
  for (int m = 0; m < config.relays; ++m) {
    probes.relay_noise[m] = CVec(config.n_m);
    for (int i = 0; i < config.n_m; ++i)
      probes.relay_noise[m](i) = sigma * rng.complex_normal();
  }
  probes.user_noise.resize(config.users);
  for (int r = 0; r < config.users; ++r) {
    probes.user_noise[r] = CVec(config.n_r);
    for (int i = 0; i < config.n_r; ++i)
      probes.user_noise[r](i) = sigma * rng.complex_normal();
  }
  return probes;
}

namespace detail {

// Candidate ordering: smaller metric first; ties broken by phase (Receive
// first), then smaller cardinality, then lexicographic relay set.
inline bool candidate_before(const CandidateLink& a, const CandidateLink& b) {
  if (a.metric != b.metric) return a.metric < b.metric;
  if (a.phase != b.phase) return a.phase == Phase::Receive;
  if (a.relay_set.size() != b.relay_set.size())
    return a.relay_set.size() < b.relay_set.size();
  return a.relay_set < b.relay_set;
}

// ML residual of a receive-side candidate set: the source pilot observed
// through the stacked effective channels of the set against the clean
// prediction. Reduces to || n_m ||^2 at the true channel.
inline double receive_set_metric(const NetworkRealization& net,
                                 const SlotProbes& probes,
                                 const std::vector<int>& relay_set) {
  const int n_m = net.relay_antennas();
  const Eigen::Index rows = static_cast<Eigen::Index>(relay_set.size()) * n_m;
  CMat H(rows, net.source_antennas());
  CVec y(rows);
  Eigen::Index at = 0;
  for (int m : relay_set) {
    const CMat block = net.sr[m].effective();
    H.middleRows(at, n_m) = block;
    y.segment(at, n_m) = block * probes.source_pilot + probes.relay_noise[m];
    at += n_m;
  }
  return ml_metric(y, H, probes.source_pilot, 1.0, 1.0);
}

// ML residual of a transmit-side candidate set, stacked over users: the
// members forward their oldest buffered blocks and the prediction assumes
// the clean block content, so the residual is the stored relay noise
// amplified by the current R->D channel plus the user-side noise.
inline double transmit_set_metric(const NetworkRealization& net,
                                  const SlotProbes& probes,
                                  const std::vector<BufferState>& buffers,
                                  const std::vector<int>& relay_set) {
  const int n_m = net.relay_antennas();
  const Eigen::Index width = static_cast<Eigen::Index>(relay_set.size()) * n_m;
  CVec forwarded(width);
  CVec expected(width);
  Eigen::Index at = 0;
  for (int m : relay_set) {
    const BufferEntry& head = buffers[m].front();
    forwarded.segment(at, n_m) = head.y;
    expected.segment(at, n_m) =
        (head.h_sr_snapshot.alpha * head.h_sr_snapshot.beta) * head.symbols;
    at += n_m;
  }
  const int users = static_cast<int>(net.rd.size());
  const int n_r = static_cast<int>(net.rd[0].H.rows());
  CMat H(static_cast<Eigen::Index>(users) * n_r, width);
  CVec y(static_cast<Eigen::Index>(users) * n_r);
  for (int r = 0; r < users; ++r) {
    const CMat block =
        (net.rd[r].alpha * net.rd[r].beta) * restrict_to_relays(net.rd[r].H, relay_set, n_m);
    H.middleRows(static_cast<Eigen::Index>(r) * n_r, n_r) = block;
    y.segment(static_cast<Eigen::Index>(r) * n_r, n_r) =
        block * forwarded + probes.user_noise[r];
  }
  return ml_metric(y, H, expected, 1.0, 1.0);
}

inline SelectionDecision pick_best(const std::vector<CandidateLink>& candidates) {
  if (candidates.empty())
    throw DeadlockError("no feasible candidate link in either phase");
  const CandidateLink* best = &candidates[0];
  for (const auto& c : candidates)
    if (candidate_before(c, *best)) best = &c;
  return SelectionDecision{best->phase, best->relay_set, best->metric};
}

// Frobenius norm squared of the effective (alpha*beta scaled) channel.
inline double effective_fro2(const LinkRealization& link) {
  const double g = link.alpha * link.beta;
  return g * g * link.H.squaredNorm();
}

inline double effective_fro2_restricted(const LinkRealization& link,
                                        const std::vector<int>& relay_set,
                                        int n_m) {
  const double g = link.alpha * link.beta;
  return g * g * restrict_to_relays(link.H, relay_set, n_m).squaredNorm();
}

}  // namespace detail

// Buffer-aided ML set-of-relays selection: evaluates the ML residual of
// every feasible relay subset in each phase and returns the global minimum.
// A slot's set is entirely receive or entirely transmit (half duplex).
inline SelectionDecision ml_srs_select(const NetworkRealization& net,
                                       const SlotProbes& probes,
                                       const std::vector<BufferState>& buffers,
                                       int max_set_size) {
  const int n_m = net.relay_antennas();
  // Receive sets are additionally capped by joint ZF feasibility at the
  // source: |S| * n_m <= n_t.
  const int rx_cap = std::min(max_set_size, net.source_antennas() / n_m);
  std::vector<CandidateLink> candidates;
  for (auto& set : enumerate_feasible_sets(buffers, n_m, Phase::Receive, rx_cap))
    candidates.push_back({Phase::Receive, set,
                          detail::receive_set_metric(net, probes, set)});
  for (auto& set : enumerate_feasible_sets(buffers, n_m, Phase::Transmit, max_set_size))
    candidates.push_back({Phase::Transmit, set,
                          detail::transmit_set_metric(net, probes, buffers, set)});
  return detail::pick_best(candidates);
}

// Buffer-aided ML relay selection: the singleton restriction of ml_srs_select.
inline SelectionDecision ml_rs_select(const NetworkRealization& net,
                                      const SlotProbes& probes,
                                      const std::vector<BufferState>& buffers) {
  return ml_srs_select(net, probes, buffers, 1);
}

// Baseline: maximize the ratio of the legitimate link gain to the strongest
// eavesdropper gain for the corresponding phase, over feasible singletons.
inline SelectionDecision max_ratio_select(const NetworkRealization& net,
                                          const std::vector<BufferState>& buffers) {
  const int n_m = net.relay_antennas();
  double eve_rx = 0.0;  // strongest Phase-I eavesdropper gain
  for (const auto& link : net.se) eve_rx = std::max(eve_rx, detail::effective_fro2(link));
  eve_rx = std::max(eve_rx, 1e-12);

  std::vector<CandidateLink> candidates;
  for (int m = 0; m < static_cast<int>(buffers.size()); ++m) {
    if (can_receive(buffers[m], n_m)) {
      const double ratio = detail::effective_fro2(net.sr[m]) / eve_rx;
      candidates.push_back({Phase::Receive, {m}, -ratio});
    }
    if (can_transmit(buffers[m], n_m)) {
      const std::vector<int> set{m};
      double legit = 0.0;
      for (const auto& link : net.rd)
        legit += detail::effective_fro2_restricted(link, set, n_m);
      double eve = 0.0;
      for (const auto& link : net.re)
        eve = std::max(eve, detail::effective_fro2_restricted(link, set, n_m));
      eve = std::max(eve, 1e-12);
      candidates.push_back({Phase::Transmit, set, -(legit / eve)});
    }
  }
  return detail::pick_best(candidates);
}

// Baseline: pick the feasible link with the largest effective channel
// Frobenius norm, across both phases.
inline SelectionDecision max_link_select(const NetworkRealization& net,
                                         const std::vector<BufferState>& buffers) {
  const int n_m = net.relay_antennas();
  std::vector<CandidateLink> candidates;
  for (int m = 0; m < static_cast<int>(buffers.size()); ++m) {
    if (can_receive(buffers[m], n_m))
      candidates.push_back({Phase::Receive, {m}, -detail::effective_fro2(net.sr[m])});
    if (can_transmit(buffers[m], n_m)) {
      const std::vector<int> set{m};
      double legit = 0.0;
      for (const auto& link : net.rd)
        legit += detail::effective_fro2_restricted(link, set, n_m);
      candidates.push_back({Phase::Transmit, set, -legit});
    }
  }
  return detail::pick_best(candidates);
}

}  // namespace relaysec
