#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "relaysec/errors.hpp"
#include "relaysec/geometry.hpp"
#include "relaysec/rng.hpp"
#include "relaysec/scenario.hpp"

namespace relaysec {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// One link's draw: amplitude path-loss gain, shadowing gain and the
// small-scale fading matrix (rows = receive antennas, cols = transmit
// antennas). alpha and beta are per-link scalars.
struct LinkRealization {
  double alpha = 1.0;
  double beta = 1.0;
  CMat H;

  // Effective channel including the large-scale gains.
  CMat effective() const { return (alpha * beta) * H; }
};

// One slot's channel state for every link class.
//
// rd/re matrices are stacked over relays in relay-index order, so column
// block m (width n_m) belongs to relay m.
struct NetworkRealization {
  std::vector<LinkRealization> sr;  // M entries, each n_m x n_t
  std::vector<LinkRealization> rd;  // N_D entries, each n_r x (M*n_m)
  std::vector<LinkRealization> sd;  // N_D entries, each n_r x n_t (direct path)
  std::vector<LinkRealization> se;  // N_E entries, each n_e x n_t
  std::vector<LinkRealization> re;  // N_E entries, each n_e x (M*n_m)
  double noise_variance = 1.0;      // sigma_n^2, identical at every receiver

  int relay_count() const { return static_cast<int>(sr.size()); }
  int relay_antennas() const { return sr.empty() ? 0 : static_cast<int>(sr[0].H.rows()); }
  int source_antennas() const { return sr.empty() ? 0 : static_cast<int>(sr[0].H.cols()); }
};

namespace detail {

inline CMat draw_fading(int rows, int cols, RandomStream& rng) {
  if (rows <= 0 || cols <= 0)
    throw DimensionError("channel matrix dimensions must be positive");
  CMat H(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) H(i, j) = rng.complex_normal();
  return H;
}

inline LinkRealization draw_link(const LinkGeometry& geom, int rows, int cols,
                                 RandomStream& rng) {
  LinkRealization link;
  link.alpha = path_loss_gain(geom);
  link.beta = shadowing_gain(geom.shadowing_spread_db, rng);
  link.H = draw_fading(rows, cols, rng);
  return link;
}

}  // namespace detail

// Draws one slot's NetworkRealization. Entries of every H are i.i.d.
// CN(0, 1); shadowing is redrawn per link per slot (block fading). The draw
// order is fixed (sr, rd, sd, se, re) so a given stream state always yields
// the same realization.
inline NetworkRealization draw_network(const ScenarioConfig& config,
                                       double snr_db, RandomStream& rng) {
  NetworkRealization net;
  const int stacked_cols = config.relays * config.n_m;
  net.sr.reserve(config.relays);
  for (int m = 0; m < config.relays; ++m)
    net.sr.push_back(detail::draw_link(config.geom_sr, config.n_m, config.n_t, rng));
  net.rd.reserve(config.users);
  for (int r = 0; r < config.users; ++r)
    net.rd.push_back(detail::draw_link(config.geom_rd, config.n_r, stacked_cols, rng));
  net.sd.reserve(config.users);
  for (int r = 0; r < config.users; ++r)
    net.sd.push_back(detail::draw_link(config.geom_sd, config.n_r, config.n_t, rng));
  net.se.reserve(config.eavesdroppers);
  for (int e = 0; e < config.eavesdroppers; ++e)
    net.se.push_back(detail::draw_link(config.geom_se, config.n_e, config.n_t, rng));
  net.re.reserve(config.eavesdroppers);
  for (int e = 0; e < config.eavesdroppers; ++e)
    net.re.push_back(detail::draw_link(config.geom_re, config.n_e, stacked_cols, rng));
  net.noise_variance = config.noise_variance_for(snr_db);
  return net;
}

// Column restriction of a relay-stacked matrix to the given relay subset
// (ascending indices), preserving relay-index block order.
inline CMat restrict_to_relays(const CMat& stacked, const std::vector<int>& relay_set,
                               int n_m) {
  CMat out(stacked.rows(), static_cast<Eigen::Index>(relay_set.size()) * n_m);
  Eigen::Index col = 0;
  for (int m : relay_set) {
    out.middleCols(col, n_m) = stacked.middleCols(static_cast<Eigen::Index>(m) * n_m, n_m);
    col += n_m;
  }
  return out;
}

}  // namespace relaysec
