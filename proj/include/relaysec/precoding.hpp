#pragma once

#include <string>

#include <Eigen/Dense>

#include "relaysec/channel.hpp"
#include "relaysec/errors.hpp"

namespace relaysec {

// Zero-forcing precoder P = H^H (H H^H)^{-1} for a full-row-rank channel H.
struct Precoder {
  CMat P;              // transmit-antennas x streams
  std::string target;  // link identifier it was built for
};

// Transmit-signal covariance Q = (E_s / streams) * I. Kept in factored form;
// matrix() materializes it on demand.
struct SignalCovariance {
  int streams = 1;
  double total_power = 1.0;  // E_s

  double per_stream_power() const { return total_power / streams; }
  CMat matrix() const {
    return per_stream_power() * CMat::Identity(streams, streams);
  }
};

inline SignalCovariance signal_covariance(int streams, double total_power) {
  if (streams < 1) throw ValidationError("signal_covariance: streams must be >= 1");
  if (!(total_power > 0.0))
    throw ValidationError("signal_covariance: total power must be > 0");
  return SignalCovariance{streams, total_power};
}

// Builds the ZF precoder. Requires rows(H) <= cols(H) and a Gram matrix
// condition number below ~1e12; otherwise throws SingularChannelError so the
// caller can redraw the channel.
inline Precoder zf_precoder(const CMat& H, const std::string& target = {}) {
  if (H.rows() > H.cols())
    throw DimensionError("zf_precoder: channel must have rows <= cols");
  const CMat gram = H * H.adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> eig(gram);
  if (eig.info() != Eigen::Success)
    throw SingularChannelError("zf_precoder: eigendecomposition failed");
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12)
    throw SingularChannelError("zf_precoder: channel Gram matrix is singular or ill-conditioned");
  Precoder out;
  out.P = H.adjoint() * gram.llt().solve(CMat::Identity(H.rows(), H.rows()));
  out.target = target;
  return out;
}

inline CVec precode(const Precoder& precoder, const CVec& symbols) {
  if (precoder.P.cols() != symbols.rows())
    throw DimensionError("precode: symbol vector does not match precoder");
  return precoder.P * symbols;
}

// One pilot block: unit-modulus symbols and their precoded transmit vector.
struct PilotBlock {
  CVec s;  // streams x 1, unit modulus
  CVec x;  // transmit-antennas x 1, x = P * s
};

inline PilotBlock make_pilot_block(const Precoder& precoder, RandomStream& rng) {
  PilotBlock block;
  block.s = CVec(precoder.P.cols());
  for (Eigen::Index i = 0; i < block.s.size(); ++i) block.s(i) = rng.unit_modulus();
  block.x = precoder.P * block.s;
  return block;
}

}  // namespace relaysec
