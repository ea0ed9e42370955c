#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "relaysec/channel.hpp"
#include "relaysec/errors.hpp"
#include "relaysec/precoding.hpp"

namespace relaysec {

// Destination rate, eavesdropper rate and their difference for one sample.
struct RateSample {
  double r_d = 0.0;
  double r_e = 0.0;
  double r_secrecy = 0.0;          // r_d - r_e, unclipped
  double r_secrecy_clipped = 0.0;  // max(0, r_secrecy)
};

inline RateSample make_rate_sample(double r_d, double r_e) {
  RateSample s;
  s.r_d = r_d;
  s.r_e = r_e;
  s.r_secrecy = r_d - r_e;
  s.r_secrecy_clipped = std::max(0.0, s.r_secrecy);
  return s;
}

namespace detail {

inline CMat hermitize(const CMat& X) { return 0.5 * (X + X.adjoint()); }

// log2 det(I + X) for Hermitian PSD X, via Cholesky of I + X. Clamped at 0
// against roundoff.
inline double log2det_identity_plus(const CMat& X) {
  const CMat A = CMat::Identity(X.rows(), X.cols()) + hermitize(X);
  Eigen::LLT<CMat> llt(A);
  if (llt.info() != Eigen::Success)
    throw Error("log2det: matrix unexpectedly not positive definite");
  double acc = 0.0;
  const auto& L = llt.matrixLLT();
  for (Eigen::Index i = 0; i < L.rows(); ++i)
    acc += std::log2(std::real(L(i, i)));
  return std::max(0.0, 2.0 * acc);
}

// log2 det of an HPD matrix via Cholesky.
inline double log2det_hpd(const CMat& A) {
  Eigen::LLT<CMat> llt(hermitize(A));
  if (llt.info() != Eigen::Success)
    throw Error("log2det: matrix unexpectedly not positive definite");
  double acc = 0.0;
  const auto& L = llt.matrixLLT();
  for (Eigen::Index i = 0; i < L.rows(); ++i)
    acc += std::log2(std::real(L(i, i)));
  return 2.0 * acc;
}

// (1/2) log2 det(Gamma + A (B + I)^{-1}) with
//   A = H_main P H_src Q H_src^H P^H H_main^H,
//   B = q H_main H_main^H,
// evaluated through Hermitian factorizations only, so the result is real by
// construction:
//   det(Gamma + A C) = det(Gamma) det(I + Lc^H Atil Lc),
// where C = (B+I)^{-1} = Lc' factored after the Gamma-whitening
// Atil = Lg^{-1} A Lg^{-H}, Ctil = Lg^H C Lg, Ctil = Lc Lc^H.
inline double half_log2det_ratio(const CMat& H_main, const CMat& P,
                                 const CMat& H_src, double q,
                                 const CMat& Gamma) {
  if (P.rows() != H_main.cols())
    throw DimensionError("rate: precoder rows must match channel columns");
  if (H_src.rows() != P.cols())
    throw DimensionError("rate: source channel rows must match precoder columns");
  const Eigen::Index n = H_main.rows();
  if (Gamma.rows() != n || Gamma.cols() != n)
    throw DimensionError("rate: Gamma dimension mismatch");

  const CMat M = H_main * P * H_src;           // n x n_t
  const CMat A = q * (M * M.adjoint());        // PSD
  const CMat B = q * (H_main * H_main.adjoint());
  const CMat C = (B + CMat::Identity(n, n)).llt().solve(CMat::Identity(n, n));

  Eigen::LLT<CMat> llt_gamma(hermitize(Gamma));
  if (llt_gamma.info() != Eigen::Success)
    throw Error("rate: Gamma is not positive definite");
  const CMat Lg = llt_gamma.matrixL();
  double base = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    base += std::log2(std::real(llt_gamma.matrixLLT()(i, i)));
  base *= 2.0;

  const CMat T = Lg.triangularView<Eigen::Lower>().solve(A);
  const CMat Atil =
      Lg.triangularView<Eigen::Lower>().solve(CMat(T.adjoint()));  // Lg^{-1} A Lg^{-H}
  const CMat Ctil = hermitize(Lg.adjoint() * C * Lg);
  Eigen::LLT<CMat> llt_c(Ctil);
  if (llt_c.info() != Eigen::Success)
    throw Error("rate: whitened denominator is not positive definite");
  const CMat Lc = llt_c.matrixL();
  const CMat K = Lc.adjoint() * Atil * Lc;  // Hermitian PSD
  return 0.5 * (base + log2det_identity_plus(K));
}

}  // namespace detail

// Generic MIMO capacity log2 det(I + H Q H^H); always >= 0.
inline double logdet_capacity(const CMat& H, const SignalCovariance& Q) {
  if (H.cols() != Q.streams)
    throw DimensionError("logdet_capacity: H columns must equal covariance streams");
  const CMat X = Q.per_stream_power() * (H * H.adjoint());
  return detail::log2det_identity_plus(X);
}

// Rate delivered to the destination over the two-phase relayed path:
//   (1/2) log2 det(I + N D^{-1}),
//   N = H_rd P_d H_sr Q_s H_sr^H P_d^H H_rd^H,  D = H_rd Q_s H_rd^H + I.
// The 1/2 accounts for the two time units of the two phases. Q_s supplies
// the per-stream power for both the N_t-dimensional source covariance in
// the numerator and the relay-side term in the denominator.
inline double destination_rate(const CMat& H_rd, const CMat& P_d,
                               const CMat& H_sr, const SignalCovariance& Q_s) {
  if (H_sr.cols() != Q_s.streams)
    throw DimensionError("destination_rate: H_sr columns must equal covariance streams");
  const CMat Gamma = CMat::Identity(H_rd.rows(), H_rd.rows());
  return detail::half_log2det_ratio(H_rd, P_d, H_sr, Q_s.per_stream_power(), Gamma);
}

// Rate leaked to one eavesdropper:
//   (1/2) log2 det(Gamma + N_e D_e^{-1}),  Gamma = I + H_se Q_s H_se^H,
// where the Gamma term accumulates what the eavesdropper already observed
// in Phase I.
inline double eavesdropper_rate(const CMat& H_re, const CMat& P_d,
                                const CMat& H_sr, const CMat& H_se,
                                const SignalCovariance& Q_s) {
  if (H_sr.cols() != Q_s.streams)
    throw DimensionError("eavesdropper_rate: H_sr columns must equal covariance streams");
  if (H_se.rows() != H_re.rows())
    throw DimensionError("eavesdropper_rate: H_se rows must match H_re rows");
  const double q = Q_s.per_stream_power();
  const CMat Gamma = CMat::Identity(H_re.rows(), H_re.rows()) +
                     q * (H_se * H_se.adjoint());
  return detail::half_log2det_ratio(H_re, P_d, H_sr, q, Gamma);
}

// Overall relayed secrecy rate R = R_d - R_e, reported raw and clipped.
inline RateSample secrecy_rate(const CMat& H_rd, const CMat& H_re,
                               const CMat& H_se, const CMat& P_d,
                               const CMat& H_sr, const SignalCovariance& Q_s) {
  const double r_d = destination_rate(H_rd, P_d, H_sr, Q_s);
  const double r_e = eavesdropper_rate(H_re, P_d, H_sr, H_se, Q_s);
  return make_rate_sample(r_d, r_e);
}

// Single-phase secrecy rate at a fixed covariance (no 1/2 factor):
//   log2 det(I + H_ba Q H_ba^H) - log2 det(I + H_ea Q H_ea^H).
inline double direct_secrecy_rate(const CMat& H_ba, const CMat& H_ea,
                                  const SignalCovariance& Q_s) {
  return logdet_capacity(H_ba, Q_s) - logdet_capacity(H_ea, Q_s);
}

}  // namespace relaysec
