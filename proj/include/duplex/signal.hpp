#pragma once

#include <unsupported/Eigen/FFT>

#include <utility>

#include "duplex/common.hpp"

namespace duplex {

/// Multichannel waveform. All channels share one length and sample rate.
struct TimeSignal {
  std::vector<Eigen::VectorXd> channels;
  double sample_rate = 16000.0;

  TimeSignal() = default;
  TimeSignal(int num_channels, Eigen::Index num_samples, double rate = 16000.0)
      : channels(num_channels, Eigen::VectorXd::Zero(num_samples)),
        sample_rate(rate) {}

  int num_channels() const { return static_cast<int>(channels.size()); }
  Eigen::Index num_samples() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

struct StftConfig {
  int window_len = 1024;
  int hop = 256;

  void validate() const {
    if (!is_power_of_two(window_len))
      throw ConfigError("stft window_len must be a power of two");
    if (hop < 1 || hop > window_len)
      throw ConfigError("stft hop must be in [1, window_len]");
  }
  int bins() const { return window_len / 2 + 1; }
  /// Frame count for a signal of the given length; frames are taken only
  /// where a full window fits (no padding).
  Eigen::Index frames(Eigen::Index samples) const {
    if (samples < window_len) return 0;
    return (samples - window_len) / hop + 1;
  }
  double frame_rate(double sample_rate) const { return sample_rate / hop; }
};

/// Complex STFT tensor indexed (f, t, m), stored as one F x T matrix per
/// channel.
struct MultichannelSpectrogram {
  std::vector<Eigen::MatrixXcd> channels;

  MultichannelSpectrogram() = default;
  MultichannelSpectrogram(int num_channels, Eigen::Index bins,
                          Eigen::Index frames)
      : channels(num_channels, Eigen::MatrixXcd::Zero(bins, frames)) {}

  int num_channels() const { return static_cast<int>(channels.size()); }
  Eigen::Index bins() const {
    return channels.empty() ? 0 : channels.front().rows();
  }
  Eigen::Index frames() const {
    return channels.empty() ? 0 : channels.front().cols();
  }

  /// M x T slice at one frequency bin; rows are channels.
  Eigen::MatrixXcd freq_slice(Eigen::Index f) const {
    Eigen::MatrixXcd out(num_channels(), frames());
    for (int m = 0; m < num_channels(); ++m) out.row(m) = channels[m].row(f);
    return out;
  }
  void set_freq_slice(Eigen::Index f, const Eigen::MatrixXcd& slice) {
    for (int m = 0; m < num_channels(); ++m) channels[m].row(f) = slice.row(m);
  }
};

/// Periodic Hann window of length n.
inline Eigen::VectorXd hann_window(int n) {
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = 0.5 * (1.0 - std::cos(kTwoPi * i / n));
  return w;
}

/// STFT of one channel. Returns an F x T complex matrix (one-sided
/// spectrum, F = window_len/2 + 1).
inline Eigen::MatrixXcd stft_single(const Eigen::VectorXd& x,
                                    const StftConfig& cfg) {
  cfg.validate();
  if (x.size() < cfg.window_len)
    throw LengthError("stft: signal shorter than one window");
  const Eigen::Index T = cfg.frames(x.size());
  const int F = cfg.bins();
  const Eigen::VectorXd win = hann_window(cfg.window_len);
  Eigen::MatrixXcd spec(F, T);

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> frame(cfg.window_len);
  std::vector<Complex> bins;
  for (Eigen::Index t = 0; t < T; ++t) {
    const Eigen::Index off = t * cfg.hop;
    for (int i = 0; i < cfg.window_len; ++i) frame[i] = x[off + i] * win[i];
    fft.fwd(bins, frame);
    for (int f = 0; f < F; ++f) spec(f, t) = bins[f];
  }
  return spec;
}

/// Inverse STFT of one channel: overlap-add with the analysis window as
/// synthesis window, normalized pointwise by the summed squared window.
/// Interior samples reconstruct exactly; edges keep whatever window
/// coverage they have.
inline Eigen::VectorXd istft_single(const Eigen::MatrixXcd& spec,
                                    const StftConfig& cfg) {
  cfg.validate();
  if (spec.rows() != cfg.bins())
    throw ShapeError("istft: bin count inconsistent with config");
  const Eigen::Index T = spec.cols();
  const Eigen::Index len = (T - 1) * cfg.hop + cfg.window_len;
  const Eigen::VectorXd win = hann_window(cfg.window_len);

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(len);
  Eigen::VectorXd norm = Eigen::VectorXd::Zero(len);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<Complex> bins(cfg.bins());
  std::vector<double> frame;
  for (Eigen::Index t = 0; t < T; ++t) {
    for (int f = 0; f < cfg.bins(); ++f) bins[f] = spec(f, t);
    fft.inv(frame, bins, cfg.window_len);
    const Eigen::Index off = t * cfg.hop;
    for (int i = 0; i < cfg.window_len; ++i) {
      acc[off + i] += frame[i] * win[i];
      norm[off + i] += win[i] * win[i];
    }
  }
  for (Eigen::Index i = 0; i < len; ++i)
    acc[i] = norm[i] > 1e-12 ? acc[i] / norm[i] : 0.0;
  return acc;
}

inline MultichannelSpectrogram stft(const TimeSignal& sig,
                                    const StftConfig& cfg) {
  MultichannelSpectrogram spec;
  spec.channels.resize(sig.num_channels());
  parallel_for(0, sig.num_channels(), [&](Eigen::Index m) {
    spec.channels[m] = stft_single(sig.channels[m], cfg);
  });
  return spec;
}

inline TimeSignal istft(const MultichannelSpectrogram& spec,
                        const StftConfig& cfg, double sample_rate = 16000.0) {
  TimeSignal sig;
  sig.sample_rate = sample_rate;
  sig.channels.resize(spec.num_channels());
  parallel_for(0, spec.num_channels(), [&](Eigen::Index m) {
    sig.channels[m] = istft_single(spec.channels[m], cfg);
  });
  return sig;
}

}  // namespace duplex
