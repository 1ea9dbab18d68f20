#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dfnkit/matrix.hpp"

namespace dfnkit {

inline constexpr std::uint32_t kCanonicalRate = 16000;

// Mono audio, samples in [-1, 1]. Files at other rates are linearly
// resampled to 16 kHz on read.
struct AudioBuffer {
  std::vector<double> samples;
  std::uint32_t sample_rate = kCanonicalRate;
};

enum class SpectroKind : std::uint8_t {
  StftComplex = 0,
  CwtComplex = 1,
  VisLinear = 2,
  VisLog = 3,
  VisLogReal = 4,
};

enum class VisKind { Linear, Log, LogReal };

// Time-frequency grid. re/im share a shape; visualization kinds carry an
// all-zero im plane. scale_axis holds CWT center frequencies (Hz).
struct Spectrogram {
  Matrix re;
  Matrix im;
  SpectroKind kind = SpectroKind::StftComplex;
  std::uint32_t frame_len_samples = 0;
  std::uint32_t hop_samples = 0;
  std::uint32_t sample_rate = kCanonicalRate;
  std::vector<double> scale_axis;

  bool complex_kind() const {
    return kind == SpectroKind::StftComplex || kind == SpectroKind::CwtComplex;
  }
};

const char* spectro_kind_name(SpectroKind k);

// 16-bit PCM RIFF I/O. Reads mono or the first channel of multi-channel
// files; any sample rate is accepted and resampled to 16 kHz.
AudioBuffer read_wav(const std::string& path);
void write_wav(const std::string& path, const AudioBuffer& buf);

// Linear-interpolation rate conversion.
AudioBuffer resample(const AudioBuffer& buf, std::uint32_t target_rate);

// Hann-windowed STFT with reflect padding of nfft/2 on both ends.
// Grid: nfft/2+1 frequency rows, floor((padded - nfft)/hop) + 1 frame columns.
Spectrogram stft(const AudioBuffer& buf, std::size_t nfft = 2048,
                 std::size_t hop = 1024);

// Inverse STFT (overlap-add with window-square normalization). Requires a
// complex STFT grid and hop == nfft/2.
AudioBuffer istft(const Spectrogram& spec);

// Complex Morlet (omega0 = 6) scalogram: log-spaced center frequencies from
// 50 Hz to 7 kHz, one column per 50 ms frame at 50% overlap. Each column
// holds the per-scale mean magnitude of the wavelet coefficients (the im
// plane is zero after pooling).
Spectrogram cwt_morlet(const AudioBuffer& buf, std::size_t num_scales = 128,
                       double frame_ms = 50.0, double overlap = 0.5);

// Linear: sqrt(re^2+im^2); Log: ln(max(linear, 1e-10)); LogReal: 0 where
// re == 0, else ln|re|.
Spectrogram visualize(const Spectrogram& spec, VisKind kind);

// Duration-preserving pitch shift: phase-vocoder time stretch followed by
// resampling, so a pure tone lands at scale times its frequency.
AudioBuffer pitch_shift(const AudioBuffer& buf, double scale);

// Inverts a Linear/Log STFT visualization against a caller-supplied phase
// grid (radians): grid = mag * e^{i phase}, then istft.
AudioBuffer reconstruct(const Spectrogram& vis, const Matrix& phase);

// Phase angles of a complex STFT grid (for the reconstruction protocol).
Matrix phase_matrix(const Spectrogram& spec);

// 10 log10(sum ref^2 / sum (ref-test)^2) over the common prefix, capped at
// +300 dB (exact match) and floored at -300 dB.
double snr_db(const AudioBuffer& reference, const AudioBuffer& test);

// SPG1 container: magic "SPG1", u32 rows/cols, u8 kind, u8 has-imag,
// u32 sample_rate, u32 hop, u32 frame_len, then row-major f64 planes
// (re, then im when flagged). A JSON sidecar <path>.meta.json mirrors the
// header and carries scale_axis.
void write_spg(const std::string& path, const Spectrogram& spec);
Spectrogram read_spg(const std::string& path);

}  // namespace dfnkit
