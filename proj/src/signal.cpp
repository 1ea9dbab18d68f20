#include "dfnkit/signal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "dfnkit/fft.hpp"

namespace dfnkit {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kLogFloor = 1e-10;
constexpr double kMorletOmega0 = 6.0;

// --- little-endian binary helpers ---------------------------------------

template <typename T>
void put_le(std::ostream& out, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  out.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char b[sizeof(T)];
  in.read(reinterpret_cast<char*>(b), sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k)
    w[k] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  return w;
}

// Mirror index for reflect padding (no edge duplication), period 2(n-1).
std::size_t mirror_index(long long i, std::size_t n) {
  if (n == 1) return 0;
  long long period = 2 * (static_cast<long long>(n) - 1);
  long long m = i % period;
  if (m < 0) m += period;
  if (m >= static_cast<long long>(n)) m = period - m;
  return static_cast<std::size_t>(m);
}

// Weighted overlap-add with window-square normalization; works for any hop.
std::vector<double> ola_synthesis(const Matrix& re, const Matrix& im,
                                  std::size_t nfft, std::size_t hop) {
  const std::size_t bins = re.rows();
  const std::size_t frames = re.cols();
  const std::vector<double> win = hann_window(nfft);
  const std::size_t out_len = (frames - 1) * hop + nfft;
  std::vector<double> acc(out_len, 0.0), wsum(out_len, 0.0);
  std::vector<std::complex<double>> half(bins);
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t k = 0; k < bins; ++k) half[k] = {re(k, f), im(k, f)};
    std::vector<double> frame = irfft(half, nfft);
    const std::size_t off = f * hop;
    for (std::size_t k = 0; k < nfft; ++k) {
      acc[off + k] += win[k] * frame[k];
      wsum[off + k] += win[k] * win[k];
    }
  }
  for (std::size_t i = 0; i < out_len; ++i)
    acc[i] = wsum[i] > 1e-12 ? acc[i] / wsum[i] : 0.0;
  return acc;
}

struct StftGrid {
  Matrix re, im;
};

// Core analysis shared by stft() and the phase vocoder: Hann window, reflect
// padding of nfft/2 on each side.
StftGrid stft_analysis(const std::vector<double>& x, std::size_t nfft, std::size_t hop) {
  const std::size_t pad = nfft / 2;
  const std::size_t padded = x.size() + 2 * pad;
  const std::size_t frames = (padded - nfft) / hop + 1;
  const std::size_t bins = nfft / 2 + 1;
  const std::vector<double> win = hann_window(nfft);
  Matrix re(bins, frames), im(bins, frames);
  std::vector<double> frame(nfft);
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t k = 0; k < nfft; ++k) {
      long long src = static_cast<long long>(f * hop + k) - static_cast<long long>(pad);
      double v = (src >= 0 && src < static_cast<long long>(x.size()))
                     ? x[static_cast<std::size_t>(src)]
                     : x[mirror_index(src, x.size())];
      frame[k] = v * win[k];
    }
    std::vector<std::complex<double>> spec = rfft(frame);
    for (std::size_t k = 0; k < bins; ++k) {
      re(k, f) = spec[k].real();
      im(k, f) = spec[k].imag();
    }
  }
  return {std::move(re), std::move(im)};
}

std::vector<double> resample_linear(const std::vector<double>& x, double step) {
  const std::size_t out_len =
      static_cast<std::size_t>(std::floor(static_cast<double>(x.size() - 1) / step)) + 1;
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    double pos = static_cast<double>(i) * step;
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo >= x.size() - 1) {
      out[i] = x.back();
      continue;
    }
    double frac = pos - static_cast<double>(lo);
    out[i] = (1.0 - frac) * x[lo] + frac * x[lo + 1];
  }
  return out;
}

double wrap_pi(double x) {
  x = std::fmod(x + M_PI, kTwoPi);
  if (x < 0) x += kTwoPi;
  return x - M_PI;
}

void ensure_nonempty(const AudioBuffer& buf, const char* what) {
  if (buf.samples.empty())
    throw Error(Errc::EmptySignal, std::string(what) + ": empty signal");
}

}  // namespace

const char* spectro_kind_name(SpectroKind k) {
  switch (k) {
    case SpectroKind::StftComplex: return "stft_complex";
    case SpectroKind::CwtComplex: return "cwt_complex";
    case SpectroKind::VisLinear: return "vis_linear";
    case SpectroKind::VisLog: return "vis_log";
    case SpectroKind::VisLogReal: return "vis_logreal";
  }
  return "unknown";
}

// --- WAV ------------------------------------------------------------------

AudioBuffer read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot open " + path);
  char tag[4];
  f.read(tag, 4);
  if (!f || std::memcmp(tag, "RIFF", 4) != 0)
    throw Error(Errc::CorruptHeader, "missing RIFF tag");
  get_le<std::uint32_t>(f);
  f.read(tag, 4);
  if (!f || std::memcmp(tag, "WAVE", 4) != 0)
    throw Error(Errc::CorruptHeader, "missing WAVE tag");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::vector<std::int16_t> pcm;
  while (f.read(tag, 4)) {
    std::uint32_t size = get_le<std::uint32_t>(f);
    if (!f) throw Error(Errc::CorruptHeader, "truncated chunk header");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (size < 16) throw Error(Errc::CorruptHeader, "fmt chunk too short");
      format = get_le<std::uint16_t>(f);
      channels = get_le<std::uint16_t>(f);
      rate = get_le<std::uint32_t>(f);
      get_le<std::uint32_t>(f);  // byte rate
      get_le<std::uint16_t>(f);  // block align
      bits = get_le<std::uint16_t>(f);
      f.seekg(size - 16 + (size % 2), std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw Error(Errc::CorruptHeader, "data chunk before fmt");
      if (format != 1) throw Error(Errc::UnsupportedFormat, "only PCM (format 1) supported");
      if (bits != 16) throw Error(Errc::UnsupportedFormat, "only 16-bit samples supported");
      if (channels == 0) throw Error(Errc::CorruptHeader, "zero channels");
      std::size_t n = size / 2;
      pcm.resize(n);
      f.read(reinterpret_cast<char*>(pcm.data()), static_cast<std::streamsize>(n * 2));
      if (!f) throw Error(Errc::CorruptHeader, "truncated data chunk");
      break;
    } else {
      f.seekg(size + (size % 2), std::ios::cur);
    }
  }
  if (!have_fmt || pcm.empty())
    throw Error(Errc::CorruptHeader, "missing fmt or data chunk");

  AudioBuffer buf;
  buf.sample_rate = rate;
  buf.samples.resize(pcm.size() / channels);
  for (std::size_t i = 0; i < buf.samples.size(); ++i)
    buf.samples[i] = static_cast<double>(pcm[i * channels]) / 32768.0;
  if (rate != kCanonicalRate) buf = resample(buf, kCanonicalRate);
  return buf;
}

void write_wav(const std::string& path, const AudioBuffer& buf) {
  ensure_nonempty(buf, "write_wav");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  const std::uint32_t n = static_cast<std::uint32_t>(buf.samples.size());
  const std::uint32_t data_bytes = n * 2;
  f.write("RIFF", 4);
  put_le<std::uint32_t>(f, 36 + data_bytes);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  put_le<std::uint32_t>(f, 16);
  put_le<std::uint16_t>(f, 1);  // PCM
  put_le<std::uint16_t>(f, 1);  // mono
  put_le<std::uint32_t>(f, buf.sample_rate);
  put_le<std::uint32_t>(f, buf.sample_rate * 2);
  put_le<std::uint16_t>(f, 2);
  put_le<std::uint16_t>(f, 16);
  f.write("data", 4);
  put_le<std::uint32_t>(f, data_bytes);
  for (double s : buf.samples) {
    double scaled = std::round(s * 32768.0);
    scaled = std::clamp(scaled, -32768.0, 32767.0);
    put_le<std::int16_t>(f, static_cast<std::int16_t>(scaled));
  }
}

AudioBuffer resample(const AudioBuffer& buf, std::uint32_t target_rate) {
  ensure_nonempty(buf, "resample");
  if (buf.sample_rate == target_rate) return buf;
  double step = static_cast<double>(buf.sample_rate) / static_cast<double>(target_rate);
  AudioBuffer out;
  out.sample_rate = target_rate;
  out.samples = resample_linear(buf.samples, step);
  return out;
}

// --- STFT -------------------------------------------------------------------

Spectrogram stft(const AudioBuffer& buf, std::size_t nfft, std::size_t hop) {
  ensure_nonempty(buf, "stft");
  if (!is_pow2(nfft)) throw Error(Errc::InvalidArgument, "stft: nfft must be a power of two");
  if (hop == 0 || hop > nfft)
    throw Error(Errc::InvalidArgument, "stft: need 0 < hop <= nfft");
  if (buf.samples.size() < hop)
    throw Error(Errc::SignalTooShort, "stft: signal shorter than one hop");
  StftGrid g = stft_analysis(buf.samples, nfft, hop);
  Spectrogram s;
  s.re = std::move(g.re);
  s.im = std::move(g.im);
  s.kind = SpectroKind::StftComplex;
  s.frame_len_samples = static_cast<std::uint32_t>(nfft);
  s.hop_samples = static_cast<std::uint32_t>(hop);
  s.sample_rate = buf.sample_rate;
  return s;
}

AudioBuffer istft(const Spectrogram& spec) {
  if (spec.kind != SpectroKind::StftComplex)
    throw Error(Errc::NotComplex, "istft: needs a complex STFT grid");
  const std::size_t nfft = spec.frame_len_samples;
  const std::size_t hop = spec.hop_samples;
  if (hop * 2 != nfft)
    throw Error(Errc::ColaViolation, "istft: hop must equal nfft/2");
  if (spec.re.rows() != nfft / 2 + 1)
    throw Error(Errc::ShapeMismatch, "istft: rows != nfft/2+1");
  std::vector<double> y = ola_synthesis(spec.re, spec.im, nfft, hop);
  // Undo the reflect padding of nfft/2 on both ends.
  const std::size_t pad = nfft / 2;
  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  out.samples.assign(y.begin() + static_cast<long>(pad), y.end() - static_cast<long>(pad));
  return out;
}

// --- Morlet scalogram --------------------------------------------------------

Spectrogram cwt_morlet(const AudioBuffer& buf, std::size_t num_scales,
                       double frame_ms, double overlap) {
  ensure_nonempty(buf, "cwt_morlet");
  if (num_scales < 8)
    throw Error(Errc::InvalidArgument, "cwt_morlet: num_scales must be >= 8");
  const double rate = static_cast<double>(buf.sample_rate);
  const std::size_t frame_len =
      static_cast<std::size_t>(std::lround(frame_ms / 1000.0 * rate));
  if (frame_len < 64)
    throw Error(Errc::InvalidArgument, "cwt_morlet: frame_ms * sample_rate must be >= 64 samples");
  if (!(overlap >= 0.0 && overlap < 1.0))
    throw Error(Errc::InvalidArgument, "cwt_morlet: overlap must be in [0,1)");
  const std::size_t L = buf.samples.size();
  if (L < frame_len)
    throw Error(Errc::SignalTooShort, "cwt_morlet: signal shorter than one frame");
  const std::size_t hop =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(
                                   static_cast<double>(frame_len) * (1.0 - overlap))));
  const std::size_t frames = (L - frame_len) / hop + 1;

  // Log-spaced center frequencies, 50 Hz .. 7 kHz.
  std::vector<double> freqs(num_scales);
  const double f_lo = 50.0, f_hi = 7000.0;
  for (std::size_t i = 0; i < num_scales; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(num_scales - 1);
    freqs[i] = f_lo * std::pow(f_hi / f_lo, t);
  }

  // One forward FFT of the zero-padded signal; each scale applies a
  // one-sided Gaussian in frequency (unit peak gain at its center, so a
  // tone of amplitude A pools to magnitude ~A/2 at the matching scale).
  const std::size_t P = next_pow2(L + 4096);
  std::vector<std::complex<double>> sig(P);
  for (std::size_t i = 0; i < L; ++i) sig[i] = buf.samples[i];
  fft_inplace(sig, false);

  Spectrogram s;
  s.re = Matrix(num_scales, frames);
  s.im = Matrix(num_scales, frames);
  s.kind = SpectroKind::CwtComplex;
  s.frame_len_samples = static_cast<std::uint32_t>(frame_len);
  s.hop_samples = static_cast<std::uint32_t>(hop);
  s.sample_rate = buf.sample_rate;
  s.scale_axis = freqs;

  std::vector<std::complex<double>> band(P);
  for (std::size_t si = 0; si < num_scales; ++si) {
    const double scale = kMorletOmega0 / (kTwoPi * freqs[si]);  // seconds
    for (std::size_t k = 0; k <= P / 2; ++k) {
      double omega = kTwoPi * static_cast<double>(k) * rate / static_cast<double>(P);
      double h = std::exp(-0.5 * (scale * omega - kMorletOmega0) *
                          (scale * omega - kMorletOmega0));
      band[k] = sig[k] * h;
    }
    for (std::size_t k = P / 2 + 1; k < P; ++k) band[k] = 0.0;  // analytic part
    fft_inplace(band, true);

    // Magnitude-mean pooling into 50% overlapped frames.
    for (std::size_t fr = 0; fr < frames; ++fr) {
      double acc = 0.0;
      const std::size_t off = fr * hop;
      for (std::size_t k = 0; k < frame_len; ++k) acc += std::abs(band[off + k]);
      s.re(si, fr) = acc / static_cast<double>(frame_len);
    }
  }
  return s;
}

// --- Visualizations ----------------------------------------------------------

Spectrogram visualize(const Spectrogram& spec, VisKind kind) {
  if (!spec.complex_kind())
    throw Error(Errc::AlreadyVisualized, "visualize: grid is already a visualization");
  Spectrogram out;
  out.kind = kind == VisKind::Linear   ? SpectroKind::VisLinear
             : kind == VisKind::Log    ? SpectroKind::VisLog
                                       : SpectroKind::VisLogReal;
  out.frame_len_samples = spec.frame_len_samples;
  out.hop_samples = spec.hop_samples;
  out.sample_rate = spec.sample_rate;
  out.scale_axis = spec.scale_axis;
  out.re = Matrix(spec.re.rows(), spec.re.cols());
  out.im = Matrix(spec.re.rows(), spec.re.cols());
  const std::size_t n = spec.re.size();
  for (std::size_t i = 0; i < n; ++i) {
    double re = spec.re.data()[i], im = spec.im.data()[i];
    double v;
    switch (kind) {
      case VisKind::Linear:
        v = std::sqrt(re * re + im * im);
        break;
      case VisKind::Log:
        v = std::log(std::max(std::sqrt(re * re + im * im), kLogFloor));
        break;
      default:  // LogReal, including its explicit zero branch
        v = (re == 0.0) ? 0.0 : std::log(std::abs(re));
        break;
    }
    out.re.data()[i] = v;
  }
  return out;
}

// --- Pitch shift ---------------------------------------------------------------

AudioBuffer pitch_shift(const AudioBuffer& buf, double scale) {
  ensure_nonempty(buf, "pitch_shift");
  if (!(scale > 0.5 && scale < 2.0))
    throw Error(Errc::ScaleOutOfRange, "pitch_shift: scale must lie in (0.5, 2)");
  const std::size_t nfft = 1024, hop = 256;
  if (buf.samples.size() < nfft)
    throw Error(Errc::SignalTooShort, "pitch_shift: signal shorter than one analysis frame");

  StftGrid g = stft_analysis(buf.samples, nfft, hop);
  const std::size_t bins = g.re.rows();
  const std::size_t frames = g.re.cols();

  // Time stretch by `scale` (reader step 1/scale over analysis frames), then
  // resample by `scale`; the two cancel in duration and multiply pitch.
  const double step = 1.0 / scale;
  const std::size_t out_frames =
      static_cast<std::size_t>(std::floor(static_cast<double>(frames - 1) / step)) + 1;

  std::vector<double> expected(bins);
  for (std::size_t k = 0; k < bins; ++k)
    expected[k] = kTwoPi * static_cast<double>(hop) * static_cast<double>(k) /
                  static_cast<double>(nfft);

  Matrix out_re(bins, out_frames), out_im(bins, out_frames);
  std::vector<double> phase(bins);
  for (std::size_t k = 0; k < bins; ++k) phase[k] = std::atan2(g.im(k, 0), g.re(k, 0));

  for (std::size_t of = 0; of < out_frames; ++of) {
    const double pos = static_cast<double>(of) * step;
    std::size_t i0 = std::min(static_cast<std::size_t>(pos), frames - 1);
    std::size_t i1 = std::min(i0 + 1, frames - 1);
    double frac = pos - static_cast<double>(i0);
    for (std::size_t k = 0; k < bins; ++k) {
      double m0 = std::hypot(g.re(k, i0), g.im(k, i0));
      double m1 = std::hypot(g.re(k, i1), g.im(k, i1));
      double mag = (1.0 - frac) * m0 + frac * m1;
      out_re(k, of) = mag * std::cos(phase[k]);
      out_im(k, of) = mag * std::sin(phase[k]);
      // Advance by the measured bin phase increment at this position.
      double p0 = std::atan2(g.im(k, i0), g.re(k, i0));
      double p1 = std::atan2(g.im(k, i1), g.re(k, i1));
      double dev = wrap_pi(p1 - p0 - expected[k]);
      phase[k] += expected[k] + dev;
    }
  }

  std::vector<double> stretched = ola_synthesis(out_re, out_im, nfft, hop);
  // Trim the analysis padding (nfft/2 reflect pad on each side).
  const std::size_t pad = nfft / 2;
  std::vector<double> core(stretched.begin() + static_cast<long>(pad),
                           stretched.end() - static_cast<long>(pad));
  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples = resample_linear(core, scale);
  return out;
}

// --- Reconstruction --------------------------------------------------------------

AudioBuffer reconstruct(const Spectrogram& vis, const Matrix& phase) {
  if (vis.kind == SpectroKind::VisLogReal)
    throw Error(Errc::LogRealIrreversible,
                "reconstruct: logarithmic-real grids discard sign and imaginary data");
  if (vis.kind != SpectroKind::VisLinear && vis.kind != SpectroKind::VisLog)
    throw Error(Errc::InvalidArgument, "reconstruct: needs a Linear or Log visualization");
  if (!vis.scale_axis.empty())
    throw Error(Errc::InvalidArgument, "reconstruct: only STFT-sourced grids are invertible");
  if (phase.rows() != vis.re.rows() || phase.cols() != vis.re.cols())
    throw Error(Errc::ShapeMismatch, "reconstruct: phase shape differs from the grid");

  Spectrogram grid;
  grid.kind = SpectroKind::StftComplex;
  grid.frame_len_samples = vis.frame_len_samples;
  grid.hop_samples = vis.hop_samples;
  grid.sample_rate = vis.sample_rate;
  grid.re = Matrix(vis.re.rows(), vis.re.cols());
  grid.im = Matrix(vis.re.rows(), vis.re.cols());
  for (std::size_t i = 0; i < vis.re.size(); ++i) {
    double mag = vis.kind == SpectroKind::VisLog ? std::exp(vis.re.data()[i])
                                                 : vis.re.data()[i];
    grid.re.data()[i] = mag * std::cos(phase.data()[i]);
    grid.im.data()[i] = mag * std::sin(phase.data()[i]);
  }
  return istft(grid);
}

Matrix phase_matrix(const Spectrogram& spec) {
  if (!spec.complex_kind())
    throw Error(Errc::NotComplex, "phase_matrix: needs a complex grid");
  Matrix p(spec.re.rows(), spec.re.cols());
  for (std::size_t i = 0; i < p.size(); ++i)
    p.data()[i] = std::atan2(spec.im.data()[i], spec.re.data()[i]);
  return p;
}

// --- SNR -------------------------------------------------------------------------

double snr_db(const AudioBuffer& reference, const AudioBuffer& test) {
  ensure_nonempty(reference, "snr_db");
  ensure_nonempty(test, "snr_db");
  if (reference.sample_rate != test.sample_rate)
    throw Error(Errc::DimensionMismatch, "snr_db: sample rates differ");
  const std::size_t n = std::min(reference.samples.size(), test.samples.size());
  double sig = 0.0, res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = reference.samples[i];
    double d = r - test.samples[i];
    sig += r * r;
    res += d * d;
  }
  if (res == 0.0) return 300.0;
  if (sig == 0.0) return -300.0;
  double v = 10.0 * std::log10(sig / res);
  return std::clamp(v, -300.0, 300.0);
}

// --- SPG1 container -----------------------------------------------------------------

void write_spg(const std::string& path, const Spectrogram& spec) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  bool has_imag = false;
  for (double v : spec.im.storage())
    if (v != 0.0) {
      has_imag = true;
      break;
    }
  f.write("SPG1", 4);
  put_le<std::uint32_t>(f, static_cast<std::uint32_t>(spec.re.rows()));
  put_le<std::uint32_t>(f, static_cast<std::uint32_t>(spec.re.cols()));
  put_le<std::uint8_t>(f, static_cast<std::uint8_t>(spec.kind));
  put_le<std::uint8_t>(f, has_imag ? 1 : 0);
  put_le<std::uint32_t>(f, spec.sample_rate);
  put_le<std::uint32_t>(f, spec.hop_samples);
  put_le<std::uint32_t>(f, spec.frame_len_samples);
  for (double v : spec.re.storage()) put_le<double>(f, v);
  if (has_imag)
    for (double v : spec.im.storage()) put_le<double>(f, v);

  nlohmann::json meta = {
      {"magic", "SPG1"},
      {"rows", spec.re.rows()},
      {"cols", spec.re.cols()},
      {"kind", spectro_kind_name(spec.kind)},
      {"has_imag", has_imag},
      {"sample_rate", spec.sample_rate},
      {"hop_samples", spec.hop_samples},
      {"frame_len_samples", spec.frame_len_samples},
      {"scale_axis", spec.scale_axis},
  };
  std::ofstream mf(path + ".meta.json");
  if (!mf) throw Error(Errc::IoError, "cannot open " + path + ".meta.json for writing");
  mf << meta.dump(2) << '\n';
}

Spectrogram read_spg(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot open " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, "SPG1", 4) != 0)
    throw Error(Errc::CorruptHeader, "missing SPG1 magic");
  const std::uint32_t rows = get_le<std::uint32_t>(f);
  const std::uint32_t cols = get_le<std::uint32_t>(f);
  const std::uint8_t kind = get_le<std::uint8_t>(f);
  const std::uint8_t has_imag = get_le<std::uint8_t>(f);
  Spectrogram s;
  s.sample_rate = get_le<std::uint32_t>(f);
  s.hop_samples = get_le<std::uint32_t>(f);
  s.frame_len_samples = get_le<std::uint32_t>(f);
  if (!f || rows == 0 || cols == 0 || kind > 4)
    throw Error(Errc::CorruptHeader, "invalid SPG1 header");
  s.kind = static_cast<SpectroKind>(kind);
  s.re = Matrix(rows, cols);
  s.im = Matrix(rows, cols);
  for (double& v : s.re.storage()) v = get_le<double>(f);
  if (has_imag)
    for (double& v : s.im.storage()) v = get_le<double>(f);
  if (!f) throw Error(Errc::CorruptHeader, "truncated SPG1 body");

  std::ifstream mf(path + ".meta.json");
  if (mf) {
    nlohmann::json meta = nlohmann::json::parse(mf, nullptr, false);
    if (!meta.is_discarded() && meta.contains("scale_axis"))
      s.scale_axis = meta["scale_axis"].get<std::vector<double>>();
  }
  return s;
}

}  // namespace dfnkit
