#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "helpers.hpp"

using Catch::Approx;
using namespace fustft;
using testutil::random_complex_signal;
using testutil::random_spectrogram;

namespace {

// Frame count by walking frames until none overlaps the signal: frame l
// covers samples [l s + s - L_w, l s + s - 1].
std::size_t enumerate_frames(std::size_t signal_length, std::size_t frame_length,
                             std::size_t shift) {
  std::size_t count = 0;
  for (std::size_t l = 0;; ++l) {
    const std::ptrdiff_t first = static_cast<std::ptrdiff_t>(l * shift + shift) -
                                 static_cast<std::ptrdiff_t>(frame_length);
    if (first >= static_cast<std::ptrdiff_t>(signal_length)) break;
    ++count;
  }
  return count;
}

TransformConfig make_cfg(std::size_t frame_length, std::size_t shift, TransformKind kind,
                         std::size_t zero_pad = 0) {
  TransformConfig cfg;
  cfg.frame_length = frame_length;
  cfg.shift = shift;
  cfg.kind = kind;
  cfg.zero_pad = zero_pad;
  return cfg;
}

Window w_for(const TransformConfig& cfg) { return make_sine_window(cfg.frame_length); }

const TransformKind all_kinds[] = {TransformKind::stft, TransformKind::fostft,
                                   TransformKind::fustft_i, TransformKind::fustft_ii,
                                   TransformKind::fustft_iii};

}  // namespace

TEST_CASE("frame count examples and enumeration oracle") {
  REQUIRE(frame_count(10, make_cfg(4, 2, TransformKind::stft)) == 6);
  REQUIRE(frame_count(8820, make_cfg(512, 256, TransformKind::stft)) == 36);
  REQUIRE(frame_count(9, make_cfg(8, 8, TransformKind::stft)) == 2);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t frame_length = 2 + rng() % 30;
    const std::size_t shift = 1 + rng() % frame_length;
    const std::size_t signal_length = frame_length + 1 + rng() % 100;
    const auto cfg = make_cfg(frame_length, shift, TransformKind::stft);
    REQUIRE(frame_count(signal_length, cfg) ==
            enumerate_frames(signal_length, frame_length, shift));
  }
}

TEST_CASE("frame count needs more than one frame of signal") {
  REQUIRE_THROWS_AS(frame_count(8, make_cfg(8, 4, TransformKind::stft)), std::invalid_argument);
  REQUIRE_THROWS_AS(frame_count(3, make_cfg(8, 4, TransformKind::stft)), std::invalid_argument);
}

TEST_CASE("config constraints") {
  REQUIRE_THROWS_AS(make_cfg(8, 0, TransformKind::stft).validate(), std::invalid_argument);
  REQUIRE_THROWS_AS(make_cfg(8, 9, TransformKind::stft).validate(), std::invalid_argument);
  REQUIRE_THROWS_AS(make_cfg(8, 2, TransformKind::stft, 4).validate(), std::invalid_argument);
  REQUIRE_THROWS_AS(make_cfg(8, 2, TransformKind::fostft, 0).validate(), std::invalid_argument);
  REQUIRE_NOTHROW(make_cfg(8, 2, TransformKind::fostft, 8).validate());
  // undersampled kinds: frame length divisible by four, shift at most half
  REQUIRE_THROWS_AS(make_cfg(10, 2, TransformKind::fustft_i).validate(), std::invalid_argument);
  REQUIRE_THROWS_AS(make_cfg(8, 5, TransformKind::fustft_ii).validate(), std::invalid_argument);
  REQUIRE_NOTHROW(make_cfg(8, 4, TransformKind::fustft_iii).validate());
}

TEST_CASE("extract frame pads with zeros") {
  std::mt19937_64 rng(12);
  const auto cfg = make_cfg(8, 2, TransformKind::stft);
  const Signal x = random_complex_signal(21, rng);
  const std::size_t frames = frame_count(x.size(), cfg);

  // mirror the index map sample by sample
  for (std::size_t l : {std::size_t{0}, std::size_t{1}, frames - 2, frames - 1}) {
    const auto frame = extract_frame(x, l, cfg);
    REQUIRE(frame.size() == cfg.frame_length);
    for (std::size_t tau = 0; tau < cfg.frame_length; ++tau) {
      const std::ptrdiff_t t = static_cast<std::ptrdiff_t>(l * cfg.shift + cfg.shift + tau) -
                               static_cast<std::ptrdiff_t>(cfg.frame_length);
      const cdouble expected = (t >= 0 && t < static_cast<std::ptrdiff_t>(x.size()))
                                   ? x.samples[static_cast<std::size_t>(t)]
                                   : cdouble{};
      REQUIRE(frame[tau] == expected);
    }
  }
  // the first frame reads L_w - shift zeros
  const auto first = extract_frame(x, 0, cfg);
  for (std::size_t tau = 0; tau + cfg.shift < cfg.frame_length; ++tau)
    REQUIRE(first[tau] == cdouble{});
  REQUIRE_THROWS_AS(extract_frame(x, frames, cfg), std::invalid_argument);
}

TEST_CASE("forward matches the dense oracle") {
  std::mt19937_64 rng(13);
  for (TransformKind kind : all_kinds) {
    const std::size_t zero_pad = kind == TransformKind::fostft ? 3 : 0;
    for (std::size_t shift : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
      const auto cfg = make_cfg(8, shift, kind, zero_pad);
      const Signal x = random_complex_signal(29, rng);
      const Spectrogram X = forward(x, w_for(cfg), cfg);
      const auto op = oracle::assemble_dense(cfg, w_for(cfg), x.size(), false);
      Eigen::VectorXcd xs(static_cast<Eigen::Index>(x.size()));
      for (std::size_t t = 0; t < x.size(); ++t) xs(static_cast<Eigen::Index>(t)) = x.samples[t];
      const Eigen::VectorXcd expected = op.matrix * xs;
      const Eigen::VectorXcd got = oracle::stack(X);
      REQUIRE((got - expected).norm() <= 1e-12 * (expected.norm() + 1.0));
    }
  }
}

TEST_CASE("forward of zero is zero") {
  const auto cfg = make_cfg(16, 4, TransformKind::fustft_ii);
  Signal x;
  x.samples.assign(40, cdouble{});
  const Spectrogram X = forward(x, make_sine_window(16), cfg);
  for (const cdouble& v : X.data) REQUIRE(v == cdouble{});
}

TEST_CASE("undersampled spectrograms decimate the stft") {
  std::mt19937_64 rng(14);
  const std::size_t length = 16;
  const Window w = make_hann_window(length);
  const Signal x = random_complex_signal(45, rng);

  const Spectrogram full = forward(x, w, make_cfg(length, 3, TransformKind::stft));
  const Spectrogram even = forward(x, w, make_cfg(length, 3, TransformKind::fustft_i));
  const Spectrogram odd = forward(x, w, make_cfg(length, 3, TransformKind::fustft_ii));
  const Spectrogram alt = forward(x, w, make_cfg(length, 3, TransformKind::fustft_iii));
  const Spectrogram oversampled =
      forward(x, w, make_cfg(length, 3, TransformKind::fostft, length));

  REQUIRE(even.bins == length / 2);
  REQUIRE(full.bins == length);
  REQUIRE(oversampled.bins == 2 * length);
  for (std::size_t l = 0; l < full.frames; ++l) {
    for (std::size_t k = 0; k < length / 2; ++k) {
      // kind i picks the even stft rows, kind ii the odd ones
      REQUIRE(std::abs(even.at(k, l) - full.at(2 * k, l)) <= 1e-12);
      REQUIRE(std::abs(odd.at(k, l) - full.at(2 * k + 1, l)) <= 1e-12);
      // and the odd grid sits on the doubled fostft grid at 4k + 2
      REQUIRE(std::abs(odd.at(k, l) - oversampled.at(4 * k + 2, l)) <= 1e-12);
      // kind iii alternates between the two, bit for bit
      const cdouble expected = l % 2 == 0 ? even.at(k, l) : odd.at(k, l);
      REQUIRE(alt.at(k, l) == expected);
    }
  }
}

TEST_CASE("adjoint is the conjugate transpose") {
  std::mt19937_64 rng(15);
  for (TransformKind kind : all_kinds) {
    const std::size_t zero_pad = kind == TransformKind::fostft ? 5 : 0;
    const auto cfg = make_cfg(8, 3, kind, zero_pad);
    const Window w = make_sine_window(8);

    // standard padding
    {
      const Signal x = random_complex_signal(21, rng);
      const Spectrogram X = random_spectrogram(cfg, 21, rng);
      const Spectrogram Sx = forward(x, w, cfg);
      const Signal y = adjoint(X, w);
      const cdouble lhs = testutil::inner(Sx.data, X.data);
      const cdouble rhs = testutil::inner(x.samples, y.samples);
      REQUIRE(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
    }
    // periodic padding
    {
      std::normal_distribution<double> gauss(0.0, 1.0);
      const std::size_t padded = 24;  // multiple of shift 3, half 4, even frames
      Signal xp = random_complex_signal(padded, rng);
      const Spectrogram Sx = forward_periodic(xp, w, cfg);
      Spectrogram X = Sx;
      for (cdouble& v : X.data) v = cdouble(gauss(rng), gauss(rng));
      const Signal y = adjoint_periodic(X, w);
      const cdouble lhs = testutil::inner(Sx.data, X.data);
      const cdouble rhs = testutil::inner(xp.samples, y.samples);
      REQUIRE(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
    }
  }
}

TEST_CASE("forward is linear") {
  std::mt19937_64 rng(16);
  const auto cfg = make_cfg(8, 2, TransformKind::fustft_iii);
  const Window w = make_hann_window(8);
  const Signal x = random_complex_signal(25, rng);
  const Signal y = random_complex_signal(25, rng);
  const cdouble alpha(0.7, -1.3), beta(-0.2, 0.4);

  Signal combo;
  combo.samples.resize(25);
  for (std::size_t t = 0; t < 25; ++t)
    combo.samples[t] = alpha * x.samples[t] + beta * y.samples[t];

  const Spectrogram Xc = forward(combo, w, cfg);
  const Spectrogram Xx = forward(x, w, cfg);
  const Spectrogram Xy = forward(y, w, cfg);
  for (std::size_t i = 0; i < Xc.data.size(); ++i) {
    const cdouble expected = alpha * Xx.data[i] + beta * Xy.data[i];
    REQUIRE(std::abs(Xc.data[i] - expected) <= 1e-12);
  }
}

TEST_CASE("periodic forward wraps only the leading frames") {
  std::mt19937_64 rng(17);
  const std::size_t length = 8;
  const Window w = make_sine_window(length);

  for (std::size_t shift : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
    const auto cfg = make_cfg(length, shift, TransformKind::fustft_i);
    const std::size_t signal_length = 21;
    const Signal x = random_complex_signal(signal_length, rng);
    const PeriodicExtension ext = periodic_extension(signal_length, cfg);

    // padded with zeros: every column of the plain transform reappears
    Signal xp = x;
    xp.samples.resize(ext.padded_length, cdouble{});
    const Spectrogram plain = forward(x, w, cfg);
    const Spectrogram wrapped = forward_periodic(xp, w, cfg, ext.pad_frames);
    REQUIRE(wrapped.frames == plain.frames + ext.pad_frames);
    for (std::size_t l = 0; l < plain.frames; ++l)
      for (std::size_t k = 0; k < plain.bins; ++k)
        REQUIRE(std::abs(wrapped.at(k, l) - plain.at(k, l)) <= 1e-13);
    for (std::size_t l = plain.frames; l < wrapped.frames; ++l)
      for (std::size_t k = 0; k < wrapped.bins; ++k)
        REQUIRE(std::abs(wrapped.at(k, l)) <= 1e-13);

    // nonzero tail: only the frames that read the leading padding change
    Signal xfull = random_complex_signal(ext.padded_length, rng);
    Signal xtrunc;
    xtrunc.samples.assign(xfull.samples.begin(),
                          xfull.samples.begin() + static_cast<std::ptrdiff_t>(signal_length));
    const Spectrogram wrap2 = forward_periodic(xfull, w, cfg, 0);
    const Spectrogram plain2 = forward(xtrunc, w, cfg);
    const std::size_t head = (length - 1) / shift;
    bool leading_differs = false;
    for (std::size_t l = 0; l < plain2.frames; ++l) {
      const bool tail_frame =
          l * shift + shift > signal_length;  // reads the trailing padding region
      for (std::size_t k = 0; k < plain2.bins; ++k) {
        const double diff = std::abs(wrap2.at(k, l) - plain2.at(k, l));
        if (l < head) {
          leading_differs = leading_differs || diff > 1e-9;
        } else if (!tail_frame) {
          REQUIRE(diff <= 1e-13);
        }
      }
    }
    REQUIRE(leading_differs);
  }
}

TEST_CASE("periodic transform shape checks") {
  const auto cfg = make_cfg(8, 3, TransformKind::fustft_iii);
  const Window w = make_sine_window(8);
  Signal x;
  x.samples.assign(25, cdouble{});  // not a multiple of shift
  REQUIRE_THROWS_AS(forward_periodic(x, w, cfg), std::invalid_argument);
  x.samples.assign(36, cdouble{});  // multiple of 3 and 4, 12 frames, even
  REQUIRE_NOTHROW(forward_periodic(x, w, cfg));
  x.samples.assign(30, cdouble{});  // 10 frames but 30 % 4 != 0
  REQUIRE_THROWS_AS(forward_periodic(x, w, cfg), std::invalid_argument);
}

TEST_CASE("transforms reject bad windows") {
  std::mt19937_64 rng(18);
  const Signal x = random_complex_signal(30, rng);
  const auto cfg = make_cfg(8, 2, TransformKind::fustft_i);
  REQUIRE_THROWS_AS(forward(x, make_sine_window(16), cfg), std::invalid_argument);
  REQUIRE_THROWS_AS(forward(x, make_whole_point_even_sine_window(8), cfg),
                    std::invalid_argument);
  const Window rect = make_custom_window(std::vector<double>(8, 0.3));
  REQUIRE_THROWS_AS(forward(x, rect, cfg), std::invalid_argument);
  // rectangular is fine for the non-undersampled transform
  REQUIRE_NOTHROW(forward(x, rect, make_cfg(8, 2, TransformKind::stft)));
}

TEST_CASE("spectrogram element count halves at shift = half frame") {
  std::mt19937_64 rng(19);
  const std::size_t length = 16;
  const auto cfg = make_cfg(length, length / 2, TransformKind::fustft_ii);
  const Signal x = random_complex_signal(100, rng);
  const Spectrogram X = forward(x, make_sine_window(length), cfg);
  // bins * frames = (L_w/2) * ceil((L_x + L_w/2) / (L_w/2)): about L_x + L_w
  REQUIRE(X.bins * X.frames == (length / 2) * frame_count(100, cfg));
  REQUIRE(X.bins == length / 2);
}
