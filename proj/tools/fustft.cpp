// Command-line front end: analyze audio into spectrogram containers, invert
// them back to audio, export power CSVs, and run the round-trip benchmark.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 malformed data,
// 4 numerical failure.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <fustft/fustft.hpp>

namespace {

fustft::Window make_window(fustft::WindowKind kind, std::size_t frame_length) {
  return kind == fustft::WindowKind::sine ? fustft::make_sine_window(frame_length)
                                          : fustft::make_hann_window(frame_length);
}

fustft::WindowHint to_hint(fustft::WindowKind kind) {
  return kind == fustft::WindowKind::sine ? fustft::WindowHint::sine : fustft::WindowHint::hann;
}

void print_metrics(const fustft::ConsistencyMetrics& m, bool have_reference,
                   const fustft::InversionDiagnostics& diag) {
  std::cerr << "full_residual=" << fustft::detail::g17(m.full_residual) << '\n';
  std::cerr << "interior_residual=" << fustft::detail::g17(m.interior_residual) << '\n';
  if (have_reference)
    std::cerr << "signal_error=" << fustft::detail::g17(m.signal_error) << '\n';
  if (std::isfinite(diag.condition_number)) {
    std::cerr << "condition_number=" << fustft::detail::g17(diag.condition_number) << '\n';
    if (diag.ill_conditioned)
      std::cerr << "warning: normal equations are ill-conditioned at this shift\n";
  }
}

struct AnalyzeArgs {
  std::string input, output;
  fustft::TransformKind kind = fustft::TransformKind::fustft_ii;
  fustft::WindowKind window = fustft::WindowKind::hann;
  std::size_t frame_length = 2048;
  std::size_t shift = 1024;
  std::size_t oversample = 0;
};

void run_analyze(const AnalyzeArgs& args) {
  fustft::TransformConfig cfg;
  cfg.frame_length = args.frame_length;
  cfg.shift = args.shift;
  cfg.kind = args.kind;
  cfg.zero_pad = args.oversample;
  cfg.validate();

  const fustft::Signal x = fustft::read_wav(args.input);
  const fustft::Window w = make_window(args.window, args.frame_length);
  const fustft::Spectrogram X = fustft::forward(x, w, cfg);
  fustft::write_container(args.output, X, to_hint(args.window));

  const std::size_t elements = X.bins * X.frames;
  const double ratio = static_cast<double>(elements) / static_cast<double>(x.size());
  char ratio_str[32];
  std::snprintf(ratio_str, sizeof(ratio_str), "%.3f", ratio);
  std::cout << "spectrogram: " << X.bins << " bins x " << X.frames << " frames (" << elements
            << " elements; " << ratio_str << "x signal length " << x.size() << ")\n";
  std::cout << "wrote " << args.output << '\n';
}

struct SynthesizeArgs {
  std::string input, output, reference;
  fustft::InversionMode mode = fustft::InversionMode::standard;
  fustft::SolverPath solver = fustft::SolverPath::automatic;
  int window = -1;  // -1 = use the container hint
};

void run_synthesize(const SynthesizeArgs& args) {
  const fustft::ContainerFile file = fustft::read_container(args.input);
  const fustft::Spectrogram& X = file.spectrogram;

  fustft::WindowKind window_kind;
  if (args.window >= 0) {
    window_kind = static_cast<fustft::WindowKind>(args.window);
  } else if (file.window_hint == fustft::WindowHint::sine) {
    window_kind = fustft::WindowKind::sine;
  } else if (file.window_hint == fustft::WindowHint::hann) {
    window_kind = fustft::WindowKind::hann;
  } else {
    throw fustft::data_error("container has no window hint; pass --window sine|hann");
  }
  const fustft::Window w = make_window(window_kind, X.config.frame_length);

  fustft::InversionDiagnostics diag;
  fustft::Signal xhat;
  if (fustft::is_undersampled(X.config.kind)) {
    fustft::InversionOptions opts;
    opts.path = args.solver;
    xhat = args.mode == fustft::InversionMode::standard
               ? fustft::ifustft_standard(X, w, opts, &diag)
               : fustft::ifustft_periodic(X, w, opts, &diag);
  } else {
    xhat = fustft::istft_painless(X, w, args.mode, &diag);
  }

  double imag_sq = 0.0, total_sq = 0.0;
  for (const fustft::cdouble& v : xhat.samples) {
    imag_sq += v.imag() * v.imag();
    total_sq += std::norm(v);
  }
  const double imag_residue = total_sq > 0.0 ? std::sqrt(imag_sq / total_sq) : 0.0;
  if (imag_residue > 1e-9)
    std::cerr << "warning: imaginary residue " << fustft::detail::g17(imag_residue)
              << " discarded when writing real audio\n";

  fustft::Signal reference;
  const bool have_reference = !args.reference.empty();
  if (have_reference) {
    reference = fustft::read_wav(args.reference);
    if (reference.size() != xhat.size())
      throw fustft::data_error("reference length does not match the reconstruction");
  }
  const fustft::ConsistencyMetrics metrics =
      fustft::consistency_metrics(X, xhat, w, have_reference ? &reference : nullptr);
  print_metrics(metrics, have_reference, diag);

  if (!(xhat.sample_rate > 0.0)) {
    std::cerr << "warning: container has no sample rate; writing 44100 Hz\n";
    xhat.sample_rate = 44100.0;
  }
  fustft::write_wav(args.output, xhat);
  std::cout << "wrote " << args.output << " (" << xhat.size() << " samples)\n";
}

struct BenchArgs {
  std::string input, output;
  fustft::BenchConfig config;
};

void run_bench_cmd(const BenchArgs& args) {
  const fustft::Signal x = fustft::read_wav(args.input);
  const std::vector<fustft::BenchRow> rows = fustft::run_bench(x, args.config);
  fustft::write_bench_csv(args.output, rows);
  for (const fustft::BenchRow& r : rows) {
    std::cout << r.frame_length << '/' << r.shift << ' '
              << (r.mode == fustft::InversionMode::standard ? "standard" : "periodic") << ' '
              << (r.noisy ? "noisy" : "exact")
              << ": signal_error=" << fustft::detail::g17(r.metrics.signal_error)
              << " full=" << fustft::detail::g17(r.metrics.full_residual)
              << " interior=" << fustft::detail::g17(r.metrics.interior_residual) << '\n';
  }
  std::cout << "wrote " << args.output << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequency-undersampled short-time Fourier analysis and resynthesis"};
  app.require_subcommand(1);

  const std::map<std::string, fustft::TransformKind> kind_names{
      {"stft", fustft::TransformKind::stft},
      {"fostft", fustft::TransformKind::fostft},
      {"fustft-i", fustft::TransformKind::fustft_i},
      {"fustft-ii", fustft::TransformKind::fustft_ii},
      {"fustft-iii", fustft::TransformKind::fustft_iii}};
  const std::map<std::string, fustft::WindowKind> window_names{
      {"sine", fustft::WindowKind::sine}, {"hann", fustft::WindowKind::hann}};
  const std::map<std::string, fustft::InversionMode> mode_names{
      {"standard", fustft::InversionMode::standard},
      {"periodic", fustft::InversionMode::periodic}};
  const std::map<std::string, fustft::SolverPath> solver_names{
      {"general", fustft::SolverPath::general},
      {"fast", fustft::SolverPath::fast},
      {"auto", fustft::SolverPath::automatic}};

  AnalyzeArgs analyze;
  CLI::App* cmd_analyze = app.add_subcommand("analyze", "transform audio into a spectrogram");
  cmd_analyze->add_option("input", analyze.input, "input wav (mono pcm16/float32)")->required();
  cmd_analyze->add_option("output", analyze.output, "output spectrogram container")->required();
  cmd_analyze->add_option("--kind", analyze.kind, "transform kind")
      ->transform(CLI::CheckedTransformer(kind_names))
      ->default_str("fustft-ii");
  cmd_analyze->add_option("--window", analyze.window, "analysis window")
      ->transform(CLI::CheckedTransformer(window_names))
      ->default_str("hann");
  cmd_analyze->add_option("--frame-length", analyze.frame_length, "frame length in samples")
      ->default_val(std::size_t{2048});
  cmd_analyze->add_option("--shift", analyze.shift, "hop between frames in samples")
      ->default_val(std::size_t{1024});
  cmd_analyze->add_option("--oversample", analyze.oversample, "extra bins (fostft only)");
  cmd_analyze->callback([&] { run_analyze(analyze); });

  SynthesizeArgs synth;
  std::string synth_window;
  CLI::App* cmd_synth = app.add_subcommand("synthesize", "invert a spectrogram back to audio");
  cmd_synth->add_option("input", synth.input, "input spectrogram container")->required();
  cmd_synth->add_option("output", synth.output, "output wav (float32)")->required();
  cmd_synth->add_option("--mode", synth.mode, "inversion mode")
      ->transform(CLI::CheckedTransformer(mode_names))
      ->default_str("standard");
  cmd_synth->add_option("--solver", synth.solver, "solver path")
      ->transform(CLI::CheckedTransformer(solver_names))
      ->default_str("auto");
  cmd_synth->add_option("--window", synth_window, "analysis window, overriding the container hint")
      ->check(CLI::IsMember({"sine", "hann"}));
  cmd_synth->add_option("--reference", synth.reference,
                        "wav to compare the reconstruction against");
  cmd_synth->callback([&] {
    if (!synth_window.empty())
      synth.window = synth_window == "sine" ? static_cast<int>(fustft::WindowKind::sine)
                                            : static_cast<int>(fustft::WindowKind::hann);
    run_synthesize(synth);
  });

  BenchArgs bench;
  CLI::App* cmd_bench = app.add_subcommand("bench", "round-trip error study over a config grid");
  cmd_bench->add_option("input", bench.input, "input wav")->required();
  cmd_bench->add_option("output", bench.output, "output csv report")->required();
  cmd_bench->add_option("--frame-lengths", bench.config.frame_lengths, "frame lengths to test")
      ->delimiter(',');
  cmd_bench->add_option("--shift-divisors", bench.config.shift_divisors,
                        "shift = frame length / divisor")
      ->delimiter(',');
  cmd_bench->add_option("--noise-variance", bench.config.noise_variance,
                        "complex noise variance added to the spectrogram");
  cmd_bench->add_option("--kind", bench.config.kind, "transform kind")
      ->transform(CLI::CheckedTransformer(kind_names))
      ->default_str("fustft-ii");
  cmd_bench->add_option("--window", bench.config.window, "analysis window")
      ->transform(CLI::CheckedTransformer(window_names))
      ->default_str("hann");
  cmd_bench->add_option("--seed", bench.config.seed, "noise seed");
  cmd_bench->callback([&] { run_bench_cmd(bench); });

  std::string power_in, power_out;
  CLI::App* cmd_power = app.add_subcommand("export-power", "write |X|^2 as csv");
  cmd_power->add_option("input", power_in, "input spectrogram container")->required();
  cmd_power->add_option("output", power_out, "output csv")->required();
  cmd_power->callback([&] {
    const fustft::ContainerFile file = fustft::read_container(power_in);
    fustft::write_power_csv(power_out, file.spectrogram, &std::cerr);
    std::cout << "wrote " << power_out << '\n';
  });

  std::string voice_out;
  double voice_seconds = 15.0;
  double voice_rate = 44100.0;
  std::uint64_t voice_seed = 1;
  CLI::App* cmd_voice = app.add_subcommand("gen-voice", "write a synthetic voiced test signal");
  cmd_voice->add_option("output", voice_out, "output wav")->required();
  cmd_voice->add_option("--seconds", voice_seconds, "duration");
  cmd_voice->add_option("--rate", voice_rate, "sample rate in Hz");
  cmd_voice->add_option("--seed", voice_seed, "noise seed");
  cmd_voice->callback([&] {
    const fustft::Signal x = fustft::make_synthetic_voice(voice_seconds, voice_rate, voice_seed);
    fustft::write_wav(voice_out, x);
    std::cout << "wrote " << voice_out << " (" << x.size() << " samples)\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fustft::data_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const fustft::numerical_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
