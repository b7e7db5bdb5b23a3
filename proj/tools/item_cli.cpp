#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "item/audio/binaural.hpp"
#include "item/audio/capture.hpp"
#include "item/audio/doa.hpp"
#include "item/audio/g711.hpp"
#include "item/audio/hrtf.hpp"
#include "item/audio/steering_io.hpp"
#include "item/audio/wav.hpp"
#include "item/chromakey/chroma_key.hpp"
#include "item/codec/encoder.hpp"
#include "item/common/error.hpp"
#include "item/experiments/audio_eval.hpp"
#include "item/experiments/rd_experiment.hpp"
#include "item/experiments/session_demo.hpp"
#include "item/fusion/speaker_fusion.hpp"
#include "item/media/mask_io.hpp"
#include "item/media/synth.hpp"
#include "item/media/y4m.hpp"
#include "item/session/scenario.hpp"

namespace fs = std::filesystem;
using namespace item;

namespace {

// exit code for a run that completed but failed one of its own checks
constexpr int kCheckFailed = 3;

struct Globals {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

fs::path out_path(const Globals& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return fs::path(g.out_dir) / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  const std::string s = read_text(path);
  return {s.begin(), s.end()};
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double f1_score(const media::ForegroundMask& got, const media::ForegroundMask& truth) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const bool a = got.raw()[i] != 0, b = truth.raw()[i] != 0;
    tp += a && b;
    fp += a && !b;
    fn += !a && b;
  }
  return tp == 0 ? (fp + fn == 0 ? 1.0 : 0.0) : 2.0 * tp / (2.0 * tp + fp + fn);
}

// ---- gen-sequence

struct GenOpts {
  media::SynthSpec spec;
  std::string name = "chat";
  bool keyed = false;
};

int run_gen(const Globals& g, GenOpts o) {
  o.spec.seed = g.seed;
  const auto seq = media::synth_chat_sequence(o.spec);
  media::save_y4m(out_path(g, o.name + ".y4m").string(), seq);
  media::save_masks(out_path(g, o.name + ".mask").string(), *seq.masks);
  if (o.keyed) {
    auto keyed = seq;
    for (std::size_t f = 0; f < seq.frames.size(); ++f) keyed.frames[f] = chromakey::apply_key(seq.frames[f], (*seq.masks)[f]);
    media::save_y4m(out_path(g, o.name + "_keyed.y4m").string(), keyed);
  }
  std::cout << "wrote " << seq.frames.size() << " frames to " << out_path(g, o.name + ".y4m").string() << "\n";
  return 0;
}

// ---- encode / decode

struct EncodeOpts {
  std::string input;
  std::string name;
  int qp = 28;
  int gop = 30;
  int range = 16;
  std::string path = "fast";
  bool timing = false;
  bool recon = false;
};

int run_encode(const Globals& g, const EncodeOpts& o) {
  const auto seq = media::load_y4m(o.input);
  codec::CodecConfig cc;
  cc.qp = o.qp;
  cc.gop = o.gop;
  cc.search_range = o.range;
  cc.validate();
  codec::EncodeOptions opt;
  opt.path = o.path == "full" ? codec::DecisionPath::Full : codec::DecisionPath::Fast;
  opt.timing = o.timing;
  const auto res = codec::encode_sequence(seq, cc, opt);
  const std::string stem = o.name.empty() ? fs::path(o.input).stem().string() : o.name;
  write_text(out_path(g, stem + ".itm"), std::string(res.bitstream.begin(), res.bitstream.end()));
  std::ostringstream csv;
  codec::write_stats_csv(csv, res.stats);
  write_text(out_path(g, stem + "_stats.csv"), csv.str());
  if (o.recon) media::save_y4m(out_path(g, stem + "_recon.y4m").string(), res.recon);
  std::cout << stem << ": " << res.stats.size() << " frames, " << res.total_bits() << " bits, "
            << fmt(res.bitrate(seq.frame_rate()) / 1000.0, 2) << " kbps, PSNR-Y " << fmt(res.mean_psnr_y(), 2)
            << " dB, SATD calls " << res.total_satd_calls() << "\n";
  return 0;
}

struct DecodeOpts {
  std::string input;
  std::string name;
  bool no_crc = false;
  std::string reference;
};

int run_decode(const Globals& g, const DecodeOpts& o) {
  codec::DecodeOptions opt;
  opt.verify_checksums = !o.no_crc;
  const auto res = codec::decode_sequence(read_bytes(o.input), opt);
  const std::string stem = o.name.empty() ? fs::path(o.input).stem().string() + "_decoded" : o.name;
  media::save_y4m(out_path(g, stem + ".y4m").string(), res.video);
  std::cout << "decoded " << res.video.frames.size() << " frames " << res.header.width << "x" << res.header.height
            << " qp " << res.header.qp << "\n";
  if (!o.reference.empty()) {
    const auto ref = media::load_y4m(o.reference);
    const bool same = ref.frames == res.video.frames;
    std::cout << "reference match: " << (same ? "yes" : "NO") << "\n";
    if (!same) return kCheckFailed;
  }
  return 0;
}

// ---- chromakey

struct KeyOpts {
  std::string mode = "recover";
  std::string input;
  std::string masks;
  std::string truth;
  std::string name;
  chromakey::RecoveryParams params;
};

int run_chromakey(const Globals& g, const KeyOpts& o) {
  if (o.params.neighbor_threshold < 0 || o.params.neighbor_threshold > 8)
    throw InvalidArgument("chromakey: neighbor threshold must be in [0, 8]");
  auto seq = media::load_y4m(o.input);
  const std::string stem = o.name.empty() ? fs::path(o.input).stem().string() : o.name;
  if (o.mode == "apply") {
    if (o.masks.empty()) throw InvalidArgument("chromakey apply: --masks is required");
    const auto masks = media::load_masks(o.masks);
    if (masks.size() != seq.frames.size()) throw InvalidArgument("chromakey: mask count does not match frame count");
    for (std::size_t f = 0; f < masks.size(); ++f) seq.frames[f] = chromakey::apply_key(seq.frames[f], masks[f]);
    media::save_y4m(out_path(g, stem + "_keyed.y4m").string(), seq);
    std::cout << "keyed " << masks.size() << " frames\n";
    return 0;
  }
  std::vector<media::ForegroundMask> out;
  for (const auto& f : seq.frames) out.push_back(chromakey::recover_clean_mask(f, {}, o.params));
  media::save_masks(out_path(g, stem + "_recovered.mask").string(), out);
  if (!o.truth.empty()) {
    const auto truth = media::load_masks(o.truth);
    if (truth.size() != out.size()) throw InvalidArgument("chromakey: truth mask count does not match frame count");
    double worst = 1.0, sum = 0.0;
    std::ostringstream csv;
    csv << "frame,f1\n";
    for (std::size_t f = 0; f < out.size(); ++f) {
      const double f1 = f1_score(out[f], truth[f]);
      worst = std::min(worst, f1);
      sum += f1;
      csv << f << ',' << fmt(f1, 6) << '\n';
    }
    write_text(out_path(g, stem + "_f1.csv"), csv.str());
    std::cout << "F1 mean " << fmt(sum / out.size(), 5) << " min " << fmt(worst, 5) << "\n";
  }
  return 0;
}

// ---- train-beta

struct BetaOpts {
  experiments::BetaTrainingConfig cfg;
};

int run_train_beta(const Globals& g, BetaOpts o) {
  o.cfg.corpus.seed = g.seed;
  std::size_t n = 0;
  const auto table = experiments::train_beta_on_corpus(o.cfg, &n);
  nlohmann::json j;
  j["samples"] = n;
  j["qps"] = o.cfg.qps;
  nlohmann::json pts = nlohmann::json::object();
  for (int qp : o.cfg.qps) pts[std::to_string(qp)] = table.at(qp);
  j["points"] = pts;
  j["table"] = table.values();
  write_text(out_path(g, "beta.json"), j.dump(2) + "\n");
  std::cout << "trained on " << n << " macroblocks:";
  for (int qp : o.cfg.qps) std::cout << " qp" << qp << "=" << fmt(table.at(qp), 2);
  std::cout << "\n";
  return 0;
}

// ---- doa

struct DoaOpts {
  std::string input;
  std::string steering;
  double theta = 90.0;
  double phi = 45.0;
  double snr = 30.0;
  double rt60 = 0.0;
  int frames = 4;
  double resolution = 5.0;
  double low_hz = 300.0;
  bool spectrum = false;
};

int run_doa(const Globals& g, const DoaOpts& o) {
  const auto field = o.steering.empty() ? audio::SteeringField::analytic(o.resolution) : audio::load_steering_field(o.steering);
  Eigen::MatrixXd x;
  int rate = audio::kDefaultSampleRate;
  if (!o.input.empty()) {
    const auto wav = audio::read_wav(o.input);
    if (wav.channels != 4) throw InvalidArgument("doa: input must have 4 channels (O, X, Y, Z)");
    x = audio::to_matrix(wav);
    rate = wav.sample_rate;
  } else {
    audio::Direction d{o.theta, o.phi};
    audio::validate(d);
    audio::CaptureParams p;
    p.snr_db = o.snr;
    p.rt60_ms = o.rt60;
    p.seed = g.seed;
    x = audio::synth_array_capture({{d, audio::speech_like(audio::kFrameSamples * o.frames, g.seed + 17)}}, p);
  }
  const auto band = audio::band_from_hz(o.low_hz, rate);
  std::ostringstream csv;
  csv << "frame,theta,phi,peak\n";
  const int n = static_cast<int>(x.cols()) / audio::kFrameSamples;
  if (n < 1) throw InvalidArgument("doa: input shorter than one 15360-sample frame");
  for (int f = 0; f < n; ++f) {
    audio::ArrayFrame frame;
    frame.samples = x.middleCols(static_cast<Eigen::Index>(f) * audio::kFrameSamples, audio::kFrameSamples);
    frame.sample_rate = rate;
    const auto r = audio::doa_estimate(frame, field, band);
    csv << f << ',' << fmt(r.direction.theta, 2) << ',' << fmt(r.direction.phi, 2) << ',' << r.peak << '\n';
    std::cout << "frame " << f << ": theta " << r.direction.theta << " phi " << r.direction.phi << "\n";
    if (o.spectrum && f == 0) {
      std::ostringstream sp;
      sp << "theta,phi,power\n";
      for (std::size_t i = 0; i < field.size(); ++i)
        sp << fmt(field.directions()[i].theta, 2) << ',' << fmt(field.directions()[i].phi, 2) << ',' << r.spectrum[i]
           << '\n';
      write_text(out_path(g, "doa_spectrum.csv"), sp.str());
    }
  }
  write_text(out_path(g, "doa.csv"), csv.str());
  return 0;
}

// ---- binaural

struct BinauralOpts {
  std::string input;
  double theta = 90.0;
  double phi = 90.0;
  double seconds = 1.0;
  double resolution = 5.0;
  int fft_size = 1024;
  std::string hrtf = "spherical";
  bool ulaw = false;
};

int run_binaural(const Globals& g, const BinauralOpts& o) {
  Eigen::MatrixXd x;
  int rate = audio::kDefaultSampleRate;
  if (!o.input.empty()) {
    const auto wav = audio::read_wav(o.input);
    if (wav.channels != 4) throw InvalidArgument("binaural: input must have 4 channels (O, X, Y, Z)");
    rate = wav.sample_rate;
    x = audio::to_matrix(wav);
  } else {
    audio::Direction d{o.theta, o.phi};
    audio::validate(d);
    const int n = static_cast<int>(std::lround(o.seconds * rate));
    if (n < 1) throw InvalidArgument("binaural: duration must be positive");
    x = audio::synth_array_capture({{d, audio::speech_like(n, g.seed)}}, {}) * 0.25;
  }
  if (o.ulaw) {
    // simulate the G.711 link the capture travels over
    for (Eigen::Index c = 0; c < x.rows(); ++c)
      for (Eigen::Index i = 0; i < x.cols(); ++i) {
        const double v = std::clamp(std::round(x(c, i) * 32768.0), -32768.0, 32767.0);
        x(c, i) = audio::ulaw_decode(audio::ulaw_encode(static_cast<std::int16_t>(v))) / 32768.0;
      }
  }
  const auto field = audio::SteeringField::analytic(o.resolution);
  audio::SphericalHeadHrtf sphere;
  audio::PressureHrtf pressure;
  const audio::HrtfProvider& h = o.hrtf == "pressure" ? static_cast<const audio::HrtfProvider&>(pressure) : sphere;
  const auto bank = audio::design_binaural_filters(h, field, rate);
  const Eigen::MatrixXd y = audio::render_binaural(x, bank, o.fft_size);
  audio::write_wav(out_path(g, "binaural.wav").string(), audio::from_matrix(y, rate));
  const double el = y.row(0).squaredNorm(), er = y.row(1).squaredNorm();
  std::cout << "rendered " << y.cols() << " samples; left/right energy " << fmt(10.0 * std::log10(el / er), 2)
            << " dB\n";
  return 0;
}

// ---- speaker-fusion

struct FusionOpts {
  std::string scenario;
  int frames = 200;
  int window = 3;
};

int run_fusion(const Globals& g, const FusionOpts& o) {
  fusion::Scenario s;
  if (!o.scenario.empty()) {
    s = fusion::load_scenario(o.scenario);
  } else {
    fusion::FusionConfig fc;
    fc.consistency_window = o.window;
    s = fusion::noise_burst_scenario(g.seed, o.frames, fc);
    write_text(out_path(g, "fusion_scenario.json"), fusion::scenario_to_json(s));
  }
  const auto rep = fusion::run_scenario(s);
  std::ostringstream log;
  fusion::write_event_log(log, s, rep);
  write_text(out_path(g, "fusion_events.jsonl"), log.str());
  std::cout << "frames " << s.frames.size() << ", switches " << rep.switches << ", spurious " << rep.spurious_switches
            << ", reacquire hints " << rep.hints << "\n";
  return 0;
}

// ---- simulate-session

struct SessionOpts {
  std::string script;
  std::string topology = "adhoc";
  int n = 6;
  double kbps = 500.0;
  int fanout = 4;
  int passive_from = 0;
  std::size_t trials = 100000;
};

int run_session(const Globals& g, const SessionOpts& o) {
  experiments::SessionDemoConfig cfg;
  cfg.participants = o.n;
  cfg.topology = {session::topology_from_string(o.topology), o.fanout};
  cfg.kbps = o.kbps;
  cfg.latency_trials = o.trials;
  cfg.seed = g.seed;
  if (!o.script.empty()) cfg.script = read_text(o.script);
  const auto ops = cfg.script.empty() ? session::growing_session_script(o.n, cfg.topology, o.kbps, o.passive_from)
                                      : session::parse_script(cfg.script);
  const auto model = session::LatencyModel::conferencing_default();
  const auto sc = session::run_session_script(ops, model, g.seed);
  std::string log;
  for (const auto& line : sc.log) log += line + "\n";
  write_text(out_path(g, "session_log.jsonl"), log);
  std::ostringstream csv;
  session::write_metrics_csv(csv, sc.metrics);
  write_text(out_path(g, "session_metrics.csv"), csv.str());
  if (cfg.script.empty()) cfg.script = session::script_to_jsonl(ops);
  const auto rep = experiments::run_session_demo(cfg);
  write_text(out_path(g, "session_report.json"), rep.dump(2) + "\n");
  const auto& lat = rep.at("latency");
  std::cout << "latency bounds " << lat.at("bounds_ms")[0] << "-" << lat.at("bounds_ms")[1] << " ms, mean "
            << fmt(lat.at("mean_ms").get<double>(), 2) << " ms over " << lat.at("trials") << " trials\n";
  bool ok = lat.at("out_of_bounds").get<std::size_t>() == 0 && sc.rendezvous_media_messages == 0;
  for (double v : sc.latency_samples) ok = ok && v >= sc.latency_bounds.min_ms && v <= sc.latency_bounds.max_ms;
  return ok ? 0 : kCheckFailed;
}

// ---- rd-experiment / audio-eval

struct RdOpts {
  experiments::RdConfig cfg;
};

int run_rd(const Globals& g, RdOpts o) {
  o.cfg.corpus.seed = g.seed;
  const auto rep = experiments::run_rd_experiment(o.cfg);
  std::ostringstream rows, sum;
  experiments::write_rd_csv(rows, rep.rows);
  experiments::write_rd_summary_csv(sum, rep);
  write_text(out_path(g, "rd.csv"), rows.str());
  write_text(out_path(g, "rd_summary.csv"), sum.str());
  std::cout << sum.str();
  return 0;
}

struct AudioOpts {
  experiments::AudioEvalConfig cfg;
};

int run_audio(const Globals& g, AudioOpts o) {
  o.cfg.seed = g.seed;
  const auto rows = experiments::run_audio_eval(o.cfg);
  std::ostringstream csv;
  experiments::write_audio_csv(csv, rows);
  write_text(out_path(g, "audio_eval.csv"), csv.str());
  for (const auto& r : rows)
    std::cout << "snr " << r.snr_db << " dB, rt60 " << r.rt60_ms << " ms: mean error " << fmt(r.mean_error, 2)
              << " deg, max std " << fmt(r.max_std, 2) << " deg\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Immersive telepresence toolkit: object video coding, spatial audio, speaker fusion, sessions"};
  app.set_config("--config", "", "TOML/INI config file; [subcommand] sections set subcommand options");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Output directory")->capture_default_str();

  std::function<int()> action;

  GenOpts gen;
  auto* c = app.add_subcommand("gen-sequence", "Generate a synthetic chat sequence (Y4M + mask sidecar)");
  c->add_option("--name", gen.name)->capture_default_str();
  c->add_option("--width", gen.spec.width)->capture_default_str();
  c->add_option("--height", gen.spec.height)->capture_default_str();
  c->add_option("--frames", gen.spec.frame_count)->capture_default_str();
  c->add_option("--actors", gen.spec.actor_count)->capture_default_str();
  c->add_option("--motion", gen.spec.motion_amplitude, "Peak actor speed, px/frame")->capture_default_str();
  c->add_option("--flicker", gen.spec.lighting_flicker, "Peak luma change per frame")->capture_default_str();
  c->add_option("--gesture-rate", gen.spec.gesture_rate)->capture_default_str();
  c->add_option("--noise", gen.spec.noise_sigma)->capture_default_str();
  c->add_option("--fps", gen.spec.fps)->capture_default_str();
  c->add_flag("--keyed", gen.keyed, "Also write the key-composited sequence");
  c->callback([&] { action = [&] { return run_gen(g, gen); }; });

  EncodeOpts enc;
  c = app.add_subcommand("encode", "Encode a Y4M sequence to an ITEMOBJ1 stream");
  c->add_option("--input", enc.input)->required()->check(CLI::ExistingFile);
  c->add_option("--name", enc.name, "Output stem (default: input stem)");
  c->add_option("--qp", enc.qp)->capture_default_str()->check(CLI::Range(0, 51));
  c->add_option("--gop", enc.gop)->capture_default_str();
  c->add_option("--search-range", enc.range)->capture_default_str();
  c->add_option("--path", enc.path, "Mode decision: fast or full")->capture_default_str()->check(CLI::IsMember({"fast", "full"}));
  c->add_flag("--timing", enc.timing, "Record mode-decision wall time (not reproducible)");
  c->add_flag("--recon", enc.recon, "Write the encoder reconstruction");
  c->callback([&] { action = [&] { return run_encode(g, enc); }; });

  DecodeOpts dec;
  c = app.add_subcommand("decode", "Decode an ITEMOBJ1 stream to Y4M");
  c->add_option("--input", dec.input)->required()->check(CLI::ExistingFile);
  c->add_option("--name", dec.name, "Output stem");
  c->add_flag("--no-crc", dec.no_crc, "Skip checksum verification");
  c->add_option("--reference", dec.reference, "Y4M to compare against; mismatch exits nonzero")->check(CLI::ExistingFile);
  c->callback([&] { action = [&] { return run_decode(g, dec); }; });

  KeyOpts key;
  c = app.add_subcommand("chromakey", "Apply the blue key (apply) or recover cleaned masks (recover)");
  c->add_option("--mode", key.mode)->capture_default_str()->check(CLI::IsMember({"apply", "recover"}));
  c->add_option("--input", key.input)->required()->check(CLI::ExistingFile);
  c->add_option("--masks", key.masks, "Mask sidecar (apply)")->check(CLI::ExistingFile);
  c->add_option("--truth", key.truth, "Ground-truth masks for an F1 report (recover)")->check(CLI::ExistingFile);
  c->add_option("--name", key.name, "Output stem");
  c->add_option("--tolerance", key.params.color_tolerance)->capture_default_str();
  c->add_option("--neighbors", key.params.neighbor_threshold)->capture_default_str();
  c->callback([&] { action = [&] { return run_chromakey(g, key); }; });

  BetaOpts beta;
  c = app.add_subcommand("train-beta", "Train the P8x8 early-termination table");
  c->add_option("--sequences", beta.cfg.corpus.sequences)->capture_default_str();
  c->add_option("--frames", beta.cfg.corpus.frames)->capture_default_str();
  c->add_option("--qps", beta.cfg.qps)->capture_default_str()->delimiter(',');
  c->add_option("--search-range", beta.cfg.search_range)->capture_default_str();
  c->add_option("--noise", beta.cfg.corpus.noise_sigma)->capture_default_str();
  c->add_option("--flicker", beta.cfg.corpus.lighting_flicker)->capture_default_str();
  c->callback([&] { action = [&] { return run_train_beta(g, beta); }; });

  DoaOpts doa;
  c = app.add_subcommand("doa", "Capon direction-of-arrival estimate per 15360-sample frame");
  c->add_option("--input", doa.input, "4-channel WAV (O, X, Y, Z); synthesized when absent")->check(CLI::ExistingFile);
  c->add_option("--steering", doa.steering, "Steering-field file")->check(CLI::ExistingFile);
  c->add_option("--theta", doa.theta)->capture_default_str();
  c->add_option("--phi", doa.phi)->capture_default_str();
  c->add_option("--snr", doa.snr)->capture_default_str();
  c->add_option("--rt60", doa.rt60)->capture_default_str();
  c->add_option("--frames", doa.frames)->capture_default_str();
  c->add_option("--resolution", doa.resolution)->capture_default_str();
  c->add_option("--low-hz", doa.low_hz, "Lowest frequency in the band")->capture_default_str();
  c->add_flag("--spectrum", doa.spectrum, "Write the first frame's spatial spectrum");
  c->callback([&] { action = [&] { return run_doa(g, doa); }; });

  BinauralOpts bin;
  c = app.add_subcommand("binaural", "Render a 4-channel capture to binaural stereo");
  c->add_option("--input", bin.input, "4-channel WAV; synthesized when absent")->check(CLI::ExistingFile);
  c->add_option("--theta", bin.theta)->capture_default_str();
  c->add_option("--phi", bin.phi)->capture_default_str();
  c->add_option("--seconds", bin.seconds)->capture_default_str();
  c->add_option("--resolution", bin.resolution)->capture_default_str();
  c->add_option("--fft-size", bin.fft_size)->capture_default_str();
  c->add_option("--hrtf", bin.hrtf)->capture_default_str()->check(CLI::IsMember({"spherical", "pressure"}));
  c->add_flag("--ulaw", bin.ulaw, "Pass the capture through G.711 mu-law first");
  c->callback([&] { action = [&] { return run_binaural(g, bin); }; });

  FusionOpts fus;
  c = app.add_subcommand("speaker-fusion", "Run the active-speaker automaton on a scenario");
  c->add_option("--scenario", fus.scenario, "Scenario JSON; a noise-burst scenario is generated when absent")
      ->check(CLI::ExistingFile);
  c->add_option("--frames", fus.frames)->capture_default_str();
  c->add_option("--window", fus.window, "Consistency window K")->capture_default_str();
  c->callback([&] { action = [&] { return run_fusion(g, fus); }; });

  SessionOpts ses;
  c = app.add_subcommand("simulate-session", "Discrete-event conferencing session");
  c->add_option("--script", ses.script, "JSON-lines script; a growing session is generated when absent")
      ->check(CLI::ExistingFile);
  c->add_option("--topology", ses.topology)->capture_default_str()->check(CLI::IsMember({"adhoc", "mesh", "multicast"}));
  c->add_option("--n", ses.n)->capture_default_str();
  c->add_option("--kbps", ses.kbps)->capture_default_str();
  c->add_option("--fanout", ses.fanout)->capture_default_str();
  c->add_option("--passive-from", ses.passive_from, "Clients with id >= this join passive (0: none)")->capture_default_str();
  c->add_option("--trials", ses.trials, "Latency trials")->capture_default_str();
  c->callback([&] { action = [&] { return run_session(g, ses); }; });

  RdOpts rd;
  c = app.add_subcommand("rd-experiment", "Fast vs full mode decision, keyed vs original content");
  c->add_option("--sequences", rd.cfg.corpus.sequences)->capture_default_str();
  c->add_option("--frames", rd.cfg.corpus.frames)->capture_default_str();
  c->add_option("--width", rd.cfg.corpus.width)->capture_default_str();
  c->add_option("--height", rd.cfg.corpus.height)->capture_default_str();
  c->add_option("--noise", rd.cfg.corpus.noise_sigma)->capture_default_str();
  c->add_option("--flicker", rd.cfg.corpus.lighting_flicker)->capture_default_str();
  c->add_option("--qps", rd.cfg.qps)->capture_default_str()->delimiter(',');
  c->add_option("--search-range", rd.cfg.search_range)->capture_default_str();
  c->add_option("--gop", rd.cfg.gop)->capture_default_str();
  c->add_flag("--timing", rd.cfg.timing, "Record wall time (not reproducible)");
  c->callback([&] { action = [&] { return run_rd(g, rd); }; });

  AudioOpts au;
  c = app.add_subcommand("audio-eval", "DOA accuracy over SNR x RT60 conditions");
  c->add_option("--snr", au.cfg.snr_db)->capture_default_str()->delimiter(',');
  c->add_option("--rt60", au.cfg.rt60_ms)->capture_default_str()->delimiter(',');
  c->add_option("--directions", au.cfg.directions)->capture_default_str();
  c->add_option("--realizations", au.cfg.realizations)->capture_default_str();
  c->add_option("--resolution", au.cfg.resolution_deg)->capture_default_str();
  c->callback([&] { action = [&] { return run_audio(g, au); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
