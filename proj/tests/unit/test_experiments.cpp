#include <doctest.h>

#include <cmath>
#include <sstream>

#include "item/common/error.hpp"
#include "item/experiments/audio_eval.hpp"
#include "item/experiments/corpus.hpp"
#include "item/experiments/rd_experiment.hpp"
#include "item/experiments/session_demo.hpp"

using namespace item;
using namespace item::experiments;

TEST_CASE("psnr interpolation over log rate") {
  const std::vector<std::pair<double, double>> curve{{100, 30}, {1000, 40}, {10, 20}};
  CHECK(interpolate_psnr(curve, 100) == doctest::Approx(30));
  CHECK(interpolate_psnr(curve, std::sqrt(10.0) * 100) == doctest::Approx(35));
  CHECK(interpolate_psnr(curve, 10000) == doctest::Approx(50));  // extrapolated
  CHECK(interpolate_psnr(curve, 1) == doctest::Approx(10));
  CHECK(interpolate_psnr({{1, 7}}, 2) == doctest::Approx(7));
  CHECK_THROWS_AS(interpolate_psnr({}, 2), InvalidArgument);
}

TEST_CASE("corpus is deterministic and keyed content is a composite") {
  CorpusConfig c{2, 3, 64, 48, 5, 3.0, 4};
  const auto a = build_corpus(c);
  const auto b = build_corpus(c);
  REQUIRE(a.size() == 2u);
  CHECK(a[0].name != a[1].name);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].original.frames.size() == 3u);
    CHECK(a[i].original.frames[2].y_plane() == b[i].original.frames[2].y_plane());
    CHECK(a[i].foreground_fraction > 0.0);
    CHECK(a[i].foreground_fraction < 0.6);
  }
}

TEST_CASE("small rd run: shape, determinism and summary relations") {
  RdConfig cfg;
  cfg.corpus = {1, 4, 64, 48, 3, 3.0, 4};
  cfg.qps = {28, 36};
  const auto r1 = run_rd_experiment(cfg);
  const auto r2 = run_rd_experiment(cfg);
  CHECK(r1.rows.size() == 1u * 2u * 2u * 2u);
  REQUIRE(r1.summary.size() == 4u);
  std::ostringstream s1, s2;
  write_rd_csv(s1, r1.rows);
  write_rd_csv(s2, r2.rows);
  CHECK(s1.str() == s2.str());
  for (const auto& s : r1.summary) {
    CHECK(s.satd_ratio > 0.0);
    CHECK(s.satd_ratio < 1.0);
    CHECK(s.md_time_ratio == 0.0);
    CHECK(s.bitrate_ratio == doctest::Approx(s.fast_kbps / s.full_kbps));
  }
  // higher qp spends fewer bits
  for (const auto& row : r1.rows)
    if (row.qp == 28) {
      for (const auto& o : r1.rows)
        if (o.qp == 36 && o.seq == row.seq && o.content == row.content && o.path == row.path) CHECK(o.bits < row.bits);
    }
  CHECK(r1.keyed_over_original.size() == 2u);
  cfg.qps = {};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("audio evaluation grid") {
  AudioEvalConfig cfg;
  cfg.snr_db = {30};
  cfg.rt60_ms = {0, 100};
  cfg.directions = 2;
  cfg.realizations = 3;
  cfg.resolution_deg = 10.0;
  const auto rows = run_audio_eval(cfg);
  REQUIRE(rows.size() == 2u);
  for (const auto& r : rows) CHECK(r.angles.size() == 2u);
  CHECK(rows[0].rt60_ms == 0.0);
  const auto dirs = test_directions(6, 5.0, 1);
  CHECK(dirs.size() == 6u);
  for (const auto& d : dirs) {
    CHECK(d.theta >= 20.0);
    CHECK(d.theta <= 160.0);
    CHECK(std::fmod(d.phi, 5.0) == 0.0);
  }
  std::ostringstream csv;
  write_audio_csv(csv, rows);
  std::size_t lines = 0;
  for (char ch : csv.str()) lines += ch == '\n';
  CHECK(lines == 3u);
}

TEST_CASE("session demo report") {
  SessionDemoConfig cfg;
  cfg.latency_trials = 1000;
  cfg.sweep_max = 6;
  const auto j = run_session_demo(cfg);
  CHECK(j.at("latency").at("bounds_ms").at(0).get<double>() == doctest::Approx(102.0));
  CHECK(j.at("scenario").at("rendezvous_media_messages").get<int>() == 0);
  CHECK(j.at("multicast_audience").at("nodes").at(0).at("up_streams").get<int>() == 4);
  CHECK(j.at("multicast_audience").at("tree_depth").get<int>() == 2);
  CHECK(run_session_demo(cfg).dump() == j.dump());
  cfg.participants = 1;
  CHECK_THROWS_AS(run_session_demo(cfg), InvalidArgument);
}
