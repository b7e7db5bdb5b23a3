#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "item/codec/config.hpp"
#include "item/experiments/corpus.hpp"

namespace item::experiments {

struct RdConfig {
  CorpusConfig corpus;
  std::vector<int> qps{24, 28, 32, 36};
  int search_range = 8;
  int gop = 30;
  /// Wall-clock mode-decision timing; breaks byte reproducibility.
  bool timing = false;
  codec::BetaTable beta = codec::BetaTable::trained_default();

  /// Throws InvalidArgument for an empty or out-of-range qp list.
  void validate() const;
};

struct RdRow {
  std::string seq;
  std::string content;  // "keyed" or "original"
  int qp = 0;
  std::string path;  // "fast" or "full"
  std::size_t bits = 0;
  double kbps = 0.0;
  double psnr = 0.0;
  std::int64_t md_time_us = 0;
  std::uint64_t satd_calls = 0;
};

/// Aggregate over the corpus for one content type and qp.
struct RdSummary {
  std::string content;
  int qp = 0;
  double fast_kbps = 0.0;
  double full_kbps = 0.0;
  double fast_psnr = 0.0;
  double full_psnr = 0.0;
  /// fast - full at the same qp.
  double delta_psnr_same_qp = 0.0;
  /// fast minus the full-path curve interpolated (PSNR over log rate) at the
  /// fast bitrate; equals the same-qp value when the rates are within 5%.
  double delta_psnr_matched = 0.0;
  double bitrate_ratio = 0.0;  // fast / full
  double satd_ratio = 0.0;     // fast / full
  double md_time_ratio = 0.0;  // 0 without timing
};

struct RdReport {
  std::vector<RdRow> rows;
  std::vector<RdSummary> summary;
  /// Fast-path bitrate of keyed over original content, per qp.
  std::vector<std::pair<int, double>> keyed_over_original;
  /// Mean foreground fraction of each sequence.
  std::vector<std::pair<std::string, double>> foreground;
};

RdReport run_rd_experiment(const RdConfig& config);

struct BetaTrainingConfig {
  /// Separate seed from the evaluation corpus so training and test differ.
  CorpusConfig corpus{3, 30, 128, 96, 7, 3.0, 4};
  std::vector<int> qps{24, 28, 32, 36};
  int search_range = 8;
  int gop = 30;
};

/// Full-path encodes of the original and keyed corpus collect one sample
/// per P-frame macroblock, then train_beta.
codec::BetaTable train_beta_on_corpus(const BetaTrainingConfig& config, std::size_t* sample_count = nullptr);

/// PSNR of a piecewise-linear curve over log10(rate) at `rate`; clamps to
/// the end segments (linear extrapolation) outside the sampled range.
double interpolate_psnr(std::vector<std::pair<double, double>> rate_psnr, double rate);

void write_rd_csv(std::ostream& out, const std::vector<RdRow>& rows);
void write_rd_summary_csv(std::ostream& out, const RdReport& report);

}  // namespace item::experiments
