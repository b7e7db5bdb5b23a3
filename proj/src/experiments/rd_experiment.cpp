#include "item/experiments/rd_experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "item/codec/encoder.hpp"
#include "item/common/error.hpp"

namespace item::experiments {

void RdConfig::validate() const {
  if (qps.empty()) throw InvalidArgument("rd: empty qp list");
  for (int q : qps)
    if (q < 0 || q > codec::kMaxQp) throw InvalidArgument("rd: qp " + std::to_string(q) + " out of range");
  if (search_range < 1 || gop < 1) throw InvalidArgument("rd: bad search range or gop");
}

double interpolate_psnr(std::vector<std::pair<double, double>> pts, double rate) {
  if (pts.empty() || rate <= 0.0) throw InvalidArgument("interpolate_psnr: no curve or non-positive rate");
  if (pts.size() == 1) return pts.front().second;
  std::sort(pts.begin(), pts.end());
  const double x = std::log10(rate);
  std::size_t i = 1;
  while (i + 1 < pts.size() && std::log10(pts[i].first) < x) ++i;
  const double x0 = std::log10(pts[i - 1].first), x1 = std::log10(pts[i].first);
  if (x1 == x0) return pts[i].second;
  const double t = (x - x0) / (x1 - x0);
  return pts[i - 1].second + t * (pts[i].second - pts[i - 1].second);
}

RdReport run_rd_experiment(const RdConfig& cfg) {
  cfg.validate();
  RdReport rep;
  const auto corpus = build_corpus(cfg.corpus);
  // (content, qp, path) -> accumulated bits, psnr, satd, time
  struct Acc {
    double kbps = 0, psnr = 0;
    double satd = 0, time = 0;
    int n = 0;
  };
  std::map<std::tuple<std::string, int, std::string>, Acc> acc;
  for (const auto& item : corpus) {
    rep.foreground.emplace_back(item.name, item.foreground_fraction);
    for (const char* content : {"keyed", "original"}) {
      const auto& seq = std::string(content) == "keyed" ? item.keyed : item.original;
      for (int qp : cfg.qps) {
        for (const char* path : {"fast", "full"}) {
          codec::CodecConfig cc;
          cc.qp = qp;
          cc.search_range = cfg.search_range;
          cc.gop = cfg.gop;
          cc.beta = cfg.beta;
          codec::EncodeOptions opt;
          opt.path = std::string(path) == "fast" ? codec::DecisionPath::Fast : codec::DecisionPath::Full;
          opt.timing = cfg.timing;
          const auto res = codec::encode_sequence(seq, cc, opt);
          RdRow row;
          row.seq = item.name;
          row.content = content;
          row.qp = qp;
          row.path = path;
          row.bits = res.total_bits();
          row.kbps = res.bitrate(seq.frame_rate()) / 1000.0;
          row.psnr = res.mean_psnr_y();
          row.satd_calls = res.total_satd_calls();
          for (const auto& s : res.stats) row.md_time_us += s.md_time_us;
          rep.rows.push_back(row);
          auto& a = acc[{content, qp, path}];
          a.kbps += row.kbps;
          a.psnr += row.psnr;
          a.satd += static_cast<double>(row.satd_calls);
          a.time += static_cast<double>(row.md_time_us);
          ++a.n;
        }
      }
    }
  }
  for (const char* content : {"keyed", "original"}) {
    std::vector<std::pair<double, double>> full_curve;
    for (int qp : cfg.qps) {
      const auto& f = acc.at({content, qp, "full"});
      full_curve.emplace_back(f.kbps / f.n, f.psnr / f.n);
    }
    for (int qp : cfg.qps) {
      const auto& a = acc.at({content, qp, "fast"});
      const auto& b = acc.at({content, qp, "full"});
      RdSummary s;
      s.content = content;
      s.qp = qp;
      s.fast_kbps = a.kbps / a.n;
      s.full_kbps = b.kbps / b.n;
      s.fast_psnr = a.psnr / a.n;
      s.full_psnr = b.psnr / b.n;
      s.delta_psnr_same_qp = s.fast_psnr - s.full_psnr;
      s.bitrate_ratio = s.full_kbps > 0 ? s.fast_kbps / s.full_kbps : 0.0;
      s.delta_psnr_matched = std::abs(s.bitrate_ratio - 1.0) <= 0.05 || full_curve.size() < 2
                                 ? s.delta_psnr_same_qp
                                 : s.fast_psnr - interpolate_psnr(full_curve, s.fast_kbps);
      s.satd_ratio = b.satd > 0 ? a.satd / b.satd : 0.0;
      s.md_time_ratio = b.time > 0 ? a.time / b.time : 0.0;
      rep.summary.push_back(s);
    }
  }
  for (int qp : cfg.qps) {
    const auto& k = acc.at({"keyed", qp, "fast"});
    const auto& o = acc.at({"original", qp, "fast"});
    rep.keyed_over_original.emplace_back(qp, o.kbps > 0 ? k.kbps / o.kbps : 0.0);
  }
  return rep;
}

codec::BetaTable train_beta_on_corpus(const BetaTrainingConfig& cfg, std::size_t* sample_count) {
  std::vector<codec::BetaSample> samples;
  for (const auto& item : build_corpus(cfg.corpus)) {
    for (const auto* seq : {&item.original, &item.keyed}) {
      for (int qp : cfg.qps) {
        codec::CodecConfig cc;
        cc.qp = qp;
        cc.search_range = cfg.search_range;
        cc.gop = cfg.gop;
        codec::EncodeOptions opt;
        opt.path = codec::DecisionPath::Full;
        opt.beta_samples = &samples;
        codec::encode_sequence(*seq, cc, opt);
      }
    }
  }
  if (sample_count) *sample_count = samples.size();
  return codec::train_beta(samples, cfg.qps);
}

namespace {

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

void write_rd_csv(std::ostream& out, const std::vector<RdRow>& rows) {
  out << "seq,content,qp,path,bits,kbps,psnr,md_time_us,satd_calls\n";
  for (const auto& r : rows)
    out << r.seq << ',' << r.content << ',' << r.qp << ',' << r.path << ',' << r.bits << ',' << fmt(r.kbps) << ','
        << fmt(r.psnr) << ',' << r.md_time_us << ',' << r.satd_calls << '\n';
}

void write_rd_summary_csv(std::ostream& out, const RdReport& rep) {
  out << "content,qp,fast_kbps,full_kbps,fast_psnr,full_psnr,delta_psnr_same_qp,delta_psnr_matched,bitrate_ratio,"
         "satd_ratio,md_time_ratio,keyed_over_original\n";
  for (const auto& s : rep.summary) {
    double kor = 0.0;
    for (const auto& [qp, r] : rep.keyed_over_original)
      if (qp == s.qp) kor = r;
    out << s.content << ',' << s.qp << ',' << fmt(s.fast_kbps) << ',' << fmt(s.full_kbps) << ',' << fmt(s.fast_psnr)
        << ',' << fmt(s.full_psnr) << ',' << fmt(s.delta_psnr_same_qp) << ',' << fmt(s.delta_psnr_matched) << ','
        << fmt(s.bitrate_ratio) << ',' << fmt(s.satd_ratio) << ',' << fmt(s.md_time_ratio) << ',' << fmt(kor) << '\n';
  }
}

}  // namespace item::experiments
