#include "subman/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include <json.hpp>

#include "subman/io.hpp"

namespace subman {

namespace {

constexpr double kWidth = 640, kHeight = 480, kMargin = 60;

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg_loglog(const std::string& title,
                              const std::vector<PlotSeries>& series) {
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const PlotSeries& s : series) {
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (s.xs[i] > 0 && s.ys[i] > 0) {
        xmin = std::min(xmin, std::log10(s.xs[i]));
        xmax = std::max(xmax, std::log10(s.xs[i]));
        ymin = std::min(ymin, std::log10(s.ys[i]));
        ymax = std::max(ymax, std::log10(s.ys[i]));
      }
    }
  }
  if (xmin > xmax) { xmin = 0; xmax = 1; }
  if (ymin > ymax) { ymin = 0; ymax = 1; }
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }

  const auto px = [&](double lx) {
    return kMargin + (lx - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin);
  };
  const auto py = [&](double ly) {
    return kHeight - kMargin - (ly - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << "log10 x: [" << fmt2(xmin) << ", " << fmt2(xmax) << "]</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2
      << "\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\" text-anchor=\"middle\">log10 y: [" << fmt2(ymin)
      << ", " << fmt2(ymax) << "]</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kColors[si % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (s.xs[i] > 0 && s.ys[i] > 0) {
        out << fmt2(px(std::log10(s.xs[i]))) << ',' << fmt2(py(std::log10(s.ys[i]))) << ' ';
      }
    }
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\""
        << kMargin + 16 * static_cast<double>(si + 1)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color << "\">"
        << s.label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void emit_rate_report(const RateReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);

  std::ostringstream csv;
  csv << "n,m,mean_sq_err,se,mean_err\n";
  for (const RateCell& rc : report.cells) {
    csv << rc.level << ',' << rc.m << ',' << format_double(rc.mean_sq) << ','
        << format_double(rc.se_sq) << ',' << format_double(rc.mean_err) << '\n';
  }
  write_file(out_dir + "/rate.csv", csv.str());

  const nlohmann::json summary = {
      {"rate_r", report.rate_r},
      {"bias_slope", report.bias_slope},
      {"variance_slope", report.variance_slope},
      {"c1", report.c1},
      {"c2", report.c2},
      {"holdout_max_ratio", report.holdout_max_ratio},
      {"failed_trials", report.failed_trials}};
  write_file(out_dir + "/rate_summary.json", summary.dump(2) + "\n");

  // One series per sample count: mean error vs N.
  std::map<std::size_t, PlotSeries> by_m;
  for (const RateCell& rc : report.cells) {
    PlotSeries& s = by_m[rc.m];
    s.label = "m=" + std::to_string(rc.m);
    s.xs.push_back(std::pow(2.0, rc.level));
    s.ys.push_back(rc.mean_err);
  }
  std::vector<PlotSeries> series;
  for (auto& [m, s] : by_m) series.push_back(std::move(s));
  write_file(out_dir + "/rate.svg", render_svg_loglog("L2 error vs N", series));
}

void emit_center_sweep(const std::vector<CenterSweepRow>& rows,
                       const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ostringstream csv;
  csv << "n,centers,partition_risk,kernel_risk,partition_l2,kernel_l2,"
         "min_count,empty_cells,sup_gap,kernel_condition,kernel_failed\n";
  for (const CenterSweepRow& r : rows) {
    csv << r.level << ',' << r.num_centers << ',' << format_double(r.partition_risk)
        << ',' << format_double(r.kernel_risk) << ',' << format_double(r.partition_l2)
        << ',' << format_double(r.kernel_l2) << ',' << r.min_count << ','
        << r.empty_cells << ',' << format_double(r.sup_gap) << ','
        << format_double(r.kernel_condition) << ',' << (r.kernel_failed ? 1 : 0)
        << '\n';
  }
  write_file(out_dir + "/center_sweep.csv", csv.str());

  PlotSeries part{"partition L2", {}, {}}, kern{"kernel L2", {}, {}};
  for (const CenterSweepRow& r : rows) {
    part.xs.push_back(static_cast<double>(r.num_centers));
    part.ys.push_back(r.partition_l2);
    if (!r.kernel_failed) {
      kern.xs.push_back(static_cast<double>(r.num_centers));
      kern.ys.push_back(r.kernel_l2);
    }
  }
  write_file(out_dir + "/center_sweep.svg",
             render_svg_loglog("L2 error vs centers", {part, kern}));
}

void emit_beta_sweep(const std::vector<BetaSweepRow>& rows,
                     const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ostringstream csv;
  csv << "beta,risk,condition,total_variation,failed,error\n";
  for (const BetaSweepRow& r : rows) {
    csv << format_double(r.beta) << ',' << format_double(r.risk) << ','
        << format_double(r.condition) << ',' << format_double(r.total_variation)
        << ',' << (r.failed ? 1 : 0) << ',' << r.error << '\n';
  }
  write_file(out_dir + "/beta_sweep.csv", csv.str());

  PlotSeries cond{"condition", {}, {}}, tv{"total variation", {}, {}};
  for (const BetaSweepRow& r : rows) {
    cond.xs.push_back(r.beta);
    cond.ys.push_back(r.condition);
    if (!r.failed) {
      tv.xs.push_back(r.beta);
      tv.ys.push_back(r.total_variation);
    }
  }
  write_file(out_dir + "/beta_sweep.svg",
             render_svg_loglog("Condition and oscillation vs beta", {cond, tv}));
}

}  // namespace subman
