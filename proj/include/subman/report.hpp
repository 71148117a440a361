#pragma once

#include <string>
#include <vector>

#include "subman/experiments.hpp"

namespace subman {

// Series for the SVG line plots; log-log scaling is applied by the writer.
struct PlotSeries {
  std::string label;
  std::vector<double> xs, ys;
};

std::string render_svg_loglog(const std::string& title,
                              const std::vector<PlotSeries>& series);

// Writes rate.csv (header n,m,mean_sq_err,se,mean_err), rate_summary.json and
// rate.svg into out_dir. File contents are deterministic given the report.
void emit_rate_report(const RateReport& report, const std::string& out_dir);

void emit_center_sweep(const std::vector<CenterSweepRow>& rows,
                       const std::string& out_dir);

void emit_beta_sweep(const std::vector<BetaSweepRow>& rows,
                     const std::string& out_dir);

}  // namespace subman
