#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "efleet/harness.hpp"

namespace efleet {

namespace {

struct Row {
  std::string instanceId, method, scenario;
  int size = 0;
  double objective = 0, bound = 0, gap = 0, wallTime = 0;
};

std::vector<Row> readCsv(const std::filesystem::path& csvFile) {
  std::ifstream in(csvFile);
  if (!in) throw std::runtime_error("cannot open " + csvFile.string());
  std::string line;
  if (!std::getline(in, line) || line != kRunRecordHeader)
    throw std::runtime_error("unexpected run-record header in " + csvFile.string());
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() < 19) continue;
    Row r;
    r.instanceId = f[0];
    r.method = f[2];
    r.size = std::stoi(f[3]);
    r.objective = std::stod(f[6]);
    r.bound = std::stod(f[7]);
    r.gap = std::stod(f[8]);
    r.wallTime = std::stod(f[9]);
    r.scenario = f[17];
    rows.push_back(std::move(r));
  }
  return rows;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0;
  double s = 0;
  for (double x : v) s += x;
  return s / v.size();
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1));
}

// minimal grouped bar chart; one bar per (group, series)
void writeBarChart(const std::filesystem::path& file, const std::string& title,
                   const std::vector<std::string>& groups,
                   const std::vector<std::string>& series,
                   const std::vector<std::vector<double>>& values) {
  const int w = 640, h = 400, left = 60, bottom = 60, top = 40;
  double hi = 1e-9;
  for (const auto& row : values)
    for (double v : row) hi = std::max(hi, v);
  const char* colors[] = {"#4878a8", "#d1605e", "#6aa56e", "#e8b654"};
  std::ofstream out(file);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='16'>"
      << title << "</text>\n";
  const double plotW = w - left - 20, plotH = h - top - bottom;
  const double groupW = plotW / std::max<std::size_t>(groups.size(), 1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double barW = groupW * 0.8 / std::max<std::size_t>(series.size(), 1);
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double v = values[g][s];
      const double bh = plotH * v / hi;
      const double x = left + g * groupW + groupW * 0.1 + s * barW;
      out << "<rect x='" << x << "' y='" << top + plotH - bh << "' width='"
          << barW * 0.9 << "' height='" << bh << "' fill='"
          << colors[s % 4] << "'><title>" << v << "</title></rect>\n";
    }
    out << "<text x='" << left + g * groupW + groupW / 2 << "' y='" << h - bottom + 18
        << "' text-anchor='middle' font-size='12'>" << groups[g] << "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s)
    out << "<rect x='" << left + 120 * s << "' y='" << h - 24 << "' width='12' height='12' fill='"
        << colors[s % 4] << "'/><text x='" << left + 120 * s + 16 << "' y='" << h - 13
        << "' font-size='12'>" << series[s] << "</text>\n";
  out << "</svg>\n";
}

}  // namespace

void writeReport(const std::filesystem::path& csvFile,
                 const std::filesystem::path& outDir) {
  const std::vector<Row> rows = readCsv(csvFile);
  std::filesystem::create_directories(outDir);

  std::map<std::pair<int, std::string>, std::vector<double>> obj, gap, wall;
  std::map<std::pair<int, std::string>, std::vector<double>> bestCgBySize;
  // per (size, instance): exact ub and best CG ub for the "CG Better" metric
  std::map<std::pair<int, std::string>, double> exactUb, exactGap, cgBest;
  for (const Row& r : rows) {
    const bool cg = r.method == "cg";
    if (r.method != "exact" && !cg) continue;  // skip failed cells
    obj[{r.size, r.method}].push_back(r.objective);
    gap[{r.size, r.method}].push_back(r.gap);
    wall[{r.size, r.method}].push_back(r.wallTime);
    const auto key = std::pair(r.size, r.instanceId + "/" + r.scenario);
    if (cg) {
      auto it = cgBest.find(key);
      if (it == cgBest.end() || r.objective < it->second) cgBest[key] = r.objective;
    } else {
      exactUb[key] = r.objective;
      exactGap[key] = r.gap;
    }
  }

  std::ofstream sum(outDir / "summary.csv");
  sum << "size,method,runs,mean_objective,mean_gap_pct,sd_gap_pct,mean_wall_s,"
         "cg_better_pct\n";
  for (const auto& [key, objs] : obj) {
    const auto& [size, method] = key;
    // "CG Better": improvement of the best CG bound over a non-optimal exact run
    std::vector<double> better;
    if (method == "cg") {
      for (const auto& [ikey, ub] : exactUb) {
        if (ikey.first != size || exactGap[ikey] <= 1e-6) continue;
        auto it = cgBest.find(ikey);
        if (it != cgBest.end() && ub > 0)
          better.push_back(100.0 * (1.0 - it->second / ub));
      }
    }
    sum << size << ',' << method << ',' << objs.size() << ',' << mean(objs) << ','
        << mean(gap[key]) << ',' << stddev(gap[key]) << ',' << mean(wall[key])
        << ',' << (better.empty() ? 0.0 : mean(better)) << '\n';
  }

  std::vector<int> sizes;
  std::vector<std::string> methods;
  for (const auto& [key, _] : obj) {
    if (std::find(sizes.begin(), sizes.end(), key.first) == sizes.end())
      sizes.push_back(key.first);
    if (std::find(methods.begin(), methods.end(), key.second) == methods.end())
      methods.push_back(key.second);
  }
  std::sort(sizes.begin(), sizes.end());
  std::sort(methods.begin(), methods.end());
  std::vector<std::string> groups;
  std::vector<std::vector<double>> chartObj, chartWall;
  for (int s : sizes) {
    groups.push_back(std::to_string(s) + " trips");
    std::vector<double> o, wl;
    for (const auto& m : methods) {
      o.push_back(mean(obj[{s, m}]));
      wl.push_back(mean(wall[{s, m}]));
    }
    chartObj.push_back(o);
    chartWall.push_back(wl);
  }
  writeBarChart(outDir / "objective.svg", "Mean objective ($/day)", groups, methods,
                chartObj);
  writeBarChart(outDir / "walltime.svg", "Mean wall time (s)", groups, methods,
                chartWall);
}

}  // namespace efleet
