#include "kpr/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kpr/errors.hpp"

namespace kpr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw config_error("CsvTable: empty header");
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row_text(cells);
}

void CsvTable::add_row_text(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size())
    throw config_error("CsvTable: row width does not match header");
  rows_.push_back(cells);
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i)
    out << (i ? "," : "") << header_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw config_error("CsvTable: cannot open " + path + " for writing");
  f << to_string();
  if (!f) throw config_error("CsvTable: write to " + path + " failed");
}

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) +
                         ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw config_error("config line " + std::to_string(lineno) + ": empty key");
    cfg.kv_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

std::string Config::serialize() const {
  std::ostringstream out;
  for (const auto& [k, v] : kv_) out << k << " = " << v << '\n';
  return out.str();
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
      throw config_error("config: trailing characters in value of " + key);
    return v;
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    throw config_error("config: value of " + key + " is not a number");
  }
}

long long Config::get_int(const std::string& key, long long fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(it->second, &pos);
    if (pos != it->second.size())
      throw config_error("config: trailing characters in value of " + key);
    return v;
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    throw config_error("config: value of " + key + " is not an integer");
  }
}

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

void Config::set_double(const std::string& key, double value) {
  kv_[key] = format_double(value);
}

void write_svg_lines(const std::string& path, const std::vector<double>& x,
                     const std::vector<std::vector<double>>& series,
                     const std::string& title) {
  if (x.size() < 2 || series.empty())
    throw config_error("write_svg_lines: need at least two points and one series");
  for (const auto& s : series)
    if (s.size() != x.size())
      throw config_error("write_svg_lines: series length mismatch");

  const double W = 640, H = 480, ml = 60, mr = 20, mt = 40, mb = 40;
  double xmin = x[0], xmax = x[0], ymin = series[0][0], ymax = series[0][0];
  for (double v : x) {
    xmin = std::min(xmin, v);
    xmax = std::max(xmax, v);
  }
  for (const auto& s : series)
    for (double v : s) {
      if (!std::isfinite(v)) continue;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  const auto px = [&](double v) {
    return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  const auto py = [&](double v) {
    return H - mb - (v - ymin) / (ymax - ymin) * (H - mt - mb);
  };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"" << W << "\" height=\"" << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  for (double v : {xmin, xmax})
    out << "<text x=\"" << px(v) << "\" y=\"" << H - mb + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << format_double(v) << "</text>\n";
  for (double v : {ymin, ymax})
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(v) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"12\">" << format_double(v) << "</text>\n";
  for (std::size_t si = 0; si < series.size(); ++si) {
    out << "<polyline fill=\"none\" stroke=\"" << colors[si % 4]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!std::isfinite(series[si][i])) continue;
      out << px(x[i]) << ',' << py(series[si][i]) << ' ';
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";

  std::ofstream f(path);
  if (!f) throw config_error("write_svg_lines: cannot open " + path);
  f << out.str();
}

}  // namespace kpr
