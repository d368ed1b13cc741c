#ifndef KPR_IO_HPP
#define KPR_IO_HPP

#include <map>
#include <string>
#include <vector>

namespace kpr {

/// Format a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// A rectangular table destined for CSV: one header row plus data rows of
/// matching width.  Numeric cells are rendered with format_double.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  void add_row_text(const std::vector<std::string>& cells);

  std::string to_string() const;
  void write(const std::string& path) const;

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return header_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Flat key=value configuration with '#' comments.  Later keys override
/// earlier ones; serialization is sorted so round-trips are stable.
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text);
  static Config load(const std::string& path);
  std::string serialize() const;

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

/// Write a minimal SVG 1.1 line plot (axes + one polyline per series).
void write_svg_lines(const std::string& path, const std::vector<double>& x,
                     const std::vector<std::vector<double>>& series,
                     const std::string& title);

}  // namespace kpr

#endif
