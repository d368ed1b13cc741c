#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "kpr/errors.hpp"
#include "kpr/io.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 1e-300, 0.0, -42.5}) {
    CHECK(std::stod(kpr::format_double(v)) == v);
  }
}

TEST_CASE("CsvTable rejects malformed rows and renders cleanly") {
  CHECK_THROWS_AS(kpr::CsvTable({}), kpr::config_error);

  kpr::CsvTable t({"a", "b"});
  CHECK_THROWS_AS(t.add_row({1.0}), kpr::config_error);
  CHECK_THROWS_AS(t.add_row_text({"x", "y", "z"}), kpr::config_error);

  t.add_row({1.5, 2.0});
  t.add_row_text({"hello", "world"});
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 2);

  const std::string s = t.to_string();
  int lines = 0;
  for (char c : s)
    if (c == '\n') ++lines;
  CHECK(lines == 3);  // header + two rows, trailing newline
  CHECK(s.rfind("a,b\n", 0) == 0);
  CHECK(s.find("hello,world") != std::string::npos);
}

TEST_CASE("Config parse, override, serialize round-trip") {
  const std::string text =
      "# comment line\n"
      "zeta = 3\n"
      "alpha= 1.25\n"
      "  # indented comment\n"
      "alpha =2.5\n"  // later key overrides
      "name = ladder run\n"
      "\n";
  const kpr::Config c = kpr::Config::parse(text);
  CHECK(c.has("alpha"));
  CHECK_FALSE(c.has("missing"));
  CHECK(c.get_double("alpha", 0.0) == 2.5);
  CHECK(c.get_int("zeta", 0) == 3);
  CHECK(c.get("name", "") == "ladder run");
  CHECK(c.get("missing", "fb") == "fb");
  CHECK(c.get_double("missing", 7.0) == 7.0);

  // Serialization is sorted and stable under a second parse.
  const std::string ser = c.serialize();
  CHECK(ser.find("alpha") < ser.find("name"));
  CHECK(ser.find("name") < ser.find("zeta"));
  CHECK(kpr::Config::parse(ser).serialize() == ser);
}

TEST_CASE("Config rejects non-numeric values where numbers are expected") {
  kpr::Config c = kpr::Config::parse("x = 1.5abc\ny = nope\n");
  CHECK_THROWS_AS(c.get_double("x", 0.0), kpr::config_error);
  CHECK_THROWS_AS(c.get_double("y", 0.0), kpr::config_error);
  CHECK_THROWS_AS(c.get_int("x", 0), kpr::config_error);
}

TEST_CASE("Config set/set_double feed back into getters") {
  kpr::Config c;
  c.set("tag", "v1");
  c.set_double("w", 0.125);
  CHECK(c.get("tag", "") == "v1");
  CHECK(c.get_double("w", 0.0) == 0.125);
  CHECK(c.entries().size() == 2);
}

TEST_CASE("CsvTable and SVG writers produce files") {
  const std::string csv_path = "io_test_table.csv";
  const std::string svg_path = "io_test_plot.svg";

  kpr::CsvTable t({"x", "y"});
  t.add_row({0.0, 1.0});
  t.write(csv_path);
  CHECK(slurp(csv_path) == t.to_string());

  std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  std::vector<std::vector<double>> series = {{0.0, 1.0, 0.5, 2.0},
                                             {1.0, 0.5, 0.25, 0.125}};
  kpr::write_svg_lines(svg_path, x, series, "test plot");
  const std::string svg = slurp(svg_path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("test plot") != std::string::npos);

  std::remove(csv_path.c_str());
  std::remove(svg_path.c_str());
}
