#include "evenfill/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "evenfill/errors.hpp"

namespace evenfill {

namespace {

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<UnitPoint> read_points(std::istream& in) {
  std::vector<UnitPoint> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trimmed(line);
    if (body.empty() || body[0] == '#') continue;
    std::istringstream fields(body);
    UnitPoint p;
    if (!(fields >> p.value)) {
      throw ConfigError("point file line " + std::to_string(line_no) + ": bad value");
    }
    std::string annotation;
    if (fields >> annotation) {
      std::uint64_t num = 0;
      std::uint64_t den = 0;
      char slash = 0;
      std::istringstream ratio(annotation);
      if (!(ratio >> num >> slash >> den) || slash != '/' || den == 0) {
        throw ConfigError("point file line " + std::to_string(line_no) +
                          ": bad rational annotation \"" + annotation + "\"");
      }
      p.rational = Rational{num, den};
    }
    points.push_back(p);
  }
  return points;
}

std::vector<UnitPoint> read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open point file: " + path);
  return read_points(in);
}

void write_points(std::ostream& out, std::span<const UnitPoint> points) {
  for (const UnitPoint& p : points) {
    out << format_double(p.value);
    if (p.rational.present()) {
      out << ' ' << p.rational.num << '/' << p.rational.den;
    }
    out << '\n';
  }
}

void write_values(std::ostream& out, std::span<const double> values) {
  for (double v : values) out << format_double(v) << '\n';
}

void write_point_set(std::ostream& out, const SortedPointSet& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out << format_double(ps.value(i));
    if (ps.rational(i).present()) {
      out << ' ' << ps.rational(i).num << '/' << ps.rational(i).den;
    }
    out << '\n';
  }
}

void write_trace_csv(std::ostream& out, const EnergyTrace& trace) {
  out << "n,chosen,energy\n";
  for (const TraceEntry& e : trace.entries) {
    out << e.n << ',' << format_double(e.chosen) << ',' << format_double(e.energy) << '\n';
  }
}

EnergyTrace read_trace_csv(std::istream& in) {
  EnergyTrace trace;
  std::string line;
  if (!std::getline(in, line) || trimmed(line) != "n,chosen,energy") {
    throw ConfigError("trace csv: missing \"n,chosen,energy\" header");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trimmed(line);
    if (body.empty()) continue;
    TraceEntry e;
    char c1 = 0;
    char c2 = 0;
    std::istringstream fields(body);
    if (!(fields >> e.n >> c1 >> e.chosen >> c2 >> e.energy) || c1 != ',' || c2 != ',') {
      throw ConfigError("trace csv line " + std::to_string(line_no) + ": bad row");
    }
    trace.entries.push_back(e);
  }
  if (!trace.entries.empty()) {
    trace.start_size = trace.entries.front().n - 1;
  }
  return trace;
}

EnergyTrace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file: " + path);
  return read_trace_csv(in);
}

void write_report_header(std::ostream& out) {
  out << "n,star,extreme,l1_star,periodic_l2,scaled_star,scaled_extreme\n";
}

void write_report_row(std::ostream& out, const DiscrepancyReport& r) {
  out << r.n << ',' << format_double(r.star) << ',' << format_double(r.extreme) << ','
      << format_double(r.l1_star) << ',' << format_double(r.periodic_l2) << ',';
  if (r.scaled_star) out << format_double(*r.scaled_star);
  out << ',';
  if (r.scaled_extreme) out << format_double(*r.scaled_extreme);
  out << '\n';
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace evenfill
