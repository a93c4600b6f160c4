#include "quadsim/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "quadsim/errors.hpp"

namespace quadsim {

namespace {

constexpr int kNumCols = 34;

std::vector<double> flatten(const LogRow& r) {
  std::vector<double> v;
  v.reserve(kNumCols);
  v.push_back(r.t);
  const Vec12 truth = r.truth.to_vector();
  for (int i = 0; i < 12; ++i) v.push_back(truth(i));
  const Vec12 est = r.est.to_vector();
  for (int i = 0; i < 12; ++i) v.push_back(est(i));
  v.push_back(r.x_r);
  v.push_back(r.y_r);
  v.push_back(r.z_r);
  v.push_back(r.psi_r);
  v.push_back(r.u.Fz);
  v.push_back(r.u.C1);
  v.push_back(r.u.C2);
  v.push_back(r.u.C3);
  v.push_back(r.s_top);
  return v;
}

LogRow unflatten(const std::vector<double>& v) {
  LogRow r;
  r.t = v[0];
  Vec12 truth, est;
  for (int i = 0; i < 12; ++i) truth(i) = v[1 + i];
  for (int i = 0; i < 12; ++i) est(i) = v[13 + i];
  r.truth = QuadState::from_vector(truth);
  r.est = QuadState::from_vector(est);
  r.x_r = v[25];
  r.y_r = v[26];
  r.z_r = v[27];
  r.psi_r = v[28];
  r.u.Fz = v[29];
  r.u.C1 = v[30];
  r.u.C2 = v[31];
  r.u.C3 = v[32];
  r.s_top = v[33];
  return r;
}

double parse_field(const std::string& field, const std::string& path) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double d = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw SchemaMismatch("read_csv: non-numeric field '" + field + "' in " +
                         path);
  }
  return d;
}

}  // namespace

void write_csv(const TimeSeriesLog& log, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) {
    throw IoError("write_csv: cannot open " + path);
  }
  bool ok = std::fprintf(f, "%s\n", kCsvHeader) >= 0;
  char buf[40];
  for (const LogRow& row : log.rows) {
    if (!ok) break;
    const std::vector<double> v = flatten(row);
    for (int i = 0; i < kNumCols && ok; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", v[i]);
      ok = std::fprintf(f, i == 0 ? "%s" : ",%s", buf) >= 0;
    }
    ok = ok && std::fputc('\n', f) != EOF;
  }
  const bool closed = std::fclose(f) == 0;
  if (!ok || !closed) {
    throw IoError("write_csv: write failed for " + path);
  }
}

TimeSeriesLog read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("read_csv: cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaMismatch("read_csv: missing header in " + path);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw SchemaMismatch("read_csv: unexpected header in " + path);
  }
  TimeSeriesLog log;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<double> vals;
    vals.reserve(kNumCols);
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string field =
          comma == std::string::npos ? line.substr(start)
                                     : line.substr(start, comma - start);
      vals.push_back(parse_field(field, path));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(vals.size()) != kNumCols) {
      throw SchemaMismatch("read_csv: wrong column count in " + path);
    }
    log.rows.push_back(unflatten(vals));
  }
  return log;
}

}  // namespace quadsim
