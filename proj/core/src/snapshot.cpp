#include "ulpar/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ulpar/error.hpp"

namespace ulpar {
namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_snapshot(std::ostream& os, const Field& u, double time) {
  os << "L_domain=" << g17(u.grid().half_length()) << " n_x=" << u.nx() << " M=" << u.modes()
     << " time=" << g17(time) << '\n';
  for (std::size_t k = 0; k < u.nx(); ++k)
    for (std::size_t j = 0; j < u.modes(); ++j) os << k << ' ' << j << ' ' << g17(u(k, j)) << '\n';
}

void write_snapshot(const std::string& path, const Field& u, double time) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw Error(ErrorCode::Io, "cannot open " + tmp + " for writing");
    write_snapshot(os, u, time);
    if (!os) throw Error(ErrorCode::Io, "write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::Io, "cannot move snapshot to " + path);
}

Snapshot read_snapshot(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorCode::Io, "snapshot is empty");
  double L = 0.0, time = 0.0;
  std::size_t n = 0, M = 0;
  int seen = 0;
  std::istringstream hs(header);
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Io, "malformed snapshot header token '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    try {
      if (key == "L_domain") L = std::stod(val), seen |= 1;
      else if (key == "n_x") n = std::stoul(val), seen |= 2;
      else if (key == "M") M = std::stoul(val), seen |= 4;
      else if (key == "time") time = std::stod(val), seen |= 8;
      else throw Error(ErrorCode::Io, "unknown snapshot header key '" + key + "'");
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Io, "bad value for snapshot header key '" + key + "'");
    }
  }
  if (seen != 15) throw Error(ErrorCode::Io, "snapshot header must define L_domain, n_x, M and time");
  Grid1D g(L, n);
  std::vector<double> c(n * M, 0.0);
  std::vector<char> filled(n * M, 0);
  std::size_t k, j;
  std::string val;
  std::size_t rows = 0;
  while (is >> k >> j >> val) {
    if (k >= n || j >= M) throw Error(ErrorCode::Io, "snapshot row index out of range");
    c[k * M + j] = std::stod(val);
    filled[k * M + j] = 1;
    ++rows;
  }
  if (!is.eof()) throw Error(ErrorCode::Io, "malformed snapshot row");
  if (rows != n * M) throw Error(ErrorCode::Io, "snapshot has " + std::to_string(rows) + " rows, expected " +
                                                     std::to_string(n * M));
  for (char f : filled)
    if (!f) throw Error(ErrorCode::Io, "snapshot repeats an entry");
  return Snapshot{Field(g, M, std::move(c)), time};
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::Io, "cannot open " + path);
  return read_snapshot(is);
}

}  // namespace ulpar
