#include "equimap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace equimap {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_field_file(const std::string& path, const RadialField& f) {
  std::ofstream os(path);
  if (!os) throw Error("write_field_file: cannot open " + path);
  const RadialGrid& g = *f.grid;
  for (int j = 0; j < g.n; ++j)
    os << fmt17(g.nodes[j]) << ' ' << fmt17(f.v[j].real()) << ' ' << fmt17(f.v[j].imag()) << '\n';
}

RadialField read_field_file(const std::string& path, const GridPtr& grid) {
  std::ifstream is(path);
  if (!is) throw Error("read_field_file: cannot open " + path);
  const RadialGrid& g = *grid;
  ArrayXcd v(g.n);
  std::string line;
  int j = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (j >= g.n) throw Error("read_field_file: more lines than grid nodes in " + path);
    std::istringstream ls(line);
    double r, re, im;
    if (!(ls >> r >> re >> im)) throw Error("read_field_file: malformed line in " + path);
    if (std::abs(r - g.nodes[j]) > 1e-12 * std::max(1.0, g.nodes[j]))
      throw Error("read_field_file: node mismatch at line " + std::to_string(j + 1) + " in " + path +
                  " (expected r = " + fmt17(g.nodes[j]) + ", got " + fmt17(r) + ")");
    v[j++] = Complex(re, im);
  }
  if (j != g.n) throw Error("read_field_file: fewer lines than grid nodes in " + path);
  return RadialField(grid, v);
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec) {
  std::ofstream os(path);
  if (!os) throw Error("write_trajectory_csv: cannot open " + path);
  os << "t,mass_minus,mass_plus,sup_a2,compat_residual,strichartz_accum,energy_proxy\n";
  for (size_t i = 0; i < rec.times.size(); ++i) {
    os << fmt17(rec.times[i]) << ',' << fmt17(rec.mass_minus[i]) << ',' << fmt17(rec.mass_plus[i])
       << ',' << fmt17(rec.sup_a2[i]) << ',' << fmt17(rec.compat_residual[i]) << ','
       << fmt17(rec.strichartz_accum[i]) << ',' << fmt17(rec.energy_proxy[i]) << '\n';
  }
}

void write_snapshots(const std::string& path, const TrajectoryRecord& rec) {
  std::ofstream os(path);
  if (!os) throw Error("write_snapshots: cannot open " + path);
  const RadialGrid& g = *rec.grid;
  for (const Snapshot& s : rec.snapshots) {
    os << "# t " << fmt17(s.t) << '\n';
    for (int j = 0; j < g.n; ++j)
      os << fmt17(g.nodes[j]) << ' ' << fmt17(s.psi_plus[j].real()) << ' '
         << fmt17(s.psi_plus[j].imag()) << ' ' << fmt17(s.psi_minus[j].real()) << ' '
         << fmt17(s.psi_minus[j].imag()) << '\n';
  }
}

std::vector<Snapshot> read_snapshots(const std::string& path, const GridPtr& grid) {
  std::ifstream is(path);
  if (!is) throw Error("read_snapshots: cannot open " + path);
  const RadialGrid& g = *grid;
  std::vector<Snapshot> out;
  std::string line;
  Snapshot cur;
  int j = 0;
  bool open_block = false;
  auto flush = [&]() {
    if (!open_block) return;
    if (j != g.n) throw Error("read_snapshots: truncated block in " + path);
    out.push_back(cur);
    open_block = false;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# t ", 0) == 0) {
      flush();
      cur.t = std::stod(line.substr(4));
      cur.psi_plus = ArrayXcd::Zero(g.n);
      cur.psi_minus = ArrayXcd::Zero(g.n);
      j = 0;
      open_block = true;
      continue;
    }
    if (!open_block) throw Error("read_snapshots: data before header in " + path);
    if (j >= g.n) throw Error("read_snapshots: block longer than grid in " + path);
    std::istringstream ls(line);
    double r, rp, ip, rm, im;
    if (!(ls >> r >> rp >> ip >> rm >> im)) throw Error("read_snapshots: malformed line in " + path);
    if (std::abs(r - g.nodes[j]) > 1e-12 * std::max(1.0, g.nodes[j]))
      throw Error("read_snapshots: node mismatch in " + path);
    cur.psi_plus[j] = Complex(rp, ip);
    cur.psi_minus[j] = Complex(rm, im);
    ++j;
  }
  flush();
  if (out.empty()) throw Error("read_snapshots: no snapshots in " + path);
  return out;
}

}  // namespace equimap
