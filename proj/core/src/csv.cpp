#include "eplab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "eplab/errors.hpp"
#include "eplab/numerics.hpp"

namespace eplab {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string snapshot_csv(const FlowField& field, const RiemannFields& rf,
                         const PoissonField& pf) {
  std::string out = "x,rho,u,R,S,r,s,X,Y,phi_x\n";
  out.reserve(out.size() + field.size() * 160);
  for (std::size_t i = 0; i < field.size(); ++i) {
    out += format_double(field.grid.center(i));
    out += ',';
    out += format_double(field.rho[i]);
    out += ',';
    out += format_double(field.u[i]);
    out += ',';
    out += format_double(rf.R[i]);
    out += ',';
    out += format_double(rf.S[i]);
    out += ',';
    out += format_double(rf.r[i]);
    out += ',';
    out += format_double(rf.s[i]);
    out += ',';
    out += format_double(rf.X[i]);
    out += ',';
    out += format_double(rf.Y[i]);
    out += ',';
    out += format_double(pf.phi_x[i]);
    out += '\n';
  }
  return out;
}

std::string path_csv(const CharPath& path, const RiccatiBound* bound) {
  std::string out = bound ? "t,x,X,Y,rho,bound\n" : "t,x,X,Y,rho\n";
  const double t0 = path.points.empty() ? 0.0 : path.points.front().t;
  for (const PathPoint& p : path.points) {
    out += format_double(p.t);
    out += ',';
    out += format_double(p.x);
    out += ',';
    out += format_double(p.X);
    out += ',';
    out += format_double(p.Y);
    out += ',';
    out += format_double(p.rho);
    if (bound) {
      out += ',';
      const double tau = p.t - t0;
      out += format_double(tau < bound->t_c_bound ? bound->eval(tau)
                                                  : -std::numeric_limits<double>::infinity());
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open for writing: " + path);
  f << content;
  if (!f) throw ParseError("write failed: " + path);
}

InitialData read_initial_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open: " + path);
  InitialData data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 columns");
    char* end = nullptr;
    const double xv = std::strtod(a.c_str(), &end);
    if (end == a.c_str()) {
      if (lineno == 1) continue;  // header line
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad number '" + a + "'");
    }
    data.x.push_back(xv);
    data.rho0.push_back(std::strtod(b.c_str(), nullptr));
    data.u0.push_back(std::strtod(c.c_str(), nullptr));
  }
  if (data.x.size() < 2) throw ParseError(path + ": need at least two data rows");
  for (std::size_t i = 1; i < data.x.size(); ++i) {
    if (!(data.x[i] > data.x[i - 1]))
      throw ParseError(path + ": x must be strictly increasing (row " + std::to_string(i + 1) +
                       ")");
  }
  return data;
}

FlowField resample_to_grid(const InitialData& data, const Grid1D& grid) {
  std::vector<double> rho(grid.n), u(grid.n);
  std::size_t j = 0;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.center(i);
    if (x <= data.x.front()) {
      rho[i] = data.rho0.front();
      u[i] = data.u0.front();
      continue;
    }
    if (x >= data.x.back()) {
      rho[i] = data.rho0.back();
      u[i] = data.u0.back();
      continue;
    }
    while (data.x[j + 1] < x) ++j;
    const double w = (x - data.x[j]) / (data.x[j + 1] - data.x[j]);
    rho[i] = data.rho0[j] * (1.0 - w) + data.rho0[j + 1] * w;
    u[i] = data.u0[j] * (1.0 - w) + data.u0[j + 1] * w;
  }
  return FlowField(grid, std::move(rho), std::move(u), 0.0);
}

}  // namespace eplab
