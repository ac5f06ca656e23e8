#include "slag/io.hpp"

#include <cerrno>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace slag::io {

namespace fs = std::filesystem;

namespace {

constexpr const char* kCsvHeader =
    "t,re1,im1,re2,im2,residual_conserved,residual_line";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> split_row(const std::string& line, const fs::path& path) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) comma = line.size();
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(line.data() + start, line.data() + comma, v);
    if (ec != std::errc() || ptr != line.data() + comma)
      throw std::runtime_error("parse_csv: bad numeric field in " + path.string());
    out.push_back(v);
    start = comma + 1;
    if (comma == line.size()) break;
  }
  return out;
}

}  // namespace

Projection parse_projection(const std::string& name) {
  if (name == "re1-im1-re2") return Projection::Re1Im1Re2;
  if (name == "re1-re2-im2") return Projection::Re1Re2Im2;
  if (name == "moduli-phase") return Projection::ModuliPhase;
  throw std::invalid_argument(
      "unknown projection '" + name +
      "' (expected re1-im1-re2, re1-re2-im2, or moduli-phase)");
}

void atomic_write(const fs::path& path, const std::string& contents) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("rename failed: " + path.string() + ": " + ec.message());
  }
}

void export_csv(const curves::CurveSample& sample, const fs::path& path) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const C2& z = sample.points[i];
    out << fmt17(sample.ts[i]) << ',' << fmt17(z[0].real()) << ','
        << fmt17(z[0].imag()) << ',' << fmt17(z[1].real()) << ','
        << fmt17(z[1].imag()) << ',' << fmt17(sample.residual_conserved[i]) << ','
        << fmt17(sample.residual_line[i]) << '\n';
  }
  atomic_write(path, out.str());
}

curves::CurveSample parse_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("parse_csv: missing or unexpected header in " +
                             path.string());
  curves::CurveSample sample;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<double> row = split_row(line, path);
    if (row.size() != 7)
      throw std::runtime_error("parse_csv: expected 7 columns in " + path.string());
    sample.ts.push_back(row[0]);
    sample.points.emplace_back(Complex(row[1], row[2]), Complex(row[3], row[4]));
    sample.residual_conserved.push_back(row[5]);
    sample.residual_line.push_back(row[6]);
  }
  if (!sample.ts.empty()) {
    sample.t_neg = sample.ts.front();
    sample.t_pos = sample.ts.back();
  }
  return sample;
}

void export_obj(const surfaces::SurfaceGrid& surface, Projection projection,
                const fs::path& path) {
  const int nt = surface.points.nt, ns = surface.points.ns;
  if (nt < 2 || ns < 2)
    throw std::invalid_argument("export_obj: grid must be at least 2x2");

  auto project = [projection](const C2& z) -> std::array<double, 3> {
    switch (projection) {
      case Projection::Re1Im1Re2:
        return {z[0].real(), z[0].imag(), z[1].real()};
      case Projection::Re1Re2Im2:
        return {z[0].real(), z[1].real(), z[1].imag()};
      case Projection::ModuliPhase:
        return {std::abs(z[0]), std::abs(z[1]),
                wrap_angle(std::arg(z[0]) + std::arg(z[1]))};
    }
    throw std::invalid_argument("export_obj: unknown projection");
  };

  std::ostringstream out;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < ns; ++j) {
      const auto v = project(surface.points.at(i, j));
      out << "v " << fmt17(v[0]) << ' ' << fmt17(v[1]) << ' ' << fmt17(v[2]) << '\n';
    }
  auto vid = [ns](int i, int j) { return i * ns + j + 1; };  // 1-based
  for (int i = 0; i + 1 < nt; ++i)
    for (int j = 0; j + 1 < ns; ++j)
      out << "f " << vid(i, j) << ' ' << vid(i + 1, j) << ' ' << vid(i + 1, j + 1)
          << ' ' << vid(i, j + 1) << '\n';
  atomic_write(path, out.str());
}

void write_json(const nlohmann::json& doc, const fs::path& path) {
  atomic_write(path, doc.dump(2) + "\n");
}

}  // namespace slag::io
