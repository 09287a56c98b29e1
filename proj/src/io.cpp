#include "multistable/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace multistable {

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path())
    std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_paths_csv(const std::filesystem::path& file,
                     const std::vector<PathSample>& paths) {
  auto out = open_out(file);
  out << "path_id,t,value\n";
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const auto& path = paths[p];
    for (std::size_t i = 0; i < path.values.size(); ++i)
      out << p << ',' << format_double(path.grid[i]) << ','
          << format_double(path.values[i]) << '\n';
  }
}

void write_path_csv(const std::filesystem::path& file,
                    const PathSample& path) {
  auto out = open_out(file);
  out << "t,value\n";
  for (std::size_t i = 0; i < path.values.size(); ++i)
    out << format_double(path.grid[i]) << ','
        << format_double(path.values[i]) << '\n';
}

void write_cf_table_csv(const std::filesystem::path& file,
                        const std::vector<CFTableRow>& rows) {
  auto out = open_out(file);
  out << "theta,re,im,abs_err\n";
  for (const auto& r : rows)
    out << format_double(r.theta) << ',' << format_double(r.re) << ','
        << format_double(r.im) << ',' << format_double(r.abs_err) << '\n';
}

void write_decomposition_csv(const std::filesystem::path& file,
                             const DecompositionResult& decomp) {
  auto out = open_out(file);
  out << "t,total,a_part,m_part\n";
  const auto& grid = decomp.a_path.grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = decomp.a_path.values[i];
    const double m = decomp.m_path.values[i];
    out << format_double(grid[i]) << ',' << format_double(a + m) << ','
        << format_double(a) << ',' << format_double(m) << '\n';
  }
}

}  // namespace multistable
