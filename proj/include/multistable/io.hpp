#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "multistable/charfn.hpp"
#include "multistable/decomp.hpp"
#include "multistable/series.hpp"

namespace multistable {

// Long-format path CSV: header `path_id,t,value`.
void write_paths_csv(const std::filesystem::path& file,
                     const std::vector<PathSample>& paths);

// Single-path CSV: header `t,value`.
void write_path_csv(const std::filesystem::path& file, const PathSample& path);

struct CFTableRow {
  double theta;
  double re, im;
  double abs_err;
};

// CF table CSV: header `theta,re,im,abs_err`.
void write_cf_table_csv(const std::filesystem::path& file,
                        const std::vector<CFTableRow>& rows);

// Decomposition CSV: header `t,total,a_part,m_part` where total = a + m.
void write_decomposition_csv(const std::filesystem::path& file,
                             const DecompositionResult& decomp);

// Formats a double with enough digits to round-trip.
std::string format_double(double v);

}  // namespace multistable
