#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "infdelay/circspec.hpp"
#include "infdelay/history.hpp"
#include "infdelay/trajectory.hpp"

namespace infdelay::io {

/// Shortest-form text of v with 17 significant digits.
std::string format_double(double v);

/// Columns t, u1, ..., uN; every `stride`-th sample plus the last.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t stride = 1);
/// Columns theta, u1, ..., uN.
void write_history_csv(std::ostream& os, const History& phi);
/// Two columns with the given header names.
void write_series_csv(std::ostream& os, const std::string& x_name, const std::string& y_name,
                      const std::vector<double>& x, const std::vector<double>& y, std::size_t stride = 1);
/// Columns zeta_re, zeta_im, radius, value, flagged.
void write_indicator_csv(std::ostream& os, const SpectrumIndicator& ind);

/// Writes `content` to `path`, creating parent directories. Throws
/// std::runtime_error naming the path on failure.
void write_file(const std::filesystem::path& path, const std::string& content);
/// Reads the whole file; throws InvalidInput naming the path when missing.
std::string read_file(const std::filesystem::path& path);

}  // namespace infdelay::io
