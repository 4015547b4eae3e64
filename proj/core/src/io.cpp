#include "infdelay/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "infdelay/errors.hpp"

namespace infdelay::io {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::vector<std::size_t> strided(std::size_t n, std::size_t stride) {
  if (stride == 0) throw InvalidInput("io: stride must be >= 1");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
  if (n > 0 && idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

void mode_header(std::ostream& os, const char* first, std::size_t modes) {
  os << first;
  for (std::size_t m = 1; m <= modes; ++m) os << ",u" << m;
  os << '\n';
}

void mode_row(std::ostream& os, double x, const ModalField& v) {
  os << format_double(x);
  for (std::size_t m = 0; m < v.n_modes(); ++m) os << ',' << format_double(v[m]);
  os << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t stride) {
  mode_header(os, "t", traj.n_modes());
  for (auto i : strided(traj.size(), stride)) mode_row(os, traj.time(i), traj.value(i));
}

void write_history_csv(std::ostream& os, const History& phi) {
  mode_header(os, "theta", phi.n_modes());
  for (std::size_t j = 0; j < phi.size(); ++j) mode_row(os, phi.theta()[j], phi.value(j));
}

void write_series_csv(std::ostream& os, const std::string& x_name, const std::string& y_name,
                      const std::vector<double>& x, const std::vector<double>& y, std::size_t stride) {
  if (x.size() != y.size()) throw InvalidInput("write_series_csv: column lengths differ");
  os << x_name << ',' << y_name << '\n';
  for (auto i : strided(x.size(), stride)) os << format_double(x[i]) << ',' << format_double(y[i]) << '\n';
}

void write_indicator_csv(std::ostream& os, const SpectrumIndicator& ind) {
  os << "zeta_re,zeta_im,radius,value,flagged\n";
  for (std::size_t i = 0; i < ind.zeta_grid.size(); ++i) {
    const int flag = ind.is_flagged(i) ? 1 : 0;
    for (std::size_t k = 0; k < ind.radii.size(); ++k) {
      os << format_double(ind.zeta_grid[i].real()) << ',' << format_double(ind.zeta_grid[i].imag()) << ','
         << format_double(ind.radii[k]) << ','
         << format_double(ind.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))) << ',' << flag
         << '\n';
    }
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace infdelay::io
