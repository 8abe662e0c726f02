#include "primepot/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "primepot/error.hpp"

namespace primepot {

namespace {

std::string_view trim(std::string_view s) {
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto const last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto const pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw ValidationError("cannot format number");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

void write_potential_csv(std::ostream& out, const PotentialGrid& potential) {
  out << "x,V\n";
  auto const& g = potential.grid();
  for (std::size_t i = 0; i < potential.size(); ++i) {
    out << format_double(g.x(i)) << ',' << format_double(potential[i]) << '\n';
  }
}

PotentialGrid read_potential_csv(std::istream& in) {
  std::string line;
  std::vector<double> xs;
  std::vector<double> vs;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto const t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto const cells = split(t, ',');
    if (!header_seen) {
      header_seen = true;
      if (cells.size() == 2 && cells[0] == "x" && cells[1] == "V") continue;
      throw ValidationError("potential CSV must start with the header 'x,V'");
    }
    if (cells.size() != 2) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected two columns");
    }
    xs.push_back(parse_double(cells[0]));
    vs.push_back(parse_double(cells[1]));
  }
  auto const n = xs.size();
  if (n < 3 || n % 2 == 0) {
    throw ValidationError("potential CSV needs an odd number (>= 3) of rows, got " + std::to_string(n));
  }
  double const half_width = xs.back();
  if (!(half_width > 0.0) || std::abs(xs.front() + half_width) > 1e-9 * half_width) {
    throw ValidationError("potential grid must be symmetric about x = 0");
  }
  Grid const grid(half_width, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(xs[i] - grid.x(i)) > 1e-6 * grid.spacing()) {
      throw ValidationError("potential grid is not uniform at row " + std::to_string(i + 1));
    }
  }
  double const asymptote = 0.5 * (vs.front() + vs.back());
  return PotentialGrid(grid, std::move(vs), asymptote);
}

void write_matrix_csv(std::ostream& out, const Matrix& matrix) {
  for (std::size_t r = 0; r < matrix.rows; ++r) {
    for (std::size_t c = 0; c < matrix.cols; ++c) {
      if (c > 0) out << ',';
      out << format_double(matrix(r, c));
    }
    out << '\n';
  }
}

Matrix read_matrix_csv(std::istream& in) {
  Matrix m;
  std::string line;
  while (std::getline(in, line)) {
    auto const t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto const cells = split(t, ',');
    if (m.rows == 0) {
      m.cols = cells.size();
    } else if (cells.size() != m.cols) {
      throw ValidationError("matrix row " + std::to_string(m.rows + 1) + " has " +
                            std::to_string(cells.size()) + " columns, expected " +
                            std::to_string(m.cols));
    }
    for (auto c : cells) m.data.push_back(parse_double(c));
    ++m.rows;
  }
  if (m.rows == 0) throw ValidationError("matrix CSV is empty");
  return m;
}

std::vector<double> read_levels(std::istream& in) {
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    auto const hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line) {
      if (ch == ',' || ch == '\t') ch = ' ';
    }
    std::istringstream words(line);
    std::string word;
    while (words >> word) out.push_back(parse_double(word));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << content;
  if (!out) throw ValidationError("failed writing " + path.string());
}

KineticScale parse_kinetic(std::string_view text) {
  if (text == "half") return KineticScale::half();
  if (text == "unit") return KineticScale::unit();
  double const c = parse_double(text);
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("kinetic scale must be positive");
  return KineticScale(c);
}

}  // namespace primepot
