#pragma once

// Matrix files.
//
// CSV:    "# D,T,field" header line, then D rows in row-major order. Complex
//         rows hold 2T values, each entry written as re,im.
// Binary: "ISAM", u32 D, u32 T, u8 field (0 real, 1 complex), then D*T
//         little-endian f64 values in row-major order, complex interleaved
//         re/im.

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "isa/error.hpp"
#include "isa/types.hpp"

namespace isa {

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw NumericalError("cannot format value");
  return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("malformed number '" + std::string(s) + "'");
  return x;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw ConfigError("truncated matrix file");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

inline void put_f64(std::ostream& os, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

inline double get_f64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw ConfigError("truncated matrix file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace detail

inline void write_csv(std::ostream& os, const FieldMatrix& m) {
  os << "# " << m.rows() << ',' << m.cols() << ',' << to_string(m.field) << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << detail::format_double(m.re(i, j));
      if (m.is_complex()) os << ',' << detail::format_double(m.im(i, j));
    }
    os << '\n';
  }
}

inline FieldMatrix read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind('#', 0) != 0) throw ConfigError("CSV matrix: missing '# D,T,field' header");
  const auto head = detail::split(std::string_view(line).substr(1), ',');
  if (head.size() != 3) throw ConfigError("CSV matrix: header must be '# D,T,field'");
  const auto rows = static_cast<Index>(detail::parse_double(head[0]));
  const auto cols = static_cast<Index>(detail::parse_double(head[1]));
  std::string_view tag = head[2];
  while (!tag.empty() && (tag.front() == ' ')) tag.remove_prefix(1);
  while (!tag.empty() && (tag.back() == ' ' || tag.back() == '\r')) tag.remove_suffix(1);
  const Field field = parse_field(tag);
  const Index width = field == Field::Complex ? 2 * cols : cols;
  MatrixXd re(rows, cols), im;
  if (field == Field::Complex) im.resize(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!std::getline(is, line)) throw ConfigError("CSV matrix: fewer rows than the header states");
    const auto cells = detail::split(line, ',');
    if (static_cast<Index>(cells.size()) != width) throw ConfigError("CSV matrix: row " + std::to_string(i) + " has wrong width");
    for (Index j = 0; j < cols; ++j) {
      if (field == Field::Real) {
        re(i, j) = detail::parse_double(cells[j]);
      } else {
        re(i, j) = detail::parse_double(cells[2 * j]);
        im(i, j) = detail::parse_double(cells[2 * j + 1]);
      }
    }
  }
  return field == Field::Real ? FieldMatrix(std::move(re)) : FieldMatrix(std::move(re), std::move(im));
}

inline void write_binary(std::ostream& os, const FieldMatrix& m) {
  os.write("ISAM", 4);
  detail::put_u32(os, static_cast<std::uint32_t>(m.rows()));
  detail::put_u32(os, static_cast<std::uint32_t>(m.cols()));
  const char tag = m.is_complex() ? 1 : 0;
  os.write(&tag, 1);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      detail::put_f64(os, m.re(i, j));
      if (m.is_complex()) detail::put_f64(os, m.im(i, j));
    }
}

inline FieldMatrix read_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "ISAM", 4) != 0) throw ConfigError("binary matrix: bad magic");
  const Index rows = detail::get_u32(is);
  const Index cols = detail::get_u32(is);
  char tag = 0;
  if (!is.read(&tag, 1) || (tag != 0 && tag != 1)) throw ConfigError("binary matrix: bad field tag");
  MatrixXd re(rows, cols), im;
  if (tag == 1) im.resize(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      re(i, j) = detail::get_f64(is);
      if (tag == 1) im(i, j) = detail::get_f64(is);
    }
  return tag == 0 ? FieldMatrix(std::move(re)) : FieldMatrix(std::move(re), std::move(im));
}

/// Format chosen by extension: ".bin"/".isam" binary, anything else CSV.
inline bool is_binary_path(const std::filesystem::path& p) {
  const auto ext = p.extension().string();
  return ext == ".bin" || ext == ".isam";
}

inline void save_matrix(const std::filesystem::path& p, const FieldMatrix& m) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError("cannot open '" + p.string() + "' for writing");
  if (is_binary_path(p))
    write_binary(os, m);
  else
    write_csv(os, m);
}

inline FieldMatrix load_matrix(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw ConfigError("cannot open '" + p.string() + "'");
  return is_binary_path(p) ? read_binary(is) : read_csv(is);
}

}  // namespace isa
