#include "cnls/io.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

namespace cnls {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t value = 0;
  const auto t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw IoError("bad " + what + ": '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& text) {
  const auto t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used == t.size()) return v;
  } catch (const std::exception&) {
  }
  throw IoError("bad number '" + text + "'");
}

std::ifstream open_in(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  return in;
}

FieldFileHeader parse_header(std::istream& in, const std::filesystem::path& file) {
  std::string keys, values;
  if (!std::getline(in, keys) || !std::getline(in, values)) {
    throw IoError(file.string() + ": missing header");
  }
  if (trim(keys) != "M,d,shape,bc") {
    throw IoError(file.string() + ": first line must be 'M,d,shape,bc'");
  }
  const auto v = split(trim(values), ',');
  if (v.size() != 4) throw IoError(file.string() + ": header needs 4 values");
  FieldFileHeader h;
  h.components = parse_size(v[0], "M");
  h.dims = parse_size(v[1], "d");
  for (const auto& e : split(trim(v[2]), 'x')) {
    h.extents.push_back(parse_size(e, "shape"));
  }
  try {
    h.bc = parse_boundary_condition(trim(v[3]));
  } catch (const std::invalid_argument& e) {
    throw IoError(file.string() + ": " + e.what());
  }
  if (h.components == 0) throw IoError(file.string() + ": M must be >= 1");
  if (h.dims < 1 || h.dims > 3 || h.extents.size() != h.dims) {
    throw IoError(file.string() + ": shape does not match d");
  }
  return h;
}

std::string shape_string(const Shape& shape) {
  std::string s;
  for (std::size_t i = 0; i < shape.rank(); ++i) {
    if (i) s += 'x';
    s += std::to_string(shape.extent(i));
  }
  return s;
}

void write_or_throw(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + file.string());
  out << text;
  out.close();
  if (!out) throw IoError("write failed for " + file.string());
}

}  // namespace

FieldFileHeader read_field_header(const std::filesystem::path& file) {
  auto in = open_in(file);
  return parse_header(in, file);
}

std::vector<ComplexField> read_fields(const std::filesystem::path& file) {
  auto in = open_in(file);
  const auto h = parse_header(in, file);
  std::string columns;
  if (!std::getline(in, columns)) throw IoError(file.string() + ": no column line");
  if (split(trim(columns), ',').size() != 2 * h.components) {
    throw IoError(file.string() + ": expected 2M columns");
  }
  const Shape shape(h.extents);
  std::vector<ComplexField> fields(h.components, ComplexField(shape));
  std::string line;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (!std::getline(in, line)) {
      throw IoError(fmt::format("{}: expected {} rows, found {}", file.string(),
                                shape.size(), i));
    }
    const auto cells = split(trim(line), ',');
    if (cells.size() != 2 * h.components) {
      throw IoError(fmt::format("{}: row {} has {} cells", file.string(), i + 1,
                                cells.size()));
    }
    for (std::size_t j = 0; j < h.components; ++j) {
      fields[j][i] = {parse_double(cells[2 * j]), parse_double(cells[2 * j + 1])};
    }
  }
  while (std::getline(in, line)) {
    if (!trim(line).empty()) throw IoError(file.string() + ": trailing rows");
  }
  return fields;
}

void write_fields(const std::filesystem::path& file,
                  std::span<const ComplexField> fields, const Grid& grid) {
  if (fields.empty()) throw IoError("no fields to write");
  std::string text = fmt::format("M,d,shape,bc\n{},{},{},{}\n", fields.size(),
                                 grid.dims(), shape_string(grid.shape()),
                                 to_string(grid.bc()));
  for (std::size_t j = 1; j <= fields.size(); ++j) {
    text += fmt::format("{}re_{},im_{}", j > 1 ? "," : "", j, j);
  }
  text += '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < fields.size(); ++j) {
      text += fmt::format("{}{:.17g},{:.17g}", j ? "," : "", fields[j][i].real(),
                          fields[j][i].imag());
    }
    text += '\n';
  }
  write_or_throw(file, text);
}

void write_modulus(const std::filesystem::path& file, const ComplexField& psi,
                   const Grid& grid) {
  static constexpr std::array<const char*, 3> names{"x", "y", "z"};
  std::string text;
  for (std::size_t d = 0; d < grid.dims(); ++d) text += fmt::format("{},", names[d]);
  text += "abs_psi\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.coordinates(i);
    for (std::size_t d = 0; d < grid.dims(); ++d) text += fmt::format("{:.17g},", x[d]);
    text += fmt::format("{:.17g}\n", std::abs(psi[i]));
  }
  write_or_throw(file, text);
}

void write_text_atomic(const std::filesystem::path& file,
                       const std::string& content) {
  auto tmp = file;
  tmp += ".tmp";
  write_or_throw(tmp, content);
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(),
                  nullptr)) {
    throw IoError("sha256 failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string sha256_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

}  // namespace cnls
