#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnls/field.hpp"
#include "cnls/grid.hpp"

namespace cnls {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Complex field files (custom initial data and full snapshots):
///
///   M,d,shape,bc
///   2,1,1024,periodic          shape is "n" or "n1xn2[xn3]"
///   re_1,im_1,re_2,im_2
///   <one row per grid point, row-major>
struct FieldFileHeader {
  std::size_t components = 0;
  std::size_t dims = 0;
  std::vector<std::size_t> extents;
  BoundaryCondition bc = BoundaryCondition::Periodic;
};

/// Reads the first two lines only.
FieldFileHeader read_field_header(const std::filesystem::path& file);
std::vector<ComplexField> read_fields(const std::filesystem::path& file);

void write_fields(const std::filesystem::path& file,
                  std::span<const ComplexField> fields, const Grid& grid);

/// "x,abs_psi" (or "x,y,abs_psi", "x,y,z,abs_psi"), one row per point.
void write_modulus(const std::filesystem::path& file, const ComplexField& psi,
                   const Grid& grid);

/// Writes to `file`.tmp and renames over `file`.
void write_text_atomic(const std::filesystem::path& file,
                       const std::string& content);

/// Lower-case hex SHA-256 of the file's bytes.
std::string sha256_file(const std::filesystem::path& file);
std::string sha256_hex(std::string_view bytes);

}  // namespace cnls
