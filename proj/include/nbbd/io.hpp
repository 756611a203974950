#ifndef NBBD_IO_HPP
#define NBBD_IO_HPP

#include <iosfwd>
#include <string>

#include "nbbd/matrix.hpp"
#include "nbbd/rational.hpp"

namespace nbbd {

// Matrix text format: first line "ROWS COLS", then ROWS lines of COLS
// whitespace-separated rationals "p/q" (integers printed without "/q").
void write_matrix_text(std::ostream& os, const MatrixQ& a);
std::string matrix_to_text(const MatrixQ& a);
MatrixQ read_matrix_text(std::istream& is);

// Decimal with 12 significant digits, C locale, '.' separator.
std::string format_decimal12(double x);

// Scan CSV -> whitespace-separated plot columns, all values decimal.
// Throws std::invalid_argument on an empty or malformed table.
std::string plot_data_from_csv(const std::string& csv_text);

// Single-writer atomic file update: write to a temp sibling, then rename.
void atomic_write_file(const std::string& path, const std::string& contents);

} // namespace nbbd

#endif // NBBD_IO_HPP
