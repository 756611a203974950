#include "nbbd/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nbbd {

void write_matrix_text(std::ostream& os, const MatrixQ& a) {
    os << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) os << ' ';
            os << to_string(a(i, j));
        }
        os << '\n';
    }
}

std::string matrix_to_text(const MatrixQ& a) {
    std::ostringstream os;
    write_matrix_text(os, a);
    return os.str();
}

MatrixQ read_matrix_text(std::istream& is) {
    long rows = 0, cols = 0;
    if (!(is >> rows >> cols) || rows < 1 || cols < 1)
        throw std::invalid_argument("matrix text: bad header");
    MatrixQ a(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    std::string tok;
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
            if (!(is >> tok)) throw std::invalid_argument("matrix text: truncated entries");
            a(i, j) = rational_from_string(tok);
        }
    return a;
}

std::string format_decimal12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::string cell_to_decimal(const std::string& cell) {
    if (cell.find('/') != std::string::npos)
        return format_decimal12(to_double(rational_from_string(cell)));
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument("plot data: bad cell '" + cell + "'");
    return format_decimal12(v);
}

} // namespace

std::string plot_data_from_csv(const std::string& csv_text) {
    std::istringstream is(csv_text);
    std::string line;
    if (!std::getline(is, line) || line.empty())
        throw std::invalid_argument("plot data: empty table");
    std::string out;
    const std::vector<std::string> header = split(line, ',');
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ' ';
        out += header[i];
    }
    out += '\n';
    long data_rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line, ',');
        if (cells.size() != header.size())
            throw std::invalid_argument("plot data: ragged row");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ' ';
            out += cell_to_decimal(cells[i]);
        }
        out += '\n';
        ++data_rows;
    }
    if (data_rows == 0) throw std::invalid_argument("plot data: empty table");
    return out;
}

void atomic_write_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open for writing: " + tmp);
        os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!os) throw std::runtime_error("short write: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace nbbd
