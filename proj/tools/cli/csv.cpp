#include "csv.hpp"

namespace leglab::cli {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out_ << ',';
        out_ << names[i];
    }
    out_ << '\n';
}

void CsvWriter::sep() {
    if (row_open_) out_ << ',';
    row_open_ = true;
}

CsvWriter& CsvWriter::field(double v) {
    sep();
    out_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::field(long long v) {
    sep();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(const std::string& v) {
    sep();
    out_ << v;
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    row_open_ = false;
}

std::vector<std::string> CsvWriter::matrix_columns(const std::string& prefix, std::size_t rows,
                                                   std::size_t cols) {
    std::vector<std::string> names;
    names.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            names.push_back(prefix + "_" + std::to_string(i) + "_" + std::to_string(j));
    return names;
}

std::vector<std::string> CsvWriter::vector_columns(const std::string& prefix, std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + "_" + std::to_string(i));
    return names;
}

CsvWriter& CsvWriter::fields(const Vector& v) {
    for (double x : v) field(x);
    return *this;
}

CsvWriter& CsvWriter::fields(const Matrix& m) {
    for (double x : m.entries()) field(x);
    return *this;
}

}  // namespace leglab::cli
