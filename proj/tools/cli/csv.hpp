#pragma once

#include "leglab/matrix.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace leglab::cli {

/// CSV emission with a fixed float format so identical runs produce
/// byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& names);

    CsvWriter& field(double v);
    CsvWriter& field(long long v);
    CsvWriter& field(const std::string& v);
    void end_row();

    /// Column names m_0_1, ... for a rows x cols matrix flattened row-major.
    static std::vector<std::string> matrix_columns(const std::string& prefix, std::size_t rows,
                                                   std::size_t cols);
    static std::vector<std::string> vector_columns(const std::string& prefix, std::size_t n);

    CsvWriter& fields(const Vector& v);
    CsvWriter& fields(const Matrix& m);  // row-major

private:
    void sep();
    std::ostream& out_;
    bool row_open_ = false;
};

std::string format_double(double v);

}  // namespace leglab::cli
