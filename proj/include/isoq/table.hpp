#pragma once

#include <string>
#include <variant>
#include <vector>

#include "isoq/symplin.hpp"

namespace isoq {

using Cell = std::variant<std::string, long long, double, cplx>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

enum class TableFormat { Csv, Json };

std::string render_table(const Table& t, TableFormat format);
// Writes to path, or to standard output when path is empty or "-".
void emit_table(const Table& t, TableFormat format, const std::string& path = "");
// Inverse of the CSV rendering; numeric cells come back as double or complex.
Table parse_csv(const std::string& text);

}  // namespace isoq
