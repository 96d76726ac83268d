#include "isoq/table.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "isoq/descriptor.hpp"
#include "isoq/error.hpp"
#include "json.hpp"

namespace isoq {

namespace {

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) return v;
            else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else return format_complex(v);
        },
        c);
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

nlohmann::json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, cplx>) return nlohmann::json::array({v.real(), v.imag()});
            else return v;
        },
        c);
}

Cell parse_cell(const std::string& s) {
    if (s.empty()) return s;
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    if (s.back() == 'i') {
        try {
            return parse_complex(s);
        } catch (const Error&) {
        }
    }
    return s;
}

}  // namespace

std::string render_table(const Table& t, TableFormat format) {
    std::ostringstream out;
    if (format == TableFormat::Csv) {
        for (std::size_t k = 0; k < t.header.size(); ++k) out << (k ? "," : "") << csv_quote(t.header[k]);
        out << "\r\n";
        for (const auto& row : t.rows) {
            for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_quote(cell_text(row[k]));
            out << "\r\n";
        }
        return out.str();
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json o = nlohmann::json::object();
        for (std::size_t k = 0; k < row.size() && k < t.header.size(); ++k) o[t.header[k]] = cell_json(row[k]);
        arr.push_back(o);
    }
    return arr.dump(2) + "\n";
}

void emit_table(const Table& t, TableFormat format, const std::string& path) {
    const std::string text = render_table(t, format);
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + path);
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

Table parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> recs;
    std::vector<std::string> rec;
    std::string cur;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') cur += '"', ++i;
            else if (ch == '"') quoted = false;
            else cur += ch;
            continue;
        }
        if (ch == '"') quoted = true, any = true;
        else if (ch == ',') rec.push_back(cur), cur.clear(), any = true;
        else if (ch == '\r') continue;
        else if (ch == '\n') {
            rec.push_back(cur);
            recs.push_back(rec);
            rec.clear();
            cur.clear();
            any = false;
        } else cur += ch, any = true;
    }
    if (any || !cur.empty()) rec.push_back(cur), recs.push_back(rec);
    Table t;
    if (recs.empty()) return t;
    t.header = recs[0];
    for (std::size_t r = 1; r < recs.size(); ++r) {
        std::vector<Cell> row;
        for (const auto& s : recs[r]) row.push_back(parse_cell(s));
        t.rows.push_back(row);
    }
    return t;
}

}  // namespace isoq
