#include "serialize.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "sumdist/errors.hpp"

namespace sumdist::cli {

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ValidationError("--format: expected csv or json, got '" + std::string(name) + "'");
}

std::string_view to_string(Format format) { return format == Format::Csv ? "csv" : "json"; }

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

namespace {

std::string csv_field(const Cell& cell) {
    if (const double* v = std::get_if<double>(&cell)) return format_double(*v);
    const std::string& s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

nlohmann::json json_value(const Cell& cell) {
    if (const double* v = std::get_if<double>(&cell)) return *v;
    return std::get<std::string>(cell);
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += csv_field(table.columns[c]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += csv_field(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        nlohmann::json column = nlohmann::json::array();
        for (const auto& row : table.rows) column.push_back(json_value(row[c]));
        data[table.columns[c]] = std::move(column);
    }
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    doc["meta"] = table.meta;
    doc["data"] = std::move(data);
    return doc.dump(2) + "\n";
}

std::string serialize(const Table& table, Format format) {
    return format == Format::Csv ? to_csv(table) : to_json(table);
}

Table parse_csv(std::string_view text) {
    Table table;
    bool header = true;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        const std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        std::vector<std::string> fields = split_csv_line(line);
        if (header) {
            table.columns = std::move(fields);
            header = false;
            continue;
        }
        std::vector<Cell> row;
        for (std::string& f : fields) {
            double value = 0.0;
            const auto result = std::from_chars(f.data(), f.data() + f.size(), value);
            if (!f.empty() && result.ec == std::errc{} && result.ptr == f.data() + f.size()) {
                row.emplace_back(value);
            } else {
                row.emplace_back(std::move(f));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
    return buffer;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

}  // namespace sumdist::cli
