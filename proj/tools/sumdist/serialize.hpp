#ifndef SUMDIST_TOOLS_SERIALIZE_HPP
#define SUMDIST_TOOLS_SERIALIZE_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace sumdist::cli {

using Cell = std::variant<double, std::string>;

// A rectangular result plus the metadata needed to regenerate it.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json meta = nlohmann::json::object();
};

enum class Format { Csv, Json };

[[nodiscard]] Format parse_format(std::string_view name);
[[nodiscard]] std::string_view to_string(Format format);

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// %.17g equivalent without locale: parses back to the same double.
[[nodiscard]] std::string format_double(double value);

// Header row, then one line per row; every line ends with '\n'.
[[nodiscard]] std::string to_csv(const Table& table);
// {"meta": {...}, "data": {"column": [values...], ...}}
[[nodiscard]] std::string to_json(const Table& table);
[[nodiscard]] std::string serialize(const Table& table, Format format);

// Inverse of to_csv; fields that parse completely as numbers become doubles.
[[nodiscard]] Table parse_csv(std::string_view text);

[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);
[[nodiscard]] std::string hex64(std::uint64_t value);

// Writes to a temporary sibling and renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace sumdist::cli

#endif  // SUMDIST_TOOLS_SERIALIZE_HPP
