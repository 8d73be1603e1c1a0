#ifndef GRAPHHAUS_STORE_INTERNAL_HPP
#define GRAPHHAUS_STORE_INTERNAL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace graphhaus::store::sql
{
    class Database;
}

namespace graphhaus::store::detail
{
    auto positions_to_json(const std::vector<std::pair<double, double>> & positions) -> std::string;
    auto positions_from_json(const std::string & text) -> std::vector<std::pair<double, double>>;
    auto ensure_sodium() -> void;
    auto random_token(std::size_t bytes) -> std::string;
    auto read_setting(sql::Database & db, std::string_view key) -> std::optional<std::string>;
    auto write_setting(sql::Database & db, std::string_view key, std::string_view value) -> void;
}

#endif
