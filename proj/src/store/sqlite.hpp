#ifndef GRAPHHAUS_STORE_SQLITE_HPP
#define GRAPHHAUS_STORE_SQLITE_HPP

#include <sqlite3.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace graphhaus::store::sql
{
    /// Thin RAII layer over the SQLite C API. Failures throw
    /// std::runtime_error with the SQLite message.
    class Statement
    {
    public:
        Statement(sqlite3 * db, std::string_view sql);
        Statement(const Statement &) = delete;
        Statement & operator=(const Statement &) = delete;
        Statement(Statement && other) noexcept;
        ~Statement();

        auto bind(int index, std::int64_t value) -> Statement &;
        auto bind(int index, int value) -> Statement & { return bind(index, static_cast<std::int64_t>(value)); }
        auto bind(int index, double value) -> Statement &;
        auto bind(int index, std::string_view value) -> Statement &;
        auto bind(int index, const char * value) -> Statement & { return bind(index, std::string_view(value)); }
        auto bind(int index, const std::string & value) -> Statement & { return bind(index, std::string_view(value)); }
        auto bind_null(int index) -> Statement &;

        template <typename T>
        auto bind(int index, const std::optional<T> & value) -> Statement &
        {
            return value ? bind(index, *value) : bind_null(index);
        }

        /// True while a row is available.
        auto step() -> bool;
        /// Steps once, expecting no row.
        auto run() -> void;
        auto reset() -> void;

        auto column_int(int i) const -> std::int64_t;
        auto column_double(int i) const -> double;
        auto column_text(int i) const -> std::string;
        auto column_is_null(int i) const -> bool;
        auto column_optional_int(int i) const -> std::optional<std::int64_t>;
        auto column_optional_text(int i) const -> std::optional<std::string>;

    private:
        sqlite3 * _db;
        sqlite3_stmt * _stmt = nullptr;
    };

    class Database
    {
    public:
        explicit Database(const std::string & path);
        Database(const Database &) = delete;
        Database & operator=(const Database &) = delete;
        ~Database();

        auto handle() const -> sqlite3 * { return _db; }
        auto exec(std::string_view sql) -> void;
        auto prepare(std::string_view sql) -> Statement { return Statement(_db, sql); }
        auto last_insert_id() const -> std::int64_t { return sqlite3_last_insert_rowid(_db); }
        auto changes() const -> int { return sqlite3_changes(_db); }

    private:
        sqlite3 * _db = nullptr;
    };

    /// Commits on commit(); rolls back if destroyed first.
    class Transaction
    {
    public:
        explicit Transaction(Database & db);
        Transaction(const Transaction &) = delete;
        Transaction & operator=(const Transaction &) = delete;
        ~Transaction();
        auto commit() -> void;

    private:
        Database & _db;
        bool _open = true;
    };
}

#endif
