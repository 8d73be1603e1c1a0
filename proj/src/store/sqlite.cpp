#include "sqlite.hpp"

#include <stdexcept>

namespace graphhaus::store::sql
{
    namespace
    {
        [[noreturn]] auto fail(sqlite3 * db, std::string_view context) -> void
        {
            throw std::runtime_error(std::string(context) + ": " + sqlite3_errmsg(db));
        }
    }

    Statement::Statement(sqlite3 * db, std::string_view sql) : _db(db)
    {
        if (sqlite3_prepare_v2(db, sql.data(), static_cast<int>(sql.size()), &_stmt, nullptr) != SQLITE_OK)
            fail(db, "prepare");
    }

    Statement::Statement(Statement && other) noexcept : _db(other._db), _stmt(other._stmt)
    {
        other._stmt = nullptr;
    }

    Statement::~Statement()
    {
        sqlite3_finalize(_stmt);
    }

    auto Statement::bind(int index, std::int64_t value) -> Statement &
    {
        if (sqlite3_bind_int64(_stmt, index, value) != SQLITE_OK)
            fail(_db, "bind");
        return *this;
    }

    auto Statement::bind(int index, double value) -> Statement &
    {
        if (sqlite3_bind_double(_stmt, index, value) != SQLITE_OK)
            fail(_db, "bind");
        return *this;
    }

    auto Statement::bind(int index, std::string_view value) -> Statement &
    {
        if (sqlite3_bind_text(_stmt, index, value.data(), static_cast<int>(value.size()), SQLITE_TRANSIENT) != SQLITE_OK)
            fail(_db, "bind");
        return *this;
    }

    auto Statement::bind_null(int index) -> Statement &
    {
        if (sqlite3_bind_null(_stmt, index) != SQLITE_OK)
            fail(_db, "bind");
        return *this;
    }

    auto Statement::step() -> bool
    {
        int rc = sqlite3_step(_stmt);
        if (rc == SQLITE_ROW)
            return true;
        if (rc == SQLITE_DONE)
            return false;
        fail(_db, "step");
    }

    auto Statement::run() -> void
    {
        step();
        reset();
    }

    auto Statement::reset() -> void
    {
        sqlite3_reset(_stmt);
        sqlite3_clear_bindings(_stmt);
    }

    auto Statement::column_int(int i) const -> std::int64_t
    {
        return sqlite3_column_int64(_stmt, i);
    }

    auto Statement::column_double(int i) const -> double
    {
        return sqlite3_column_double(_stmt, i);
    }

    auto Statement::column_text(int i) const -> std::string
    {
        auto p = reinterpret_cast<const char *>(sqlite3_column_text(_stmt, i));
        if (! p)
            return {};
        return std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(_stmt, i)));
    }

    auto Statement::column_is_null(int i) const -> bool
    {
        return sqlite3_column_type(_stmt, i) == SQLITE_NULL;
    }

    auto Statement::column_optional_int(int i) const -> std::optional<std::int64_t>
    {
        if (column_is_null(i))
            return std::nullopt;
        return column_int(i);
    }

    auto Statement::column_optional_text(int i) const -> std::optional<std::string>
    {
        if (column_is_null(i))
            return std::nullopt;
        return column_text(i);
    }

    Database::Database(const std::string & path)
    {
        if (sqlite3_open_v2(path.c_str(), &_db, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX, nullptr) != SQLITE_OK) {
            std::string message = _db ? sqlite3_errmsg(_db) : "out of memory";
            sqlite3_close(_db);
            throw std::runtime_error("cannot open store '" + path + "': " + message);
        }
        sqlite3_busy_timeout(_db, 5000);
    }

    Database::~Database()
    {
        sqlite3_close(_db);
    }

    auto Database::exec(std::string_view sql) -> void
    {
        std::string text(sql);
        char * error = nullptr;
        if (sqlite3_exec(_db, text.c_str(), nullptr, nullptr, &error) != SQLITE_OK) {
            std::string message = error ? error : "unknown error";
            sqlite3_free(error);
            throw std::runtime_error("exec: " + message);
        }
    }

    Transaction::Transaction(Database & db) : _db(db)
    {
        _db.exec("BEGIN IMMEDIATE");
    }

    Transaction::~Transaction()
    {
        if (_open) {
            try {
                _db.exec("ROLLBACK");
            }
            catch (...) {
            }
        }
    }

    auto Transaction::commit() -> void
    {
        _db.exec("COMMIT");
        _open = false;
    }
}
