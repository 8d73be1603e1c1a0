#include <graphhaus/store.hpp>
#include <graphhaus/error.hpp>

#include "internal.hpp"
#include "sqlite.hpp"

#include <sodium.h>

namespace graphhaus::store
{
    namespace
    {
        constexpr std::string_view current_scheme = "argon2id";

        auto hash_password(const std::string & password, const PasswordCost & cost) -> std::string
        {
            char out[crypto_pwhash_STRBYTES];
            if (crypto_pwhash_str(out, password.data(), password.size(), cost.ops_limit, cost.mem_limit) != 0)
                throw std::runtime_error("password hashing ran out of memory");
            return out;
        }

        auto read_account(sql::Statement & st) -> UserAccount
        {
            return {st.column_int(0), st.column_text(1), st.column_text(2), st.column_text(3), st.column_text(4),
                st.column_int(5) != 0, st.column_int(6) != 0};
        }

        constexpr std::string_view account_columns = "SELECT id, login, digest, scheme, email, disabled, force_reset FROM users ";

        auto validate_login(const std::string & login, const std::string & password) -> void
        {
            if (login.empty() || login.size() > 64)
                throw Error(ErrorCode::invalid_argument, "login names must have 1 to 64 characters");
            if (password.empty())
                throw Error(ErrorCode::invalid_argument, "a password is required");
        }
    }

    auto PasswordCost::interactive() -> PasswordCost
    {
        return {crypto_pwhash_OPSLIMIT_INTERACTIVE, crypto_pwhash_MEMLIMIT_INTERACTIVE};
    }

    auto PasswordCost::minimal() -> PasswordCost
    {
        return {crypto_pwhash_OPSLIMIT_MIN, crypto_pwhash_MEMLIMIT_MIN};
    }

    auto Store::register_user(const std::string & login, const std::string & password, const std::string & email) -> UserId
    {
        validate_login(login, password);
        auto digest = hash_password(password, _options.password_cost);
        std::lock_guard lock(_mutex);
        if (find_user(login))
            throw Error(ErrorCode::name_taken, "login '" + login + "' is taken");
        _db->prepare("INSERT INTO users(login, digest, scheme, email, disabled, force_reset) VALUES(?, ?, ?, ?, 0, 0)")
            .bind(1, login).bind(2, digest).bind(3, current_scheme).bind(4, email).run();
        return _db->last_insert_id();
    }

    auto Store::import_legacy_user(const std::string & login, const std::string & digest, const std::string & scheme,
            const std::string & email) -> UserId
    {
        std::lock_guard lock(_mutex);
        if (login.empty())
            throw Error(ErrorCode::invalid_argument, "login names must be non-empty");
        if (find_user(login))
            throw Error(ErrorCode::name_taken, "login '" + login + "' is taken");
        _db->prepare("INSERT INTO users(login, digest, scheme, email, disabled, force_reset) VALUES(?, ?, ?, ?, 1, 1)")
            .bind(1, login).bind(2, digest).bind(3, scheme).bind(4, email).run();
        return _db->last_insert_id();
    }

    auto Store::authenticate(const std::string & login, const std::string & password) const -> UserId
    {
        auto account = find_user(login);
        if (! account || account->id == anonymous_user)
            throw Error(ErrorCode::invalid_credentials, "unknown login or wrong password");
        if (account->force_reset || account->scheme != current_scheme)
            throw Error(ErrorCode::reset_required, "this account must reset its password");
        if (account->disabled)
            throw Error(ErrorCode::account_disabled, "this account is disabled");
        if (crypto_pwhash_str_verify(account->digest.c_str(), password.data(), password.size()) != 0)
            throw Error(ErrorCode::invalid_credentials, "unknown login or wrong password");
        return account->id;
    }

    auto Store::user(UserId id) const -> std::optional<UserAccount>
    {
        std::lock_guard lock(_mutex);
        auto st = _db->prepare(std::string(account_columns) + "WHERE id = ?");
        st.bind(1, id);
        if (st.step())
            return read_account(st);
        return std::nullopt;
    }

    auto Store::find_user(const std::string & login) const -> std::optional<UserAccount>
    {
        std::lock_guard lock(_mutex);
        auto st = _db->prepare(std::string(account_columns) + "WHERE login = ?");
        st.bind(1, login);
        if (st.step())
            return read_account(st);
        return std::nullopt;
    }

    auto Store::user_count() const -> std::int64_t
    {
        std::lock_guard lock(_mutex);
        auto st = _db->prepare("SELECT COUNT(*) FROM users");
        st.step();
        return st.column_int(0);
    }

    auto Store::delete_user(UserId id) -> void
    {
        if (id == anonymous_user)
            throw Error(ErrorCode::cannot_delete_anonymous, "the anonymous account cannot be deleted");
        std::lock_guard lock(_mutex);
        if (! user(id))
            throw Error(ErrorCode::not_found, "no user with id " + std::to_string(id));
        sql::Transaction tx(*_db);
        for (auto statement : {
                "UPDATE graphs SET uploader = ?1 WHERE uploader = ?2",
                "UPDATE comments SET author = ?1 WHERE author = ?2",
                "UPDATE embeddings SET author = ?1 WHERE author = ?2",
                "UPDATE interesting SET author = ?1 WHERE author = ?2"})
            _db->prepare(statement).bind(1, anonymous_user).bind(2, id).run();
        for (auto statement : {
                "DELETE FROM sessions WHERE user_id = ?",
                "DELETE FROM reset_tokens WHERE user_id = ?",
                "DELETE FROM users WHERE id = ?"})
            _db->prepare(statement).bind(1, id).run();
        tx.commit();
    }

    auto Store::create_session(UserId id) -> std::string
    {
        std::lock_guard lock(_mutex);
        require_user(id);
        auto token = detail::random_token(16);
        _db->prepare("INSERT INTO sessions(token, user_id, expires_at) VALUES(?, ?, ?)")
            .bind(1, token).bind(2, id).bind(3, now() + session_lifetime_seconds).run();
        return token;
    }

    auto Store::session_user(const std::string & token) const -> std::optional<UserId>
    {
        std::lock_guard lock(_mutex);
        auto st = _db->prepare("SELECT s.user_id FROM sessions s JOIN users u ON u.id = s.user_id "
                "WHERE s.token = ? AND s.expires_at > ? AND u.disabled = 0 AND u.force_reset = 0");
        st.bind(1, token).bind(2, now());
        if (st.step())
            return st.column_int(0);
        return std::nullopt;
    }

    auto Store::request_password_reset(const std::string & login) -> std::optional<std::string>
    {
        std::lock_guard lock(_mutex);
        auto account = find_user(login);
        if (! account || account->id == anonymous_user)
            return std::nullopt;
        auto token = detail::random_token(32);
        _db->prepare("INSERT INTO reset_tokens(token, user_id, expires_at) VALUES(?, ?, ?)")
            .bind(1, token).bind(2, account->id).bind(3, now() + reset_token_lifetime_seconds).run();
        return token;
    }

    auto Store::reset_password(const std::string & token, const std::string & new_password) -> void
    {
        if (new_password.empty())
            throw Error(ErrorCode::invalid_argument, "a password is required");
        auto digest = hash_password(new_password, _options.password_cost);
        std::lock_guard lock(_mutex);
        sql::Transaction tx(*_db);
        auto st = _db->prepare("SELECT user_id FROM reset_tokens WHERE token = ? AND expires_at > ?");
        st.bind(1, token).bind(2, now());
        if (! st.step())
            throw Error(ErrorCode::invalid_credentials, "unknown or expired reset token");
        auto id = st.column_int(0);
        _db->prepare("UPDATE users SET digest = ?, scheme = ?, disabled = 0, force_reset = 0 WHERE id = ?")
            .bind(1, digest).bind(2, current_scheme).bind(3, id).run();
        _db->prepare("DELETE FROM reset_tokens WHERE user_id = ?").bind(1, id).run();
        _db->prepare("DELETE FROM sessions WHERE user_id = ?").bind(1, id).run();
        tx.commit();
    }
}
