#include <graphhaus/store.hpp>
#include <graphhaus/error.hpp>
#include <graphhaus/formats.hpp>
#include <graphhaus/layout.hpp>

#include "internal.hpp"
#include "sqlite.hpp"

#include <json.hpp>
#include <sodium.h>

#include <algorithm>
#include <chrono>
#include <cmath>

namespace graphhaus::store
{
    namespace
    {
        constexpr std::string_view schema = R"(
            CREATE TABLE IF NOT EXISTS settings(
                key TEXT PRIMARY KEY,
                value TEXT NOT NULL);
            CREATE TABLE IF NOT EXISTS users(
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                login TEXT NOT NULL UNIQUE,
                digest TEXT NOT NULL,
                scheme TEXT NOT NULL,
                email TEXT NOT NULL,
                disabled INTEGER NOT NULL,
                force_reset INTEGER NOT NULL);
            CREATE TABLE IF NOT EXISTS graphs(
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                canonical_key TEXT NOT NULL UNIQUE,
                algorithm_version INTEGER NOT NULL,
                name TEXT,
                graph_order INTEGER NOT NULL,
                graph_size INTEGER NOT NULL,
                uploader INTEGER NOT NULL,
                created_at INTEGER NOT NULL);
            CREATE TABLE IF NOT EXISTS comments(
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                graph_id INTEGER NOT NULL,
                author INTEGER NOT NULL,
                created_at INTEGER NOT NULL,
                body TEXT NOT NULL);
            CREATE INDEX IF NOT EXISTS comments_by_graph ON comments(graph_id);
            CREATE TABLE IF NOT EXISTS embeddings(
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                graph_id INTEGER NOT NULL,
                author INTEGER NOT NULL,
                created_at INTEGER NOT NULL,
                positions TEXT NOT NULL);
            CREATE INDEX IF NOT EXISTS embeddings_by_graph ON embeddings(graph_id);
            CREATE TABLE IF NOT EXISTS interesting(
                graph_id INTEGER NOT NULL,
                invariant_id TEXT NOT NULL,
                author INTEGER NOT NULL,
                PRIMARY KEY(graph_id, invariant_id));
            CREATE TABLE IF NOT EXISTS invariant_values(
                graph_id INTEGER NOT NULL,
                invariant_id TEXT NOT NULL,
                status TEXT NOT NULL,
                value TEXT NOT NULL,
                computed_at INTEGER,
                engine_version TEXT NOT NULL,
                PRIMARY KEY(graph_id, invariant_id));
            CREATE INDEX IF NOT EXISTS values_by_status ON invariant_values(status);
            CREATE TABLE IF NOT EXISTS sessions(
                token TEXT PRIMARY KEY,
                user_id INTEGER NOT NULL,
                expires_at INTEGER NOT NULL);
            CREATE TABLE IF NOT EXISTS reset_tokens(
                token TEXT PRIMARY KEY,
                user_id INTEGER NOT NULL,
                expires_at INTEGER NOT NULL);
            CREATE TABLE IF NOT EXISTS meta_lists(
                family TEXT PRIMARY KEY,
                description TEXT NOT NULL,
                generator TEXT);
            CREATE TABLE IF NOT EXISTS meta_entries(
                family TEXT NOT NULL,
                graph_order INTEGER NOT NULL,
                count INTEGER,
                file TEXT,
                PRIMARY KEY(family, graph_order));
        )";

        auto is_blank(std::string_view s) -> bool
        {
            return std::all_of(s.begin(), s.end(), [] (unsigned char c) { return std::isspace(c); });
        }

        auto related_id(const Store & store, const Graph & g, canon::Variant variant) -> std::optional<GraphId>
        {
            auto result = canon::canonical_form(g, Deadline::after(std::chrono::seconds(1)), variant);
            if (! result)
                return std::nullopt;
            return store.find_by_key(to_graph6(result->canonical_graph));
        }
    }

    namespace detail
    {
        auto positions_to_json(const std::vector<std::pair<double, double>> & positions) -> std::string
        {
            auto array = nlohmann::json::array();
            for (auto [x, y] : positions)
                array.push_back({x, y});
            return array.dump();
        }

        auto positions_from_json(const std::string & text) -> std::vector<std::pair<double, double>>
        {
            std::vector<std::pair<double, double>> out;
            for (const auto & p : nlohmann::json::parse(text))
                out.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
            return out;
        }

        auto ensure_sodium() -> void
        {
            if (sodium_init() < 0)
                throw std::runtime_error("libsodium failed to initialise");
        }

        auto random_token(std::size_t bytes) -> std::string
        {
            ensure_sodium();
            std::vector<unsigned char> raw(bytes);
            randombytes_buf(raw.data(), raw.size());
            std::string hex(bytes * 2 + 1, '\0');
            sodium_bin2hex(hex.data(), hex.size(), raw.data(), raw.size());
            hex.pop_back();
            return hex;
        }

        auto read_setting(sql::Database & db, std::string_view key) -> std::optional<std::string>
        {
            auto st = db.prepare("SELECT value FROM settings WHERE key = ?");
            st.bind(1, key);
            if (st.step())
                return st.column_text(0);
            return std::nullopt;
        }

        auto write_setting(sql::Database & db, std::string_view key, std::string_view value) -> void
        {
            db.prepare("INSERT INTO settings(key, value) VALUES(?, ?) ON CONFLICT(key) DO UPDATE SET value = excluded.value")
                .bind(1, key).bind(2, value).run();
        }
    }

    Store::Store(const std::string & path, StoreOptions options) : _options(std::move(options))
    {
        detail::ensure_sodium();
        _db = std::make_unique<sql::Database>(path);
        initialise();
    }

    Store::~Store() = default;

    auto Store::initialise() -> void
    {
        _db->exec("PRAGMA journal_mode = WAL");
        _db->exec(schema);
        sql::Transaction tx(*_db);
        auto version = detail::read_setting(*_db, "schema_version");
        if (version && *version != std::to_string(schema_version))
            throw Error(ErrorCode::version_mismatch, "store schema version " + *version + " is not supported");
        if (! version)
            detail::write_setting(*_db, "schema_version", std::to_string(schema_version));
        if (! detail::read_setting(*_db, "algorithm_version"))
            detail::write_setting(*_db, "algorithm_version", std::to_string(canon::algorithm_version(_options.variant)));

        auto st = _db->prepare("SELECT COUNT(*) FROM users WHERE id = ?");
        st.bind(1, anonymous_user);
        st.step();
        if (st.column_int(0) == 0)
            _db->prepare("INSERT INTO users(id, login, digest, scheme, email, disabled, force_reset) VALUES(?, 'anonymous', '', 'none', '', 1, 0)")
                .bind(1, anonymous_user).run();
        tx.commit();
    }

    auto Store::now() const -> std::int64_t
    {
        if (_options.now)
            return _options.now();
        return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count();
    }

    auto Store::algorithm_version() const -> int
    {
        std::lock_guard lock(_mutex);
        return std::stoi(detail::read_setting(*_db, "algorithm_version").value_or("0"));
    }

    auto Store::require_user(UserId id) const -> void
    {
        auto account = user(id);
        if (! account || id == anonymous_user || account->disabled || account->force_reset)
            throw Error(ErrorCode::unauthenticated, "a registered, enabled account is required");
    }

    auto Store::require_graph(GraphId id) const -> void
    {
        auto st = _db->prepare("SELECT 1 FROM graphs WHERE id = ?");
        st.bind(1, id);
        if (! st.step())
            throw Error(ErrorCode::not_found, "no graph with id " + std::to_string(id));
    }

    auto Store::insert_graph(const InsertRequest & request) -> InsertOutcome
    {
        std::lock_guard lock(_mutex);
        require_user(request.uploader);
        if (is_blank(request.comment))
            throw Error(ErrorCode::missing_comment, "a comment is required");
        if (request.graph.order() < 1 || request.graph.order() > max_order)
            throw Error(ErrorCode::order_out_of_range, "order must be between 1 and 250");
        for (const auto & id : request.interesting)
            invariants::descriptor(id);
        int version = canon::algorithm_version(_options.variant);
        if (algorithm_version() != version && graph_count() > 0)
            throw Error(ErrorCode::version_mismatch, "store keys use canonical algorithm version "
                    + std::to_string(algorithm_version()) + "; run rekey first");

        auto canonical = canon::canonical_form(request.graph, Deadline::never(), _options.variant);
        auto key = to_graph6(canonical->canonical_graph);
        if (auto existing = find_by_key(key))
            return {InsertOutcome::Kind::duplicate, *existing};

        sql::Transaction tx(*_db);
        if (request.id) {
            auto st = _db->prepare("SELECT COALESCE((SELECT seq FROM sqlite_sequence WHERE name = 'graphs'), 0)");
            st.step();
            if (*request.id <= st.column_int(0))
                throw Error(ErrorCode::invalid_argument, "explicit id " + std::to_string(*request.id) + " is not above every assigned id");
        }
        auto t = now();
        _db->prepare("INSERT INTO graphs(id, canonical_key, algorithm_version, name, graph_order, graph_size, uploader, created_at) "
                "VALUES(?, ?, ?, ?, ?, ?, ?, ?)")
            .bind(1, request.id).bind(2, key).bind(3, version).bind(4, request.name)
            .bind(5, request.graph.order()).bind(6, request.graph.size()).bind(7, request.uploader).bind(8, t).run();
        GraphId id = _db->last_insert_id();
        detail::write_setting(*_db, "algorithm_version", std::to_string(version));

        _db->prepare("INSERT INTO comments(graph_id, author, created_at, body) VALUES(?, ?, ?, ?)")
            .bind(1, id).bind(2, request.uploader).bind(3, t).bind(4, request.comment).run();
        _db->prepare("INSERT INTO embeddings(graph_id, author, created_at, positions) VALUES(?, ?, ?, ?)")
            .bind(1, id).bind(2, request.uploader).bind(3, t)
            .bind(4, detail::positions_to_json(spring_layout(canonical->canonical_graph).positions)).run();
        auto mark = _db->prepare("INSERT INTO interesting(graph_id, invariant_id, author) VALUES(?, ?, ?)");
        for (const auto & inv : request.interesting) {
            mark.bind(1, id).bind(2, inv).bind(3, request.uploader);
            mark.run();
        }
        auto pending = _db->prepare("INSERT INTO invariant_values(graph_id, invariant_id, status, value, computed_at, engine_version) "
                "VALUES(?, ?, 'pending', '', NULL, ?)");
        for (const auto & d : invariants::scheduled_registry(_options.include_extended_invariants)) {
            pending.bind(1, id).bind(2, d.id).bind(3, invariants::engine_version);
            pending.run();
        }
        tx.commit();
        return {InsertOutcome::Kind::inserted, id};
    }

    auto Store::find_by_key(const std::string & key) const -> std::optional<GraphId>
    {
        std::lock_guard lock(_mutex);
        auto st = _db->prepare("SELECT id FROM graphs WHERE canonical_key = ?");
        st.bind(1, key);
        if (st.step())
            return st.column_int(0);
        return std::nullopt;
    }

    auto Store::find_isomorph(const Graph & g) const -> std::optional<GraphId>
    {
        return find_by_key(canon::canonical_key(g, _options.variant).key);
    }

    auto Store::graph_count() const -> std::int64_t
    {
        std::lock_guard lock(_mutex);
        auto st = _db->prepare("SELECT COUNT(*) FROM graphs");
        st.step();
        return st.column_int(0);
    }

    auto Store::graph_ids() const -> std::vector<GraphId>
    {
        std::lock_guard lock(_mutex);
        std::vector<GraphId> ids;
        auto st = _db->prepare("SELECT id FROM graphs ORDER BY id");
        while (st.step())
            ids.push_back(st.column_int(0));
        return ids;
    }

    auto Store::graph(GraphId id) const -> Graph
    {
        std::lock_guard lock(_mutex);
        auto st = _db->prepare("SELECT canonical_key FROM graphs WHERE id = ?");
        st.bind(1, id);
        if (! st.step())
            throw Error(ErrorCode::not_found, "no graph with id " + std::to_string(id));
        return from_graph6(st.column_text(0));
    }

    auto Store::get_record(GraphId id) const -> GraphRecord
    {
        std::lock_guard lock(_mutex);
        GraphRecord record;
        {
            auto st = _db->prepare("SELECT canonical_key, algorithm_version, name, uploader, created_at FROM graphs WHERE id = ?");
            st.bind(1, id);
            if (! st.step())
                throw Error(ErrorCode::not_found, "no graph with id " + std::to_string(id));
            record.id = id;
            record.canonical_key = {st.column_text(0), static_cast<int>(st.column_int(1))};
            record.graph = from_graph6(record.canonical_key.key);
            record.name = st.column_optional_text(2);
            record.uploader = st.column_int(3);
            record.created_at = st.column_int(4);
        }
        {
            auto st = _db->prepare("SELECT id, author, created_at, body FROM comments WHERE graph_id = ? ORDER BY id");
            st.bind(1, id);
            while (st.step())
                record.comments.push_back({st.column_int(0), st.column_int(1), st.column_int(2), st.column_text(3)});
        }
        {
            auto st = _db->prepare("SELECT id, author, created_at, positions FROM embeddings WHERE graph_id = ? ORDER BY id");
            st.bind(1, id);
            while (st.step())
                record.embeddings.push_back({st.column_int(0), st.column_int(1), st.column_int(2),
                        Embedding{detail::positions_from_json(st.column_text(3))}});
        }
        {
            auto st = _db->prepare("SELECT invariant_id FROM interesting WHERE graph_id = ?");
            st.bind(1, id);
            while (st.step())
                record.interesting.insert(st.column_text(0));
        }
        record.values = values(id);

        record.complement_id = related_id(*this, complement(record.graph), _options.variant);
        if (record.graph.size() >= 1 && record.graph.size() <= max_order)
            record.line_graph_id = related_id(*this, line_graph(record.graph), _options.variant);
        return record;
    }

    auto Store::add_comment(GraphId id, UserId author, const std::string & body) -> std::int64_t
    {
        std::lock_guard lock(_mutex);
        require_user(author);
        require_graph(id);
        if (is_blank(body))
            throw Error(ErrorCode::missing_comment, "comment body is blank");
        _db->prepare("INSERT INTO comments(graph_id, author, created_at, body) VALUES(?, ?, ?, ?)")
            .bind(1, id).bind(2, author).bind(3, now()).bind(4, body).run();
        return _db->last_insert_id();
    }

    auto Store::delete_comment(std::int64_t comment_id, UserId requester) -> void
    {
        std::lock_guard lock(_mutex);
        require_user(requester);
        sql::Transaction tx(*_db);
        auto st = _db->prepare("SELECT graph_id, author FROM comments WHERE id = ?");
        st.bind(1, comment_id);
        if (! st.step())
            throw Error(ErrorCode::not_found, "no comment with id " + std::to_string(comment_id));
        auto graph_id = st.column_int(0);
        if (st.column_int(1) != requester)
            throw Error(ErrorCode::unauthenticated, "only the author may delete a comment");
        auto count = _db->prepare("SELECT COUNT(*) FROM comments WHERE graph_id = ?");
        count.bind(1, graph_id);
        count.step();
        if (count.column_int(0) <= 1)
            throw Error(ErrorCode::invalid_argument, "a graph must keep at least one comment");
        _db->prepare("DELETE FROM comments WHERE id = ?").bind(1, comment_id).run();
        tx.commit();
    }

    auto Store::add_embedding(GraphId id, UserId author, const std::vector<std::pair<double, double>> & positions) -> std::int64_t
    {
        std::lock_guard lock(_mutex);
        require_user(author);
        auto g = graph(id);
        if (static_cast<int>(positions.size()) != g.order())
            throw Error(ErrorCode::position_count_mismatch, "expected " + std::to_string(g.order()) + " positions, got "
                    + std::to_string(positions.size()));
        for (std::size_t i = 0 ; i < positions.size() ; ++i) {
            auto [x, y] = positions[i];
            if (! std::isfinite(x) || ! std::isfinite(y) || x < 0 || x > 1 || y < 0 || y > 1)
                throw Error(ErrorCode::position_out_of_range, "position " + std::to_string(i) + " lies outside the unit square");
        }
        _db->prepare("INSERT INTO embeddings(graph_id, author, created_at, positions) VALUES(?, ?, ?, ?)")
            .bind(1, id).bind(2, author).bind(3, now()).bind(4, detail::positions_to_json(positions)).run();
        return _db->last_insert_id();
    }

    auto Store::mark_interesting(GraphId id, UserId author, const std::string & invariant) -> void
    {
        std::lock_guard lock(_mutex);
        require_user(author);
        require_graph(id);
        invariants::descriptor(invariant);
        _db->prepare("INSERT OR IGNORE INTO interesting(graph_id, invariant_id, author) VALUES(?, ?, ?)")
            .bind(1, id).bind(2, invariant).bind(3, author).run();
    }

    auto Store::set_value(GraphId id, const std::string & invariant, const invariants::InvariantValue & value) -> void
    {
        std::lock_guard lock(_mutex);
        require_graph(id);
        invariants::descriptor(invariant);
        std::optional<std::int64_t> at;
        if (value.status() != invariants::Status::pending)
            at = now();
        _db->prepare("INSERT INTO invariant_values(graph_id, invariant_id, status, value, computed_at, engine_version) "
                "VALUES(?, ?, ?, ?, ?, ?) ON CONFLICT(graph_id, invariant_id) DO UPDATE SET "
                "status = excluded.status, value = excluded.value, computed_at = excluded.computed_at, "
                "engine_version = excluded.engine_version")
            .bind(1, id).bind(2, invariant).bind(3, to_string(value.status())).bind(4, value.value_text())
            .bind(5, at).bind(6, invariants::engine_version).run();
    }

    auto Store::values(GraphId id) const -> std::map<std::string, StoredValue, std::less<>>
    {
        std::lock_guard lock(_mutex);
        std::map<std::string, StoredValue, std::less<>> out;
        auto st = _db->prepare("SELECT invariant_id, status, value, computed_at, engine_version FROM invariant_values WHERE graph_id = ?");
        st.bind(1, id);
        while (st.step()) {
            auto inv = st.column_text(0);
            auto d = invariants::find(inv);
            if (! d)
                continue;
            out.emplace(inv, StoredValue{
                    invariants::InvariantValue::from_parts(invariants::parse_status(st.column_text(1)), st.column_text(2), d->kind),
                    st.column_optional_int(3), st.column_text(4)});
        }
        return out;
    }

    auto Store::jobs_with_status(const std::set<invariants::Status> & statuses, const std::optional<std::string> & invariant) const
        -> std::vector<PendingJob>
    {
        std::lock_guard lock(_mutex);
        if (invariant)
            invariants::descriptor(*invariant);
        std::vector<PendingJob> jobs;
        auto st = _db->prepare("SELECT graph_id, invariant_id, status FROM invariant_values ORDER BY graph_id, invariant_id");
        while (st.step()) {
            auto inv = st.column_text(1);
            if (invariant && inv != *invariant)
                continue;
            if (statuses.contains(invariants::parse_status(st.column_text(2))))
                jobs.push_back({st.column_int(0), inv});
        }
        return jobs;
    }

    auto Store::upsert_meta_list(const MetaList & list) -> void
    {
        std::lock_guard lock(_mutex);
        if (is_blank(list.family))
            throw Error(ErrorCode::invalid_argument, "a meta list needs a family name");
        std::set<int> orders;
        for (const auto & e : list.entries) {
            if (e.count && *e.count < 0)
                throw Error(ErrorCode::negative_count, "negative count for order " + std::to_string(e.order));
            if (e.order < 1)
                throw Error(ErrorCode::order_out_of_range, "meta list orders start at 1");
            if (! orders.insert(e.order).second)
                throw Error(ErrorCode::invalid_argument, "order " + std::to_string(e.order) + " listed twice");
        }
        sql::Transaction tx(*_db);
        _db->prepare("INSERT INTO meta_lists(family, description, generator) VALUES(?, ?, ?) "
                "ON CONFLICT(family) DO UPDATE SET description = excluded.description, generator = excluded.generator")
            .bind(1, list.family).bind(2, list.description).bind(3, list.generator).run();
        _db->prepare("DELETE FROM meta_entries WHERE family = ?").bind(1, list.family).run();
        auto st = _db->prepare("INSERT INTO meta_entries(family, graph_order, count, file) VALUES(?, ?, ?, ?)");
        for (const auto & e : list.entries) {
            st.bind(1, list.family).bind(2, e.order).bind(3, e.count).bind(4, e.file);
            st.run();
        }
        tx.commit();
    }

    auto Store::get_meta_list(const std::string & family) const -> MetaList
    {
        std::lock_guard lock(_mutex);
        MetaList list;
        auto st = _db->prepare("SELECT description, generator FROM meta_lists WHERE family = ?");
        st.bind(1, family);
        if (! st.step())
            throw Error(ErrorCode::not_found, "no meta list '" + family + "'");
        list.family = family;
        list.description = st.column_text(0);
        list.generator = st.column_optional_text(1);
        auto entries = _db->prepare("SELECT graph_order, count, file FROM meta_entries WHERE family = ? ORDER BY graph_order");
        entries.bind(1, family);
        while (entries.step())
            list.entries.push_back({static_cast<int>(entries.column_int(0)), entries.column_optional_int(1), entries.column_optional_text(2)});
        return list;
    }

    auto Store::meta_families() const -> std::vector<std::string>
    {
        std::lock_guard lock(_mutex);
        std::vector<std::string> out;
        auto st = _db->prepare("SELECT family FROM meta_lists ORDER BY family");
        while (st.step())
            out.push_back(st.column_text(0));
        return out;
    }

    auto Store::stability_records() const -> std::vector<canon::StabilityRecord>
    {
        std::lock_guard lock(_mutex);
        std::vector<canon::StabilityRecord> out;
        auto st = _db->prepare("SELECT id, canonical_key, algorithm_version FROM graphs ORDER BY id");
        while (st.step()) {
            canon::CanonicalKey key{st.column_text(1), static_cast<int>(st.column_int(2))};
            out.push_back({st.column_int(0), key, from_graph6(key.key)});
        }
        return out;
    }

    auto Store::rekey() -> std::size_t
    {
        std::lock_guard lock(_mutex);
        int version = canon::algorithm_version(_options.variant);
        std::size_t changed = 0;
        sql::Transaction tx(*_db);
        for (const auto & record : stability_records()) {
            auto result = canon::canonical_form(record.graph, Deadline::never(), _options.variant);
            auto key = to_graph6(result->canonical_graph);
            if (key == record.stored.key && version == record.stored.algorithm_version)
                continue;
            ++changed;
            _db->prepare("UPDATE graphs SET canonical_key = ?, algorithm_version = ? WHERE id = ?")
                .bind(1, key).bind(2, version).bind(3, record.id).run();

            std::vector<std::pair<std::int64_t, std::string>> embeddings;
            auto st = _db->prepare("SELECT id, positions FROM embeddings WHERE graph_id = ?");
            st.bind(1, record.id);
            while (st.step())
                embeddings.emplace_back(st.column_int(0), st.column_text(1));
            auto update = _db->prepare("UPDATE embeddings SET positions = ? WHERE id = ?");
            for (const auto & [eid, text] : embeddings) {
                auto old_positions = detail::positions_from_json(text);
                auto positions = old_positions;
                for (std::size_t v = 0 ; v < old_positions.size() ; ++v)
                    positions[static_cast<std::size_t>(result->relabelling[v])] = old_positions[v];
                update.bind(1, detail::positions_to_json(positions)).bind(2, eid);
                update.run();
            }
        }
        detail::write_setting(*_db, "algorithm_version", std::to_string(version));
        tx.commit();
        return changed;
    }

    auto Store::entries() const -> std::vector<query::GraphEntry>
    {
        std::lock_guard lock(_mutex);
        std::vector<query::GraphEntry> out;
        std::map<GraphId, std::size_t> index;
        {
            auto st = _db->prepare("SELECT id, graph_order, graph_size, COALESCE(name, '') FROM graphs ORDER BY id");
            while (st.step()) {
                query::GraphEntry e;
                e.id = st.column_int(0);
                e.order = static_cast<int>(st.column_int(1));
                e.size = static_cast<int>(st.column_int(2));
                e.name = st.column_text(3);
                index.emplace(e.id, out.size());
                out.push_back(std::move(e));
            }
        }
        auto at = [&] (GraphId id) -> query::GraphEntry * {
            auto it = index.find(id);
            return it == index.end() ? nullptr : &out[it->second];
        };
        {
            auto st = _db->prepare("SELECT graph_id, body FROM comments ORDER BY id");
            while (st.step())
                if (auto e = at(st.column_int(0)))
                    e->comments.push_back(st.column_text(1));
        }
        {
            auto st = _db->prepare("SELECT graph_id, invariant_id FROM interesting");
            while (st.step())
                if (auto e = at(st.column_int(0)))
                    e->interesting.insert(st.column_text(1));
        }
        {
            auto st = _db->prepare("SELECT graph_id, invariant_id, status, value FROM invariant_values");
            while (st.step()) {
                auto e = at(st.column_int(0));
                auto d = invariants::find(st.column_text(1));
                if (e && d)
                    e->values.emplace(d->id, invariants::InvariantValue::from_parts(
                            invariants::parse_status(st.column_text(2)), st.column_text(3), d->kind));
            }
        }
        return out;
    }
}
