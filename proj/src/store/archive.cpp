#include <graphhaus/store.hpp>
#include <graphhaus/error.hpp>
#include <graphhaus/formats.hpp>

#include "internal.hpp"
#include "sqlite.hpp"

#include <json.hpp>
#include <sodium.h>

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace graphhaus::store
{
    namespace
    {
        using nlohmann::json;

        constexpr std::string_view manifest_name = "manifest.json";
        constexpr int archive_format = 1;

        [[noreturn]] auto corrupt(const std::string & why) -> void
        {
            throw Error(ErrorCode::corrupt_archive, "corrupt archive: " + why);
        }

        auto optional_json(const std::optional<std::string> & s) -> json
        {
            return s ? json(*s) : json(nullptr);
        }

        auto optional_json(const std::optional<std::int64_t> & v) -> json
        {
            return v ? json(*v) : json(nullptr);
        }

        auto optional_text(const json & j) -> std::optional<std::string>
        {
            if (j.is_null())
                return std::nullopt;
            return j.get<std::string>();
        }

        auto optional_int(const json & j) -> std::optional<std::int64_t>
        {
            if (j.is_null())
                return std::nullopt;
            return j.get<std::int64_t>();
        }

        /// One JSON object per line, in the given row order.
        class Lines
        {
        public:
            auto add(const json & row) -> void
            {
                _text += row.dump();
                _text += '\n';
            }
            auto take() -> std::string { return std::move(_text); }

        private:
            std::string _text;
        };

        auto split_lines(const std::string & text) -> std::vector<std::string>
        {
            std::vector<std::string> out;
            std::size_t start = 0;
            while (start < text.size()) {
                auto end = text.find('\n', start);
                if (end == std::string::npos)
                    corrupt("unterminated line");
                out.push_back(text.substr(start, end - start));
                start = end + 1;
            }
            return out;
        }

        auto parse_rows(const std::string & text) -> std::vector<json>
        {
            std::vector<json> rows;
            for (const auto & line : split_lines(text))
                rows.push_back(json::parse(line));
            return rows;
        }

        const std::vector<std::string_view> entry_names = {
            "settings.jsonl", "users.jsonl", "graphs.g6", "graphs.jsonl", "comments.jsonl", "embeddings.jsonl",
            "interesting.jsonl", "invariant_values.jsonl", "meta_lists.jsonl", "sequences.jsonl"};
    }

    namespace archive
    {
        auto sha256_hex(std::string_view data) -> std::string
        {
            detail::ensure_sodium();
            unsigned char digest[crypto_hash_sha256_BYTES];
            crypto_hash_sha256(digest, reinterpret_cast<const unsigned char *>(data.data()), data.size());
            char hex[crypto_hash_sha256_BYTES * 2 + 1];
            sodium_bin2hex(hex, sizeof hex, digest, sizeof digest);
            return hex;
        }

        auto write(std::ostream & out, const Archive & archive) -> void
        {
            auto manifest_entries = json::array();
            auto frame = [&] (std::string_view name, std::string_view content) {
                out << name << ' ' << content.size() << '\n';
                out.write(content.data(), static_cast<std::streamsize>(content.size()));
                out << '\n';
            };
            out << magic << '\n';
            for (const auto & e : archive.entries) {
                if (e.name == manifest_name || e.name.find_first_of(" \n") != std::string::npos || e.name.empty())
                    throw Error(ErrorCode::invalid_argument, "bad archive entry name '" + e.name + "'");
                frame(e.name, e.content);
                manifest_entries.push_back({{"name", e.name}, {"bytes", e.content.size()}, {"sha256", sha256_hex(e.content)}});
            }
            json manifest{{"format", archive_format}, {"algorithm_version", archive.algorithm_version}, {"entries", manifest_entries}};
            frame(manifest_name, manifest.dump());
            if (! out)
                throw std::runtime_error("failed writing archive");
        }

        auto read(std::istream & in) -> Archive
        {
            std::string line;
            if (! std::getline(in, line) || line != magic)
                corrupt("missing header");

            Archive archive;
            while (true) {
                if (! std::getline(in, line))
                    corrupt("truncated before the manifest");
                auto space = line.rfind(' ');
                if (space == std::string::npos || space == 0)
                    corrupt("bad entry header");
                std::string name = line.substr(0, space);
                std::size_t size = 0;
                auto digits = std::string_view(line).substr(space + 1);
                auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), size);
                if (ec != std::errc() || ptr != digits.data() + digits.size())
                    corrupt("bad entry size");

                std::string content;
                constexpr std::size_t chunk = 1 << 20;
                while (content.size() < size) {
                    auto want = std::min(chunk, size - content.size());
                    auto old = content.size();
                    content.resize(old + want);
                    in.read(content.data() + old, static_cast<std::streamsize>(want));
                    if (static_cast<std::size_t>(in.gcount()) != want)
                        corrupt("truncated entry '" + name + "'");
                }
                if (in.get() != '\n')
                    corrupt("truncated entry '" + name + "'");

                if (name != manifest_name) {
                    archive.entries.push_back({std::move(name), std::move(content)});
                    continue;
                }

                json manifest;
                try {
                    manifest = json::parse(content);
                    if (manifest.at("format").get<int>() != archive_format)
                        corrupt("unsupported format");
                    archive.algorithm_version = manifest.at("algorithm_version").get<int>();
                    const auto & listed = manifest.at("entries");
                    if (listed.size() != archive.entries.size())
                        corrupt("manifest lists a different number of entries");
                    for (std::size_t i = 0 ; i < listed.size() ; ++i) {
                        const auto & e = archive.entries[i];
                        if (listed[i].at("name").get<std::string>() != e.name
                                || listed[i].at("bytes").get<std::size_t>() != e.content.size()
                                || listed[i].at("sha256").get<std::string>() != sha256_hex(e.content))
                            corrupt("checksum mismatch for '" + e.name + "'");
                    }
                }
                catch (const json::exception & e) {
                    corrupt(std::string("bad manifest: ") + e.what());
                }
                if (in.peek() != std::char_traits<char>::eof())
                    corrupt("data after the manifest");
                return archive;
            }
        }
    }

    auto Store::dump(std::ostream & out) const -> void
    {
        std::lock_guard lock(_mutex);
        std::map<std::string_view, Lines> parts;

        {
            auto st = _db->prepare("SELECT key, value FROM settings ORDER BY key");
            while (st.step())
                parts["settings.jsonl"].add({{"key", st.column_text(0)}, {"value", st.column_text(1)}});
        }
        {
            auto st = _db->prepare("SELECT id, login, digest, scheme, email, disabled, force_reset FROM users ORDER BY id");
            while (st.step())
                parts["users.jsonl"].add({{"id", st.column_int(0)}, {"login", st.column_text(1)}, {"digest", st.column_text(2)},
                        {"scheme", st.column_text(3)}, {"email", st.column_text(4)}, {"disabled", st.column_int(5) != 0},
                        {"force_reset", st.column_int(6) != 0}});
        }
        std::string g6;
        {
            auto st = _db->prepare("SELECT id, canonical_key, algorithm_version, name, uploader, created_at FROM graphs ORDER BY id");
            while (st.step()) {
                g6 += st.column_text(1);
                g6 += '\n';
                parts["graphs.jsonl"].add({{"id", st.column_int(0)}, {"algorithm_version", st.column_int(2)},
                        {"name", optional_json(st.column_optional_text(3))}, {"uploader", st.column_int(4)},
                        {"created_at", st.column_int(5)}});
            }
        }
        {
            auto st = _db->prepare("SELECT id, graph_id, author, created_at, body FROM comments ORDER BY id");
            while (st.step())
                parts["comments.jsonl"].add({{"id", st.column_int(0)}, {"graph_id", st.column_int(1)}, {"author", st.column_int(2)},
                        {"created_at", st.column_int(3)}, {"body", st.column_text(4)}});
        }
        {
            auto st = _db->prepare("SELECT id, graph_id, author, created_at, positions FROM embeddings ORDER BY id");
            while (st.step())
                parts["embeddings.jsonl"].add({{"id", st.column_int(0)}, {"graph_id", st.column_int(1)}, {"author", st.column_int(2)},
                        {"created_at", st.column_int(3)}, {"positions", json::parse(st.column_text(4))}});
        }
        {
            auto st = _db->prepare("SELECT graph_id, invariant_id, author FROM interesting ORDER BY graph_id, invariant_id");
            while (st.step())
                parts["interesting.jsonl"].add({{"graph_id", st.column_int(0)}, {"invariant_id", st.column_text(1)},
                        {"author", st.column_int(2)}});
        }
        {
            auto st = _db->prepare("SELECT graph_id, invariant_id, status, value, computed_at, engine_version FROM invariant_values "
                    "ORDER BY graph_id, invariant_id");
            while (st.step())
                parts["invariant_values.jsonl"].add({{"graph_id", st.column_int(0)}, {"invariant_id", st.column_text(1)},
                        {"status", st.column_text(2)}, {"value", st.column_text(3)},
                        {"computed_at", optional_json(st.column_optional_int(4))}, {"engine_version", st.column_text(5)}});
        }
        for (const auto & family : meta_families()) {
            auto list = get_meta_list(family);
            auto entries = json::array();
            for (const auto & e : list.entries)
                entries.push_back({{"order", e.order}, {"count", optional_json(e.count)}, {"file", optional_json(e.file)}});
            parts["meta_lists.jsonl"].add({{"family", list.family}, {"description", list.description},
                    {"generator", optional_json(list.generator)}, {"entries", entries}});
        }
        {
            auto st = _db->prepare("SELECT name, seq FROM sqlite_sequence ORDER BY name");
            while (st.step())
                parts["sequences.jsonl"].add({{"table", st.column_text(0)}, {"seq", st.column_int(1)}});
        }

        archive::Archive a;
        a.algorithm_version = std::stoi(detail::read_setting(*_db, "algorithm_version").value_or("0"));
        for (auto name : entry_names) {
            if (name == "graphs.g6")
                a.entries.push_back({std::string(name), g6});
            else
                a.entries.push_back({std::string(name), parts[name].take()});
        }
        archive::write(out, a);
    }

    auto Store::dump_to_string() const -> std::string
    {
        std::ostringstream out;
        dump(out);
        return out.str();
    }

    auto Store::restore(std::istream & in, bool force) -> void
    {
        auto a = archive::read(in);
        std::map<std::string, std::string, std::less<>> parts;
        for (auto & e : a.entries)
            parts.emplace(e.name, std::move(e.content));
        for (auto name : entry_names)
            if (! parts.contains(name))
                corrupt("missing entry '" + std::string(name) + "'");

        std::lock_guard lock(_mutex);
        if (! force) {
            auto st = _db->prepare("SELECT (SELECT COUNT(*) FROM graphs) + (SELECT COUNT(*) FROM users WHERE id <> 1) "
                    "+ (SELECT COUNT(*) FROM meta_lists)");
            st.step();
            if (st.column_int(0) != 0)
                throw Error(ErrorCode::store_not_empty, "restore needs an empty store; use --force to overwrite");
        }

        sql::Transaction tx(*_db);
        try {
            for (auto table : {"settings", "users", "graphs", "comments", "embeddings", "interesting", "invariant_values",
                    "sessions", "reset_tokens", "meta_lists", "meta_entries", "sqlite_sequence"})
                _db->exec(std::string("DELETE FROM ") + table);

            for (const auto & row : parse_rows(parts["settings.jsonl"]))
                detail::write_setting(*_db, row.at("key").get<std::string>(), row.at("value").get<std::string>());
            if (detail::read_setting(*_db, "schema_version") != std::to_string(schema_version))
                throw Error(ErrorCode::version_mismatch, "archive was written with another schema version");

            auto users = _db->prepare("INSERT INTO users(id, login, digest, scheme, email, disabled, force_reset) VALUES(?, ?, ?, ?, ?, ?, ?)");
            for (const auto & row : parse_rows(parts["users.jsonl"])) {
                users.bind(1, row.at("id").get<std::int64_t>()).bind(2, row.at("login").get<std::string>())
                    .bind(3, row.at("digest").get<std::string>()).bind(4, row.at("scheme").get<std::string>())
                    .bind(5, row.at("email").get<std::string>()).bind(6, row.at("disabled").get<bool>() ? 1 : 0)
                    .bind(7, row.at("force_reset").get<bool>() ? 1 : 0);
                users.run();
            }

            auto keys = split_lines(parts["graphs.g6"]);
            auto rows = parse_rows(parts["graphs.jsonl"]);
            if (keys.size() != rows.size())
                corrupt("graph6 lines and graph rows disagree");
            auto graphs = _db->prepare("INSERT INTO graphs(id, canonical_key, algorithm_version, name, graph_order, graph_size, uploader, created_at) "
                    "VALUES(?, ?, ?, ?, ?, ?, ?, ?)");
            for (std::size_t i = 0 ; i < keys.size() ; ++i) {
                const auto & row = rows[i];
                auto g = from_graph6(keys[i]);
                graphs.bind(1, row.at("id").get<std::int64_t>()).bind(2, keys[i]).bind(3, row.at("algorithm_version").get<std::int64_t>())
                    .bind(4, optional_text(row.at("name"))).bind(5, g.order()).bind(6, g.size())
                    .bind(7, row.at("uploader").get<std::int64_t>()).bind(8, row.at("created_at").get<std::int64_t>());
                graphs.run();
            }

            auto comments = _db->prepare("INSERT INTO comments(id, graph_id, author, created_at, body) VALUES(?, ?, ?, ?, ?)");
            for (const auto & row : parse_rows(parts["comments.jsonl"])) {
                comments.bind(1, row.at("id").get<std::int64_t>()).bind(2, row.at("graph_id").get<std::int64_t>())
                    .bind(3, row.at("author").get<std::int64_t>()).bind(4, row.at("created_at").get<std::int64_t>())
                    .bind(5, row.at("body").get<std::string>());
                comments.run();
            }

            auto embeddings = _db->prepare("INSERT INTO embeddings(id, graph_id, author, created_at, positions) VALUES(?, ?, ?, ?, ?)");
            for (const auto & row : parse_rows(parts["embeddings.jsonl"])) {
                embeddings.bind(1, row.at("id").get<std::int64_t>()).bind(2, row.at("graph_id").get<std::int64_t>())
                    .bind(3, row.at("author").get<std::int64_t>()).bind(4, row.at("created_at").get<std::int64_t>())
                    .bind(5, row.at("positions").dump());
                embeddings.run();
            }

            auto marks = _db->prepare("INSERT INTO interesting(graph_id, invariant_id, author) VALUES(?, ?, ?)");
            for (const auto & row : parse_rows(parts["interesting.jsonl"])) {
                marks.bind(1, row.at("graph_id").get<std::int64_t>()).bind(2, row.at("invariant_id").get<std::string>())
                    .bind(3, row.at("author").get<std::int64_t>());
                marks.run();
            }

            auto values = _db->prepare("INSERT INTO invariant_values(graph_id, invariant_id, status, value, computed_at, engine_version) "
                    "VALUES(?, ?, ?, ?, ?, ?)");
            for (const auto & row : parse_rows(parts["invariant_values.jsonl"])) {
                values.bind(1, row.at("graph_id").get<std::int64_t>()).bind(2, row.at("invariant_id").get<std::string>())
                    .bind(3, row.at("status").get<std::string>()).bind(4, row.at("value").get<std::string>())
                    .bind(5, optional_int(row.at("computed_at"))).bind(6, row.at("engine_version").get<std::string>());
                values.run();
            }

            auto lists = _db->prepare("INSERT INTO meta_lists(family, description, generator) VALUES(?, ?, ?)");
            auto entries = _db->prepare("INSERT INTO meta_entries(family, graph_order, count, file) VALUES(?, ?, ?, ?)");
            for (const auto & row : parse_rows(parts["meta_lists.jsonl"])) {
                auto family = row.at("family").get<std::string>();
                lists.bind(1, family).bind(2, row.at("description").get<std::string>()).bind(3, optional_text(row.at("generator")));
                lists.run();
                for (const auto & e : row.at("entries")) {
                    entries.bind(1, family).bind(2, e.at("order").get<std::int64_t>()).bind(3, optional_int(e.at("count")))
                        .bind(4, optional_text(e.at("file")));
                    entries.run();
                }
            }

            _db->exec("DELETE FROM sqlite_sequence");
            auto sequences = _db->prepare("INSERT INTO sqlite_sequence(name, seq) VALUES(?, ?)");
            for (const auto & row : parse_rows(parts["sequences.jsonl"])) {
                sequences.bind(1, row.at("table").get<std::string>()).bind(2, row.at("seq").get<std::int64_t>());
                sequences.run();
            }
        }
        catch (const json::exception & e) {
            corrupt(e.what());
        }
        catch (const Error & e) {
            if (e.code() == ErrorCode::version_mismatch || e.code() == ErrorCode::corrupt_archive)
                throw;
            corrupt(e.what());
        }
        catch (const std::runtime_error & e) {
            corrupt(e.what());
        }
        tx.commit();
    }
}
