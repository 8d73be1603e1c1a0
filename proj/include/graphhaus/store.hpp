#ifndef GRAPHHAUS_STORE_HPP
#define GRAPHHAUS_STORE_HPP

#include <graphhaus/canon.hpp>
#include <graphhaus/graph.hpp>
#include <graphhaus/invariants.hpp>
#include <graphhaus/search.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace graphhaus::store
{
    using GraphId = std::int64_t;
    using UserId = std::int64_t;

    inline constexpr UserId anonymous_user = 1;
    inline constexpr int schema_version = 1;
    inline constexpr std::int64_t session_lifetime_seconds = 30LL * 24 * 3600;
    inline constexpr std::int64_t reset_token_lifetime_seconds = 3600;

    struct Comment
    {
        std::int64_t id = 0;
        UserId author = 0;
        std::int64_t created_at = 0;
        std::string body;

        auto operator==(const Comment &) const -> bool = default;
    };

    struct StoredEmbedding
    {
        std::int64_t id = 0;
        UserId author = 0;
        std::int64_t created_at = 0;
        Embedding embedding;
    };

    struct StoredValue
    {
        invariants::InvariantValue value;
        std::optional<std::int64_t> computed_at;
        std::string engine_version;
    };

    /// Graphs are kept in their canonical labelling, so `graph` is the
    /// decoded canonical key and embedding positions index canonical labels.
    struct GraphRecord
    {
        GraphId id = 0;
        Graph graph = Graph::edgeless(1);
        canon::CanonicalKey canonical_key;
        std::optional<std::string> name;
        UserId uploader = 0;
        std::int64_t created_at = 0;
        std::vector<Comment> comments;
        std::vector<StoredEmbedding> embeddings;
        std::set<std::string, std::less<>> interesting;
        std::map<std::string, StoredValue, std::less<>> values;
        std::optional<GraphId> complement_id;
        std::optional<GraphId> line_graph_id;
    };

    struct InsertRequest
    {
        Graph graph = Graph::edgeless(1);
        UserId uploader = 0;
        std::string comment;
        std::optional<std::string> name;
        std::set<std::string> interesting;
        /// Fixture seeding only: must exceed every id ever assigned.
        std::optional<GraphId> id;
    };

    struct InsertOutcome
    {
        enum class Kind { inserted, duplicate };
        Kind kind = Kind::inserted;
        GraphId id = 0;

        auto inserted() const -> bool { return kind == Kind::inserted; }
    };

    struct UserAccount
    {
        UserId id = 0;
        std::string login;
        std::string digest;
        std::string scheme;
        std::string email;
        bool disabled = false;
        bool force_reset = false;
    };

    struct MetaEntry
    {
        int order = 0;
        std::optional<std::int64_t> count;
        std::optional<std::string> file;

        auto operator==(const MetaEntry &) const -> bool = default;
    };

    struct MetaList
    {
        std::string family;
        std::string description;
        std::optional<std::string> generator;
        std::vector<MetaEntry> entries;

        auto operator==(const MetaList &) const -> bool = default;
    };

    struct PasswordCost
    {
        unsigned long long ops_limit;
        std::size_t mem_limit;

        static auto interactive() -> PasswordCost;
        /// Smallest limits libsodium accepts; for tests and fixtures.
        static auto minimal() -> PasswordCost;
    };

    struct StoreOptions
    {
        canon::Variant variant = canon::current_variant;
        PasswordCost password_cost = PasswordCost::interactive();
        bool include_extended_invariants = false;
        /// Wall-clock seconds for timestamps; defaults to system time.
        std::function<std::int64_t()> now;
    };

    struct PendingJob
    {
        GraphId graph = 0;
        std::string invariant;

        auto operator<=>(const PendingJob &) const = default;
    };

    namespace sql
    {
        class Database;
    }

    class Store : public query::SearchSource
    {
    public:
        /// Opens or creates a store file; ":memory:" gives a private
        /// in-memory store. Throws version_mismatch for a different schema
        /// version. Inserting into a store whose keys were written by another
        /// canonical algorithm version also throws version_mismatch until
        /// rekey() has run.
        explicit Store(const std::string & path, StoreOptions options = {});
        ~Store() override;

        Store(const Store &) = delete;
        Store & operator=(const Store &) = delete;

        auto options() const -> const StoreOptions & { return _options; }
        auto algorithm_version() const -> int;

        // graphs
        auto insert_graph(const InsertRequest & request) -> InsertOutcome;
        auto get_record(GraphId id) const -> GraphRecord;
        auto find_by_key(const std::string & key) const -> std::optional<GraphId>;
        auto find_isomorph(const Graph & g) const -> std::optional<GraphId>;
        auto graph_count() const -> std::int64_t;
        auto graph_ids() const -> std::vector<GraphId>;

        auto add_comment(GraphId id, UserId author, const std::string & body) -> std::int64_t;
        /// Authors may delete their own comments, except a record's last one.
        auto delete_comment(std::int64_t comment_id, UserId requester) -> void;
        auto add_embedding(GraphId id, UserId author, const std::vector<std::pair<double, double>> & positions) -> std::int64_t;
        auto mark_interesting(GraphId id, UserId author, const std::string & invariant) -> void;

        // invariant values
        auto set_value(GraphId id, const std::string & invariant, const invariants::InvariantValue & value) -> void;
        auto values(GraphId id) const -> std::map<std::string, StoredValue, std::less<>>;
        auto jobs_with_status(const std::set<invariants::Status> & statuses,
                const std::optional<std::string> & invariant = std::nullopt) const -> std::vector<PendingJob>;

        // users
        auto register_user(const std::string & login, const std::string & password, const std::string & email) -> UserId;
        /// Imports an account whose digest uses a retired scheme. Such
        /// accounts cannot log in until they complete a password reset.
        auto import_legacy_user(const std::string & login, const std::string & digest, const std::string & scheme,
                const std::string & email) -> UserId;
        auto authenticate(const std::string & login, const std::string & password) const -> UserId;
        auto user(UserId id) const -> std::optional<UserAccount>;
        auto find_user(const std::string & login) const -> std::optional<UserAccount>;
        auto user_count() const -> std::int64_t;
        auto delete_user(UserId id) -> void;
        auto create_session(UserId id) -> std::string;
        auto session_user(const std::string & token) const -> std::optional<UserId>;
        auto request_password_reset(const std::string & login) -> std::optional<std::string>;
        auto reset_password(const std::string & token, const std::string & new_password) -> void;

        // meta directory
        auto upsert_meta_list(const MetaList & list) -> void;
        auto get_meta_list(const std::string & family) const -> MetaList;
        auto meta_families() const -> std::vector<std::string>;

        // audits and maintenance
        auto stability_records() const -> std::vector<canon::StabilityRecord>;
        /// Recomputes every key with the store's variant, relabelling stored
        /// graphs and embeddings, and stamps the new algorithm version.
        auto rekey() -> std::size_t;

        // backup
        auto dump(std::ostream & out) const -> void;
        auto dump_to_string() const -> std::string;
        /// Replaces the contents with an archive. The store must be empty
        /// (no graphs, no accounts besides the anonymous one) unless forced.
        auto restore(std::istream & in, bool force = false) -> void;

        // query::SearchSource
        auto entries() const -> std::vector<query::GraphEntry> override;
        auto graph(GraphId id) const -> Graph override;

    private:
        auto now() const -> std::int64_t;
        auto require_user(UserId id) const -> void;
        auto require_graph(GraphId id) const -> void;
        auto initialise() -> void;

        StoreOptions _options;
        std::unique_ptr<sql::Database> _db;
        mutable std::recursive_mutex _mutex;
    };

    /// Archive container helpers, exposed for tests.
    namespace archive
    {
        inline constexpr std::string_view magic = "graphhaus-archive 1";

        struct Entry
        {
            std::string name;
            std::string content;
        };

        struct Archive
        {
            int algorithm_version = 0;
            std::vector<Entry> entries;
        };

        /// Writes the entries followed by a manifest.json entry recording the
        /// algorithm version and each entry's size and sha256.
        auto write(std::ostream & out, const Archive & archive) -> void;
        /// Throws corrupt_archive on any framing or checksum failure.
        auto read(std::istream & in) -> Archive;
        auto sha256_hex(std::string_view data) -> std::string;
    }
}

#endif
