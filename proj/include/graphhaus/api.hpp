#ifndef GRAPHHAUS_API_HPP
#define GRAPHHAUS_API_HPP

#include <graphhaus/error.hpp>
#include <graphhaus/scheduler.hpp>
#include <graphhaus/store.hpp>

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace graphhaus::api
{
    struct Request
    {
        std::string method;
        std::string path;
        std::map<std::string, std::string> query;
        std::map<std::string, std::string> headers;
        std::string body;

        auto header(const std::string & name) const -> std::optional<std::string>;
    };

    struct Response
    {
        int status = 200;
        std::string content_type = "application/json";
        std::map<std::string, std::string> headers;
        std::string body;
    };

    struct ApiOptions
    {
        /// Minimum seconds between two graph submissions by one account;
        /// zero disables the throttle.
        std::chrono::seconds rate_limit{10};
        /// Receives (login, token) for password resets; delivery is stubbed.
        std::function<void(const std::string &, const std::string &)> mailer;
        /// Called after each successful insert, to schedule invariant jobs.
        std::function<void(store::GraphId)> on_inserted;
        /// Directory holding the browser client's index.html, if any.
        std::string static_dir;
        /// Directory that relative meta-list file references resolve against.
        std::string list_dir;
        /// Clock for the submission throttle; defaults to steady time.
        const Clock * clock = nullptr;
    };

    /// HTTP status for an Error code.
    auto http_status(ErrorCode code) -> int;

    /// Parses the JSON search body used by POST /api/graphs/search. Throws
    /// Error(invalid_constraint) and the query module's parse errors.
    auto parse_search_query(const std::string & body) -> query::SearchQuery;

    /// Transport-independent request handler for every route.
    class Api
    {
    public:
        Api(store::Store & store, ApiOptions options = {});

        auto handle(const Request & request) -> Response;

    private:
        auto route(const Request & request) -> Response;
        auto session(const Request & request) const -> store::UserId;

        store::Store & _store;
        ApiOptions _options;
        std::mutex _throttle_mutex;
        std::map<store::UserId, TimePoint> _last_submission;
    };

    /// Store, scheduler and HTTP listener wired together.
    class Service
    {
    public:
        Service(store::Store & store, scheduler::SchedulerConfig config, ApiOptions options = {});
        ~Service();

        /// Submits every pending (graph, invariant) pair; returns how many.
        auto resume_pending() -> std::size_t;
        /// Submits jobs for all scheduled invariants of one graph.
        auto schedule_graph(store::GraphId id) -> void;

        auto api() -> Api & { return *_api; }
        auto pool() -> scheduler::WorkerPool & { return *_pool; }

        /// Binds and serves until stop(). Throws Error(invalid_argument)
        /// naming the address when the port cannot be bound.
        auto listen(const std::string & host, int port) -> void;
        /// Binds to an ephemeral port and serves on a background thread.
        auto start_background(const std::string & host) -> int;
        auto stop() -> void;

    private:
        struct Http;

        store::Store & _store;
        std::unique_ptr<scheduler::WorkerPool> _pool;
        std::unique_ptr<Api> _api;
        std::unique_ptr<Http> _http;
    };

    /// Computes one invariant of a stored graph under a deadline.
    auto compute_job(const store::Store & store, const scheduler::Job & job, const Deadline & deadline) -> invariants::InvariantValue;
}

#endif
