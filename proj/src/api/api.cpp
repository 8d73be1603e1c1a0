#include <graphhaus/api.hpp>
#include <graphhaus/error.hpp>
#include <graphhaus/formats.hpp>
#include <graphhaus/formula.hpp>

#include <httplib.h>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace graphhaus::api
{
    namespace
    {
        using nlohmann::json;
        using store::GraphId;
        using store::UserId;

        /// An Error raised while reading the index-th search constraint.
        class ConstraintError : public Error
        {
        public:
            ConstraintError(const Error & e, std::size_t index) :
                Error(e.code(), "constraint " + std::to_string(index) + ": " + e.what(), e.position()), _index(index) {}

            auto index() const -> std::size_t { return _index; }

        private:
            std::size_t _index;
        };

        auto json_response(int status, const json & body) -> Response
        {
            Response r;
            r.status = status;
            if (status != 204)
                r.body = body.dump();
            return r;
        }

        auto error_response(const Error & e) -> Response
        {
            json detail{{"code", to_string(e.code())}, {"message", e.what()}};
            if (e.position())
                detail["position"] = *e.position();
            if (auto c = dynamic_cast<const ConstraintError *>(&e))
                detail["constraint"] = c->index();
            return json_response(http_status(e.code()), {{"error", detail}});
        }

        auto parse_body(const Request & request) -> json
        {
            try {
                auto body = json::parse(request.body);
                if (! body.is_object())
                    throw Error(ErrorCode::parse_error, "request body must be a JSON object");
                return body;
            }
            catch (const json::parse_error & e) {
                throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
            }
        }

        auto required_string(const json & body, const char * key) -> std::string
        {
            auto it = body.find(key);
            if (it == body.end() || ! it->is_string())
                throw Error(ErrorCode::invalid_argument, std::string("field '") + key + "' must be a string");
            return it->get<std::string>();
        }

        auto optional_string(const json & body, const char * key) -> std::optional<std::string>
        {
            auto it = body.find(key);
            if (it == body.end() || it->is_null())
                return std::nullopt;
            if (! it->is_string())
                throw Error(ErrorCode::invalid_argument, std::string("field '") + key + "' must be a string");
            return it->get<std::string>();
        }

        auto parse_id(std::string_view text) -> std::optional<GraphId>
        {
            GraphId id = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
            if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || id < 1)
                return std::nullopt;
            return id;
        }

        auto require_id(std::string_view text) -> GraphId
        {
            auto id = parse_id(text);
            if (! id)
                throw Error(ErrorCode::not_found, "no resource '" + std::string(text) + "'");
            return *id;
        }

        auto split_path(std::string_view path) -> std::vector<std::string>
        {
            std::vector<std::string> parts;
            std::size_t start = 0;
            while (start <= path.size()) {
                auto end = path.find('/', start);
                if (end == std::string_view::npos)
                    end = path.size();
                if (end > start)
                    parts.emplace_back(path.substr(start, end - start));
                start = end + 1;
            }
            return parts;
        }

        auto parse_graph_field(const json & body) -> Graph
        {
            auto format = parse_format_name(required_string(body, "format"));
            return parse_graph(format, required_string(body, "data"));
        }

        auto rational_of(const json & j, const char * what) -> Rational
        {
            if (j.is_number_integer())
                return Rational(j.get<std::int64_t>());
            if (j.is_number_float())
                return parse_rational(j.dump());
            if (j.is_string())
                return parse_rational(j.get<std::string>());
            throw Error(ErrorCode::invalid_constraint, std::string(what) + " must be a number or a string such as \"5/2\"");
        }

        auto value_json(const invariants::InvariantValue & v) -> json
        {
            if (! v.is_computed())
                return nullptr;
            if (v.is_boolean())
                return v.as_bool();
            return v.value_text();
        }

        auto login_of(const store::Store & store, UserId id) -> json
        {
            auto account = store.user(id);
            return {{"id", id}, {"login", account ? account->login : "anonymous"}};
        }

        auto record_json(const store::Store & store, const store::GraphRecord & r) -> json
        {
            json comments = json::array();
            for (const auto & c : r.comments)
                comments.push_back({{"id", c.id}, {"author", login_of(store, c.author)}, {"created_at", c.created_at}, {"body", c.body}});
            json embeddings = json::array();
            for (const auto & e : r.embeddings) {
                json positions = json::array();
                for (auto [x, y] : e.embedding.positions)
                    positions.push_back({x, y});
                embeddings.push_back({{"id", e.id}, {"author", login_of(store, e.author)}, {"created_at", e.created_at},
                        {"positions", positions}});
            }
            json values = json::array();
            for (const auto & [id, stored] : r.values) {
                auto d = invariants::find(id);
                if (! d)
                    continue;
                json row{{"id", id}, {"name", d->display_name}, {"kind", to_string(d->kind)},
                    {"status", to_string(stored.value.status())}, {"value", value_json(stored.value)},
                    {"interesting", r.interesting.contains(id)}, {"engine_version", stored.engine_version}};
                row["computed_at"] = stored.computed_at ? json(*stored.computed_at) : json(nullptr);
                values.push_back(row);
            }
            return {
                {"id", r.id},
                {"name", r.name ? json(*r.name) : json(nullptr)},
                {"canonical_key", r.canonical_key.key},
                {"algorithm_version", r.canonical_key.algorithm_version},
                {"order", r.graph.order()},
                {"size", r.graph.size()},
                {"uploader", login_of(store, r.uploader)},
                {"created_at", r.created_at},
                {"comments", comments},
                {"embeddings", embeddings},
                {"interesting", r.interesting},
                {"invariants", values},
                {"exports", {{"graph6", to_graph6(r.graph)}, {"adjacency_matrix", to_adjacency_matrix(r.graph)},
                    {"edge_list", to_edge_list(r.graph)}}},
                {"related", {{"complement", r.complement_id ? json(*r.complement_id) : json(nullptr)},
                    {"line_graph", r.line_graph_id ? json(*r.line_graph_id) : json(nullptr)}}},
            };
        }

        auto meta_json(const store::MetaList & list) -> json
        {
            json entries = json::array();
            for (const auto & e : list.entries) {
                json row{{"order", e.order}, {"count_known", e.count.has_value()}};
                row["count"] = e.count ? json(*e.count) : json(nullptr);
                row["download"] = e.file ? json("/api/meta/" + list.family + "/" + std::to_string(e.order)) : json(nullptr);
                entries.push_back(row);
            }
            return {{"family", list.family}, {"description", list.description},
                {"generator", list.generator ? json(*list.generator) : json(nullptr)}, {"entries", entries}};
        }

        auto parse_constraint(const json & c) -> query::Constraint
        {
            if (! c.is_object())
                throw Error(ErrorCode::invalid_constraint, "a constraint must be an object");
            auto type = required_string(c, "type");
            if (type == "range") {
                query::InvariantRange r{required_string(c, "invariant"), std::nullopt, std::nullopt};
                if (c.contains("min") && ! c["min"].is_null())
                    r.min = rational_of(c["min"], "min");
                if (c.contains("max") && ! c["max"].is_null())
                    r.max = rational_of(c["max"], "max");
                return r;
            }
            if (type == "exact") {
                if (! c.contains("value"))
                    throw Error(ErrorCode::invalid_constraint, "an exact constraint needs a value");
                return query::InvariantExact{required_string(c, "invariant"), rational_of(c["value"], "value")};
            }
            if (type == "parity") {
                auto parity = required_string(c, "parity");
                if (parity != "even" && parity != "odd")
                    throw Error(ErrorCode::invalid_constraint, "parity must be \"even\" or \"odd\"");
                return query::InvariantParity{required_string(c, "invariant"), parity == "even" ? query::Parity::even : query::Parity::odd};
            }
            auto polarity = [&] {
                auto p = optional_string(c, "polarity").value_or("include");
                if (p != "include" && p != "exclude")
                    throw Error(ErrorCode::invalid_constraint, "polarity must be \"include\" or \"exclude\"");
                return p == "include" ? query::Polarity::include : query::Polarity::exclude;
            };
            if (type == "boolean")
                return query::BooleanClass{required_string(c, "invariant"), polarity()};
            if (type == "interesting")
                return query::InterestingMark{required_string(c, "invariant")};
            if (type == "text") {
                auto scope = optional_string(c, "scope").value_or("both");
                query::TextScope s = query::TextScope::both;
                if (scope == "name")
                    s = query::TextScope::name;
                else if (scope == "comment")
                    s = query::TextScope::comment;
                else if (scope != "both")
                    throw Error(ErrorCode::invalid_constraint, "scope must be \"name\", \"comment\" or \"both\"");
                return query::TextSearch{required_string(c, "text"), s};
            }
            if (type == "formula")
                return query::FormulaConstraint{query::parse_formula(required_string(c, "formula"))};
            if (type == "subgraph") {
                auto mode = subiso::parse_mode(optional_string(c, "mode").value_or("induced"));
                return query::SubgraphConstraint{parse_graph_field(c), mode, polarity()};
            }
            throw Error(ErrorCode::invalid_constraint, "unknown constraint type '" + type + "'");
        }

        auto html_shell(const std::string & static_dir) -> Response
        {
            Response r;
            r.content_type = "text/html; charset=utf-8";
            if (! static_dir.empty()) {
                std::ifstream in(std::filesystem::path(static_dir) / "index.html", std::ios::binary);
                if (in) {
                    std::ostringstream s;
                    s << in.rdbuf();
                    r.body = s.str();
                    return r;
                }
            }
            r.body = "<!doctype html><html><head><meta charset=\"utf-8\"><title>graphhaus</title></head>"
                "<body><div id=\"app\"></div><noscript>The graphhaus client needs JavaScript; "
                "the data is available under /api.</noscript></body></html>\n";
            return r;
        }
    }

    auto Request::header(const std::string & name) const -> std::optional<std::string>
    {
        for (const auto & [k, v] : headers) {
            if (k.size() == name.size() && std::equal(k.begin(), k.end(), name.begin(), [] (char a, char b) {
                    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
                }))
                return v;
        }
        return std::nullopt;
    }

    auto http_status(ErrorCode code) -> int
    {
        switch (code) {
            case ErrorCode::not_found: return 404;
            case ErrorCode::unauthenticated:
            case ErrorCode::invalid_credentials:
            case ErrorCode::account_disabled: return 401;
            case ErrorCode::cannot_delete_anonymous: return 403;
            case ErrorCode::name_taken: return 409;
            case ErrorCode::reset_required: return 423;
            case ErrorCode::rate_limited: return 429;
            case ErrorCode::shutting_down: return 503;
            default: return 400;
        }
    }

    auto parse_search_query(const std::string & body) -> query::SearchQuery
    {
        Request r;
        r.body = body;
        auto j = parse_body(r);
        query::SearchQuery q;
        if (auto it = j.find("time_budget") ; it != j.end()) {
            if (! it->is_number())
                throw Error(ErrorCode::budget_out_of_range, "time_budget must be a number of seconds");
            q.time_budget = std::chrono::duration_cast<Duration>(std::chrono::duration<double>(it->get<double>()));
        }
        auto it = j.find("constraints");
        if (it == j.end() || ! it->is_array())
            throw Error(ErrorCode::invalid_constraint, "constraints must be an array");
        for (std::size_t i = 0 ; i < it->size() ; ++i) {
            try {
                q.constraints.push_back(parse_constraint((*it)[i]));
            }
            catch (const Error & e) {
                throw ConstraintError(e, i);
            }
            catch (const json::exception & e) {
                throw ConstraintError(Error(ErrorCode::invalid_constraint, e.what()), i);
            }
        }
        try {
            query::validate(q);
        }
        catch (const Error & e) {
            if (e.code() == ErrorCode::budget_out_of_range)
                throw;
            for (std::size_t i = 0 ; i < q.constraints.size() ; ++i) {
                query::SearchQuery single{{q.constraints[i]}, query::default_time_budget};
                try {
                    query::validate(single);
                }
                catch (const Error & inner) {
                    throw ConstraintError(inner, i);
                }
            }
            throw;
        }
        return q;
    }

    Api::Api(store::Store & store, ApiOptions options) : _store(store), _options(std::move(options)) {}

    auto Api::session(const Request & request) const -> UserId
    {
        auto header = request.header("Authorization");
        constexpr std::string_view prefix = "Bearer ";
        if (! header || header->compare(0, prefix.size(), prefix) != 0)
            throw Error(ErrorCode::unauthenticated, "a bearer session token is required");
        auto user = _store.session_user(header->substr(prefix.size()));
        if (! user)
            throw Error(ErrorCode::unauthenticated, "the session is invalid or expired");
        return *user;
    }

    auto Api::handle(const Request & request) -> Response
    {
        try {
            return route(request);
        }
        catch (const Error & e) {
            return error_response(e);
        }
        catch (const json::exception & e) {
            return error_response(Error(ErrorCode::invalid_argument, e.what()));
        }
        catch (const std::exception & e) {
            return json_response(500, {{"error", {{"code", "internal"}, {"message", e.what()}}}});
        }
    }

    auto Api::route(const Request & request) -> Response
    {
        const auto & method = request.method;
        auto parts = split_path(request.path);
        auto is = [&] (std::string_view m, std::initializer_list<std::string_view> shape) {
            if (method != m || parts.size() != shape.size())
                return false;
            std::size_t i = 0;
            for (auto s : shape) {
                if (s != "*" && parts[i] != s)
                    return false;
                ++i;
            }
            return true;
        };

        if (is("GET", {"ViewGraphInfo.action"})) {
            auto it = request.query.find("id");
            if (it == request.query.end() || ! parse_id(it->second))
                throw Error(ErrorCode::invalid_argument, "the legacy id must be a positive integer");
            Response r;
            r.status = 301;
            r.content_type = "text/plain";
            r.headers["Location"] = "/graphs/" + std::to_string(*parse_id(it->second));
            return r;
        }
        if (is("GET", {}) || is("GET", {"graphs", "*"}) || is("GET", {"search"}) || is("GET", {"formula"}) || is("GET", {"draw"}))
            return html_shell(_options.static_dir);

        if (parts.empty() || parts[0] != "api")
            throw Error(ErrorCode::not_found, "no route for " + method + " " + request.path);

        if (is("GET", {"api", "health"}))
            return json_response(200, {{"status", "ok"}, {"graphs", _store.graph_count()},
                    {"algorithm_version", _store.algorithm_version()}});

        if (is("GET", {"api", "invariants"})) {
            json list = json::array();
            for (const auto & d : invariants::full_registry())
                list.push_back({{"id", d.id}, {"name", d.display_name}, {"kind", to_string(d.kind)},
                        {"hardness", to_string(d.hardness)}, {"numerical", d.numerical()}, {"extended", d.extended},
                        {"scheduled", ! d.extended || _store.options().include_extended_invariants}});
            json unsupported = json::array();
            for (auto id : invariants::unsupported_ids())
                unsupported.push_back(id);
            return json_response(200, {{"invariants", list}, {"unsupported", unsupported}});
        }

        if (is("POST", {"api", "graphs"})) {
            auto user = session(request);
            auto body = parse_body(request);
            store::InsertRequest insert;
            insert.graph = parse_graph_field(body);
            insert.uploader = user;
            insert.comment = optional_string(body, "comment").value_or("");
            insert.name = optional_string(body, "name");
            if (auto it = body.find("interesting_invariants") ; it != body.end() && ! it->is_null())
                for (const auto & id : *it)
                    insert.interesting.insert(id.get<std::string>());
            if (auto existing = _store.find_isomorph(insert.graph))
                return json_response(409, {{"existing_id", *existing}});

            const Clock & clock = _options.clock ? *_options.clock : SteadyClock::instance();
            std::lock_guard lock(_throttle_mutex);
            auto now = clock.now();
            if (_options.rate_limit.count() > 0) {
                auto it = _last_submission.find(user);
                if (it != _last_submission.end() && now - it->second < _options.rate_limit) {
                    auto wait = std::chrono::duration_cast<std::chrono::seconds>(_options.rate_limit - (now - it->second)).count() + 1;
                    auto r = error_response(Error(ErrorCode::rate_limited, "one graph per "
                                + std::to_string(_options.rate_limit.count()) + " seconds"));
                    r.headers["Retry-After"] = std::to_string(wait);
                    return r;
                }
            }
            auto outcome = _store.insert_graph(insert);
            if (! outcome.inserted())
                return json_response(409, {{"existing_id", outcome.id}});
            _last_submission[user] = now;
            if (_options.on_inserted)
                _options.on_inserted(outcome.id);
            return json_response(201, {{"id", outcome.id}});
        }

        if (is("POST", {"api", "graphs", "search"})) {
            auto q = parse_search_query(request.body);
            auto result = query::execute_search(q, _store);
            return json_response(200, {{"ids", result.ids}, {"complete", result.complete}, {"scanned", result.scanned}});
        }

        if (is("POST", {"api", "graphs", "lookup"})) {
            auto body = parse_body(request);
            auto id = _store.find_isomorph(parse_graph_field(body));
            if (! id)
                throw Error(ErrorCode::not_found, "no isomorphic graph is stored");
            return json_response(200, {{"id", *id}});
        }

        if (is("GET", {"api", "graphs", "*"}))
            return json_response(200, record_json(_store, _store.get_record(require_id(parts[2]))));

        if (is("POST", {"api", "graphs", "*", "comments"})) {
            auto user = session(request);
            auto body = parse_body(request);
            auto id = _store.add_comment(require_id(parts[2]), user, required_string(body, "body"));
            return json_response(201, {{"id", id}});
        }

        if (is("DELETE", {"api", "comments", "*"})) {
            auto user = session(request);
            _store.delete_comment(require_id(parts[2]), user);
            return json_response(204, nullptr);
        }

        if (is("POST", {"api", "graphs", "*", "embeddings"})) {
            auto user = session(request);
            auto body = parse_body(request);
            for (const auto & [key, value] : body.items())
                if (key != "positions")
                    throw Error(ErrorCode::invalid_argument, "embeddings carry vertex positions only; unexpected field '" + key + "'");
            auto it = body.find("positions");
            if (it == body.end() || ! it->is_array())
                throw Error(ErrorCode::invalid_argument, "positions must be an array of [x, y] pairs");
            std::vector<std::pair<double, double>> positions;
            for (const auto & p : *it) {
                if (! p.is_array() || p.size() != 2 || ! p[0].is_number() || ! p[1].is_number())
                    throw Error(ErrorCode::invalid_argument, "positions must be an array of [x, y] pairs");
                positions.emplace_back(p[0].get<double>(), p[1].get<double>());
            }
            auto id = _store.add_embedding(require_id(parts[2]), user, positions);
            return json_response(201, {{"id", id}});
        }

        if (is("POST", {"api", "graphs", "*", "interesting"})) {
            auto user = session(request);
            auto body = parse_body(request);
            _store.mark_interesting(require_id(parts[2]), user, required_string(body, "invariant"));
            return json_response(201, {{"invariant", body["invariant"]}});
        }

        if (is("POST", {"api", "register"})) {
            auto body = parse_body(request);
            auto id = _store.register_user(required_string(body, "login"), required_string(body, "password"),
                    optional_string(body, "email").value_or(""));
            return json_response(201, {{"id", id}});
        }

        if (is("POST", {"api", "login"})) {
            auto body = parse_body(request);
            auto id = _store.authenticate(required_string(body, "login"), required_string(body, "password"));
            auto token = _store.create_session(id);
            return json_response(200, {{"token", token}, {"user_id", id}, {"expires_in", store::session_lifetime_seconds}});
        }

        if (is("POST", {"api", "password-reset"})) {
            auto body = parse_body(request);
            auto login = required_string(body, "login");
            if (auto token = _store.request_password_reset(login) ; token && _options.mailer)
                _options.mailer(login, *token);
            return json_response(202, {{"status", "if the account exists, a reset token has been sent"}});
        }

        if (is("POST", {"api", "password-reset", "confirm"})) {
            auto body = parse_body(request);
            _store.reset_password(required_string(body, "token"), required_string(body, "password"));
            return json_response(200, {{"status", "password updated"}});
        }

        if (is("DELETE", {"api", "users", "me"})) {
            _store.delete_user(session(request));
            return json_response(204, nullptr);
        }

        if (is("GET", {"api", "meta"}))
            return json_response(200, {{"families", _store.meta_families()}});

        if (is("GET", {"api", "meta", "*"}))
            return json_response(200, meta_json(_store.get_meta_list(parts[2])));

        if (is("GET", {"api", "meta", "*", "*"})) {
            auto list = _store.get_meta_list(parts[2]);
            auto order = require_id(parts[3]);
            for (const auto & e : list.entries) {
                if (e.order != order || ! e.file)
                    continue;
                std::filesystem::path path(*e.file);
                if (path.is_relative() && ! _options.list_dir.empty())
                    path = std::filesystem::path(_options.list_dir) / path;
                std::ifstream in(path, std::ios::binary);
                if (! in)
                    throw Error(ErrorCode::not_found, "the list file for order " + std::to_string(order) + " is missing");
                std::ostringstream s;
                s << in.rdbuf();
                Response r;
                r.content_type = "text/plain; charset=utf-8";
                r.headers["Content-Disposition"] = "attachment; filename=\"" + parts[2] + "-" + std::to_string(order) + ".g6\"";
                r.body = s.str();
                return r;
            }
            throw Error(ErrorCode::not_found, "no downloadable list for order " + std::to_string(order));
        }

        throw Error(ErrorCode::not_found, "no route for " + method + " " + request.path);
    }

    struct Service::Http
    {
        httplib::Server server;
        std::thread thread;
    };

    auto compute_job(const store::Store & store, const scheduler::Job & job, const Deadline & deadline) -> invariants::InvariantValue
    {
        return invariants::compute(job.invariant, store.graph(job.graph), deadline);
    }

    Service::Service(store::Store & store, scheduler::SchedulerConfig config, ApiOptions options) :
        _store(store), _http(std::make_unique<Http>())
    {
        _pool = std::make_unique<scheduler::WorkerPool>(std::move(config),
                [this] (const scheduler::Job & job, const Deadline & deadline) { return compute_job(_store, job, deadline); },
                [this] (const scheduler::Job & job, const invariants::InvariantValue & value) {
                    _store.set_value(job.graph, job.invariant, value);
                });
        auto forward = options.on_inserted;
        options.on_inserted = [this, forward] (store::GraphId id) {
            schedule_graph(id);
            if (forward)
                forward(id);
        };
        _api = std::make_unique<Api>(_store, std::move(options));

        auto handler = [this] (const httplib::Request & in, httplib::Response & out) {
            Request request;
            request.method = in.method;
            request.path = in.path;
            for (const auto & [k, v] : in.params)
                request.query.emplace(k, v);
            for (const auto & [k, v] : in.headers)
                request.headers.emplace(k, v);
            request.body = in.body;
            auto response = _api->handle(request);
            out.status = response.status;
            for (const auto & [k, v] : response.headers)
                out.set_header(k, v);
            if (! response.body.empty())
                out.set_content(response.body, response.content_type);
        };
        _http->server.set_socket_options([] (socket_t sock) {
            int yes = 1;
            ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void *>(&yes), sizeof(yes));
        });
        _http->server.Get(".*", handler);
        _http->server.Post(".*", handler);
        _http->server.Put(".*", handler);
        _http->server.Delete(".*", handler);
        _http->server.Patch(".*", handler);
    }

    Service::~Service()
    {
        stop();
    }

    auto Service::resume_pending() -> std::size_t
    {
        std::size_t submitted = 0;
        for (const auto & job : _store.jobs_with_status({invariants::Status::pending}))
            if (_pool->submit({job.graph, job.invariant}) == scheduler::SubmitResult::accepted)
                ++submitted;
        return submitted;
    }

    auto Service::schedule_graph(store::GraphId id) -> void
    {
        for (const auto & [invariant, stored] : _store.values(id))
            if (stored.value.status() == invariants::Status::pending)
                _pool->submit({id, invariant});
    }

    auto Service::listen(const std::string & host, int port) -> void
    {
        if (! _http->server.bind_to_port(host, port))
            throw Error(ErrorCode::invalid_argument, "cannot listen on " + host + ":" + std::to_string(port));
        _http->server.listen_after_bind();
    }

    auto Service::start_background(const std::string & host) -> int
    {
        int port = _http->server.bind_to_any_port(host);
        if (port < 0)
            throw Error(ErrorCode::invalid_argument, "cannot listen on " + host);
        _http->thread = std::thread([this] { _http->server.listen_after_bind(); });
        _http->server.wait_until_ready();
        return port;
    }

    auto Service::stop() -> void
    {
        _http->server.stop();
        if (_http->thread.joinable())
            _http->thread.join();
        _pool->shutdown();
    }
}
