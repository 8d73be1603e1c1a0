#include "cli.hpp"

#include <graphhaus/canon.hpp>
#include <graphhaus/error.hpp>
#include <graphhaus/formats.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <pthread.h>
#include <sys/file.h>
#include <unistd.h>

namespace graphhaus::cli
{
    namespace
    {
        namespace fs = std::filesystem;
        using nlohmann::json;

        /// Advisory exclusive lock on "<store>.lock", held for one command.
        class StoreLock
        {
        public:
            explicit StoreLock(const std::string & store)
            {
                if (store == ":memory:")
                    return;
                auto path = store + ".lock";
                _fd = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
                if (_fd < 0)
                    throw Error(ErrorCode::invalid_argument, "cannot open lock file " + path);
                if (::flock(_fd, LOCK_EX | LOCK_NB) != 0) {
                    ::close(_fd);
                    throw Error(ErrorCode::invalid_argument, "the store " + store + " is locked by another command");
                }
            }

            ~StoreLock()
            {
                if (_fd >= 0)
                    ::close(_fd);
            }

            StoreLock(const StoreLock &) = delete;
            StoreLock & operator=(const StoreLock &) = delete;

        private:
            int _fd = -1;
        };

        auto exit_code(ErrorCode code) -> int
        {
            switch (code) {
                case ErrorCode::malformed_line:
                case ErrorCode::corrupt_archive:
                case ErrorCode::version_mismatch:
                    return data_error;
                default:
                    return user_error;
            }
        }

        auto parse_budget(const std::string & text) -> Duration
        {
            double seconds = 0;
            std::size_t used = 0;
            try {
                seconds = std::stod(text, &used);
            }
            catch (const std::exception &) {
                used = 0;
            }
            auto unit = text.substr(used);
            if (used == 0 || ! (unit.empty() || unit == "s" || unit == "ms") || seconds <= 0)
                throw Error(ErrorCode::budget_out_of_range, "budget must be a positive number of seconds, e.g. 300, 0.5 or 1ms");
            if (unit == "ms")
                seconds /= 1000;
            return std::chrono::duration_cast<Duration>(std::chrono::duration<double>(seconds));
        }

        struct Options
        {
            std::string config;
            std::string store;
            std::string budget;
            bool force = false;

            std::string family;
            int order = 0;
            std::string file;
            std::string count;
            std::string description;
            std::string generator;

            std::string invariant;
            std::string path;
        };

        auto resolve_config(const Options & o, bool required) -> std::optional<Config>
        {
            std::string path = o.config;
            if (path.empty())
                if (auto env = std::getenv("GRAPHHAUS_CONFIG"))
                    path = env;
            if (path.empty()) {
                if (required)
                    throw Error(ErrorCode::invalid_argument, "no config given: pass --config or set GRAPHHAUS_CONFIG");
                return std::nullopt;
            }
            return load_config(path);
        }

        auto store_path(const Options & o, const std::optional<Config> & config) -> std::string
        {
            if (! o.store.empty())
                return o.store;
            if (config && ! config->store.empty())
                return config->store;
            throw Error(ErrorCode::invalid_argument, "no store given: pass --store or set \"store\" in the config");
        }

        auto store_options(const std::optional<Config> & config) -> store::StoreOptions
        {
            store::StoreOptions options;
            if (config)
                options.include_extended_invariants = config->extended_invariants;
            return options;
        }

        auto cmd_serve(const Options & o, std::ostream & out) -> int
        {
            auto config = *resolve_config(o, true);
            auto path = store_path(o, config);
            store::Store store(path, store_options(config));

            sigset_t signals, previous;
            sigemptyset(&signals);
            sigaddset(&signals, SIGINT);
            sigaddset(&signals, SIGTERM);
            pthread_sigmask(SIG_BLOCK, &signals, &previous);

            int status = success;
            {
                api::Service service(store, config.scheduler, config.api);
                std::thread waiter([&] {
                    int signal = 0;
                    sigwait(&signals, &signal);
                    service.stop();
                });
                try {
                    auto resumed = service.resume_pending();
                    out << "store " << path << ": " << store.graph_count() << " graphs, " << resumed << " pending jobs resumed\n";
                    out << "starting http server on " << config.host << ":" << config.port << "\n" << std::flush;
                    service.listen(config.host, config.port);
                }
                catch (...) {
                    pthread_kill(waiter.native_handle(), SIGTERM);
                    waiter.join();
                    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
                    throw;
                }
                pthread_kill(waiter.native_handle(), SIGTERM);
                waiter.join();
            }
            pthread_sigmask(SIG_SETMASK, &previous, nullptr);
            return status;
        }

        auto cmd_import_list(const Options & o, std::ostream & out) -> int
        {
            auto config = resolve_config(o, false);
            auto path = store_path(o, config);
            StoreLock lock(path);
            store::Store store(path, store_options(config));

            store::MetaEntry entry{o.order, std::nullopt, std::nullopt};
            bool unknown = o.count == "unknown";
            if (! unknown && ! o.count.empty()) {
                std::size_t used = 0;
                long long n = -1;
                try {
                    n = std::stoll(o.count, &used);
                }
                catch (const std::exception &) {
                    used = 0;
                }
                if (used != o.count.size() || used == 0)
                    throw Error(ErrorCode::invalid_argument, "--count takes a number or \"unknown\"");
                if (n < 0)
                    throw Error(ErrorCode::negative_count, "--count must not be negative");
                entry.count = n;
            }
            if (! unknown && ! o.file.empty()) {
                std::ifstream in(o.file, std::ios::binary);
                if (! in)
                    throw Error(ErrorCode::invalid_argument, "cannot read " + o.file);
                std::string line;
                std::size_t lineno = 0;
                std::int64_t lines = 0;
                while (std::getline(in, line)) {
                    ++lineno;
                    if (! line.empty() && line.back() == '\r')
                        line.pop_back();
                    try {
                        auto g = from_graph6(line);
                        if (g.order() != o.order)
                            throw Error(ErrorCode::malformed_line, "graph has order " + std::to_string(g.order())
                                    + ", expected " + std::to_string(o.order));
                    }
                    catch (const Error & e) {
                        throw Error(ErrorCode::malformed_line, "line " + std::to_string(lineno) + ": " + e.what(), lineno);
                    }
                    ++lines;
                }
                if (! entry.count)
                    entry.count = lines;
                entry.file = fs::absolute(o.file).lexically_normal().string();
            }
            else if (o.file.empty() && ! unknown && o.count.empty())
                throw Error(ErrorCode::invalid_argument, "give a graph6 file, --count N, or --count unknown");

            store::MetaList list{o.family, o.description, std::nullopt, {}};
            try {
                list = store.get_meta_list(o.family);
                if (! o.description.empty())
                    list.description = o.description;
            }
            catch (const Error & e) {
                if (e.code() != ErrorCode::not_found)
                    throw;
            }
            if (! o.generator.empty())
                list.generator = o.generator;
            std::erase_if(list.entries, [&] (const store::MetaEntry & e) { return e.order == o.order; });
            list.entries.push_back(entry);
            std::ranges::sort(list.entries, {}, &store::MetaEntry::order);
            store.upsert_meta_list(list);

            out << o.family << " order " << o.order << ": ";
            if (entry.count)
                out << *entry.count << " graphs";
            else
                out << "count unknown";
            out << (entry.file ? ", list file " + *entry.file : ", no list file") << "\n";
            return success;
        }

        auto cmd_recompute(const Options & o, std::ostream & out) -> int
        {
            auto config = resolve_config(o, false);
            std::optional<std::string> invariant;
            if (o.invariant != "all") {
                auto d = invariants::find(o.invariant);
                if (! d)
                    throw Error(ErrorCode::unknown_invariant, "unknown invariant '" + o.invariant + "'");
                invariant = d->id;
            }
            auto path = store_path(o, config);
            StoreLock lock(path);
            store::Store store(path, store_options(config));

            auto scheduler = config ? config->scheduler : scheduler::SchedulerConfig{};
            if (! o.budget.empty())
                scheduler.levels = {parse_budget(o.budget)};

            auto jobs = store.jobs_with_status({invariants::Status::pending, invariants::Status::timed_out}, invariant);
            std::mutex m;
            std::map<invariants::Status, std::size_t> outcomes;
            {
                scheduler::WorkerPool pool(scheduler,
                        [&] (const scheduler::Job & job, const Deadline & deadline) { return api::compute_job(store, job, deadline); },
                        [&] (const scheduler::Job & job, const invariants::InvariantValue & value) {
                            store.set_value(job.graph, job.invariant, value);
                            std::lock_guard guard(m);
                            ++outcomes[value.status()];
                        });
                for (const auto & job : jobs)
                    pool.submit({job.graph, job.invariant});
                pool.wait_idle();
            }
            out << "recomputed " << jobs.size() << " values";
            for (const auto & [status, n] : outcomes)
                out << ", " << n << " " << invariants::to_string(status);
            out << "\n";
            return success;
        }

        auto cmd_audit(const Options & o, std::ostream & out) -> int
        {
            auto config = resolve_config(o, false);
            auto path = store_path(o, config);
            StoreLock lock(path);
            store::Store store(path, store_options(config));

            canon::StabilityAudit audit;
            for (const auto & record : store.stability_records())
                audit.check(record);
            const auto & report = audit.report();
            for (const auto & m : report.mismatches)
                out << "mismatch: graph " << m.id << " stored " << m.stored.key << " (v" << m.stored.algorithm_version
                    << ") recomputed " << m.recomputed.key << " (v" << m.recomputed.algorithm_version << ")\n";
            out << "checked " << report.checked << " graphs, " << report.mismatches.size() << " mismatches\n";
            return report.ok() ? success : data_error;
        }

        auto cmd_dump(const Options & o, std::ostream & out) -> int
        {
            auto config = resolve_config(o, false);
            auto path = store_path(o, config);
            StoreLock lock(path);
            store::Store store(path, store_options(config));
            if (o.path == "-") {
                store.dump(out);
                return success;
            }
            auto temporary = o.path + ".partial";
            {
                std::ofstream file(temporary, std::ios::binary | std::ios::trunc);
                if (! file)
                    throw Error(ErrorCode::invalid_argument, "cannot write " + temporary);
                store.dump(file);
                file.flush();
                if (! file)
                    throw Error(ErrorCode::invalid_argument, "failed writing " + temporary);
            }
            fs::rename(temporary, o.path);
            out << "dumped " << store.graph_count() << " graphs to " << o.path << "\n";
            return success;
        }

        auto cmd_restore(const Options & o, std::ostream & out) -> int
        {
            auto config = resolve_config(o, false);
            auto path = store_path(o, config);
            std::ifstream in(o.path, std::ios::binary);
            if (! in)
                throw Error(ErrorCode::invalid_argument, "cannot read " + o.path);
            StoreLock lock(path);
            store::Store store(path, store_options(config));
            store.restore(in, o.force);
            out << "restored " << store.graph_count() << " graphs from " << o.path << "\n";
            return success;
        }

        auto cmd_rekey(const Options & o, std::ostream & out) -> int
        {
            auto config = resolve_config(o, false);
            auto path = store_path(o, config);
            StoreLock lock(path);
            store::Store store(path, store_options(config));
            auto changed = store.rekey();
            out << "rekeyed " << store.graph_count() << " graphs to algorithm version " << store.algorithm_version()
                << ", " << changed << " keys changed\n";
            return success;
        }
    }

    auto load_config(const std::string & path) -> Config
    {
        std::ifstream in(path);
        if (! in)
            throw Error(ErrorCode::invalid_argument, "cannot read config " + path);
        json j;
        try {
            j = json::parse(in);
        }
        catch (const json::parse_error & e) {
            throw Error(ErrorCode::invalid_argument, "config " + path + " is not valid JSON: " + e.what());
        }
        auto base = fs::absolute(path).parent_path();
        auto resolve = [&] (const std::string & p) {
            if (p.empty() || p == ":memory:" || fs::path(p).is_absolute())
                return p;
            return (base / p).lexically_normal().string();
        };

        Config c;
        try {
            c.store = resolve(j.value("store", std::string()));
            if (auto a = j.find("api") ; a != j.end()) {
                c.host = a->value("host", c.host);
                c.port = a->value("port", c.port);
                c.api.rate_limit = std::chrono::seconds(a->value("rate_limit", c.api.rate_limit.count()));
                c.api.static_dir = resolve(a->value("static_dir", std::string()));
                c.api.list_dir = resolve(a->value("list_dir", std::string()));
            }
            if (auto s = j.find("scheduler") ; s != j.end()) {
                if (auto levels = s->find("levels") ; levels != s->end()) {
                    c.scheduler.levels.clear();
                    for (const auto & l : *levels)
                        c.scheduler.levels.push_back(std::chrono::duration_cast<Duration>(std::chrono::duration<double>(l.get<double>())));
                }
                c.scheduler.workers = s->value("workers", c.scheduler.workers);
                c.scheduler.reserved_cores = s->value("reserved_cores", c.scheduler.reserved_cores);
            }
            if (auto i = j.find("invariants") ; i != j.end())
                c.extended_invariants = i->value("extended", false);
        }
        catch (const json::exception & e) {
            throw Error(ErrorCode::invalid_argument, "config " + path + ": " + e.what());
        }
        c.scheduler.validate();
        if (c.port < 0 || c.port > 65535)
            throw Error(ErrorCode::invalid_argument, "api.port must be between 0 and 65535");
        return c;
    }

    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
    {
        Options o;
        CLI::App app{"graphhaus administration tool", "graphhaus"};
        app.require_subcommand(1);
        app.add_option("--config", o.config, "JSON config file (falls back to $GRAPHHAUS_CONFIG)");
        app.add_option("--store", o.store, "store database path, overriding the config");

        auto serve = app.add_subcommand("serve", "run the HTTP API and the invariant scheduler");

        auto import = app.add_subcommand("import-list", "register an exhaustive graph6 list in the meta directory");
        import->add_option("family", o.family, "family name, e.g. cubic")->required();
        import->add_option("order", o.order, "number of vertices")->required()->check(CLI::PositiveNumber);
        import->add_option("file", o.file, "graph6 file, one graph per line");
        import->add_option("--count", o.count, "override the count, or \"unknown\" to record neither count nor file");
        import->add_option("--description", o.description, "family description");
        import->add_option("--generator", o.generator, "generator command line, stored as metadata");

        auto recompute = app.add_subcommand("recompute", "compute pending and timed-out invariant values");
        recompute->add_option("invariant", o.invariant, "invariant id, or all")->required();
        recompute->add_option("--budget", o.budget, "single time budget per value, e.g. 600 or 1ms");

        auto audit = app.add_subcommand("audit-canonical", "recompute every canonical key and report mismatches");

        auto dump = app.add_subcommand("dump", "write an archive of the store");
        dump->add_option("path", o.path, "archive path, or - for standard output")->required();

        auto restore = app.add_subcommand("restore", "load an archive into an empty store");
        restore->add_option("path", o.path, "archive path")->required();
        restore->add_flag("--force", o.force, "replace a non-empty store");

        auto rekey = app.add_subcommand("rekey", "recompute keys after a canonicaliser version change");

        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError & e) {
            int code = app.exit(e, out, err);
            return code == 0 ? success : user_error;
        }

        try {
            if (serve->parsed())
                return cmd_serve(o, out);
            if (import->parsed())
                return cmd_import_list(o, out);
            if (recompute->parsed())
                return cmd_recompute(o, out);
            if (audit->parsed())
                return cmd_audit(o, out);
            if (dump->parsed())
                return cmd_dump(o, out);
            if (restore->parsed())
                return cmd_restore(o, out);
            if (rekey->parsed())
                return cmd_rekey(o, out);
        }
        catch (const Error & e) {
            err << "graphhaus: " << e.what() << "\n";
            return exit_code(e.code());
        }
        catch (const std::exception & e) {
            err << "graphhaus: " << e.what() << "\n";
            return data_error;
        }
        return user_error;
    }
}
