#include <doctest.h>

#include "../oracles/oracles.hpp"

#include <cli.hpp>
#include <graphhaus/error.hpp>
#include <graphhaus/formats.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/file.h>
#include <fcntl.h>
#include <unistd.h>

using namespace graphhaus;
using invariants::Status;
namespace fs = std::filesystem;

namespace
{
    struct TempDir
    {
        fs::path path;

        TempDir()
        {
            std::string pattern = (fs::temp_directory_path() / "graphhaus-cli-XXXXXX").string();
            REQUIRE(::mkdtemp(pattern.data()));
            path = pattern;
        }

        ~TempDir()
        {
            std::error_code ec;
            fs::remove_all(path, ec);
        }

        auto operator/(const std::string & name) const -> std::string { return (path / name).string(); }
    };

    struct Outcome
    {
        int code = 0;
        std::string out, err;
    };

    auto run(std::vector<std::string> args) -> Outcome
    {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    auto options(canon::Variant variant = canon::current_variant) -> store::StoreOptions
    {
        store::StoreOptions o;
        o.variant = variant;
        o.password_cost = store::PasswordCost::minimal();
        return o;
    }

    /// Fills a store with graphs on behalf of a fresh account.
    auto seed(const std::string & path, const std::vector<Graph> & graphs, canon::Variant variant = canon::current_variant) -> void
    {
        store::Store s(path, options(variant));
        auto user = s.find_user("seeder") ? s.find_user("seeder")->id : s.register_user("seeder", "pw", "");
        for (const auto & g : graphs) {
            store::InsertRequest r;
            r.graph = g;
            r.uploader = user;
            r.comment = "seeded";
            s.insert_graph(r);
        }
    }

    auto write_file(const std::string & path, const std::string & text) -> void
    {
        std::ofstream(path, std::ios::binary) << text;
    }

    auto read_file(const std::string & path) -> std::string
    {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }
}

TEST_CASE("usage errors exit with 1")
{
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"--help"}).code == 0);
    ::unsetenv("GRAPHHAUS_CONFIG");
    auto serve = run({"serve"});
    CHECK(serve.code == 1);
    CHECK(serve.err.find("config") != std::string::npos);
    CHECK(run({"dump", "x.gha"}).code == 1);
    CHECK(run({"--config", "/nonexistent/graphhaus.json", "audit-canonical"}).code == 1);
}

TEST_CASE("config files")
{
    TempDir dir;
    write_file(dir / "c.json", R"({"store": "data/s.db", "api": {"host": "0.0.0.0", "port": 9000, "rate_limit": 3},
        "scheduler": {"levels": [0.5, 10], "workers": 2, "reserved_cores": 0}, "invariants": {"extended": true}})");
    auto c = cli::load_config(dir / "c.json");
    CHECK(c.store == dir / "data/s.db");
    CHECK(c.host == "0.0.0.0");
    CHECK(c.port == 9000);
    CHECK(c.api.rate_limit == std::chrono::seconds(3));
    CHECK(c.scheduler.levels.size() == 2);
    CHECK(c.scheduler.levels[0] == std::chrono::milliseconds(500));
    CHECK(c.scheduler.workers == 2);
    CHECK(c.extended_invariants);

    write_file(dir / "bad.json", R"({"scheduler": {"levels": [10, 1]}})");
    CHECK_THROWS_AS(cli::load_config(dir / "bad.json"), Error);
    write_file(dir / "broken.json", "{");
    CHECK_THROWS_AS(cli::load_config(dir / "broken.json"), Error);

    write_file(dir / "env.json", R"({"store": "env.db"})");
    ::setenv("GRAPHHAUS_CONFIG", (dir / "env.json").c_str(), 1);
    CHECK(run({"audit-canonical"}).code == 0);
    CHECK(fs::exists(dir / "env.db"));
    ::unsetenv("GRAPHHAUS_CONFIG");
}

TEST_CASE("import-list registers enumerated lists")
{
    TempDir dir;
    auto store = dir / "s.db";
    std::string lines;
    for (const auto & g : oracle::iso_class_representatives(6))
        lines += to_graph6(g) + "\n";
    write_file(dir / "all6.g6", lines);

    auto r = run({"--store", store, "import-list", "all", "6", dir / "all6.g6", "--description", "all graphs"});
    CHECK_MESSAGE(r.code == 0, r.err);
    {
        store::Store s(store, options());
        auto list = s.get_meta_list("all");
        REQUIRE(list.entries.size() == 1);
        CHECK(list.entries[0].order == 6);
        CHECK(list.entries[0].count == 156);
        CHECK(list.entries[0].file == fs::path(dir / "all6.g6").string());
        CHECK(list.description == "all graphs");
    }

    write_file(dir / "bad.g6", "D??\nD?_\nD?\nD??\n");
    r = run({"--store", store, "import-list", "all", "5", dir / "bad.g6"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);

    r = run({"--store", store, "import-list", "all", "12", "--count", "unknown"});
    CHECK(r.code == 0);
    r = run({"--store", store, "import-list", "all", "7", "--count", "1044"});
    CHECK(r.code == 0);
    r = run({"--store", store, "import-list", "all", "8", "--count", "-3"});
    CHECK(r.code == 1);
    {
        store::Store s(store, options());
        auto list = s.get_meta_list("all");
        REQUIRE(list.entries.size() == 3);
        CHECK(list.entries[1].order == 7);
        CHECK(list.entries[1].count == 1044);
        CHECK_FALSE(list.entries[1].file);
        CHECK(list.entries[2].order == 12);
        CHECK_FALSE(list.entries[2].count);
        CHECK_FALSE(list.entries[2].file);
    }
}

TEST_CASE("recompute fills pending values and keeps hard ones timed out")
{
    TempDir dir;
    auto store = dir / "s.db";
    std::mt19937_64 rng(3);
    std::vector<Graph> graphs{Graph::petersen(), Graph::complete(5), Graph::cycle(7)};
    seed(store, graphs);

    CHECK(run({"--store", store, "recompute", "no_such_invariant"}).code == 1);
    auto r = run({"--store", store, "recompute", "chromatic_index"});
    CHECK_MESSAGE(r.code == 0, r.err);
    {
        store::Store s(store, options());
        for (auto id : s.graph_ids()) {
            auto values = s.values(id);
            CHECK(values.at("chromatic_index").value.is_computed());
            CHECK(values.at("girth").value.status() == Status::pending);
        }
        auto petersen = *s.find_isomorph(Graph::petersen());
        CHECK(s.values(petersen).at("chromatic_index").value == invariants::InvariantValue::computed(4));
    }
    CHECK(run({"--store", store, "recompute", "all"}).code == 0);
    {
        store::Store s(store, options());
        CHECK(s.jobs_with_status({Status::pending, Status::timed_out}).empty());
    }

    seed(store, {oracle::random_graph(200, 0.5, rng)});
    store::GraphId dense = 0;
    {
        store::Store s(store, options());
        dense = s.graph_ids().back();
        s.set_value(dense, "chromatic_number", invariants::InvariantValue::timed_out());
    }
    r = run({"--store", store, "recompute", "chromatic_number", "--budget", "1ms"});
    CHECK(r.code == 0);
    CHECK(run({"--store", store, "recompute", "chromatic_number", "--budget", "soon"}).code == 1);
    store::Store s(store, options());
    CHECK(s.values(dense).at("chromatic_number").value.status() == Status::timed_out);
}

TEST_CASE("audit-canonical detects a different tie-break")
{
    TempDir dir;
    std::mt19937_64 rng(11);
    std::vector<Graph> cubic;
    for (int i = 0 ; i < 10 ; ++i)
        cubic.push_back(oracle::random_regular(12 + 2 * i, 3, rng));

    CHECK(run({"--store", dir / "empty.db", "audit-canonical"}).code == 0);

    seed(dir / "pristine.db", cubic);
    auto r = run({"--store", dir / "pristine.db", "audit-canonical"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 mismatches") != std::string::npos);

    seed(dir / "altered.db", cubic, canon::Variant::reversed_tie_break);
    r = run({"--store", dir / "altered.db", "audit-canonical"});
    CHECK(r.code != 0);
    CHECK(r.out.find("mismatch: graph") != std::string::npos);

    CHECK(run({"--store", dir / "altered.db", "rekey"}).code == 0);
    CHECK(run({"--store", dir / "altered.db", "audit-canonical"}).code == 0);
}

TEST_CASE("dump and restore")
{
    TempDir dir;
    std::mt19937_64 rng(17);
    std::vector<Graph> graphs;
    for (int i = 0 ; i < 30 ; ++i)
        graphs.push_back(oracle::random_graph(4 + i % 9, 0.4, rng));
    seed(dir / "a.db", graphs);

    CHECK(run({"--store", dir / "a.db", "dump", dir / "a.gha"}).code == 0);
    CHECK(run({"--store", dir / "b.db", "restore", dir / "a.gha"}).code == 0);
    CHECK(run({"--store", dir / "b.db", "dump", dir / "b.gha"}).code == 0);
    CHECK(read_file(dir / "a.gha") == read_file(dir / "b.gha"));
    CHECK(run({"--store", dir / "a.db", "dump", "-"}).out == read_file(dir / "a.gha"));

    auto again = run({"--store", dir / "b.db", "restore", dir / "a.gha"});
    CHECK(again.code == 1);
    CHECK(again.err.find("--force") != std::string::npos);
    CHECK(run({"--store", dir / "b.db", "restore", "--force", dir / "a.gha"}).code == 0);

    auto damaged = read_file(dir / "a.gha");
    damaged[damaged.size() / 2] ^= 1;
    write_file(dir / "damaged.gha", damaged);
    CHECK(run({"--store", dir / "c.db", "restore", dir / "damaged.gha"}).code == 2);
    CHECK(run({"--store", dir / "c.db", "restore", dir / "missing.gha"}).code == 1);
}

TEST_CASE("commands refuse a store locked by another command")
{
    TempDir dir;
    seed(dir / "s.db", {Graph::petersen()});
    auto lock_path = dir / "s.db.lock";
    int fd = ::open(lock_path.c_str(), O_RDWR | O_CREAT, 0644);
    REQUIRE(fd >= 0);
    REQUIRE(::flock(fd, LOCK_EX | LOCK_NB) == 0);
    auto r = run({"--store", dir / "s.db", "audit-canonical"});
    CHECK(r.code == 1);
    CHECK(r.err.find("locked") != std::string::npos);
    ::close(fd);
    CHECK(run({"--store", dir / "s.db", "audit-canonical"}).code == 0);
}

TEST_CASE("serve reports a port that is already in use")
{
    TempDir dir;
    store::Store s(dir / "busy.db", options());
    api::Service occupant(s, {{std::chrono::seconds(1)}, 1, 0, false});
    auto port = occupant.start_background("127.0.0.1");

    write_file(dir / "c.json", "{\"store\": \"s.db\", \"api\": {\"port\": " + std::to_string(port) + "}}");
    auto r = run({"--config", dir / "c.json", "serve"});
    CHECK(r.code == 1);
    CHECK(r.err.find("cannot listen") != std::string::npos);
    occupant.stop();
}
