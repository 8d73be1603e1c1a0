#include <doctest.h>

#include <graphhaus/error.hpp>
#include <graphhaus/scheduler.hpp>

#include <random>

using namespace graphhaus;
using namespace graphhaus::scheduler;
using namespace std::chrono_literals;
using invariants::InvariantValue;
using invariants::Status;

namespace
{
    constexpr Duration step = 10ms;

    /// Compute callback for simulated work: each job needs a fixed amount
    /// of virtual time and checks its deadline between steps.
    struct SimulatedWork
    {
        VirtualClock & clock;
        std::map<Job, Duration> need;
        std::map<Job, Duration> spent;

        auto operator()(const Job & job, const Deadline & deadline) -> InvariantValue
        {
            Duration done{};
            while (done < need.at(job)) {
                if (deadline.expired())
                    return InvariantValue::timed_out();
                clock.advance(step);
                done += step;
                spent[job] += step;
            }
            return InvariantValue::computed(1);
        }
    };

    auto job(std::int64_t graph, std::string invariant = "chromatic_number") -> Job
    {
        return {graph, std::move(invariant)};
    }

    auto find_event(const std::vector<Event> & events, const Job & j, Event::Kind kind, int level) -> const Event *
    {
        for (const auto & e : events)
            if (e.job == j && e.kind == kind && e.level == level)
                return &e;
        return nullptr;
    }

    /// Replays the log and checks that no slice started while a job waited
    /// at a lower level.
    auto respects_priority(const std::vector<Event> & events, int levels) -> bool
    {
        std::vector<std::multiset<Job>> waiting(static_cast<std::size_t>(levels));
        for (const auto & e : events) {
            auto level = static_cast<std::size_t>(e.level);
            switch (e.kind) {
                case Event::Kind::submitted:
                    waiting[0].insert(e.job);
                    break;
                case Event::Kind::started:
                    for (std::size_t j = 0 ; j < level ; ++j)
                        if (! waiting[j].empty())
                            return false;
                    if (auto it = waiting[level].find(e.job) ; it != waiting[level].end())
                        waiting[level].erase(it);
                    else
                        return false;
                    break;
                case Event::Kind::demoted:
                    waiting[level + 1].insert(e.job);
                    break;
                case Event::Kind::finished:
                    break;
            }
        }
        return true;
    }
}

TEST_CASE("config validation")
{
    SchedulerConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.levels == std::vector<Duration>{1s, 30s, 300s});
    CHECK(c.worker_count() >= 1);
    c.workers = 3;
    CHECK(c.worker_count() == 3);
    c.levels = {1s, 1s};
    CHECK_THROWS_AS(c.validate(), Error);
    c.levels = {};
    CHECK_THROWS_AS(c.validate(), Error);
    c.levels = {0s, 1s};
    CHECK_THROWS_AS(c.validate(), Error);
    c.levels = {2s, 1s};
    CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("job queue")
{
    JobQueue q(3);
    CHECK(q.submit(job(1)) == SubmitResult::accepted);
    CHECK(q.submit(job(1)) == SubmitResult::duplicate);
    CHECK(q.submit(job(1, "girth")) == SubmitResult::accepted);
    CHECK(q.submit(job(2)) == SubmitResult::accepted);
    auto first = q.pop();
    REQUIRE(first);
    CHECK(first->first == job(1));
    q.requeue(first->first, 1);
    CHECK(q.submit(job(1)) == SubmitResult::duplicate);
    CHECK(q.pop()->first == job(1, "girth"));
    CHECK(q.pop()->first == job(2));
    auto demoted = q.pop();
    CHECK(demoted->second == 1);
    CHECK_FALSE(q.pop());
    q.retire(job(1));
    CHECK(q.submit(job(1)) == SubmitResult::accepted);
}

TEST_CASE("a short job submitted later finishes before the long job's final level")
{
    VirtualClock clock;
    SimulatedWork work{clock, {{job(1), 400s}, {job(2), 200ms}}, {}};
    std::map<Job, InvariantValue> results;
    VirtualScheduler s({}, std::ref(work), [&] (const Job & j, const InvariantValue & v) { results.emplace(j, v); }, clock);
    auto t0 = clock.now();
    s.submit(job(1));
    s.submit_at(t0 + 500ms, job(2));
    s.run();

    auto short_done = find_event(s.events(), job(2), Event::Kind::finished, 0);
    auto long_final = find_event(s.events(), job(1), Event::Kind::started, 2);
    REQUIRE(short_done);
    REQUIRE(long_final);
    CHECK(short_done->time < long_final->time);
    CHECK(short_done->status == Status::computed);
    CHECK(results.at(job(1)).status() == Status::timed_out);
    CHECK(results.at(job(2)).status() == Status::computed);
    CHECK(find_event(s.events(), job(1), Event::Kind::demoted, 0));
    CHECK(find_event(s.events(), job(1), Event::Kind::demoted, 1));
    CHECK(respects_priority(s.events(), 3));
}

TEST_CASE("a half-second job completes at level zero")
{
    VirtualClock clock;
    SimulatedWork work{clock, {{job(1), 500ms}}, {}};
    int delivered = 0;
    VirtualScheduler s({}, std::ref(work), [&] (const Job &, const InvariantValue &) { ++delivered; }, clock);
    s.submit(job(1));
    CHECK(s.submit(job(1)) == SubmitResult::duplicate);
    s.run();
    CHECK(delivered == 1);
    for (const auto & e : s.events())
        CHECK(e.kind != Event::Kind::demoted);
    CHECK(find_event(s.events(), job(1), Event::Kind::finished, 0));
    CHECK(s.submit(job(1)) == SubmitResult::accepted);
}

TEST_CASE("slice outcomes are classified")
{
    VirtualClock clock;
    std::map<Job, InvariantValue> results;
    auto compute = [&] (const Job & j, const Deadline & d) -> InvariantValue {
        if (j.graph == 1)
            throw std::runtime_error("boom");
        if (j.graph == 2)
            return InvariantValue::pending();
        if (j.graph == 3) {
            clock.advance(2s);
            d.check();
        }
        if (j.graph == 4)
            return InvariantValue::undefined();
        return InvariantValue::computed(true);
    };
    VirtualScheduler s({{1s, 2s}}, compute, [&] (const Job & j, const InvariantValue & v) {
        results.emplace(j, v);
        if (j.graph == 5)
            throw std::runtime_error("sink failure");
    }, clock);
    for (int g = 1 ; g <= 5 ; ++g)
        s.submit(job(g));
    s.run();
    CHECK(results.at(job(1)).status() == Status::failed);
    CHECK(results.at(job(2)).status() == Status::failed);
    CHECK(results.at(job(3)).status() == Status::timed_out);
    CHECK(results.at(job(4)).status() == Status::undefined);
    CHECK(results.at(job(5)).status() == Status::computed);
}

TEST_CASE("random workloads: priority, budget soundness and no loss")
{
    std::mt19937_64 rng(99);
    const std::vector<Duration> levels = {1s, 30s, 300s};
    for (int trial = 0 ; trial < 25 ; ++trial) {
        VirtualClock clock;
        SimulatedWork work{clock, {}, {}};
        std::map<Job, int> delivered;
        std::map<Job, Status> status;
        VirtualScheduler s({levels}, std::ref(work), [&] (const Job & j, const InvariantValue & v) {
            ++delivered[j];
            status[j] = v.status();
        }, clock);

        int jobs = 2 + static_cast<int>(rng() % 12);
        auto t0 = clock.now();
        for (int i = 0 ; i < jobs ; ++i) {
            static const Duration choices[] = {100ms, 700ms, 5s, 29s, 45s, 200s, 350s, 1000s};
            auto j = job(i);
            work.need[j] = choices[rng() % 8];
            s.submit_at(t0 + std::chrono::milliseconds(rng() % 60'000), j);
        }
        s.run();

        CHECK(respects_priority(s.events(), 3));
        for (const auto & [j, need] : work.need) {
            CHECK(delivered[j] == 1);
            CHECK(status[j] == (need <= 300s ? Status::computed : Status::timed_out));
            CHECK(work.spent[j] <= levels[0] + levels[1] + levels[2] + 3 * step);
            if (need <= 1s)
                CHECK_FALSE(find_event(s.events(), j, Event::Kind::demoted, 0));
        }
    }
}

TEST_CASE("worker pool delivers every job once with bounded parallelism")
{
    SchedulerConfig config;
    config.levels = {5ms, 20ms, 60ms};
    config.workers = 4;
    config.record_events = true;
    std::mutex m;
    std::map<Job, int> delivered;
    std::map<Job, Status> status;
    auto compute = [] (const Job & j, const Deadline & d) -> InvariantValue {
        if (j.invariant == "forever") {
            while (true)
                d.check();
        }
        std::this_thread::sleep_for(std::chrono::microseconds(100 * (j.graph % 7)));
        return InvariantValue::computed(static_cast<long long>(j.graph));
    };
    WorkerPool pool(config, compute, [&] (const Job & j, const InvariantValue & v) {
        std::lock_guard lock(m);
        ++delivered[j];
        status[j] = v.status();
    });
    for (int i = 0 ; i < 200 ; ++i)
        CHECK(pool.submit(job(i)) == SubmitResult::accepted);
    CHECK(pool.submit(job(0, "forever")) == SubmitResult::accepted);
    pool.wait_idle();

    CHECK(delivered.size() == 201);
    for (const auto & [j, count] : delivered)
        CHECK(count == 1);
    CHECK(status.at(job(0, "forever")) == Status::timed_out);
    CHECK(status.at(job(17)) == Status::computed);
    CHECK(pool.max_running() <= 4);
    CHECK(pool.max_running() >= 1);

    auto events = pool.events();
    int demotions = 0;
    for (const auto & e : events)
        if (e.kind == Event::Kind::demoted && e.job == job(0, "forever"))
            ++demotions;
    CHECK(demotions == 2);

    pool.shutdown();
    CHECK_THROWS_AS(pool.submit(job(999)), Error);
    try {
        pool.submit(job(999));
    }
    catch (const Error & e) {
        CHECK(e.code() == ErrorCode::shutting_down);
    }
}

TEST_CASE("shutdown leaves queued jobs undelivered")
{
    SchedulerConfig config;
    config.levels = {50ms, 100ms};
    config.workers = 1;
    std::atomic<int> delivered = 0;
    auto compute = [] (const Job &, const Deadline &) -> InvariantValue {
        std::this_thread::sleep_for(20ms);
        return InvariantValue::computed(1);
    };
    WorkerPool pool(config, compute, [&] (const Job &, const InvariantValue &) { ++delivered; });
    for (int i = 0 ; i < 20 ; ++i)
        pool.submit(job(i));
    std::this_thread::sleep_for(30ms);
    pool.shutdown();
    CHECK(delivered >= 1);
    CHECK(delivered < 20);
    pool.wait_idle();
}
