#ifndef GRAPHHAUS_SCHEDULER_HPP
#define GRAPHHAUS_SCHEDULER_HPP

#include <graphhaus/deadline.hpp>
#include <graphhaus/invariants.hpp>

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace graphhaus::scheduler
{
    struct Job
    {
        std::int64_t graph = 0;
        std::string invariant;

        auto operator<=>(const Job &) const = default;
    };

    struct SchedulerConfig
    {
        std::vector<Duration> levels = {std::chrono::seconds(1), std::chrono::seconds(30), std::chrono::seconds(300)};
        int workers = 0;
        int reserved_cores = 1;
        /// Keep an event log in WorkerPool; VirtualScheduler always does.
        bool record_events = false;

        /// workers if set, else the hardware threads minus the reserved
        /// cores, and at least one.
        auto worker_count() const -> int;
        /// Throws Error(invalid_argument) unless the levels are positive and
        /// strictly increasing and the worker counts are sane.
        auto validate() const -> void;
    };

    enum class SubmitResult { accepted, duplicate };

    /// Runs one slice of a job. Returning timed_out means the slice budget
    /// ran out; any other status is terminal. Thrown exceptions count as
    /// failed, and Timeout counts as timed_out.
    using ComputeFn = std::function<invariants::InvariantValue(const Job &, const Deadline &)>;
    /// Receives exactly one terminal value per accepted job.
    using ResultSink = std::function<void(const Job &, const invariants::InvariantValue &)>;

    struct Event
    {
        enum class Kind { submitted, started, demoted, finished };

        TimePoint time;
        Kind kind = Kind::submitted;
        Job job;
        int level = 0;
        std::optional<invariants::Status> status;
    };

    auto to_string(Event::Kind kind) -> std::string_view;

    /// Multilevel feedback queue bookkeeping, without threads or clocks.
    /// Within a level, jobs run in FIFO order.
    class JobQueue
    {
    public:
        explicit JobQueue(int levels) : _levels(static_cast<std::size_t>(levels)) {}

        auto submit(const Job & job) -> SubmitResult;
        /// The head of the lowest non-empty level.
        auto pop() -> std::optional<std::pair<Job, int>>;
        auto requeue(const Job & job, int level) -> void;
        /// Ends a job's life so the pair may be submitted again.
        auto retire(const Job & job) -> void;

        auto queued() const -> std::size_t;
        auto live() const -> std::size_t { return _live.size(); }
        auto is_live(const Job & job) const -> bool { return _live.contains(job); }

    private:
        std::vector<std::deque<Job>> _levels;
        std::set<Job> _live;
    };

    /// Runs one slice and classifies the outcome.
    auto run_slice(const ComputeFn & compute, const Job & job, const Deadline & deadline) -> invariants::InvariantValue;

    /// Deterministic single-worker scheduler on a virtual clock. The compute
    /// callback is expected to advance the clock as it works.
    class VirtualScheduler
    {
    public:
        VirtualScheduler(SchedulerConfig config, ComputeFn compute, ResultSink sink, VirtualClock & clock);

        auto submit(const Job & job) -> SubmitResult;
        /// Queues an arrival that is submitted once the clock reaches `when`.
        auto submit_at(TimePoint when, const Job & job) -> void;
        /// Runs until no queued jobs or arrivals remain.
        auto run() -> void;

        auto events() const -> const std::vector<Event> & { return _events; }

    private:
        auto admit_arrivals() -> void;

        SchedulerConfig _config;
        ComputeFn _compute;
        ResultSink _sink;
        VirtualClock & _clock;
        JobQueue _queue;
        std::multimap<TimePoint, Job> _arrivals;
        std::vector<Event> _events;
    };

    /// Thread pool draining a JobQueue. Shutdown stops new slices from
    /// starting and lets running slices finish within their budget; jobs
    /// left behind keep their pending status in the store.
    class WorkerPool
    {
    public:
        WorkerPool(SchedulerConfig config, ComputeFn compute, ResultSink sink, const Clock & clock = SteadyClock::instance());
        ~WorkerPool();

        WorkerPool(const WorkerPool &) = delete;
        WorkerPool & operator=(const WorkerPool &) = delete;

        /// Throws Error(shutting_down) after shutdown().
        auto submit(const Job & job) -> SubmitResult;
        /// Blocks until nothing is queued or running.
        auto wait_idle() -> void;
        auto shutdown() -> void;

        auto events() const -> std::vector<Event>;
        auto max_running() const -> int;
        auto queued() const -> std::size_t;

    private:
        auto work() -> void;
        auto log(Event::Kind kind, const Job & job, int level, std::optional<invariants::Status> status = std::nullopt) -> void;

        SchedulerConfig _config;
        ComputeFn _compute;
        ResultSink _sink;
        const Clock & _clock;
        JobQueue _queue;
        std::vector<Event> _events;
        int _running = 0;
        int _max_running = 0;
        bool _stopping = false;
        mutable std::mutex _mutex;
        std::condition_variable _wake;
        std::condition_variable _idle;
        std::vector<std::thread> _threads;
    };
}

#endif
