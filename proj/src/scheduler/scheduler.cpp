#include <graphhaus/scheduler.hpp>
#include <graphhaus/error.hpp>

#include <algorithm>

namespace graphhaus::scheduler
{
    using invariants::InvariantValue;
    using invariants::Status;

    auto SchedulerConfig::worker_count() const -> int
    {
        if (workers > 0)
            return workers;
        int hardware = static_cast<int>(std::thread::hardware_concurrency());
        return std::max(1, hardware - reserved_cores);
    }

    auto SchedulerConfig::validate() const -> void
    {
        if (levels.empty())
            throw Error(ErrorCode::invalid_argument, "the scheduler needs at least one level");
        for (std::size_t i = 0 ; i < levels.size() ; ++i) {
            if (levels[i] <= Duration::zero())
                throw Error(ErrorCode::invalid_argument, "level budgets must be positive");
            if (i > 0 && levels[i] <= levels[i - 1])
                throw Error(ErrorCode::invalid_argument, "level budgets must be strictly increasing");
        }
        if (workers < 0 || reserved_cores < 0)
            throw Error(ErrorCode::invalid_argument, "worker and reserved core counts must be non-negative");
    }

    auto to_string(Event::Kind kind) -> std::string_view
    {
        switch (kind) {
            case Event::Kind::submitted: return "submitted";
            case Event::Kind::started: return "started";
            case Event::Kind::demoted: return "demoted";
            case Event::Kind::finished: return "finished";
        }
        return "?";
    }

    auto JobQueue::submit(const Job & job) -> SubmitResult
    {
        if (! _live.insert(job).second)
            return SubmitResult::duplicate;
        _levels.front().push_back(job);
        return SubmitResult::accepted;
    }

    auto JobQueue::pop() -> std::optional<std::pair<Job, int>>
    {
        for (std::size_t level = 0 ; level < _levels.size() ; ++level) {
            if (! _levels[level].empty()) {
                auto job = std::move(_levels[level].front());
                _levels[level].pop_front();
                return std::pair{std::move(job), static_cast<int>(level)};
            }
        }
        return std::nullopt;
    }

    auto JobQueue::requeue(const Job & job, int level) -> void
    {
        _levels.at(static_cast<std::size_t>(level)).push_back(job);
    }

    auto JobQueue::retire(const Job & job) -> void
    {
        _live.erase(job);
    }

    auto JobQueue::queued() const -> std::size_t
    {
        std::size_t total = 0;
        for (const auto & level : _levels)
            total += level.size();
        return total;
    }

    auto run_slice(const ComputeFn & compute, const Job & job, const Deadline & deadline) -> InvariantValue
    {
        try {
            auto value = compute(job, deadline);
            if (value.status() == Status::pending)
                return InvariantValue::failed();
            return value;
        }
        catch (const Timeout &) {
            return InvariantValue::timed_out();
        }
        catch (...) {
            return InvariantValue::failed();
        }
    }

    namespace
    {
        /// A failing sink must not take the scheduler down with it.
        auto deliver(const ResultSink & sink, const Job & job, const InvariantValue & value) -> void
        {
            try {
                sink(job, value);
            }
            catch (...) {
            }
        }
    }

    VirtualScheduler::VirtualScheduler(SchedulerConfig config, ComputeFn compute, ResultSink sink, VirtualClock & clock) :
        _config(std::move(config)), _compute(std::move(compute)), _sink(std::move(sink)), _clock(clock),
        _queue(static_cast<int>(_config.levels.size()))
    {
        _config.validate();
    }

    auto VirtualScheduler::submit(const Job & job) -> SubmitResult
    {
        auto result = _queue.submit(job);
        if (result == SubmitResult::accepted)
            _events.push_back({_clock.now(), Event::Kind::submitted, job, 0, std::nullopt});
        return result;
    }

    auto VirtualScheduler::submit_at(TimePoint when, const Job & job) -> void
    {
        _arrivals.emplace(when, job);
    }

    auto VirtualScheduler::admit_arrivals() -> void
    {
        auto now = _clock.now();
        while (! _arrivals.empty() && _arrivals.begin()->first <= now) {
            auto [when, job] = *_arrivals.begin();
            _arrivals.erase(_arrivals.begin());
            if (_queue.submit(job) == SubmitResult::accepted)
                _events.push_back({when, Event::Kind::submitted, job, 0, std::nullopt});
        }
    }

    auto VirtualScheduler::run() -> void
    {
        while (true) {
            admit_arrivals();
            auto next = _queue.pop();
            if (! next) {
                if (_arrivals.empty())
                    return;
                auto wait = _arrivals.begin()->first - _clock.now();
                if (wait > Duration::zero())
                    _clock.advance(wait);
                continue;
            }
            auto [job, level] = *next;
            _events.push_back({_clock.now(), Event::Kind::started, job, level, std::nullopt});
            auto value = run_slice(_compute, job, Deadline::after(_config.levels[static_cast<std::size_t>(level)], _clock));
            admit_arrivals();
            bool last = level + 1 == static_cast<int>(_config.levels.size());
            if (value.status() == Status::timed_out && ! last) {
                _events.push_back({_clock.now(), Event::Kind::demoted, job, level, std::nullopt});
                _queue.requeue(job, level + 1);
                continue;
            }
            _events.push_back({_clock.now(), Event::Kind::finished, job, level, value.status()});
            _queue.retire(job);
            deliver(_sink, job, value);
        }
    }

    WorkerPool::WorkerPool(SchedulerConfig config, ComputeFn compute, ResultSink sink, const Clock & clock) :
        _config(std::move(config)), _compute(std::move(compute)), _sink(std::move(sink)), _clock(clock),
        _queue(static_cast<int>(_config.levels.size()))
    {
        _config.validate();
        int n = _config.worker_count();
        for (int i = 0 ; i < n ; ++i)
            _threads.emplace_back([this] { work(); });
    }

    WorkerPool::~WorkerPool()
    {
        shutdown();
    }

    auto WorkerPool::log(Event::Kind kind, const Job & job, int level, std::optional<Status> status) -> void
    {
        if (_config.record_events)
            _events.push_back({_clock.now(), kind, job, level, status});
    }

    auto WorkerPool::submit(const Job & job) -> SubmitResult
    {
        std::lock_guard lock(_mutex);
        if (_stopping)
            throw Error(ErrorCode::shutting_down, "the scheduler is shutting down");
        auto result = _queue.submit(job);
        if (result == SubmitResult::accepted) {
            log(Event::Kind::submitted, job, 0);
            _wake.notify_one();
        }
        return result;
    }

    auto WorkerPool::wait_idle() -> void
    {
        std::unique_lock lock(_mutex);
        _idle.wait(lock, [this] { return _running == 0 && (_queue.queued() == 0 || _stopping); });
    }

    auto WorkerPool::shutdown() -> void
    {
        {
            std::lock_guard lock(_mutex);
            if (_stopping && _threads.empty())
                return;
            _stopping = true;
        }
        _wake.notify_all();
        _idle.notify_all();
        for (auto & t : _threads)
            t.join();
        _threads.clear();
    }

    auto WorkerPool::events() const -> std::vector<Event>
    {
        std::lock_guard lock(_mutex);
        return _events;
    }

    auto WorkerPool::max_running() const -> int
    {
        std::lock_guard lock(_mutex);
        return _max_running;
    }

    auto WorkerPool::queued() const -> std::size_t
    {
        std::lock_guard lock(_mutex);
        return _queue.queued();
    }

    auto WorkerPool::work() -> void
    {
        std::unique_lock lock(_mutex);
        while (true) {
            _wake.wait(lock, [this] { return _stopping || _queue.queued() > 0; });
            if (_stopping)
                break;
            auto [job, level] = *_queue.pop();
            ++_running;
            _max_running = std::max(_max_running, _running);
            log(Event::Kind::started, job, level);
            lock.unlock();

            auto value = run_slice(_compute, job, Deadline::after(_config.levels[static_cast<std::size_t>(level)], _clock));
            bool last = level + 1 == static_cast<int>(_config.levels.size());
            bool demote = value.status() == Status::timed_out && ! last;
            if (! demote)
                deliver(_sink, job, value);

            lock.lock();
            --_running;
            if (demote && ! _stopping) {
                log(Event::Kind::demoted, job, level);
                _queue.requeue(job, level + 1);
                _wake.notify_one();
            }
            else {
                if (! demote)
                    log(Event::Kind::finished, job, level, value.status());
                _queue.retire(job);
            }
            _idle.notify_all();
        }
        _idle.notify_all();
    }
}
