#ifndef GRAPHHAUS_DEADLINE_HPP
#define GRAPHHAUS_DEADLINE_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>

namespace graphhaus
{
    using Duration = std::chrono::nanoseconds;
    using TimePoint = std::chrono::time_point<std::chrono::steady_clock, Duration>;

    class Clock
    {
    public:
        virtual ~Clock() = default;
        virtual auto now() const -> TimePoint = 0;
    };

    class SteadyClock final : public Clock
    {
    public:
        auto now() const -> TimePoint override { return std::chrono::steady_clock::now(); }
        static auto instance() -> const SteadyClock &;
    };

    /// Manually advanced clock for deterministic tests. Optionally advances
    /// itself by a fixed step on every read.
    class VirtualClock final : public Clock
    {
    public:
        explicit VirtualClock(Duration tick_per_read = Duration::zero()) : _tick(tick_per_read) {}

        auto now() const -> TimePoint override
        {
            std::lock_guard lock(_mutex);
            auto t = _now;
            _now += _tick;
            return t;
        }

        auto advance(Duration d) -> void
        {
            std::lock_guard lock(_mutex);
            _now += d;
        }

        auto set_tick(Duration d) -> void
        {
            std::lock_guard lock(_mutex);
            _tick = d;
        }

    private:
        mutable std::mutex _mutex;
        mutable TimePoint _now{};
        Duration _tick;
    };

    /// Thrown by solvers when their deadline fires; caught at the
    /// compute() boundary and turned into a TimedOut status.
    struct Timeout
    {
    };

    /// A cooperative deadline: solvers call tick() once per search node, and
    /// the clock is consulted once every check_interval ticks.
    class Deadline
    {
    public:
        static constexpr std::uint32_t check_interval = 1024;

        static auto never() -> Deadline { return Deadline{}; }
        static auto after(Duration budget, const Clock & clock = SteadyClock::instance()) -> Deadline;
        static auto at(TimePoint when, const Clock & clock = SteadyClock::instance()) -> Deadline;

        auto with_cancel_flag(const std::atomic<bool> * flag) const -> Deadline
        {
            Deadline d = *this;
            d._cancel = flag;
            return d;
        }

        /// Reads the clock now.
        auto expired() const -> bool;

        /// Cheap amortised check; throws Timeout once expired.
        auto tick() const -> void
        {
            if (++_counter >= check_interval) {
                _counter = 0;
                if (expired())
                    throw Timeout{};
            }
        }

        /// Unamortised check; throws Timeout if expired.
        auto check() const -> void
        {
            if (expired())
                throw Timeout{};
        }

        auto bounded() const -> bool { return _clock != nullptr; }
        auto when() const -> TimePoint { return _when; }
        auto remaining() const -> Duration;
        auto clock() const -> const Clock * { return _clock; }

    private:
        const Clock * _clock = nullptr;
        TimePoint _when{};
        const std::atomic<bool> * _cancel = nullptr;
        // first tick reads the clock
        mutable std::uint32_t _counter = check_interval - 1;
    };
}

#endif
