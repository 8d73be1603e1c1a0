#include <graphhaus/deadline.hpp>

namespace graphhaus
{
    auto SteadyClock::instance() -> const SteadyClock &
    {
        static const SteadyClock clock;
        return clock;
    }

    auto Deadline::after(Duration budget, const Clock & clock) -> Deadline
    {
        return at(clock.now() + budget, clock);
    }

    auto Deadline::at(TimePoint when, const Clock & clock) -> Deadline
    {
        Deadline d;
        d._clock = &clock;
        d._when = when;
        return d;
    }

    auto Deadline::expired() const -> bool
    {
        if (_cancel && _cancel->load(std::memory_order_relaxed))
            return true;
        return _clock && _clock->now() >= _when;
    }

    auto Deadline::remaining() const -> Duration
    {
        if (! _clock)
            return Duration::max();
        auto left = _when - _clock->now();
        return left > Duration::zero() ? left : Duration::zero();
    }
}
