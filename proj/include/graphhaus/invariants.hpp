#ifndef GRAPHHAUS_INVARIANTS_HPP
#define GRAPHHAUS_INVARIANTS_HPP

#include <graphhaus/deadline.hpp>
#include <graphhaus/graph.hpp>
#include <graphhaus/rational.hpp>

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace graphhaus::invariants
{
    enum class Kind
    {
        integer,
        rational,
        boolean
    };

    enum class Hardness
    {
        polynomial,
        exponential
    };

    auto to_string(Kind kind) -> std::string_view;
    auto to_string(Hardness hardness) -> std::string_view;

    struct InvariantDescriptor
    {
        std::string id;
        std::string display_name;
        Kind kind = Kind::integer;
        Hardness hardness = Hardness::polynomial;
        /// Extended invariants are only scheduled when enabled in the config.
        bool extended = false;

        auto numerical() const -> bool { return kind != Kind::boolean; }
    };

    enum class Status
    {
        computed,
        undefined,
        timed_out,
        pending,
        failed
    };

    auto to_string(Status status) -> std::string_view;
    auto parse_status(std::string_view text) -> Status;

    class InvariantValue
    {
    public:
        static auto computed(bool value) -> InvariantValue;
        static auto computed(Rational value) -> InvariantValue;
        static auto computed(long long value) -> InvariantValue { return computed(Rational(value)); }
        static auto computed(int value) -> InvariantValue { return computed(Rational(value)); }
        static auto undefined() -> InvariantValue { return InvariantValue(Status::undefined); }
        static auto timed_out() -> InvariantValue { return InvariantValue(Status::timed_out); }
        static auto pending() -> InvariantValue { return InvariantValue(Status::pending); }
        static auto failed() -> InvariantValue { return InvariantValue(Status::failed); }

        auto status() const -> Status { return _status; }
        auto is_computed() const -> bool { return _status == Status::computed; }
        auto is_boolean() const -> bool { return std::holds_alternative<bool>(_value); }

        /// Throw std::bad_variant_access unless computed with that type.
        auto as_bool() const -> bool { return std::get<bool>(_value); }
        auto as_number() const -> const Rational & { return std::get<Rational>(_value); }

        /// "true", "false", "p" or "p/q" for computed values; empty otherwise.
        auto value_text() const -> std::string;

        /// Inverse of (status, value_text) for a descriptor's kind.
        static auto from_parts(Status status, std::string_view value_text, Kind kind) -> InvariantValue;

        auto operator==(const InvariantValue &) const -> bool = default;

    private:
        explicit InvariantValue(Status status) : _status(status) {}

        Status _status = Status::pending;
        std::variant<std::monostate, bool, Rational> _value;
    };

    inline constexpr Duration default_hard_deadline = std::chrono::seconds(300);

    /// Stamped on stored values; bump when any solver's output can change.
    inline constexpr std::string_view engine_version = "1";

    /// Core invariants sorted by id.
    auto registry() -> const std::vector<InvariantDescriptor> &;

    /// Core plus extended invariants sorted by id.
    auto full_registry() -> const std::vector<InvariantDescriptor> &;

    /// The invariants to schedule for a new graph.
    auto scheduled_registry(bool include_extended) -> const std::vector<InvariantDescriptor> &;

    /// Ids that are recognised but deliberately not computed.
    auto unsupported_ids() -> std::span<const std::string_view>;

    /// Looks up a core or extended id. Throws Error(unsupported_invariant)
    /// for the unsupported ids and Error(unknown_invariant) otherwise.
    auto descriptor(std::string_view id) -> const InvariantDescriptor &;

    auto find(std::string_view id) -> const InvariantDescriptor *;

    /// Computes one invariant. A fired deadline yields TimedOut; any other
    /// solver failure yields Failed. Throws for unknown ids.
    auto compute(std::string_view id, const Graph & g, const Deadline & deadline) -> InvariantValue;
    auto compute(std::string_view id, const Graph & g, Duration budget = default_hard_deadline) -> InvariantValue;

    /// The individual solvers, usable directly. Exponential ones throw
    /// Timeout when their deadline fires.
    namespace solvers
    {
        auto is_connected(const Graph & g) -> bool;
        auto number_of_components(const Graph & g) -> int;
        auto is_bipartite(const Graph & g) -> bool;
        /// Eccentricities; nullopt when disconnected.
        auto eccentricities(const Graph & g) -> std::optional<std::vector<int>>;
        auto girth(const Graph & g) -> std::optional<int>;
        auto number_of_triangles(const Graph & g) -> long long;
        auto clique_number(const Graph & g, const Deadline & deadline = Deadline::never()) -> int;
        auto independence_number(const Graph & g, const Deadline & deadline = Deadline::never()) -> int;
        auto chromatic_number(const Graph & g, const Deadline & deadline = Deadline::never()) -> int;
        auto chromatic_index(const Graph & g, const Deadline & deadline = Deadline::never()) -> int;
        auto vertex_connectivity(const Graph & g, const Deadline & deadline = Deadline::never()) -> int;
        auto edge_connectivity(const Graph & g, const Deadline & deadline = Deadline::never()) -> int;
        auto is_hamiltonian(const Graph & g, const Deadline & deadline = Deadline::never()) -> bool;
        auto is_claw_free(const Graph & g, const Deadline & deadline = Deadline::never()) -> bool;
        /// Longest cycle length; nullopt for forests.
        auto circumference(const Graph & g, const Deadline & deadline = Deadline::never()) -> std::optional<int>;
        auto matching_number(const Graph & g, const Deadline & deadline = Deadline::never()) -> int;
    }
}

#endif
