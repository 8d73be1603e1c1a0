#include <graphhaus/search.hpp>
#include <graphhaus/error.hpp>

#include <algorithm>
#include <cctype>

namespace graphhaus::query
{
    namespace
    {
        using invariants::Kind;

        auto require_kind(const std::string & id, bool want_numerical, const char * constraint) -> const invariants::InvariantDescriptor &
        {
            const auto & d = invariants::descriptor(id);
            if (d.numerical() != want_numerical)
                throw Error(ErrorCode::invalid_constraint, std::string(constraint) + " needs a "
                        + (want_numerical ? "numerical" : "boolean") + " invariant, not '" + id + "'");
            return d;
        }

        auto lower(std::string_view s) -> std::string
        {
            std::string out(s);
            for (auto & c : out)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            return out;
        }

        auto contains_text(std::string_view haystack, const std::string & needle_lower) -> bool
        {
            return lower(haystack).find(needle_lower) != std::string::npos;
        }

        auto number_of(const GraphEntry & entry, const std::string & id) -> const Rational *
        {
            auto it = entry.values.find(id);
            if (it == entry.values.end() || ! it->second.is_computed() || it->second.is_boolean())
                return nullptr;
            return &it->second.as_number();
        }

        auto is_subgraph(const Constraint & c) -> bool
        {
            return std::holds_alternative<SubgraphConstraint>(c);
        }
    }

    auto validate(const SearchQuery & query) -> void
    {
        if (query.time_budget < min_time_budget || query.time_budget > max_time_budget)
            throw Error(ErrorCode::budget_out_of_range, "time budget must lie between 5 and 120 seconds");

        for (const auto & constraint : query.constraints) {
            std::visit([] (const auto & c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, InvariantRange>) {
                    require_kind(c.id, true, "a range constraint");
                    if (! c.min && ! c.max)
                        throw Error(ErrorCode::invalid_constraint, "a range constraint needs a lower or upper bound");
                    if (c.min && c.max && *c.min > *c.max)
                        throw Error(ErrorCode::invalid_constraint, "range minimum exceeds maximum");
                }
                else if constexpr (std::is_same_v<T, InvariantExact>)
                    require_kind(c.id, true, "an exact-value constraint");
                else if constexpr (std::is_same_v<T, InvariantParity>) {
                    if (require_kind(c.id, true, "a parity constraint").kind != Kind::integer)
                        throw Error(ErrorCode::invalid_constraint, "a parity constraint needs an integer invariant, not '" + c.id + "'");
                }
                else if constexpr (std::is_same_v<T, BooleanClass>)
                    require_kind(c.id, false, "a boolean class constraint");
                else if constexpr (std::is_same_v<T, InterestingMark>)
                    invariants::descriptor(c.id);
                else if constexpr (std::is_same_v<T, TextSearch>) {
                    if (c.text.empty())
                        throw Error(ErrorCode::invalid_constraint, "empty text search");
                }
            }, constraint);
        }
    }

    auto matches(const Constraint & constraint, const GraphEntry & entry) -> bool
    {
        return std::visit([&] (const auto & c) -> bool {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, InvariantRange>) {
                auto v = number_of(entry, c.id);
                return v && (! c.min || *v >= *c.min) && (! c.max || *v <= *c.max);
            }
            else if constexpr (std::is_same_v<T, InvariantExact>) {
                auto v = number_of(entry, c.id);
                return v && *v == c.value;
            }
            else if constexpr (std::is_same_v<T, InvariantParity>) {
                auto v = number_of(entry, c.id);
                if (! v || denominator(*v) != 1)
                    return false;
                bool odd = bit_test(abs(numerator(*v)), 0);
                return odd == (c.parity == Parity::odd);
            }
            else if constexpr (std::is_same_v<T, BooleanClass>) {
                auto it = entry.values.find(c.id);
                if (it == entry.values.end() || ! it->second.is_computed() || ! it->second.is_boolean())
                    return false;
                return it->second.as_bool() == (c.polarity == Polarity::include);
            }
            else if constexpr (std::is_same_v<T, InterestingMark>)
                return entry.interesting.contains(c.id);
            else if constexpr (std::is_same_v<T, TextSearch>) {
                auto needle = lower(c.text);
                if (c.scope != TextScope::comment && contains_text(entry.name, needle))
                    return true;
                if (c.scope != TextScope::name)
                    for (const auto & comment : entry.comments)
                        if (contains_text(comment, needle))
                            return true;
                return false;
            }
            else if constexpr (std::is_same_v<T, FormulaConstraint>)
                return eval_formula(c.formula, entry.values) == Truth::yes;
            else
                return true;
        }, constraint);
    }

    auto execute_search(const SearchQuery & query, const SearchSource & source, const Clock & clock) -> SearchResult
    {
        validate(query);

        std::vector<const SubgraphConstraint *> subgraphs;
        for (const auto & c : query.constraints)
            if (auto s = std::get_if<SubgraphConstraint>(&c))
                subgraphs.push_back(s);

        // the budget starts before the filtering pass
        auto deadline = Deadline::after(query.time_budget, clock);

        std::vector<std::pair<int, GraphId>> candidates;
        for (const auto & entry : source.entries()) {
            bool ok = std::all_of(query.constraints.begin(), query.constraints.end(), [&] (const Constraint & c) {
                return is_subgraph(c) || matches(c, entry);
            });
            if (ok)
                candidates.emplace_back(entry.order, entry.id);
        }
        std::sort(candidates.begin(), candidates.end());

        SearchResult result;
        if (subgraphs.empty()) {
            for (auto [order, id] : candidates)
                result.ids.push_back(id);
            return result;
        }

        for (auto [order, id] : candidates) {
            if (deadline.expired()) {
                result.complete = false;
                break;
            }
            ++result.scanned;
            Graph target = source.graph(id);
            bool keep = true, unknown = false;
            for (const auto * s : subgraphs) {
                subiso::Containment found = subiso::Containment::no;
                if (s->pattern.order() <= target.order() && s->pattern.size() <= target.size())
                    found = subiso::contains(s->pattern, target, s->mode, Deadline::at(deadline.when(), clock));
                if (found == subiso::Containment::unknown) {
                    unknown = true;
                    break;
                }
                bool wanted = s->polarity == Polarity::include ? found == subiso::Containment::yes
                    : found == subiso::Containment::no;
                if (! wanted) {
                    keep = false;
                    break;
                }
            }
            if (unknown) {
                result.complete = false;
                continue;
            }
            if (keep)
                result.ids.push_back(id);
        }
        return result;
    }

    auto MemorySource::add(GraphEntry entry, Graph graph) -> void
    {
        entry.order = graph.order();
        entry.size = graph.size();
        _graphs.emplace_back(entry.id, std::move(graph));
        _entries.push_back(std::move(entry));
    }

    auto MemorySource::graph(GraphId id) const -> Graph
    {
        for (const auto & [gid, g] : _graphs)
            if (gid == id)
                return g;
        throw Error(ErrorCode::not_found, "no graph with id " + std::to_string(id));
    }
}
