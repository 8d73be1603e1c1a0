#ifndef GRAPHHAUS_ERROR_HPP
#define GRAPHHAUS_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graphhaus
{
    enum class ErrorCode
    {
        // graph construction and codecs
        order_out_of_range,
        loop_rejected,
        vertex_out_of_range,
        malformed_header,
        truncated_body,
        nonzero_padding,
        invalid_byte,
        trailing_data,
        not_square,
        not_symmetric,
        nonzero_diagonal,
        parse_error,

        // invariants and queries
        unknown_invariant,
        unsupported_invariant,
        syntax_error,
        non_numerical_invariant,
        budget_out_of_range,
        invalid_constraint,

        // store
        missing_comment,
        unauthenticated,
        not_found,
        position_count_mismatch,
        position_out_of_range,
        cannot_delete_anonymous,
        name_taken,
        reset_required,
        invalid_credentials,
        account_disabled,
        corrupt_archive,
        store_not_empty,
        version_mismatch,
        negative_count,
        rate_limited,
        invalid_argument,

        // scheduler
        shutting_down,

        // cli
        malformed_line,
    };

    std::string_view to_string(ErrorCode code);

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string & message, std::optional<std::size_t> position = std::nullopt);

        auto code() const -> ErrorCode { return _code; }

        /// Byte offset for syntax errors, line number for line-oriented input.
        auto position() const -> std::optional<std::size_t> { return _position; }

    private:
        ErrorCode _code;
        std::optional<std::size_t> _position;
    };
}

#endif
