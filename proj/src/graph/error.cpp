#include <graphhaus/error.hpp>

namespace graphhaus
{
    auto to_string(ErrorCode code) -> std::string_view
    {
        switch (code) {
            case ErrorCode::order_out_of_range: return "OrderOutOfRange";
            case ErrorCode::loop_rejected: return "LoopRejected";
            case ErrorCode::vertex_out_of_range: return "VertexOutOfRange";
            case ErrorCode::malformed_header: return "MalformedHeader";
            case ErrorCode::truncated_body: return "TruncatedBody";
            case ErrorCode::nonzero_padding: return "NonzeroPadding";
            case ErrorCode::invalid_byte: return "InvalidByte";
            case ErrorCode::trailing_data: return "TrailingData";
            case ErrorCode::not_square: return "NotSquare";
            case ErrorCode::not_symmetric: return "NotSymmetric";
            case ErrorCode::nonzero_diagonal: return "NonzeroDiagonal";
            case ErrorCode::parse_error: return "ParseError";
            case ErrorCode::unknown_invariant: return "UnknownInvariant";
            case ErrorCode::unsupported_invariant: return "UnsupportedInvariant";
            case ErrorCode::syntax_error: return "SyntaxError";
            case ErrorCode::non_numerical_invariant: return "NonNumericalInvariant";
            case ErrorCode::budget_out_of_range: return "BudgetOutOfRange";
            case ErrorCode::invalid_constraint: return "InvalidConstraint";
            case ErrorCode::missing_comment: return "MissingComment";
            case ErrorCode::unauthenticated: return "Unauthenticated";
            case ErrorCode::not_found: return "NotFound";
            case ErrorCode::position_count_mismatch: return "PositionCountMismatch";
            case ErrorCode::position_out_of_range: return "PositionOutOfRange";
            case ErrorCode::cannot_delete_anonymous: return "CannotDeleteAnonymous";
            case ErrorCode::name_taken: return "NameTaken";
            case ErrorCode::reset_required: return "ResetRequired";
            case ErrorCode::invalid_credentials: return "InvalidCredentials";
            case ErrorCode::account_disabled: return "AccountDisabled";
            case ErrorCode::corrupt_archive: return "CorruptArchive";
            case ErrorCode::store_not_empty: return "StoreNotEmpty";
            case ErrorCode::version_mismatch: return "VersionMismatch";
            case ErrorCode::negative_count: return "NegativeCount";
            case ErrorCode::rate_limited: return "RateLimited";
            case ErrorCode::invalid_argument: return "InvalidArgument";
            case ErrorCode::shutting_down: return "ShuttingDown";
            case ErrorCode::malformed_line: return "MalformedLine";
        }
        return "Unknown";
    }

    Error::Error(ErrorCode code, const std::string & message, std::optional<std::size_t> position) :
        std::runtime_error(message),
        _code(code),
        _position(position)
    {
    }
}
