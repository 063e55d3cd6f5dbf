#include "clusterbench/error.hpp"

namespace clusterbench {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Config: return "CONFIG";
    case ErrorKind::Input: return "INPUT";
    case ErrorKind::Consistency: return "CONSISTENCY";
    case ErrorKind::InvariantViolation: return "INVARIANT_VIOLATION";
    case ErrorKind::UndefinedIndex: return "UNDEFINED_INDEX";
    case ErrorKind::DegenerateGeometry: return "DEGENERATE_GEOMETRY";
    case ErrorKind::Capacity: return "CAPACITY";
    case ErrorKind::Io: return "IO";
    }
    return "UNKNOWN";
}

} // namespace clusterbench
