#include "tsw/error.hpp"

namespace tsw {

const char *to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

} // namespace tsw
