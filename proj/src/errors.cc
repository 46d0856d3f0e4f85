/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <dred/errors.hh>

using std::string;
using std::string_view;

namespace dred
{
    auto error_kind_name(ErrorKind kind) -> string_view
    {
        switch (kind) {
            case ErrorKind::Syntax:                     return "SyntaxError";
            case ErrorKind::ArityMismatch:              return "ArityMismatch";
            case ErrorKind::UnknownElement:             return "UnknownElement";
            case ErrorKind::NonemptyRelationRequired:   return "NonemptyRelationRequired";
            case ErrorKind::SignatureMismatch:          return "SignatureMismatch";
            case ErrorKind::NotInterior:                return "NotInterior";
            case ErrorKind::NonlinearIdentity:          return "NonlinearIdentity";
            case ErrorKind::ShapeViolation:             return "ShapeViolation";
            case ErrorKind::ZigzagWitnessFails:         return "ZigzagWitnessFails";
            case ErrorKind::NotAPolymorphism:           return "NotAPolymorphism";
            case ErrorKind::NotEndomorphism:            return "NotEndomorphism";
            case ErrorKind::TrivialTemplate:            return "TrivialTemplate";
            case ErrorKind::UnbalancedInput:            return "UnbalancedInput";
            case ErrorKind::InternalInvariantViolation: return "InternalInvariantViolation";
            case ErrorKind::Io:                         return "IoError";
        }
        return "Error";
    }

    Error::Error(ErrorKind kind, const string & message, int line) :
        std::runtime_error(string(error_kind_name(kind)) + ": " + (line > 0 ? "line " + std::to_string(line) + ": " : "") + message),
        _kind(kind),
        _line(line)
    {
    }
}
