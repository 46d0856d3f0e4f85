/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_ERRORS_HH
#define DRED_ERRORS_HH 1

#include <stdexcept>
#include <string>
#include <string_view>

namespace dred
{
    enum class ErrorKind
    {
        Syntax,
        ArityMismatch,
        UnknownElement,
        NonemptyRelationRequired,
        SignatureMismatch,
        NotInterior,
        NonlinearIdentity,
        ShapeViolation,
        ZigzagWitnessFails,
        NotAPolymorphism,
        NotEndomorphism,
        TrivialTemplate,
        UnbalancedInput,
        InternalInvariantViolation,
        Io
    };

    auto error_kind_name(ErrorKind kind) -> std::string_view;

    class Error : public std::runtime_error
    {
        private:
            ErrorKind _kind;
            int _line;

        public:
            Error(ErrorKind kind, const std::string & message, int line = 0);

            auto kind() const -> ErrorKind
            {
                return _kind;
            }

            /// Input line number for syntax errors, 0 otherwise.
            auto line() const -> int
            {
                return _line;
            }
    };
}

#endif
