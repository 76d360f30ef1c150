#ifndef MEANEXP_ERROR_HPP
#define MEANEXP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace meanexp
{

// Base of every exception thrown by the library. kind() is a stable
// identifier used by the CLI when rendering structured error messages.
class error : public std::runtime_error
{
public:
    error(std::string kind, const std::string &what) : std::runtime_error(what), m_kind(std::move(kind)) {}

    const std::string &kind() const noexcept
    {
        return m_kind;
    }

private:
    std::string m_kind;
};

#define MEANEXP_DEFINE_ERROR(Name)                                                                                     \
    class Name : public error                                                                                          \
    {                                                                                                                  \
    public:                                                                                                            \
        explicit Name(const std::string &what) : error(#Name, what) {}                                                 \
    };

MEANEXP_DEFINE_ERROR(DivisionByZero)
MEANEXP_DEFINE_ERROR(MissingVariable)
MEANEXP_DEFINE_ERROR(InexactDivision)
MEANEXP_DEFINE_ERROR(ParseError)
MEANEXP_DEFINE_ERROR(ZeroLeadingCoefficient)
MEANEXP_DEFINE_ERROR(UnsupportedExponent)
MEANEXP_DEFINE_ERROR(NotNormalized)
MEANEXP_DEFINE_ERROR(IndexOutOfRange)
MEANEXP_DEFINE_ERROR(InsufficientOrder)
MEANEXP_DEFINE_ERROR(SymbolicCoefficient)
MEANEXP_DEFINE_ERROR(DomainError)
MEANEXP_DEFINE_ERROR(UnsupportedLimitCase)
MEANEXP_DEFINE_ERROR(DegreeBoundExceeded)
MEANEXP_DEFINE_ERROR(IllConditioned)
MEANEXP_DEFINE_ERROR(SymbolicUndecidable)
MEANEXP_DEFINE_ERROR(OrderTooLow)
MEANEXP_DEFINE_ERROR(NonConvergence)

#undef MEANEXP_DEFINE_ERROR

} // namespace meanexp

#endif
