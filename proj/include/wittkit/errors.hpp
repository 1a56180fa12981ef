#ifndef WITTKIT_ERRORS_HPP
#define WITTKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wittkit
{

// Base for every recoverable error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A mathematical precondition was not met (p = 2, p not prime, bad length...).
class domain_error : public error
{
public:
    using error::error;
};

class variable_mismatch : public domain_error
{
public:
    using domain_error::domain_error;
};

class length_mismatch : public domain_error
{
public:
    using domain_error::domain_error;
};

class insufficient_truncation : public domain_error
{
public:
    using domain_error::domain_error;
};

class unknown_family : public domain_error
{
public:
    using domain_error::domain_error;
};

class malformed_input : public domain_error
{
public:
    using domain_error::domain_error;
};

// The ghost vector is not the ghost of an integral Witt vector.
class integrality_failure : public domain_error
{
public:
    integrality_failure(std::size_t index, const std::string &what)
        : domain_error(what), m_index(index)
    {
    }
    std::size_t index() const noexcept
    {
        return m_index;
    }

private:
    std::size_t m_index;
};

class budget_exceeded : public error
{
public:
    using error::error;
};

// Library defect: something the theory guarantees did not happen.
class invariant_violation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace wittkit

#endif
