#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dioph
{

enum class Errc
{
    MixedRings,
    ZeroElement,
    EqualElements,
    DuplicateElement,
    NotDiophantine,
    NotAPair,
    NotATriple,
    NotAQuadruple,
    NotASolution,
    OrbitNotDiverging,
    PreconditionViolated,
    TheoremInapplicable,
    DegenerateInput,
    Undecidable,
    InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Raised by make_tuple; indices refer to the sorted element list.
class NotDiophantineError : public Error
{
public:
    NotDiophantineError(std::size_t i, std::size_t j, const std::string &what)
        : Error(Errc::NotDiophantine, what), i_(i), j_(j)
    {
    }

    std::size_t i() const noexcept { return i_; }
    std::size_t j() const noexcept { return j_; }

private:
    std::size_t i_, j_;
};

class PreconditionError : public Error
{
public:
    explicit PreconditionError(std::vector<std::string> failed);

    const std::vector<std::string> &failed() const noexcept { return failed_; }

private:
    std::vector<std::string> failed_;
};

} // namespace dioph
