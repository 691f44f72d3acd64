#include "dioph/error.hpp"

namespace dioph
{

std::string_view errc_name(Errc code) noexcept
{
    switch (code)
    {
    case Errc::MixedRings: return "MixedRings";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::EqualElements: return "EqualElements";
    case Errc::DuplicateElement: return "DuplicateElement";
    case Errc::NotDiophantine: return "NotDiophantine";
    case Errc::NotAPair: return "NotAPair";
    case Errc::NotATriple: return "NotATriple";
    case Errc::NotAQuadruple: return "NotAQuadruple";
    case Errc::NotASolution: return "NotASolution";
    case Errc::OrbitNotDiverging: return "OrbitNotDiverging";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::TheoremInapplicable: return "TheoremInapplicable";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::Undecidable: return "Undecidable";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace
{

std::string join(const std::vector<std::string> &parts)
{
    std::string out;
    for (const auto &p : parts)
    {
        if (!out.empty())
            out += ", ";
        out += p;
    }
    return out;
}

} // namespace

PreconditionError::PreconditionError(std::vector<std::string> failed)
    : Error(Errc::PreconditionViolated, join(failed)), failed_(std::move(failed))
{
}

} // namespace dioph
