#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace motivix {

/// Typed failure categories surfaced by the library and mapped to CLI exit codes.
enum class Errc {
    NotPrime,
    NotIrreducible,
    FieldTooLarge,
    FieldMismatch,
    NotCharacteristic,
    NotPure,
    NotInjective,
    SigmaInvarianceViolated,
    IntertwiningViolated,
    NotIsogeny,
    NoIsogenyInIdeal,
    EmbeddingFailure,
    WeightMismatch,
    NotSquarefreeReduction,
    NotOreRegular,
    PrecisionExhausted,
    NotSemisimple,
    NotFound,
    ParseError,
};

inline std::string_view errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::NotIrreducible: return "NotIrreducible";
        case Errc::FieldTooLarge: return "FieldTooLarge";
        case Errc::FieldMismatch: return "FieldMismatch";
        case Errc::NotCharacteristic: return "NotCharacteristic";
        case Errc::NotPure: return "NotPure";
        case Errc::NotInjective: return "NotInjective";
        case Errc::SigmaInvarianceViolated: return "SigmaInvarianceViolated";
        case Errc::IntertwiningViolated: return "IntertwiningViolated";
        case Errc::NotIsogeny: return "NotIsogeny";
        case Errc::NoIsogenyInIdeal: return "NoIsogenyInIdeal";
        case Errc::EmbeddingFailure: return "EmbeddingFailure";
        case Errc::WeightMismatch: return "WeightMismatch";
        case Errc::NotSquarefreeReduction: return "NotSquarefreeReduction";
        case Errc::NotOreRegular: return "NotOreRegular";
        case Errc::PrecisionExhausted: return "PrecisionExhausted";
        case Errc::NotSemisimple: return "NotSemisimple";
        case Errc::NotFound: return "NotFound";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }
    std::string_view name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

}  // namespace motivix
