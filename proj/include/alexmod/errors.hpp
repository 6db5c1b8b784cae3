#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace alexmod {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Text parser failure. pos is a 0-based character offset into the input.
struct ParseError : Error {
    std::size_t pos;
    ParseError(std::size_t p, const std::string& msg)
        : Error(msg + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

// Structurally malformed input (bad file shape, missing fields, size caps).
struct InvalidInput : Error {
    using Error::Error;
};

struct DimensionCapExceeded : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct DegenerateInput : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct NotAComplex : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Mathematical precondition violations.
struct MathPrecondition : Error {
    using Error::Error;
};

// Some eigenvalue of the torsion action is not a root of unity.
struct NotQuasiUnipotent : MathPrecondition {
    std::string offending_factor;
    explicit NotQuasiUnipotent(const std::string& factor)
        : MathPrecondition("not quasi-unipotent: factor " + factor +
                           " has no root of unity among its roots"),
          offending_factor(factor) {}
};

struct NotAnnihilated : MathPrecondition {
    using MathPrecondition::MathPrecondition;
};

struct EpsilonNotSurjective : MathPrecondition {
    using MathPrecondition::MathPrecondition;
};

// A relator with nonzero weight makes the weight map ill-defined on the group.
struct EpsilonNotConsistent : MathPrecondition {
    using MathPrecondition::MathPrecondition;
};

struct IncompatibleOrders : MathPrecondition {
    using MathPrecondition::MathPrecondition;
};

struct NoStabilization : MathPrecondition {
    using MathPrecondition::MathPrecondition;
};

// The structural hypotheses of a report pipeline fail (multiplicities etc).
struct HypothesesNotMet : Error {
    using Error::Error;
};

struct OperationCancelled : Error {
    OperationCancelled() : Error("operation cancelled") {}
};

// Cooperative cancellation for long-running eliminations. The caller keeps
// the token alive and sets `cancelled`; the callee polls it between rounds.
struct CancelToken {
    std::atomic<bool> cancelled{false};

    void check() const {
        if (cancelled.load(std::memory_order_relaxed)) throw OperationCancelled{};
    }
};

inline void check_cancel(const CancelToken* token) {
    if (token) token->check();
}

// Total Q-dimension allowed for any assembled object, to guard runaway
// inputs. ALEXMOD_MAX_DIM overrides the default of 4096.
inline std::size_t dim_cap() {
    if (const char* env = std::getenv("ALEXMOD_MAX_DIM")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 4096;
}

}  // namespace alexmod
