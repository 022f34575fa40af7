#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gw {

// Base for all thrown failures. `kind` is the stable machine-readable name
// used in CLI error reporting and the python bindings.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

struct MalformedToken : Error {
    explicit MalformedToken(const std::string& tok) : Error("MalformedToken", tok) {}
};

// A computation needed information beyond the materialized window / import.
struct WindowExhausted : Error {
    explicit WindowExhausted(const std::string& msg) : Error("WindowExhausted", msg) {}
};

struct NoRotation : Error {
    explicit NoRotation(const std::string& msg) : Error("NoRotation", msg) {}
};

// A face trace exceeded the co-degree cap: unbounded outer face or bad rotation.
struct UnboundedFace : Error {
    explicit UnboundedFace(const std::string& msg) : Error("UnboundedFace", msg) {}
};

// Search exhaustion. Never a proof of nonexistence.
struct NotFound : Error {
    explicit NotFound(const std::string& msg) : Error("NotFound", msg) {}
};

struct InsufficientRungs : Error {
    explicit InsufficientRungs(const std::string& msg) : Error("InsufficientRungs", msg) {}
};

struct FragmentTooSmall : Error {
    explicit FragmentTooSmall(const std::string& msg) : Error("FragmentTooSmall", msg) {}
};

struct DisjointnessViolation : Error {
    DisjointnessViolation(const std::string& a, const std::string& b)
        : Error("DisjointnessViolation", a + " / " + b), first(a), second(b) {}
    std::string first, second;
};

struct InternalPathClash : Error {
    explicit InternalPathClash(const std::string& msg) : Error("InternalPathClash", msg) {}
};

// A refutation attempt could not conclude at this window: the claimed family
// is not larger than the witnessed capacity.
struct NotRefuted : Error {
    explicit NotRefuted(const std::string& msg) : Error("NotRefuted", msg) {}
};

struct Degenerate : Error {
    explicit Degenerate(const std::string& msg) : Error("Degenerate", msg) {}
};

}  // namespace gw
