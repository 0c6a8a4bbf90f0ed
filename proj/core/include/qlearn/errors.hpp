#pragma once

#include <stdexcept>
#include <string>

namespace qlearn {

// A resource cap was hit (subset enumeration size, qubit count, codebook
// length, domain size). The CLI maps this to exit code 2.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A learning-protocol contract was broken: the target is inconsistent with
// the class, a version space emptied, or a run violated its guarantee.
// The CLI maps this to exit code 3.
class ProtocolViolation : public std::runtime_error {
public:
    explicit ProtocolViolation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qlearn
