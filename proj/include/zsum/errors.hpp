#pragma once

#include <stdexcept>
#include <string>

namespace zsum {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Group construction / queries
struct InvalidParams : Error {
    using Error::Error;
};
struct NoValidS : Error {
    using Error::Error;
};
struct NotNormal : Error {
    using Error::Error;
};
struct BoundExceeded : Error {
    using Error::Error;
};

// Search / DP
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg, std::string checkpoint = {})
        : Error(msg), checkpoint_json(std::move(checkpoint)) {}
    std::string checkpoint_json;  // snapshot for resume, empty if none
};

// Constructive extraction
struct StructureViolation : Error {
    using Error::Error;
};
struct NoSolution : Error {
    using Error::Error;
};
struct ExtractionFailed : Error {
    using Error::Error;
};

// I/O
struct SchemaError : Error {
    using Error::Error;
};
struct UnknownLabel : Error {
    using Error::Error;
};
struct GroupMismatch : Error {
    using Error::Error;
};
struct RepsNotTransversal : Error {
    using Error::Error;
};

}  // namespace zsum
