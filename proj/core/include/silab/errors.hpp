#ifndef SILAB_ERRORS_HPP
#define SILAB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace silab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration / construction caps.
struct CapExceeded : Error { using Error::Error; };
struct EmptySupport : Error { using Error::Error; };
struct ZeroProbabilityCondition : Error { using Error::Error; };
struct DegenerateElement : Error { using Error::Error; };

// Structural preconditions.
struct NotATree : Error { using Error::Error; };
struct NotAForest : Error { using Error::Error; };

// Linear algebra.
struct NotSymmetric : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct DenominatorZero : Error { using Error::Error; };
struct NotReversible : Error { using Error::Error; };

struct SingularBlock : Error {
    SingularBlock(const std::string& what, int block) : Error(what), block_id(block) {}
    int block_id;
};

struct HypothesisFailed : Error {
    explicit HypothesisFailed(const std::string& what, std::vector<int> where = {})
        : Error(what), violating(std::move(where)) {}
    std::vector<int> violating;
};

// CLI / parsing.
struct ParseError : Error {
    ParseError(const std::string& what, int line_no = -1) : Error(what), line(line_no) {}
    int line;
};
struct ParamError : Error { using Error::Error; };

}  // namespace silab

#endif
