#ifndef MTK_ERROR_HPP
#define MTK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace mtk {

// Domain failures carry a stable machine-readable code ("TriangleViolation",
// "NotATreeMetric", ...) next to the human-readable detail. The CLI maps
// "ParseError" to exit 2 and every other code to exit 1.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

} // namespace mtk

#endif
