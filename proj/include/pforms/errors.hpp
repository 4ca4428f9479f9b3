#pragma once

#include <stdexcept>
#include <string>

namespace pforms {

// Base class for all engine errors. `code()` is a stable machine-readable
// tag; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg) : Error("DivisionByZero", msg) {}
};
struct BadIndex : Error {
    explicit BadIndex(const std::string& msg) : Error("BadIndex", msg) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("DimensionMismatch", msg) {}
};
struct SingularCoframe : Error {
    explicit SingularCoframe(const std::string& msg) : Error("SingularCoframe", msg) {}
};
struct BadShape : Error {
    explicit BadShape(const std::string& msg) : Error("BadShape", msg) {}
};
struct ParseError : Error {
    ParseError(const std::string& msg, int line, int col)
        : Error("ParseError", msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
          line(line), col(col) {}
    int line, col;
};
struct UnknownField : Error {
    explicit UnknownField(const std::string& msg) : Error("UnknownField", msg) {}
};
struct TypeError : Error {
    explicit TypeError(const std::string& msg) : Error("TypeError", msg) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("ConfigError", msg) {}
};
struct UnsupportedNode : Error {
    explicit UnsupportedNode(const std::string& msg) : Error("UnsupportedNode", msg) {}
};
struct BadDegree : Error {
    explicit BadDegree(const std::string& msg) : Error("BadDegree", msg) {}
};
struct BadTensor : Error {
    explicit BadTensor(const std::string& msg) : Error("BadTensor", msg) {}
};
struct NotOrthochronous : Error {
    explicit NotOrthochronous(const std::string& msg) : Error("NotOrthochronous", msg) {}
};
struct UnknownModel : Error {
    explicit UnknownModel(const std::string& msg) : Error("UnknownModel", msg) {}
};
struct BadFormat : Error {
    explicit BadFormat(const std::string& msg) : Error("BadFormat", msg) {}
};

} // namespace pforms
