#pragma once

#include <stdexcept>
#include <string>

namespace regsplit {

// Error taxonomy; the CLI maps kinds onto exit codes (io-ish -> 2,
// estimation-ish -> 3, contract/domain -> 4).
enum class ErrorKind {
    io,
    schema,
    parse,
    continuity,
    domain,
    contract,
    singular,
    estimation,
    degenerate,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::io: return "io";
        case ErrorKind::schema: return "schema";
        case ErrorKind::parse: return "parse";
        case ErrorKind::continuity: return "continuity";
        case ErrorKind::domain: return "domain";
        case ErrorKind::contract: return "contract";
        case ErrorKind::singular: return "singular";
        case ErrorKind::estimation: return "estimation";
        case ErrorKind::degenerate: return "degenerate";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::io:
        case ErrorKind::schema:
        case ErrorKind::parse:
        case ErrorKind::continuity:
            return 2;
        case ErrorKind::singular:
        case ErrorKind::estimation:
        case ErrorKind::degenerate:
            return 3;
        case ErrorKind::domain:
        case ErrorKind::contract:
            return 4;
    }
    return 1;
}

}  // namespace regsplit
