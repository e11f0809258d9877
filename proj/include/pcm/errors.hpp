#ifndef PCM_ERRORS_HPP
#define PCM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcm {

// Error taxonomy mirrors the CLI exit codes: config (2), data (3), solve (4).

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse failure in an input file; carries line/column for diagnostics.
struct ParseError : DataError {
    ParseError(const std::string& file, int line, int column, const std::string& msg)
        : DataError(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line(line), column(column) {}
    int line;
    int column;
};

struct ValidationError : DataError {
    explicit ValidationError(const std::string& msg) : DataError(msg) {}
};

struct SolveError : std::runtime_error {
    explicit SolveError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pcm

#endif
