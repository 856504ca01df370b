#pragma once

#include <stdexcept>
#include <string>

namespace snnmap {

// Error while reading one of the text/JSON input formats. Carries the
// source path and 1-based line number when known (line 0 = whole file).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, std::size_t line, const std::string &message)
            : std::runtime_error(format(path, line, message))
            , path_(std::move(path))
            , line_(line)
    {
    }

    const std::string &path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string &path, std::size_t line,
            const std::string &message)
    {
        if (line == 0) {
            return path + ": " + message;
        }
        return path + ":" + std::to_string(line) + ": " + message;
    }

    std::string path_;
    std::size_t line_;
};

// Failure attributed to one stage of the end-to-end pipeline; the CLI
// prints the stage tag and exits nonzero.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string &message)
            : std::runtime_error("[" + stage + "] " + message)
            , stage_(std::move(stage))
    {
    }

    const std::string &stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace snnmap
