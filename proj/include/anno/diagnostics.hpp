// diagnostics.hpp - Structured error/warning reporting with JSON-pointer paths.
//
// Every failure in the pipeline is a SpecError carrying a Diagnostic whose
// `path` points at the offending node of the input document (or "" when the
// error is not tied to a document location). The CLI serializes diagnostics
// as JSON lines on stderr.
#pragma once

#include <exception>
#include <string>
#include <utility>
#include <vector>

namespace anno {

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;     // stable machine-readable code, e.g. "SchemaError"
    std::string path;     // JSON-pointer-style location, e.g. "/annotations/0/text"
    std::string message;  // human-readable explanation
};

class SpecError : public std::exception {
public:
    explicit SpecError(Diagnostic d) : diag_(std::move(d)) {
        what_ = diag_.code;
        if (!diag_.path.empty()) {
            what_ += " at " + diag_.path;
        }
        what_ += ": " + diag_.message;
    }

    const Diagnostic& diagnostic() const { return diag_; }
    const char* what() const noexcept override { return what_.c_str(); }

private:
    Diagnostic diag_;
    std::string what_;
};

[[noreturn]] inline void fail(std::string code, std::string path, std::string message) {
    throw SpecError({Severity::Error, std::move(code), std::move(path), std::move(message)});
}

// Collects warnings emitted along the pipeline. Errors are thrown, warnings
// accumulate here so the CLI can report them (and escalate under --strict).
class DiagnosticSink {
public:
    void warn(std::string code, std::string path, std::string message) {
        items_.push_back({Severity::Warning, std::move(code), std::move(path), std::move(message)});
    }

    const std::vector<Diagnostic>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    void clear() { items_.clear(); }

private:
    std::vector<Diagnostic> items_;
};

}  // namespace anno
