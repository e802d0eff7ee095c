#pragma once

#include <functional>
#include <string_view>

namespace rieszwave {

/// Receives non-fatal warnings (near-singular κ, unsupported θ, vanishing
/// coefficients, oversized eigen-solves).
using DiagnosticSink = std::function<void(std::string_view)>;

/// Replaces the process-wide sink. Passing an empty function restores the
/// default, which writes "rieszwave: warning: <msg>" to std::clog.
void set_diagnostic_sink(DiagnosticSink sink);

void emit_diagnostic(std::string_view message);

/// Installs `sink` for the lifetime of the guard.
class ScopedDiagnosticSink {
public:
    explicit ScopedDiagnosticSink(DiagnosticSink sink);
    ~ScopedDiagnosticSink();
    ScopedDiagnosticSink(const ScopedDiagnosticSink&) = delete;
    ScopedDiagnosticSink& operator=(const ScopedDiagnosticSink&) = delete;

private:
    DiagnosticSink previous_;
};

}  // namespace rieszwave
