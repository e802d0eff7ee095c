#include "rieszwave/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <string>
#include <utility>

namespace rieszwave {
namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

DiagnosticSink& current_sink() {
    static DiagnosticSink sink;
    return sink;
}

DiagnosticSink exchange_sink(DiagnosticSink next) {
    std::lock_guard lock(sink_mutex());
    return std::exchange(current_sink(), std::move(next));
}

}  // namespace

void set_diagnostic_sink(DiagnosticSink sink) { exchange_sink(std::move(sink)); }

void emit_diagnostic(std::string_view message) {
    std::lock_guard lock(sink_mutex());
    if (current_sink()) {
        current_sink()(message);
        return;
    }
    std::clog << "rieszwave: warning: " << message << '\n';
}

ScopedDiagnosticSink::ScopedDiagnosticSink(DiagnosticSink sink)
    : previous_(exchange_sink(std::move(sink))) {}

ScopedDiagnosticSink::~ScopedDiagnosticSink() { exchange_sink(std::move(previous_)); }

}  // namespace rieszwave
