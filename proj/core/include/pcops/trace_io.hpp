#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pcops/iteration.hpp"

namespace pcops {

enum class TraceFormat { Csv, Json };

/// Header `k,residual_sq,dist_to_ref`, one row per step, numbers with 17
/// significant digits. The dist column is empty without a reference.
std::string trace_to_csv(const IterationTrace& trace);

/// JSON document mirroring IterationTrace; doubles round-trip exactly.
std::string trace_to_json(const IterationTrace& trace);
IterationTrace trace_from_json(std::string_view text);

/// Writes the trace; throws IoError naming the path and OS error.
void emit_trace(const IterationTrace& trace, const std::filesystem::path& path, TraceFormat format);

/// Whole-file write shared by trace and report emitters.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace pcops
