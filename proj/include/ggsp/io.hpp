#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "ggsp/frames.hpp"
#include "ggsp/iterate.hpp"

namespace ggsp::io {

using AnyFrame = std::variant<FrameSeq<double>, FrameSeq<cplx>>;

/// Frame document: {"dim": d, "field": "real"|"complex", "vectors": [...]}.
/// Complex entries are [re, im] pairs. Unknown keys are ignored. Throws
/// InputError (with line/column for malformed JSON) or DimensionError.
AnyFrame parse_frame(std::string_view text);
AnyFrame load_frame(const std::string& path);

template <Scalar T>
nlohmann::json frame_to_json(const FrameSeq<T>& frame);

template <Scalar T>
nlohmann::json vectors_to_json(const std::vector<Vector<T>>& vectors);

nlohmann::json limit_report_to_json(const LimitReport& report);
nlohmann::json recurrence_report_to_json(const RecurrenceReport& report);

/// Iteration metadata, per-iteration norm table, deltas and snapshots.
template <Scalar T>
nlohmann::json trace_to_json(const IterationTrace<T>& trace, const IterateOptions& options);

/// Columns: iteration, vector_index, norm, coord_1..coord_d. Coordinates are
/// filled only on snapshot iterations. Complex frames split each coordinate
/// into coord_j_re, coord_j_im.
template <Scalar T>
void write_trace_csv(std::ostream& out, const IterationTrace<T>& trace);

/// Columns: vector_index, norm, coord_1..coord_d (same complex convention).
template <Scalar T>
void write_frame_csv(std::ostream& out, const FrameSeq<T>& frame);

/// 17 significant digits.
std::string format_double(double x);

}  // namespace ggsp::io
