#pragma once

#include <string>
#include <string_view>

#include "maxplus/pteg.hpp"

namespace maxplus {

inline constexpr std::string_view kModelFormatVersion = "v1";

/// A parsed model file: the format version plus the event-graph content.
struct ModelFile {
    std::string format_version;
    EventGraphSpec spec;

    bool operator==(const ModelFile& other) const = default;
};

/// Parses the line-oriented model format:
///
///   pteg v1
///   transitions t1 t2 t3
///   place t1 t2 0 2 3
///   place t2 t1 1 0 inf
///
/// '#' starts a comment.  Place fields are from, to, marking, lower,
/// upper; bounds are "p/q", integers, or finite decimals, with "inf" as
/// the only +infinity sentinel.  Throws ParseError with a line number.
ModelFile parse_model(std::string_view text);

/// Canonical emission; parse_model(emit_model(spec)) reproduces spec.
std::string emit_model(const EventGraphSpec& spec);

/// "fnv1a:<16 hex digits>" digest of raw input bytes, echoed in result
/// envelopes so outputs can be tied to their exact input.
std::string fnv1a_digest(std::string_view bytes);

} // namespace maxplus
