#pragma once

// Text IO for the command line: distribution documents in the three accepted
// shapes, kind detection, full-precision numeric formatting, and file
// plumbing. Formatting uses the shortest decimal form that parses back to
// exactly the same double, so serialize -> parse -> serialize is a fixed
// point and text round trips lose nothing.

#include <optional>
#include <string>
#include <vector>

#include "pptrans/distribution.hpp"

namespace pptrans {

enum class DistributionKind { probability, possibility };

/// Parsed input document: the numeric payload plus whatever kind the
/// document itself declared. Only the object shape can declare one.
struct DistributionDocument {
    std::vector<double> values;
    std::optional<DistributionKind> declared_kind;
};

/// Accepted shapes: a JSON array of numbers; a JSON object with a "values"
/// array and an optional "kind" of "probability" or "possibility" (unknown
/// keys ignored, so result documents re-parse); or plain text with one
/// number per line, where blank lines and lines starting with '#' are
/// skipped. Malformed or empty input raises parse_error.
DistributionDocument parse_distribution_document(const std::string& text);

/// read_text_file + parse_distribution_document.
DistributionDocument load_distribution_document(const std::string& path);

std::string read_text_file(const std::string& path);  // parse_error when unreadable
void write_text_file(const std::string& path, const std::string& content);

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double x);

/// Detection order: a sum within tolerance of 1 means probability (the
/// renormalize flag widens that tolerance to the renormalization window);
/// otherwise a maximum of 1 with a sum above 1 means possibility; anything
/// else raises std::invalid_argument.
DistributionKind detect_kind(const std::vector<double>& values, bool renormalize);

const char* kind_name(DistributionKind kind);

}  // namespace pptrans
