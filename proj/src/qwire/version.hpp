#pragma once

namespace qwire {

inline constexpr const char* kVersion = "0.1.0";

// CSV schema identifier emitted in every result table header.
inline constexpr const char* kSweepSchema = "qwire.sweep.v1";
inline constexpr const char* kProbGapSchema = "qwire.probgap.v1";

}  // namespace qwire
