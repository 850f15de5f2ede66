#pragma once

#include <stdexcept>
#include <string>

namespace privplan {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (scene or roadmap files).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Structurally valid input that fails an invariant; the message names the
// offending field.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// Config length does not match the robot's degrees of freedom.
class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

// Start and goal lie in disconnected roadmap components.
class NoPathError : public Error {
public:
  explicit NoPathError(const std::string& what) : Error(what) {}
};

// Rejection sampling exhausted its retry budget.
class SamplingError : public Error {
public:
  explicit SamplingError(const std::string& what) : Error(what) {}
};

// File read/write failure.
class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Roadmap file failed its integrity check (truncation, corruption, bad
// checksum) or carries an unsupported format_version.
class RoadmapFileError : public Error {
public:
  enum class Kind { checksum, version };
  RoadmapFileError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

}  // namespace privplan
