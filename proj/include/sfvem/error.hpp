#pragma once

#include <stdexcept>
#include <string>

namespace sfvem {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or nonconforming mesh data (generation, import or validation).
class MeshError : public Error {
 public:
  explicit MeshError(const std::string& what, int polygon = -1)
      : Error(what), polygon_(polygon) {}
  /// Offending polygon index, or -1 when the error is not tied to one.
  int polygon() const { return polygon_; }

 private:
  int polygon_;
};

/// Malformed sfvem-mesh input; carries the offending line number.
class ParseError : public MeshError {
 public:
  ParseError(int line, const std::string& what)
      : MeshError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// An element whose local projectors could not be built or verified.
class ElementError : public Error {
 public:
  ElementError(int element, const std::string& what, std::string geometry)
      : Error("element " + std::to_string(element) + ": " + what),
        element_(element),
        geometry_(std::move(geometry)) {}
  int element() const { return element_; }
  /// Vertex list of the element, one "x y" pair per line.
  const std::string& geometry() const { return geometry_; }

 private:
  int element_;
  std::string geometry_;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sfvem
