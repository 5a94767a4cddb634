#pragma once

#include <stdexcept>
#include <string>

namespace expertrank {

using DocId = std::string;
using ExpertId = std::string;
using TopicId = std::string;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input bytes: bad JSON, ragged CSV, inconsistent embedding dims.
struct ParseError : Error {
  using Error::Error;
};

// Structurally valid input that breaks a cross-reference or uniqueness rule.
struct IntegrityError : Error {
  using Error::Error;
};

// idf is undefined when the phrase or its constituent terms were never seen.
struct UndefinedIdfError : Error {
  using Error::Error;
};

struct UnknownTermError : Error {
  using Error::Error;
};

struct UnknownTopicError : Error {
  using Error::Error;
};

struct UnknownModelError : Error {
  using Error::Error;
};

}  // namespace expertrank
