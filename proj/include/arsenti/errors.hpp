#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arsenti {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data. Carries the source name and 1-based line when known.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& reason)
      : Error(source + ":" + std::to_string(line) + ": " + reason),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class DuplicateWord : public Error {
 public:
  explicit DuplicateWord(const std::string& word)
      : Error("duplicate lexicon word: " + word), word_(word) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

class DuplicatePhrase : public Error {
 public:
  explicit DuplicatePhrase(const std::string& phrase)
      : Error("duplicate idiom phrase: " + phrase) {}
};

class TaggerFailure : public Error {
 public:
  using Error::Error;
};

class InvalidPolarity : public Error {
 public:
  using Error::Error;
};

class ProviderError : public Error {
 public:
  ProviderError(const std::string& word, const std::string& reason)
      : Error("synset provider failed for '" + word + "': " + reason), word_(word) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

class EmptyTrainingSet : public Error {
 public:
  EmptyTrainingSet() : Error("training set is empty") {}
};

class SingleClassTrainingSet : public Error {
 public:
  SingleClassTrainingSet() : Error("training set contains a single class") {}
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidSplitSpec : public Error {
 public:
  using Error::Error;
};

class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

class InsufficientRaters : public Error {
 public:
  InsufficientRaters() : Error("agreement needs at least two raters") {}
};

class EmptyItems : public Error {
 public:
  EmptyItems() : Error("agreement needs at least one rated item") {}
};

}  // namespace arsenti
