#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhat/root_datum.hpp"

namespace qsl {

/// Malformed job spec, with a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

enum class TaskKind { Build, Dims, Verify, Maps, Limit, Probe, Specialize };

const char* task_name(TaskKind k);
std::optional<TaskKind> task_from_name(const std::string& name);

struct Task {
  TaskKind kind = TaskKind::Dims;
  /// key=value parameters; "expr" runs to the end of the line.
  std::map<std::string, std::string> params;
  friend bool operator==(const Task&, const Task&) = default;
};

struct RingSpec {
  enum class Kind { Rational, Cyclotomic };
  Kind kind = Kind::Rational;
  mpq_class xi = 1;
  int order = 1;
  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.kind == b.kind && a.xi == b.xi && a.order == b.order;
  }
};

enum class Format { Human, Json };

struct JobSpec {
  /// Preset name, or empty when a Cartan form was given.
  std::string preset;
  qhat::IntMatrix form;
  /// One generator list per pi line.
  std::vector<std::vector<qhat::Weight>> pis;
  std::vector<Task> tasks;
  std::optional<RingSpec> ring;
  std::optional<Format> format;

  qhat::DatumPtr datum() const;
  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// Parses the line-oriented job format. Throws ParseError.
JobSpec parse_spec(const std::string& text);

/// Canonical text accepted by parse_spec.
std::string serialize(const JobSpec& spec);

/// Tasks stably reordered so that build precedes every task that uses it.
std::vector<Task> ordered_tasks(const JobSpec& spec);

}  // namespace qsl
