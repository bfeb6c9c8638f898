#pragma once

#include <stdexcept>
#include <string>

#include "fse/core.hpp"

namespace fse {

// Errors raised on load. parse carries the 1-based line/column of the syntax
// error; shape covers wrong keys, types or array lengths; range covers
// entries outside [0, n).
struct IoError : std::runtime_error {
  enum class Kind { parse, shape, range };
  Kind kind;
  int line = 0, col = 0;

  IoError(Kind k, const std::string& msg, int line_ = 0, int col_ = 0)
      : std::runtime_error(msg), kind(k), line(line_), col(col_) {}
  const char* tag() const {
    switch (kind) {
      case Kind::parse: return "parse";
      case Kind::shape: return "shape";
      default: return "range";
    }
  }
};

enum class FileKind { solution, endo };

// Documents are JSON objects. A solution file holds {"l": n x n, "n": n,
// "r": n x n}; an endofunction file holds {"f": length-n, "n": n}. Saved
// output has sorted keys, two-space indentation and a trailing newline, so
// load/save round trips are byte identical.
std::string solution_to_text(const PairMap& pm);
PairMap solution_from_text(const std::string& text);
std::string endo_to_text(const EndoMap& f);
EndoMap endo_from_text(const std::string& text);

PairMap load_solution_file(const std::string& path);
void save_solution_file(const std::string& path, const PairMap& pm);
EndoMap load_endo_file(const std::string& path);
void save_endo_file(const std::string& path, const EndoMap& f);

// Distinguishes the two formats by their keys.
FileKind probe_file(const std::string& path);

}  // namespace fse
