#pragma once

#include <stdexcept>
#include <string>

namespace eegsel {

// Error taxonomy mirrors the CLI exit codes: config errors (2), data errors (3),
// numeric non-convergence (4).
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class data_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class numeric_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ADHD is the positive class throughout.
enum class ClassLabel : int { ADHD = 0, HC = 1 };

inline const char* to_string(ClassLabel l) {
  return l == ClassLabel::ADHD ? "ADHD" : "HC";
}

inline ClassLabel label_from_string(const std::string& s) {
  if (s == "ADHD") return ClassLabel::ADHD;
  if (s == "HC") return ClassLabel::HC;
  throw data_error("unknown class label: '" + s + "' (expected ADHD or HC)");
}

inline ClassLabel opposite(ClassLabel l) {
  return l == ClassLabel::ADHD ? ClassLabel::HC : ClassLabel::ADHD;
}

}  // namespace eegsel
