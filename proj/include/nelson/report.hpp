#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nelson {

// Outcome of checking one proof step. Failures are data, not exceptions.
struct StepResult {
  bool ok = false;
  std::string note;
};

struct CheckReport {
  std::vector<StepResult> steps;
  bool goal_ok = false;
  std::string note;

  bool accepted() const {
    if (!goal_ok) return false;
    for (const auto& s : steps)
      if (!s.ok) return false;
    return true;
  }

  // Index of the first rejected step, or -1.
  int first_rejected() const {
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (!steps[i].ok) return static_cast<int>(i);
    return -1;
  }
};

// Witness for a failed algebraic law: element indices in scan order plus a
// short rendering against the algebra's element names.
struct Witness {
  std::vector<int> elems;
  std::string text;
};

struct LawResult {
  std::string law;
  bool ok = true;
  long violations = 0;
  std::optional<Witness> witness;
};

struct ClassReport {
  std::string klass;
  std::vector<LawResult> laws;

  bool passed() const {
    for (const auto& l : laws)
      if (!l.ok) return false;
    return true;
  }

  const LawResult* find(const std::string& name) const {
    for (const auto& l : laws)
      if (l.law == name) return &l;
    return nullptr;
  }

  std::vector<std::string> failed_laws() const {
    std::vector<std::string> out;
    for (const auto& l : laws)
      if (!l.ok) out.push_back(l.law);
    return out;
  }
};

}  // namespace nelson
