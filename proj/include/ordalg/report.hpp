#pragma once

#include <string>
#include <vector>

namespace ordalg {

/// Outcome of an exhaustive or property suite. Counterexamples are
/// serialized witnesses; the suite passed iff there are none.
struct Report {
  std::string suite;
  std::size_t instances = 0;
  std::size_t passes = 0;
  std::vector<std::string> counterexamples;
  double duration_ms = 0.0;

  bool ok() const { return counterexamples.empty() && passes == instances; }

  void record(bool pass, const std::string& witness) {
    ++instances;
    if (pass)
      ++passes;
    else
      counterexamples.push_back(witness);
  }
};

}  // namespace ordalg
