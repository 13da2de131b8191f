#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coteach {

class sim_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed scenario/config file (syntax or schema).
class parse_error : public sim_error {
  public:
    using sim_error::sim_error;
};

// A well-formed scenario that fails its invariants; carries the full report.
class validation_error : public sim_error {
  public:
    validation_error(std::string msg, std::vector<std::string> violations)
        : sim_error(std::move(msg)), violations(std::move(violations)) {}
    std::vector<std::string> violations;
};

// Conditioning emptied the support. Unreachable under a truthful teacher;
// signals a corrupted episode.
class inconsistent_answer : public sim_error {
  public:
    using sim_error::sim_error;
};

// generate_scenario ran out of retries (infeasible parameters).
class generation_exhausted : public sim_error {
  public:
    using sim_error::sim_error;
};

class config_error : public sim_error {
  public:
    using sim_error::sim_error;
};

// A selector was invoked with an empty candidate set (engine bug).
class no_candidate : public sim_error {
  public:
    using sim_error::sim_error;
};

}  // namespace coteach
