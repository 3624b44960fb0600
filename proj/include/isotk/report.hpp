#pragma once

#include <string>
#include <vector>

namespace isotk {

/// Outcome of a single numerical check: worst violation found, where it
/// happened on the grid, and the tolerance that was in force.
struct VerificationReport {
    std::string check;
    bool pass = true;
    double worst_violation = 0.0;  // positive means the inequality was broken
    double at = 0.0;               // grid location of the worst violation
    double tol = 0.0;
    std::vector<double> rigidity_locations;  // grid points where equality held within tol
    std::string note;

    bool rigid() const { return !rigidity_locations.empty(); }
};

}  // namespace isotk
