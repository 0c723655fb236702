#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace accdet::validate {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the full acceptance battery (criteria 1-6). Progress lines go to `log`
// when non-null; one result per criterion, in order.
std::vector<CriterionResult> run_acceptance_battery(std::ostream* log = nullptr);

// Individual criteria, usable from tests.
CriterionResult criterion_packet_oracle();       // 1: closed form vs PDE evolution
CriterionResult criterion_gaussian_reduction();  // 2: reduced 3D vs 6D Monte Carlo
CriterionResult criterion_residue_oracle();      // 3: ladder vs direct t-quadrature
CriterionResult criterion_unruh_recovery();      // 4: classical-then-point sweep
CriterionResult criterion_decoupling();          // 5: point-first b^3 scaling
CriterionResult criterion_invariant_battery();   // 6: normalization, semigroup, ...

}  // namespace accdet::validate
