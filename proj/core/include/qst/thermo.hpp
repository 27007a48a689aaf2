#pragma once

#include <optional>
#include <vector>

#include "qst/opclass.hpp"

namespace qst {

/// Placement of distinct particles on lattice sites at one instant.
/// site_of[p] is the site of particle p; occupation is derived. Particles
/// always sit on distinct sites, so site_of is injective.
struct LatticeConfig {
    int n_particles = 0;
    int n_sites = 0;
    std::vector<int> site_of;  // length n_particles, values in [0, n_sites)

    /// particle at site q, or nullopt for an empty site
    std::optional<int> particle_at(int site) const;

    void check() const;
};

struct ThermoTransition {
    LatticeConfig from;
    LatticeConfig to;

    void check() const;
    bool any_particle_moves() const;
};

struct FactoredOperator {
    Operator op;
    Factorization factors;
};

/// S: particles fixed, sites transformed. One |Q|-dimensional factor per
/// particle; each factor is the transposition of the particle's start and
/// end sites. Local by construction and always invertible.
FactoredOperator build_S(const ThermoTransition& tr);

/// T: sites fixed, particles transformed. One (|P|+1)-dimensional factor per
/// site over the contents basis {empty, p_1, ..., p_P}. The defining map
/// sends the t=0 occupation configuration to the t=1 one; it extends to the
/// whole basis by relocating every site's content along the same site
/// permutation (sites left unconstrained are matched in index order), which
/// keeps T a permutation matrix.
FactoredOperator build_T(const ThermoTransition& tr);

struct ThermoReport {
    OpClass s_class;
    OpClass t_class;
    bool time_experienced = false;  // the particle system's clock must use T
};

ThermoReport thermo_report(const ThermoTransition& tr);

}  // namespace qst
