#include "qst/thermo.hpp"

#include <algorithm>
#include <cmath>

namespace qst {

namespace {

constexpr int kMaxParticles = 3;
constexpr int kMaxSites = 4;  // keeps dim(T) = (|P|+1)^|Q| at most 256

Eigen::Index ipow(Eigen::Index base, int exp) {
    Eigen::Index v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

}  // namespace

std::optional<int> LatticeConfig::particle_at(int site) const {
    for (int p = 0; p < n_particles; ++p) {
        if (site_of[static_cast<std::size_t>(p)] == site) return p;
    }
    return std::nullopt;
}

void LatticeConfig::check() const {
    if (n_particles < 1 || n_sites < 1) throw ArgumentError("need at least one particle and site");
    if (n_particles > kMaxParticles || n_sites > kMaxSites) {
        throw CapacityError("lattice exceeds the desk-scale caps (" +
                            std::to_string(kMaxParticles) + " particles, " +
                            std::to_string(kMaxSites) + " sites)");
    }
    if (n_particles > n_sites) throw ArgumentError("more particles than sites");
    if (static_cast<int>(site_of.size()) != n_particles) {
        throw ShapeError("site_of must have one entry per particle");
    }
    std::vector<bool> used(static_cast<std::size_t>(n_sites), false);
    for (int s : site_of) {
        if (s < 0 || s >= n_sites) throw ArgumentError("site index out of range");
        if (used[static_cast<std::size_t>(s)]) throw ArgumentError("two particles on one site");
        used[static_cast<std::size_t>(s)] = true;
    }
}

void ThermoTransition::check() const {
    from.check();
    to.check();
    if (from.n_particles != to.n_particles || from.n_sites != to.n_sites) {
        throw ShapeError("transition endpoints have different lattice sizes");
    }
}

bool ThermoTransition::any_particle_moves() const {
    return from.site_of != to.site_of;
}

FactoredOperator build_S(const ThermoTransition& tr) {
    tr.check();
    const int q = tr.from.n_sites;
    Operator s = Operator::identity(1);
    bool first = true;
    for (int p = 0; p < tr.from.n_particles; ++p) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(q, q);
        const int a = tr.from.site_of[static_cast<std::size_t>(p)];
        const int b = tr.to.site_of[static_cast<std::size_t>(p)];
        if (a != b) {
            m(a, a) = 0;
            m(b, b) = 0;
            m(a, b) = 1;
            m(b, a) = 1;
        }
        s = first ? Operator(std::move(m)) : tensor(s, Operator(std::move(m)));
        first = false;
    }
    Factorization f;
    f.dims.assign(static_cast<std::size_t>(tr.from.n_particles), q);
    return {std::move(s), std::move(f)};
}

FactoredOperator build_T(const ThermoTransition& tr) {
    tr.check();
    const int q = tr.from.n_sites;
    const Eigen::Index base = tr.from.n_particles + 1;  // contents: empty + each particle
    const Eigen::Index dim = ipow(base, q);

    // Site permutation: occupied sites relocate their content to wherever the
    // same particle sits at t=1; the remaining sites are matched in order.
    std::vector<int> perm(static_cast<std::size_t>(q), -1);
    std::vector<bool> taken(static_cast<std::size_t>(q), false);
    for (int site = 0; site < q; ++site) {
        if (auto p = tr.from.particle_at(site)) {
            const int dest = tr.to.site_of[static_cast<std::size_t>(*p)];
            perm[static_cast<std::size_t>(site)] = dest;
            taken[static_cast<std::size_t>(dest)] = true;
        }
    }
    std::vector<int> free_dest;
    for (int site = 0; site < q; ++site) {
        if (!taken[static_cast<std::size_t>(site)]) free_dest.push_back(site);
    }
    std::size_t next = 0;
    for (int site = 0; site < q; ++site) {
        if (perm[static_cast<std::size_t>(site)] < 0) perm[static_cast<std::size_t>(site)] = free_dest[next++];
    }

    // Contents basis index: site 0 is the most significant digit.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<Eigen::Index> digits(static_cast<std::size_t>(q));
    for (Eigen::Index in = 0; in < dim; ++in) {
        Eigen::Index rest = in;
        for (int site = q - 1; site >= 0; --site) {
            digits[static_cast<std::size_t>(site)] = rest % base;
            rest /= base;
        }
        Eigen::Index out = 0;
        std::vector<Eigen::Index> moved(static_cast<std::size_t>(q), 0);
        for (int site = 0; site < q; ++site) {
            moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(site)])] =
                digits[static_cast<std::size_t>(site)];
        }
        for (int site = 0; site < q; ++site) {
            out = out * base + moved[static_cast<std::size_t>(site)];
        }
        m(out, in) = 1.0;
    }

    Factorization f;
    f.dims.assign(static_cast<std::size_t>(q), base);
    return {Operator(std::move(m)), std::move(f)};
}

ThermoReport thermo_report(const ThermoTransition& tr) {
    ThermoReport r;
    const FactoredOperator s = build_S(tr);
    const FactoredOperator t = build_T(tr);
    r.s_class = classify(s.op, s.factors);
    r.t_class = classify(t.op, t.factors);
    r.time_experienced = !r.t_class.is_li();
    return r;
}

}  // namespace qst
