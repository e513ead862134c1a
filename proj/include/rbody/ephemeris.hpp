#pragma once

// Exactly periodic super-eight primaries: one eighth of the period is
// integrated, the rest follows from the two reversing symmetries whose fixed
// sets bound that segment.

#include <memory>
#include <vector>

#include "rbody/configs.hpp"
#include "rbody/integrate.hpp"
#include "rbody/symmetry.hpp"

namespace rbody {

/// Primary-only start involution of a choreography family.
inline LinearInvolution family_start_involution(ChoreographyFamily family) {
    return (family == ChoreographyFamily::isosceles ? build(InvolutionName::phi_1x) : build(InvolutionName::psi_1x))
        .primaries();
}

class ChoreographyEphemeris {
public:
    ChoreographyEphemeris(ChoreographyFamily family, const IntegratorConfig& config) {
        const ChoreographyIC ic = family == ChoreographyFamily::isosceles ? super_eight_isosceles()
                                                                          : super_eight_orthogonal();
        IntegratorConfig dense = config;
        dense.dense = true;
        Trajectory seg = propagate(ic.masses(), PotentialLaw::gravitational(), ic.state,
                                   ic.state.t + ic.quarter_period, dense);
        const auto r_hat = find_fixing_involution(seg.final_flat(), 4, kFixTolerance);
        if (!r_hat) throw NotFixedError("choreography segment end lies in no known fixed set", 1.0);
        orbit_ = std::make_shared<const SymmetricOrbit>(
            extend_orbit(std::move(seg), family_start_involution(family), *r_hat, kFixTolerance));
    }

    std::vector<Vec2> operator()(double t) const { return SystemState::from_flat(t, orbit_->flat_at(t)).positions; }
    SystemState state(double t) const { return orbit_->state_at(t); }
    const SymmetricOrbit& orbit() const { return *orbit_; }

private:
    static constexpr double kFixTolerance = 1e-9;
    std::shared_ptr<const SymmetricOrbit> orbit_;
};

}  // namespace rbody
