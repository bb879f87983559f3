#include "gco/policy.hpp"

#include <algorithm>
#include <cmath>

#include "gco/error.hpp"

namespace gco {

Vec2 Observation::mask_centroid() const {
    Vec2 acc{0.0, 0.0};
    size_t n = 0;
    for (int iy = 0; iy < image.width; ++iy)
        for (int ix = 0; ix < image.width; ++ix)
            if (image.at(ix, iy)) {
                acc += frame.pixel_center_world(ix, iy);
                ++n;
            }
    return n == 0 ? frame.center : acc / static_cast<double>(n);
}

namespace {

// Pushes a contact outward along its ray from the centroid until it leaves the
// mask, then adds clearance plus one pixel.
Vec2 radial_shift(const Observation& obs, Vec2 centroid, Vec2 contact, Vec2 fallback_dir,
                  const HeuristicConfig& cfg) {
    if (!obs.mask_contains(contact)) return contact;
    Vec2 dir = contact - centroid;
    const double len = norm(dir);
    dir = len > 1e-12 ? dir / len : fallback_dir;

    const double rho = obs.frame.resolution;
    const double reach = obs.frame.width * rho;  // frame diagonal upper bound is not needed
    double boundary = len;
    for (double s = 0.0; s <= reach; s += rho * 0.25)
        if (obs.mask_contains(centroid + dir * s)) boundary = s;
    return centroid + dir * (boundary + cfg.clearance + rho);
}

std::vector<Vec2> interpolate_trajectory(Vec2 from, Vec2 to, const HeuristicConfig& cfg) {
    int count = cfg.horizon;
    const double len = distance(from, to);
    if (count > 1 && len / (count - 1) > cfg.max_step)
        count = static_cast<int>(std::ceil(len / cfg.max_step)) + 1;
    std::vector<Vec2> wp;
    wp.reserve(count);
    wp.push_back(from);
    for (int k = 1; k < count - 1; ++k)
        wp.push_back(from + (to - from) * (static_cast<double>(k) / (count - 1)));
    if (count > 1) wp.push_back(to);
    return wp;
}

}  // namespace

PolicyOutput heuristic_policy(const Observation& obs, const Pose2& T, int budget,
                              const HeuristicConfig& cfg) {
    if (!is_finite(T.translation) || !std::isfinite(T.rotation))
        throw ValidationError("heuristic_policy: non-finite transform");
    if (budget < 0 || budget > kBudgetMax)
        throw ValidationError("heuristic_policy: budget outside [0, 3]");

    PolicyOutput out;
    const Vec2 d = T.translation;
    const double disp = norm(d);
    if (budget == 0 || (disp == 0.0 && T.rotation == 0.0)) return out;

    const Vec2 centroid = obs.mask_centroid();
    std::vector<Vec2> placed;

    if (disp == 0.0) {
        // Pure rotation: antipodal pair at the mask rim; the transforms of these
        // points under T are tangential, producing a couple about the centroid.
        out.rotation_only = true;
        double rim = 0.0;
        for (int iy = 0; iy < obs.image.width; ++iy)
            for (int ix = 0; ix < obs.image.width; ++ix)
                if (obs.image.at(ix, iy))
                    rim = std::max(rim, distance(obs.frame.pixel_center_world(ix, iy), centroid));
        const double radius = rim + cfg.clearance + obs.frame.resolution;
        const int count = std::min(budget, 2);
        for (int k = 0; k < count; ++k)
            placed.push_back(centroid + Vec2{k == 0 ? radius : -radius, 0.0});
    } else {
        const Vec2 dir = d / disp;
        const Vec2 lateral = perp(dir);
        const Vec2 base = centroid - dir * cfg.standoff;
        const int count = std::min(budget, kBudgetMax);
        for (int k = 0; k < count; ++k) {
            const double offset = (k - (count - 1) * 0.5) * cfg.spacing;
            placed.push_back(radial_shift(obs, centroid, base + lateral * offset,
                                          dir * -1.0, cfg));
        }
    }

    for (const Vec2& c : placed) {
        out.contacts.contacts.push_back({c, false});
        out.trajectories.trajectories.push_back(
            interpolate_trajectory(c, apply_subgoal(T, centroid, c), cfg));
    }
    return out;
}

ContactSet decode_contacts(const DiscreteState& K, const ObservationFrame& frame) {
    if (K.tokens.size() != 2 * kBudgetMax)
        throw ValidationError("decode_contacts: state must hold 2 * 3 tokens");
    ContactSet out;
    for (int b = 0; b < kBudgetMax; ++b) {
        const int px = K.tokens[2 * b];
        const int py = K.tokens[2 * b + 1];
        if (!K.token_valid(px) || !K.token_valid(py))
            throw ValidationError("decode_contacts: token outside {1..w} u {mask}");
        if (px == kMaskToken || py == kMaskToken) {
            out.contacts.push_back({{0.0, 0.0}, true});
        } else {
            out.contacts.push_back({frame.token_to_local(px, py), false});
        }
    }
    return out;
}

int effective_budget(const ContactSet& contacts, const MaskConvention& convention) {
    int n = 0;
    for (const Contact& c : contacts.contacts) {
        if (c.masked) continue;
        if (distance(c.point, convention.sentinel) < convention.epsilon) continue;
        ++n;
    }
    return n;
}

ContactSet contacts_to_world(const ContactSet& object_frame, const Pose2& object_pose) {
    ContactSet out = object_frame;
    for (Contact& c : out.contacts)
        if (!c.masked) c.point = object_pose.apply(c.point);
    return out;
}

}  // namespace gco
