#ifndef SOT_TUBE_HPP
#define SOT_TUBE_HPP

#include "sot/isometry.hpp"

namespace sot {

/// Tubular surface: a closed cross-section swept along a path. The path is
/// the profile (x direction); the cross-section wraps in y over one full
/// perimeter.
TranslationSurface make_tube(const ProfileCurve& cross_section, const ProfileCurve& path,
                             double theta = 0.0, int path_periods = 3);

/// Named tube geometries: square-zigzag, square-sinusoid, kite-sinusoid, and
/// open-square-zigzag (the square cut at one vertex).
TranslationSurface tube_preset(const std::string& name, int path_periods = 3);

/// Displacement discontinuity across one wrap of the cross-section, sampled
/// at stations along the seam. Values are normalized by the largest
/// displacement magnitude seen at the stations; the jump is reported raw and
/// after removing a best-fit infinitesimal rigid motion.
struct SeamJump {
    std::string mode;
    double max_raw = 0.0;
    double max_rigid_removed = 0.0;
    double scale = 0.0;
    std::vector<Vec3> samples; // canonical-basis jump vectors
};

SeamJump seam_jump(const TranslationSurface& tube, const DisplacementField& field,
                   const std::string& label, int stations = 24);

struct SeamReport {
    std::string surface;
    std::vector<SeamJump> modes;
};

/// Jump report for the standard mode set (twist, stretch, the three bends).
SeamReport tube_report(const TranslationSurface& tube, int stations = 24);

std::string format_report(const SeamReport& r);

} // namespace sot

#endif
