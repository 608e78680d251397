#ifndef SOT_SURFACE_HPP
#define SOT_SURFACE_HPP

#include "sot/profile.hpp"

#include <Eigen/Core>
#include <optional>
#include <string>

namespace sot {

using Matrix2 = Eigen::Matrix2d;

struct Rect {
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    bool contains(double x, double y, double tol = 1e-9) const {
        return x >= x0 - tol && x <= x1 + tol && y >= y0 - tol && y <= y1 + tol;
    }
};

struct TangentCoeffs {
    double a1, a2; // profile tangent in the shared frame
    double b1, b2; // path tangent in the shared frame
};

class DisplacementField;

/// Surface of translation r(x,y) = alpha(x) + beta(y). The profile alpha
/// lives in a plane through e1 inclined by theta about e1; the path beta
/// lives in the (e2,e3) plane; the two planes stay perpendicular. The
/// shared orthonormal frame is [n_beta, n_alpha, n_beta x n_alpha].
class TranslationSurface {
public:
    static TranslationSurface make(ProfileCurve alpha, ProfileCurve beta, double theta, Rect domain);

    /// Named constructions: eggbox, smooth-eggbox, miura, curved-crease-miura,
    /// morph (needs theta), flat. Domain spans `periods` cells per direction.
    static TranslationSurface preset(const std::string& name, std::optional<double> theta,
                                     int periods_x = 4, int periods_y = 4);

    const ProfileCurve& alpha() const { return alpha_; }
    const ProfileCurve& beta() const { return beta_; }
    double theta() const { return theta_; }
    double cos_theta() const { return c_; }
    double sin_theta() const { return s_; }
    const Rect& domain() const { return dom_; }

    // shared frame in canonical coordinates
    Vec3 frame_u() const { return Vec3(1, 0, 0); }         // n_beta
    Vec3 frame_v() const { return Vec3(0, c_, s_); }       // n_alpha
    Vec3 frame_w() const { return Vec3(0, -s_, c_); }      // n_beta x n_alpha

    Vec3 position(double x, double y) const;
    TangentCoeffs tangent_coefficients(double x, double y, Side side_x = Side::Auto,
                                       Side side_y = Side::Auto) const;
    Matrix2 metric(double x, double y, Side side_x = Side::Auto, Side side_y = Side::Auto) const;
    Matrix2 infinitesimal_strain(const DisplacementField& d, double x, double y,
                                 Side side_x = Side::Auto, Side side_y = Side::Auto) const;

    // tangent-coefficient functions over the working domain (plus margins)
    const Fn& a1() const { return a1_; }
    const Fn& a2() const { return a2_; }
    const Fn& b1() const { return b1_; }
    const Fn& b2() const { return b2_; }

    bool periodic_x() const { return alpha_.periodic(); }
    bool periodic_y() const { return beta_.periodic(); }
    double period_x() const { return alpha_.period(); }
    double period_y() const { return beta_.period(); }

    /// Panel boundaries (crease lines and, for smooth kinds, period lines)
    /// covering the domain in each direction.
    std::vector<double> panel_lines_x() const;
    std::vector<double> panel_lines_y() const;

    bool exact() const { return a1_.exact() && a2_.exact() && b1_.exact() && b2_.exact(); }

    std::string describe() const;

private:
    TranslationSurface() = default;

    ProfileCurve alpha_, beta_;
    double theta_ = 0.0, c_ = 1.0, s_ = 0.0;
    Rect dom_;
    Fn a1_, a2_, b1_, b2_;
};

/// Rejects (profiles, theta) violating the construction's standing
/// assumptions: profile tangents must stay clear of the planes' intersection
/// (min sampled one-sided |a1|, |b1| >= 1e-9).
void validate_assumptions(const ProfileCurve& alpha, const ProfileCurve& beta, double theta);

} // namespace sot

#endif
