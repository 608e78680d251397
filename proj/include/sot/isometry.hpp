#ifndef SOT_ISOMETRY_HPP
#define SOT_ISOMETRY_HPP

#include "sot/surface.hpp"

#include <span>
#include <string>
#include <vector>

namespace sot {

/// Sum of separated products X(x)*Y(y). Partial derivatives differentiate
/// one factor exactly, so no numerical differentiation enters the residuals.
class Fn2 {
public:
    struct Term {
        Fn X, Y;
    };

    Fn2() = default;
    void add(Fn X, Fn Y) { terms_.push_back({std::move(X), std::move(Y)}); }
    void add_scaled(double a, const Fn2& other);

    double value(double x, double y, Side sx = Side::Auto, Side sy = Side::Auto) const;
    double dx(double x, double y, Side sx = Side::Auto, Side sy = Side::Auto) const;
    double dy(double x, double y, Side sx = Side::Auto, Side sy = Side::Auto) const;

    Fn2 scaled(double a) const;
    const std::vector<Term>& terms() const { return terms_; }
    bool exact() const;

private:
    std::vector<Term> terms_;
};

struct FieldPartials {
    double u, v, w;
    double ux, uy, vx, vy, wx, wy;
};

enum class Mode { Twist, Stretch, BendS, BendP, BendPbar, Combination, Custom };

std::string mode_name(Mode m);

/// Displacement field in the surface's shared frame, with exact one-sided
/// partial derivatives. Immutable; evaluation is pure.
class DisplacementField {
public:
    DisplacementField(Fn2 u, Fn2 v, Fn2 w, Mode mode, Vec3 frame_u, Vec3 frame_v, Vec3 frame_w);

    FieldPartials partials(double x, double y, Side sx = Side::Auto, Side sy = Side::Auto) const;
    Vec3 adapted(double x, double y, Side sx = Side::Auto, Side sy = Side::Auto) const;
    Vec3 canonical(double x, double y, Side sx = Side::Auto, Side sy = Side::Auto) const;

    const Fn2& u() const { return u_; }
    const Fn2& v() const { return v_; }
    const Fn2& w() const { return w_; }
    Mode mode() const { return mode_; }
    double amplitude() const { return amplitude_; }
    bool exact() const { return u_.exact() && v_.exact() && w_.exact(); }

    DisplacementField scaled(double a) const;
    /// Verification hook: returns a copy with the w component scaled, which
    /// breaks the governing constraints on purpose.
    DisplacementField with_w_scaled(double factor) const;

    Vec3 frame_u() const { return fu_; }
    Vec3 frame_v() const { return fv_; }
    Vec3 frame_w() const { return fw_; }

private:
    Fn2 u_, v_, w_;
    Mode mode_ = Mode::Custom;
    double amplitude_ = 1.0;
    Vec3 fu_, fv_, fw_;
};

/// The closed-form solution family. All fields satisfy the first-order
/// isometry constraints panelwise and stay continuous across creases.
DisplacementField twist_mode(const TranslationSurface& surf);
DisplacementField stretch_mode(const TranslationSurface& surf);
DisplacementField bend_s(const TranslationSurface& surf);
DisplacementField bend_p(const TranslationSurface& surf);
DisplacementField bend_pbar(const TranslationSurface& surf);

DisplacementField combine(std::span<const DisplacementField> fields, std::span<const double> weights);

/// Linear combination of bend_s / bend_p / bend_pbar that is free of secular
/// terms, i.e. whose out-of-plane component is quadratic in the cartesian
/// coordinates up to a periodic correction. Requires periodic profiles.
DisplacementField out_of_plane_bend(const TranslationSurface& surf);

/// Complementary in-plane combination used for figure export.
DisplacementField in_plane_bend(const TranslationSurface& surf);

/// Weights of the secular-free combination of (s), (p), (pbar).
Vec3 out_of_plane_weights(const TranslationSurface& surf);

/// Same weights found numerically: least squares on the periodicity defect of
/// the candidates' out-of-plane remainders. Used for surfaces outside the
/// closed-form family; throws on rank deficiency.
Vec3 secular_free_weights_ls(const TranslationSurface& surf);

DisplacementField make_mode(const TranslationSurface& surf, const std::string& name,
                            std::span<const double> combo_weights = {});

} // namespace sot

#endif
