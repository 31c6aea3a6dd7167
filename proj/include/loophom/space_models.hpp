#pragma once

#include "loophom/ss_engine.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace loophom {

enum class SpaceFamily { circle, odd_sphere, even_sphere, complex_projective, sphere_product };

struct SpaceTag {
    SpaceFamily family = SpaceFamily::circle;
    int n = 1;

    static SpaceTag circle() { return {SpaceFamily::circle, 1}; }
    static SpaceTag odd_sphere(int n);
    static SpaceTag even_sphere(int n);
    static SpaceTag complex_projective(int n);
    /// S^n x S^n, the base of the path-over-diagonal fibration.
    static SpaceTag sphere_product(int n);

    /// `s1`, `s^n:odd:<n>`, `s^n:even:<n>`, `cp^n:<n>`.
    static SpaceTag parse(const std::string& text);
    std::string to_string() const;
    std::string display_name() const;
    int dimension() const;

    friend bool operator==(const SpaceTag&, const SpaceTag&) = default;
};

enum class FibrationKind { evaluation, path_over_diagonal, loop_homology };

struct FibrationTag {
    FibrationKind kind = FibrationKind::evaluation;
    SpaceTag base;  // M; the path-over-diagonal fibration lives over M x M
    bool has_cross_section = true;

    static FibrationTag evaluation(const SpaceTag& m) { return {FibrationKind::evaluation, m, true}; }
    static FibrationTag path_over_diagonal(const SpaceTag& m) { return {FibrationKind::path_over_diagonal, m, false}; }
    static FibrationTag loop_homology(const SpaceTag& m) { return {FibrationKind::loop_homology, m, true}; }
};

/// Integral cohomology ring with generators in bidegree (deg, 0).
AlgebraPresentation cohomology_model(const SpaceTag& s);

struct LoopSpaceModel {
    AlgebraPresentation homology;    // Pontryagin ring, generators in (0, deg)
    AlgebraPresentation cohomology;  // generators in (0, deg)
};

LoopSpaceModel loop_space_model(const SpaceTag& s);

/// p in [-dim, 0], q in [0, max_total + 2 dim]: every anti-diagonal up to max_total and every
/// differential touching it stays inside.
Window loop_window(const SpaceTag& s, int max_total);
/// p in [0, dim of the base], q in [0, q_max].
Window serre_window(const FibrationTag& f, int q_max);

/// Second-quadrant E_2 = H^{-p}(M; H_q(Omega M)). Not available for the circle.
Page loop_homology_E2(const SpaceTag& s, const Window& w, Coefficients k = Coefficients::integers);
/// Cohomological E_2 = H^p(base) (x) H^q(Omega M).
Page serre_E2(const FibrationTag& f, const Window& w);

/// Base generators; the constant-loop section makes them permanent cycles.
std::set<std::string> cross_section_cycles(const FibrationTag& f);

/// Nonzero loop-homology differentials: none for odd spheres, d_{2n}(z) = sign (n+1) x^n y for CP^n,
/// d_n(y) = sign 2 x y^2 for even spheres.
Schedule install_known_differentials(const SpaceTag& s, const Page& e2, int sign = 1);

/// Evaluation-fibration Serre differentials: d^{2n}(g) = sign (n+1) x^n z for CP^n,
/// d^n(g) = sign 2 x z for even spheres, none for odd spheres.
Schedule install_serre_differentials(const SpaceTag& s, const Page& e2, int sign = 1);

/// Page index of the single nonzero loop-homology differential (0 if none).
int known_differential_page(const SpaceTag& s);

/// Answer of the closed formulas. The circle has group-algebra summands in degrees 0 and -1,
/// which are not finitely generated abelian groups and are reported by tag.
struct ClosedFormGroup {
    AbelianGroup group;
    std::size_t group_algebra_rank = 0;
    std::string tag;  // "Z[t,t^-1]" when group_algebra_rank > 0

    std::string to_string() const;
    friend bool operator==(const ClosedFormGroup&, const ClosedFormGroup&) = default;
};

ClosedFormGroup closed_form_groups(const SpaceTag& s, int i);

/// Closed-form algebra, generators placed at the E_inf bidegrees of their representatives.
AlgebraPresentation closed_form_presentation(const SpaceTag& s);
/// E_2 representatives (loop-homology page algebra) of the closed-form generators.
std::map<std::string, AlgebraElement> closed_form_assignment(const SpaceTag& s, const AlgebraPresentation& e2);

struct ChoiceCheck {
    int c = 0;
    bool ok = true;
    std::vector<std::string> failures;
};

struct MultiplicativeExtension {
    bool verified = false;
    std::string argument;  // "dimension", "choice independence" or "unverified multiplicative extension"
    std::vector<std::string> details;
    std::vector<ChoiceCheck> choices;
};

/// Dimension argument when no closed-form generator has lower-filtration classes in its total degree;
/// otherwise every generator with such classes is moved by c times their lifts (c in [-2, 2]) and all
/// relations are re-evaluated.
MultiplicativeExtension multiplicative_extension_check(const SpaceTag& s, const Page& einf);

struct N2Report {
    bool ok = true;
    std::vector<ChoiceCheck> choices;  // one per c in [-2, 2]
};

/// S^2: v_c = y^2 + c x y^4 (E_2 labels) in place of the closed-form y; all relations vanish for every c.
N2Report n2_extension_check();

/// Serre fiber cohomology monomial -> dual loop-homology fiber monomial, base part kept:
/// even spheres g_k <-> y^{2k}, z g_k <-> y^{2k+1}; CP^n g_k <-> y^k, z g_k <-> z y^k; odd spheres g_k <-> y^k.
Monomial dual_monomial(const SpaceTag& s, const AlgebraPresentation& serre, const Monomial& m,
                       const AlgebraPresentation& loop);

}  // namespace loophom
