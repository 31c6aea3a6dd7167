#pragma once

#include "loophom/space_models.hpp"
#include "loophom/ss_engine.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loophom {

/// Algebra map between E_2 pages induced by a map of fibrations, determined by generator images.
class PageMorphism {
public:
    PageMorphism(const Page& source, const Page& target, std::map<std::size_t, AlgebraElement> images);

    const Page& source() const noexcept { return source_; }
    const Page& target() const noexcept { return target_; }

    AlgebraElement apply(const Monomial& m) const;
    AlgebraElement apply(const AlgebraElement& e) const;
    /// Matrix from the source cell at b to the target cell at b.
    IntMatrix matrix(Bidegree b) const;
    const std::map<Bidegree, IntMatrix>& matrices() const noexcept { return matrices_; }

private:
    AlgebraElement apply_generator_power(std::size_t i, int k) const;

    Page source_, target_;
    std::map<std::size_t, AlgebraElement> images_;
    std::map<Bidegree, IntMatrix> matrices_;
};

/// Multiplicative extension of generator images (by name; missing generators map to zero).
/// Throws "morphism not homogeneous" or "relation not respected".
PageMorphism induced_map(const std::map<std::string, AlgebraElement>& images, const Page& source, const Page& target);

struct NaturalityReport {
    bool ok = true;
    std::size_t cells_checked = 0;
    std::vector<std::string> violations;
};

/// d_tgt o m = m o d_src on every source window cell whose images stay in the target window.
NaturalityReport check_naturality(const PageMorphism& m, const Differential& d_src, const Differential& d_tgt);

/// Forced image of d_tgt on m(g) from d_tgt(m(g)) = m(d_src(g)), where m(g) must be +-1 times a target generator.
/// Returns the target generator name and its image. Throws "underdetermined" when m(g) = 0 or is not a generator.
std::pair<std::string, AlgebraElement> solve_by_naturality(const PageMorphism& m, const Differential& d_src,
                                                           const std::string& g);

struct AbutmentConstraint {
    std::map<int, AbelianGroup> groups;            // known target of convergence, by total degree
    std::vector<AlgebraElement> surviving_classes;  // must survive with no multiple becoming a boundary
    std::vector<AlgebraElement> boundary_classes;   // must be boundaries (kernel of the edge map)
};

struct AbutmentSolution {
    std::map<std::string, AlgebraElement> images;
    std::vector<std::vector<int>> coefficients;  // per unknown, in target-basis order; the sort key
};

struct AbutmentSearch {
    std::vector<AbutmentSolution> solutions;  // canonically sorted
    std::vector<std::string> unknowns;        // generators whose image was searched
    std::size_t candidates = 0;               // assignments tried
    std::size_t d_squared_rejected = 0;
    int checked_lo = 0, checked_hi = -1;      // total degrees compared with the constraint
};

/// Exhaustive search over images with coefficients in [-B, B] for every generator whose d_r target cell is
/// nonempty, keeping assignments with d o d = 0 whose E_inf matches the constraint on the certified range.
/// Parallel over candidates. Throws "no admissible assignment".
AbutmentSearch solve_by_abutment(const Page& page, int r, const AbutmentConstraint& c, int bound,
                                 const std::set<std::string>& permanent_cycles = {}, bool parallel = true);

/// Coefficient of b^{j+1} in (-1)^{j|t|} b^j t - t b^j on Z[b], |b| = 2k-1, t = tau(u) = b, chi(t) = -t.
Int brown_shih_differential(int k, int j);

/// Transpose with respect to dual bases.
IntMatrix dualize_differential(const IntMatrix& d);

/// Loop-homology matrix at source (0, q) obtained by dualizing the Serre matrix (0, q + r - 1) -> (r, q),
/// in loop basis order. Throws "duality mismatch" when the fiber duality does not match the bases.
IntMatrix dual_matrix(const SpaceTag& s, const Page& serre, const Differential& d_serre, const Page& loop, int q);

/// Loop-homology generator images read off the dualized matrices.
std::map<std::string, AlgebraElement> dual_loop_images(const SpaceTag& s, const Page& serre, const Differential& d_serre,
                                                       const Page& loop);

struct DualizationReport {
    bool ok = true;
    std::size_t cells_compared = 0;
    std::vector<std::string> mismatches;
};

/// Dualizes the Serre differential d_serre (column 0 -> column r) cell by cell with the fiber duality of s and
/// compares with d_loop on the loop-homology page.
DualizationReport compare_dualized(const SpaceTag& s, const Page& serre, const Differential& d_serre, const Page& loop,
                                   const Differential& d_loop);

struct DerivationStep {
    std::string constraint;  // cross-section / abutment / naturality / Leibniz / duality
    std::string statement;
};

struct UniversalDerivation {
    int n = 2;
    bool consistent = true;
    std::vector<DerivationStep> steps;
    AbutmentSearch search;
    AlgebraElement evaluation_image;  // d^n(gamma_1) on the evaluation fibration (E_2 of Omega M -> Lambda M -> M)
    Schedule loop_schedule;           // dualized loop-homology differential
    std::string render() const;
};

/// The even-sphere chain: abutment on the path-over-diagonal fibration, naturality along the diagonal,
/// dualization to the loop-homology page, Brown-Shih cross-check.
UniversalDerivation derive_even_sphere_differential(int n, int bound = 2, int max_total = 30);

}  // namespace loophom
