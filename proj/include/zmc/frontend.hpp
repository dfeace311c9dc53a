#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zmc/catalog.hpp"
#include "zmc/constraints.hpp"

namespace zmc {

// ─── verification suite ──────────────────────────────────────────────────────

struct Tolerances {
    double constraints = 1e-12;
    double zmc_a = 1e-9;
    double mean_curvature = 1e-7;
    double derivatives = 1e-5;
    double kk_ratio = 1e-9;
    double locus = 1e-7;
    double closed_form = 1e-8;
    double period = 1e-12;
    double elliptic_identity = 1e-6;
    double homothety = 1e-9;
    double lightlike = kLightlikeTol;
};

/// A bare number multiplies every tolerance; "name=value,name=value" sets single ones.
/// Throws ParamOutOfRange on unknown names or malformed values.
Tolerances apply_tolerance_overrides(Tolerances base, std::string_view spec);

struct VerifyOptions {
    Tolerances tol;
    int a_samples = 10000;
    int surface_samples = 1000;
    int closed_form_samples = 200;
    int homothety_lambdas = 20;
    int mesh_resolution = 24;
    bool mesh = true;
    std::uint64_t seed = 20240611;
};

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string note;
};

struct VerifyReport {
    std::string entry;
    std::vector<CheckResult> checks;

    bool pass() const noexcept;
};

/// Runs every invariant that applies to the entry.
VerifyReport verify_entry(const CatalogEntry& entry, const VerifyOptions& options = {});

/// Per-sample class tallies for an entry's expected class.
struct ClassTally {
    int spacelike = 0;
    int timelike = 0;
    int lightlike = 0;
    /// Strict samples of the wrong class (either class counts for Mixed entries).
    int misclassified = 0;
    bool matches = false;
};
ClassTally tally_classes(const SeparableSurface& s, const std::vector<Vec3>& points, ExpectedClass expected,
                         double tol = kLightlikeTol);

/// Max |F̃(λp)| over on-surface points p, where F̃ is the surface rebuilt from
/// rescale(constants, λ) with profiles f̃(x) = λ·f(x/λ).
double homothety_check(const SeparableSurface& s, const std::vector<Vec3>& points, double lambda);

void write_report(const VerifyReport& report, std::ostream& out);

// ─── classification grid ─────────────────────────────────────────────────────

struct ClassifiedPoint {
    Vec3 p{};
    CausalKind kind = CausalKind::Lightlike;
    double margin = 0.0;
    double a_residual = 0.0;
};

/// On-surface points from a res×res grid of cell centres over each pair of axes,
/// the third coordinate solved (unknown axis z, then y, then x).
std::vector<ClassifiedPoint> classify_grid(const SeparableSurface& s, int res);

/// Header `x,y,z,class,margin,A_residual`, one row per point in grid order.
void write_classify_csv(const std::vector<ClassifiedPoint>& points, std::ostream& out);

// ─── constant search ─────────────────────────────────────────────────────────

/// Reads a seed: either a catalog record (lines `a = …`, `b = …`, `c = …`, optional
/// `k = …`) or nine numbers a1 a2 a3 b1 b2 b3 c1 c2 c3. Returns the parsed k (or 1).
ConstantsTriple parse_seed(std::string_view text, std::string_view case_name);

/// True for K = 0 triples with a vanishing c entry, which describe rotational surfaces.
bool is_rotational(const ConstantsTriple& k, double tol = 1e-12);

}  // namespace zmc
