#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zmc/surface.hpp"

namespace zmc {

using Params = std::map<std::string, double, std::less<>>;

struct ParamSpec {
    std::string name;
    double default_value = 0.0;
    /// Human-readable admissibility condition, checked at instantiation.
    std::string admissible;
};

/// A translation symmetry F(p + period·e_axis) = F(p) claimed for an entry.
struct PeriodClaim {
    Axis axis = Axis::X;
    double period = 0.0;
};

struct CatalogEntry {
    std::string name;
    std::string family;
    std::string section_ref;
    std::string implicit_string;
    SeparableSurface surface;
    ExpectedClass expected_class = ExpectedClass::Mixed;
    std::vector<Line> lightlike_loci;
    std::vector<ParamSpec> free_params;
    Params params;
    /// Independent formula for f, g, h; empty where none is available.
    std::array<std::function<double(double)>, 3> closed_forms;
    std::array<std::string, 3> closed_form_text;
    std::vector<PeriodClaim> periods;
    /// True when every profile is elementary (no elliptic integral involved).
    bool quadrature_solvable = false;
    /// False when expected_class was measured on samples rather than taken from a stated result.
    bool class_stated = true;

    bool has_closed_forms() const noexcept {
        return closed_forms[0] && closed_forms[1] && closed_forms[2];
    }
};

struct EntrySummary {
    std::string name;
    std::string section_ref;
    std::string implicit_string;
};

/// All named entries in section order.
std::vector<EntrySummary> list_entries();
std::vector<std::string> entry_names();
/// Names accepted by instantiate() besides entry names (families and aliases).
std::vector<std::string> accepted_names();

/// Builds a named entry or family. Entry parameters are the defaults; `params`
/// overrides them. Throws UnknownEntry or ParamOutOfRange.
CatalogEntry instantiate(std::string_view name, const Params& params = {});

/// max |numeric profile − closed form| over n samples per axis, taken inside the box
/// and the profile's domain.
double closed_form_crosscheck(const CatalogEntry& entry, int n_samples);
double closed_form_crosscheck(std::string_view name, int n_samples);

/// max |F(p + period·e) − F(p)| over n on-surface sample points.
double period_check(const CatalogEntry& entry, const PeriodClaim& claim, int n_samples);

/// The registry as a plain-text data file (one [entry] record per catalog entry).
std::string serialize_catalog();
/// One record in the data-file format.
std::string serialize_record(const std::string& name, const ConstantsTriple& constants,
                             const std::array<int, 3>& signs, const Params& params,
                             const std::optional<Box>& box, const std::vector<Line>& loci,
                             const std::string& section = {}, const std::string& implicit = {});

}  // namespace zmc
