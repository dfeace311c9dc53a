// zmc: command line front end for the separable zero mean curvature catalog.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "zmc/catalog.hpp"
#include "zmc/constraints.hpp"
#include "zmc/frontend.hpp"
#include "zmc/mesh.hpp"

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kNumeric = 3 };

zmc::Params parse_params(const std::vector<std::string>& items) {
    zmc::Params p;
    for (const std::string& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw zmc::ParamOutOfRange("--param expects name=value, got '" + item + "'");
        try {
            std::size_t used = 0;
            const double v = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument(item);
            p[item.substr(0, eq)] = v;
        } catch (const std::logic_error&) {
            throw zmc::ParamOutOfRange("bad value in --param " + item);
        }
    }
    return p;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw zmc::IOFailure("cannot open " + path + " for writing");
    return out;
}

void close_out(std::ofstream& out, const std::string& path) {
    out.close();
    if (!out) throw zmc::IOFailure("writing " + path + " failed");
}

int cmd_list(bool data) {
    if (data) {
        std::cout << zmc::serialize_catalog();
        return kPass;
    }
    for (const auto& e : zmc::list_entries()) {
        std::printf("%-24s %-7s %s\n", e.name.c_str(), e.section_ref.c_str(), e.implicit_string.c_str());
    }
    return kPass;
}

int cmd_verify(const std::string& name, bool all, const std::string& tol, const zmc::Params& params, bool quiet) {
    if (all == !name.empty()) throw CLI::ValidationError("verify", "give exactly one of NAME or --all");
    zmc::VerifyOptions opt;
    if (const char* env = std::getenv("ZMC_TOL"); env && *env) {
        opt.tol = zmc::apply_tolerance_overrides(opt.tol, env);
    }
    if (!tol.empty()) opt.tol = zmc::apply_tolerance_overrides(opt.tol, tol);

    std::vector<std::string> names = all ? zmc::entry_names() : std::vector<std::string>{name};
    int failed = 0;
    for (const std::string& n : names) {
        const zmc::CatalogEntry e = zmc::instantiate(n, all ? zmc::Params{} : params);
        const zmc::VerifyReport r = zmc::verify_entry(e, opt);
        if (!r.pass()) ++failed;
        if (quiet) std::printf("%s %s\n", r.pass() ? "PASS" : "FAIL", r.entry.c_str());
        else zmc::write_report(r, std::cout);
    }
    if (all) std::printf("%zu entries, %d failed\n", names.size(), failed);
    return failed ? kCheckFailed : kPass;
}

int cmd_sample(const std::string& name, int res, const std::string& path, const std::string& format,
               const zmc::Params& params) {
    const zmc::CatalogEntry e = zmc::instantiate(name, params);
    const zmc::Mesh m = zmc::extract_level_set(e.surface, res);
    const zmc::MeshAudit a = zmc::audit_mesh(m, e.surface);
    std::ofstream out = open_out(path);
    if (format == "obj") zmc::write_obj(m, out);
    else zmc::write_mesh_csv(m, out);
    close_out(out, path);
    std::printf("%s: %zu vertices, %zu faces, audit %s (worst |F|/bound %.3g)\n", path.c_str(), m.vertices.size(),
                m.faces.size(), a.pass ? "ok" : "FAILED", a.worst_ratio);
    return a.pass ? kPass : kCheckFailed;
}

int cmd_classify(const std::string& name, int res, const std::string& path, const zmc::Params& params) {
    const zmc::CatalogEntry e = zmc::instantiate(name, params);
    const auto pts = zmc::classify_grid(e.surface, res);
    std::ofstream out = open_out(path);
    zmc::write_classify_csv(pts, out);
    close_out(out, path);
    std::printf("%s: %zu points\n", path.c_str(), pts.size());
    return kPass;
}

int cmd_search(const std::string& kase, const std::string& seed_path, const std::string& freeze,
               const std::string& out_path, const std::string& name) {
    std::ifstream in(seed_path);
    if (!in) throw zmc::IOFailure("cannot read seed file " + seed_path);
    std::stringstream text;
    text << in.rdbuf();
    const zmc::ConstantsTriple seed = zmc::parse_seed(text.str(), kase);
    const zmc::ConstantsTriple found =
        zmc::solve_from_seed(seed.kcase, seed, zmc::parse_freeze(freeze));
    if (zmc::is_rotational(found)) {
        std::fprintf(stderr,
                     "warning: a c entry vanishes; with K = 0 this is a rotational surface, which the "
                     "separable construction leaves aside\n");
    }
    const std::string record = zmc::serialize_record(name, found, {1, 1, 1}, {}, std::nullopt, {});
    if (out_path.empty()) {
        std::cout << record;
    } else {
        std::ofstream out = open_out(out_path);
        out << record;
        close_out(out, out_path);
    }
    std::fprintf(stderr, "residual max-norm %.3e\n", zmc::residual_norm(found));
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separable zero mean curvature surfaces in Lorentz-Minkowski space"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List catalog entries");
    bool data = false;
    list->add_flag("--data", data, "Print the registry as a data file");

    std::string name, tol, out, format = "obj", kase, seed, freeze, record_name = "search-result";
    std::vector<std::string> param_items;
    bool all = false, quiet = false;
    int res = 96;

    auto* verify = app.add_subcommand("verify", "Run the invariant suite on an entry");
    verify->add_option("name", name, "Catalog entry or family");
    verify->add_flag("--all", all, "Verify every catalog entry");
    verify->add_option("--tol", tol, "Tolerance scale factor, or name=value list");
    verify->add_option("--param", param_items, "Family parameter override name=value");
    verify->add_flag("-q,--quiet", quiet, "One line per entry");

    auto* sample = app.add_subcommand("sample", "Extract a triangle mesh of F = 0");
    sample->add_option("name", name, "Catalog entry")->required();
    sample->add_option("--res", res, "Cells per axis")->check(CLI::Range(8, 1024));
    sample->add_option("--out", out, "Output path")->required();
    sample->add_option("--format", format, "obj or csv")->check(CLI::IsMember({"obj", "csv"}));
    sample->add_option("--param", param_items, "Family parameter override name=value");

    auto* classify = app.add_subcommand("classify", "Causal class of on-surface grid points as CSV");
    classify->add_option("name", name, "Catalog entry")->required();
    classify->add_option("--res", res, "Grid points per axis")->check(CLI::Range(1, 4096));
    classify->add_option("--out", out, "Output path")->required();
    classify->add_option("--param", param_items, "Family parameter override name=value");

    auto* search = app.add_subcommand("search", "Solve the constraint system from a seed");
    search->add_option("--case", kase, "pos, neg or zero")->required()->check(
        CLI::IsMember({"pos", "positive", "neg", "negative", "zero"}));
    search->add_option("--seed", seed, "Seed file")->required();
    search->add_option("--freeze", freeze, "Frozen entries, e.g. b1,c3,b3")->required();
    search->add_option("--out", out, "Write the record here instead of stdout");
    search->add_option("--name", record_name, "Name for the output record");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        const zmc::Params params = parse_params(param_items);
        if (*list) return cmd_list(data);
        if (*verify) return cmd_verify(name, all, tol, params, quiet);
        if (*sample) return cmd_sample(name, res, out, format, params);
        if (*classify) return cmd_classify(name, res, out, params);
        if (*search) return cmd_search(kase, seed, freeze, out, record_name);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const zmc::UnknownEntry& e) {
        std::fprintf(stderr, "UnknownEntry: %s\n", e.what());
        return kUsage;
    } catch (const zmc::ParamOutOfRange& e) {
        std::fprintf(stderr, "ParamOutOfRange: %s\n", e.what());
        return kUsage;
    } catch (const zmc::InvalidFreeze& e) {
        std::fprintf(stderr, "InvalidFreeze: %s\n", e.what());
        return kUsage;
    } catch (const zmc::NoConvergence& e) {
        std::fprintf(stderr, "NoConvergence: %s\n", e.what());
        return kNumeric;
    } catch (const zmc::EmptyLevelSet& e) {
        std::fprintf(stderr, "EmptyLevelSet: %s\n", e.what());
        return kNumeric;
    } catch (const zmc::IOFailure& e) {
        std::fprintf(stderr, "IOFailure: %s\n", e.what());
        return kNumeric;
    } catch (const zmc::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNumeric;
    }
    return kUsage;
}
