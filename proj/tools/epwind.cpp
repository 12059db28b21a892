#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "epwind/analysis.hpp"
#include "epwind/config.hpp"
#include "epwind/error.hpp"
#include "epwind/output.hpp"
#include "epwind/selftest.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kNumeric = 2, kGeometry = 3, kSelftest = 4 };

int exit_code(epwind::ErrorCategory c) {
    switch (c) {
        case epwind::ErrorCategory::Config: return kConfig;
        case epwind::ErrorCategory::Numeric: return kNumeric;
        case epwind::ErrorCategory::Geometry: return kGeometry;
    }
    return kNumeric;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw epwind::ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

int cmd_analyze(const std::string& config, const fs::path& out_dir) {
    const epwind::AnalysisConfig cfg = epwind::load_config(config);
    const epwind::AnalysisResult a = epwind::analyze(cfg);
    ensure_dir(out_dir);
    epwind::write_file(out_dir / "degeneracies.json", epwind::dump(epwind::degeneracies_json(a)));
    epwind::write_file(out_dir / "branch_lines.json", epwind::dump(epwind::branch_lines_json(a)));
    std::ostringstream csv;
    epwind::write_grid_csv(csv, a.grid);
    epwind::write_file(out_dir / "grid.csv", csv.str());

    int eps = 0;
    for (const auto& d : a.degeneracies) eps += d.kind == epwind::DegeneracyKind::ExceptionalPoint;
    std::cout << a.degeneracies.size() << " degeneracies (" << eps << " exceptional points), " << a.lines.size()
              << " branch lines\n";
    for (const auto& line : a.lines) {
        std::cout << "  " << line.label << " " << line.permutation.cycles() << " ends: "
                  << epwind::to_string(line.end_kind[0]) << ", " << epwind::to_string(line.end_kind[1]) << '\n';
    }
    std::cout << "wrote " << (out_dir / "degeneracies.json").string() << ", " << (out_dir / "branch_lines.json").string()
              << ", " << (out_dir / "grid.csv").string() << '\n';
    return kOk;
}

int cmd_holonomy(const std::string& config, int loop, const fs::path& out_dir) {
    const epwind::AnalysisConfig cfg = epwind::load_config(config);
    if (cfg.loops.empty()) throw epwind::ConfigError("config defines no loop or circle");
    std::vector<std::size_t> which;
    if (loop >= 0) {
        if (static_cast<std::size_t>(loop) >= cfg.loops.size()) {
            throw epwind::ConfigError("--loop " + std::to_string(loop) + " out of range (config has " +
                                      std::to_string(cfg.loops.size()) + " loops)");
        }
        which.push_back(static_cast<std::size_t>(loop));
    } else {
        for (std::size_t i = 0; i < cfg.loops.size(); ++i) which.push_back(i);
    }
    const epwind::AnalysisResult a = epwind::analyze(cfg);
    const auto reports = epwind::run_loops(a, cfg, which);
    ensure_dir(out_dir);
    epwind::write_file(out_dir / "holonomy.json", epwind::dump(epwind::holonomy_json(reports, which)));
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        std::cout << "loop " << which[i] << ": crossings";
        if (r.events.empty()) std::cout << " (none)";
        for (const auto& e : r.events) std::cout << ' ' << e.label << (e.direction == epwind::CrossingDirection::AtoB ? "" : "^-1");
        std::cout << "; product " << r.product.cycles() << ", tracking " << r.oracle.cycles()
                  << (r.agree ? ", agree" : ", DISAGREE") << '\n';
    }
    std::cout << "wrote " << (out_dir / "holonomy.json").string() << '\n';
    return kOk;
}

int cmd_selftest() {
    const epwind::SelftestResult r = epwind::run_selftest();
    epwind::print_selftest(std::cout, r);
    if (const auto* fail = r.first_failure()) {
        std::cerr << "epwind: selftest failed: first failing assertion: " << fail->name << '\n';
        return kSelftest;
    }
    std::cout << "selftest passed\n";
    return kOk;
}

int cmd_export_grid(const std::string& config, const fs::path& out) {
    const epwind::AnalysisConfig cfg = epwind::load_config(config);
    const epwind::SheetGrid grid = epwind::sample_grid(epwind::parse_family(cfg.family_text), cfg.region, cfg.n_re,
                                                       cfg.n_im, cfg.criterion, cfg.tolerances.eigen);
    if (out.has_parent_path()) ensure_dir(out.parent_path());
    std::ostringstream csv;
    epwind::write_grid_csv(csv, grid);
    epwind::write_file(out, csv.str());
    std::cout << "wrote " << out.string() << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riemann-sheet, branch-line and holonomy analysis for polynomial matrix families"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = ".";
    std::string out_path;
    int loop = -1;

    auto* analyze = app.add_subcommand("analyze", "Write degeneracies.json, branch_lines.json and grid.csv");
    analyze->add_option("config", config, "Config file")->required();
    analyze->add_option("--out-dir", out_dir, "Output directory");

    auto* holonomy = app.add_subcommand("holonomy", "Write holonomy.json for the config's loops");
    holonomy->add_option("config", config, "Config file")->required();
    holonomy->add_option("--loop", loop, "Loop index (0-based); default all")->check(CLI::NonNegativeNumber);
    holonomy->add_option("--out-dir", out_dir, "Output directory");

    auto* selftest = app.add_subcommand("selftest", "Run the bundled fixture end to end");

    auto* export_grid = app.add_subcommand("export-grid", "Write the sorted sheet grid as CSV");
    export_grid->add_option("config", config, "Config file")->required();
    export_grid->add_option("--out", out_path, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*analyze) return cmd_analyze(config, out_dir);
        if (*holonomy) return cmd_holonomy(config, loop, out_dir);
        if (*selftest) return cmd_selftest();
        if (*export_grid) return cmd_export_grid(config, out_path);
    } catch (const epwind::Error& e) {
        std::cerr << "epwind: error: " << e.what() << '\n';
        return exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "epwind: error: " << e.what() << '\n';
        return kNumeric;
    }
    return kConfig;
}
