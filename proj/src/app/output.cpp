#include "epwind/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "epwind/error.hpp"

namespace epwind {

using nlohmann::json;

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

json complex_json(Complex z) { return {{"re", round12(z.real())}, {"im", round12(z.imag())}}; }

json permutation_json(const Permutation& p) { return {{"cycles", p.cycles()}, {"matrix", p.matrix()}}; }

namespace {

json region_json(const Region& r) {
    return {{"re_min", round12(r.re_min)}, {"re_max", round12(r.re_max)}, {"im_min", round12(r.im_min)},
            {"im_max", round12(r.im_max)}};
}

json end_json(const BranchLine& line, std::size_t which) {
    json e{{"kind", to_string(line.end_kind[which])}};
    e["degeneracy_id"] = line.terminates_at[which] ? json(*line.terminates_at[which]) : json(nullptr);
    return e;
}

}  // namespace

json degeneracies_json(const AnalysisResult& a) {
    json list = json::array();
    int eps = 0;
    for (const auto& d : a.degeneracies) {
        if (d.kind == DegeneracyKind::ExceptionalPoint) ++eps;
        list.push_back({{"id", d.id},
                        {"z0", complex_json(d.z0)},
                        {"kind", to_string(d.kind)},
                        {"multiplicity", d.multiplicity},
                        {"gap_residual", round12(d.gap_residual)},
                        {"classification_radius", round12(d.radius)},
                        {"jordan_defective", d.defective},
                        {"local_monodromy", permutation_json(d.local_monodromy)}});
    }
    json minima = json::array();
    for (Complex z : a.gap_minima) minima.push_back(complex_json(z));
    return {{"family", a.family.source_text()},
            {"criterion", a.grid.criterion().token()},
            {"region", region_json(a.grid.region())},
            {"count", a.degeneracies.size()},
            {"exceptional_points", eps},
            {"degeneracies", std::move(list)},
            {"grid_gap_minima", std::move(minima)}};
}

json branch_lines_json(const AnalysisResult& a) {
    json list = json::array();
    for (std::size_t i = 0; i < a.lines.size(); ++i) {
        const auto& line = a.lines[i];
        json poly = json::array();
        json normals = json::array();
        for (Complex z : line.polyline) poly.push_back(complex_json(z));
        for (Complex n : line.normals) normals.push_back(complex_json(n));
        list.push_back({{"id", line.id},
                        {"label", line.label},
                        {"permutation", permutation_json(line.permutation)},
                        {"side_test", permutation_json(a.side_tests[i])},
                        {"closed", line.closed},
                        {"ends", json::array({end_json(line, 0), end_json(line, 1)})},
                        {"polyline", std::move(poly)},
                        {"normals", std::move(normals)}});
    }
    return {{"family", a.family.source_text()},
            {"criterion", a.grid.criterion().token()},
            {"region", region_json(a.grid.region())},
            {"resolution", {a.grid.n_re(), a.grid.n_im()}},
            {"flagged_edges", a.edges.edges.size()},
            {"lines", std::move(list)}};
}

json holonomy_json(const std::vector<HolonomyReport>& reports, const std::vector<std::size_t>& loop_indices) {
    json list = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        json events = json::array();
        for (const auto& e : r.events) {
            events.push_back({{"t", round12(e.t)},
                              {"line_id", e.line_id},
                              {"label", e.label},
                              {"direction", e.direction == CrossingDirection::AtoB ? "A->B" : "B->A"},
                              {"point", complex_json(e.point)},
                              {"permutation", permutation_json(e.permutation)}});
        }
        json values = json::array();
        for (Complex v : r.basepoint_values) values.push_back(complex_json(v));
        list.push_back({{"loop_index", loop_indices[i]},
                        {"events", std::move(events)},
                        {"product", permutation_json(r.product)},
                        {"oracle", permutation_json(r.oracle)},
                        {"agree", r.agree},
                        {"basepoint_values", std::move(values)},
                        {"slot_labels", r.slot_labels}});
    }
    return {{"reports", std::move(list)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_grid_csv(std::ostream& out, const SheetGrid& grid) {
    const std::size_t n = grid.dimension();
    out << "j,k,z_re,z_im";
    for (std::size_t s = 1; s <= n; ++s) out << ",slot" << s << "_re,slot" << s << "_im";
    out << '\n';
    char buf[40];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.12g", round12(x));
        out << ',' << buf;
    };
    for (int k = 0; k < grid.n_im(); ++k) {
        for (int j = 0; j < grid.n_re(); ++j) {
            out << j << ',' << k;
            const Complex z = grid.node(j, k);
            num(z.real());
            num(z.imag());
            for (Complex v : grid.sorted(j, k)) {
                num(v.real());
                num(v.imag());
            }
            out << '\n';
        }
    }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
    if (!out) throw ConfigError("failed writing " + path.string());
}

}  // namespace epwind
