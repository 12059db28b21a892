#include "epwind/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "epwind/error.hpp"
#include "epwind/family.hpp"

namespace epwind {
namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

double to_double(const std::string& tok, int line) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) fail(line, "'" + tok + "' is not a finite number");
    return v;
}

int to_int(const std::string& tok, int line) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (tok.empty() || *end != '\0' || errno == ERANGE || v < 0 || v > 100000) fail(line, "'" + tok + "' is not a valid count");
    return static_cast<int>(v);
}

std::vector<double> numbers(const std::string& value, std::size_t expected, const char* key, int line) {
    const auto toks = split_ws(value);
    if (toks.size() != expected) {
        fail(line, std::string(key) + " expects " + std::to_string(expected) + " numbers, got " +
                       std::to_string(toks.size()));
    }
    std::vector<double> out;
    for (const auto& t : toks) out.push_back(to_double(t, line));
    return out;
}

LoopPath parse_polygon(const std::string& value, int line) {
    std::vector<Complex> pts;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t semi = value.find(';', start);
        if (semi == std::string::npos) semi = value.size();
        const std::string part = trim(std::string_view(value).substr(start, semi - start));
        if (!part.empty()) {
            const auto xy = numbers(part, 2, "loop vertex", line);
            pts.emplace_back(xy[0], xy[1]);
        }
        start = semi + 1;
    }
    try {
        return LoopPath(std::move(pts));
    } catch (const Error& e) {
        fail(line, e.what());
    }
}

LoopPath parse_circle(const std::string& value, int line) {
    const auto toks = split_ws(value);
    if (toks.size() != 4 && toks.size() != 5) fail(line, "circle expects: centre_re centre_im radius start_deg [cw|ccw]");
    const double cre = to_double(toks[0], line);
    const double cim = to_double(toks[1], line);
    const double r = to_double(toks[2], line);
    const double start = to_double(toks[3], line) * std::numbers::pi / 180.0;
    bool cw = false;
    if (toks.size() == 5) {
        if (toks[4] == "cw") {
            cw = true;
        } else if (toks[4] != "ccw") {
            fail(line, "circle orientation must be cw or ccw");
        }
    }
    if (!(r > 0.0)) fail(line, "circle radius must be positive");
    return circle_loop({cre, cim}, r, start, cw);
}

}  // namespace

AnalysisConfig parse_config(std::string_view text) {
    AnalysisConfig cfg;
    std::set<std::string> seen;
    bool have_family = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        if (s.rfind("```", 0) == 0) {
            if (trim(std::string_view(s).substr(3)) != "family") fail(line, "expected a ```family block");
            if (have_family) fail(line, "duplicate family block");
            const int open = line;
            std::string body;
            bool closed = false;
            while (std::getline(in, raw)) {
                ++line;
                if (trim(raw) == "```") {
                    closed = true;
                    break;
                }
                body += raw;
                body += '\n';
            }
            if (!closed) fail(open, "family block is not closed");
            while (!body.empty() && body.back() == '\n') body.pop_back();
            cfg.family_text = body;
            cfg.family_line = open + 1;
            have_family = true;
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(std::string_view(s).substr(0, eq));
        const std::string value = trim(std::string_view(s).substr(eq + 1));
        const bool repeatable = key == "loop" || key == "circle";
        if (!repeatable && !seen.insert(key).second) fail(line, "duplicate key '" + key + "'");

        if (key == "region") {
            const auto v = numbers(value, 4, "region", line);
            cfg.region = {v[0], v[1], v[2], v[3]};
            if (!cfg.region.nondegenerate()) fail(line, "region must satisfy re_min < re_max and im_min < im_max");
        } else if (key == "resolution") {
            const auto toks = split_ws(value);
            if (toks.size() != 2) fail(line, "resolution expects two integers");
            cfg.n_re = to_int(toks[0], line);
            cfg.n_im = to_int(toks[1], line);
            if (cfg.n_re < SheetGrid::kMinResolution || cfg.n_im < SheetGrid::kMinResolution)
                fail(line, "resolution below minimum (16 per axis)");
        } else if (key == "criterion") {
            try {
                cfg.criterion = SortCriterion::parse(value);
            } catch (const ConfigError& e) {
                fail(line, e.what());
            }
        } else if (key == "tol.eigen") {
            cfg.tolerances.eigen = to_double(value, line);
            if (!(cfg.tolerances.eigen > 0.0)) fail(line, "tol.eigen must be positive");
        } else if (key == "tol.side_step") {
            cfg.tolerances.side_step = to_double(value, line);
            if (!(cfg.tolerances.side_step > 0.0 && cfg.tolerances.side_step < 0.5))
                fail(line, "tol.side_step must lie in (0, 0.5)");
        } else if (key == "loop") {
            cfg.loops.push_back(parse_polygon(value, line));
        } else if (key == "circle") {
            cfg.loops.push_back(parse_circle(value, line));
        } else {
            fail(line, "unknown key '" + key + "'");
        }
    }
    if (!have_family) throw ConfigError("config has no ```family block");
    if (!seen.count("region")) throw ConfigError("config has no region");
    if (!seen.count("resolution")) throw ConfigError("config has no resolution");
    // Validate the family now so errors point into the config file.
    try {
        (void)parse_family(cfg.family_text);
    } catch (const SyntaxError& e) {
        throw SyntaxError(e.line() + cfg.family_line - 1, e.column(), e.message());
    }
    return cfg;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace epwind
