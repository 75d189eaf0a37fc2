#include "rangebound/experiment/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "rangebound/errors.hpp"
#include "rangebound/experiment/csv.hpp"

namespace rangebound {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double to_double(std::string_view s, std::string_view what) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
        throw ConfigError("malformed number '" + std::string(s) + "' for " + std::string(what));
    return v;
}

std::int64_t to_integer(std::string_view s, std::string_view what) {
    s = trim(s);
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
        throw ConfigError("malformed integer '" + std::string(s) + "' for " + std::string(what));
    return v;
}

Output parse_output(std::string_view s) {
    for (Output o : all_outputs())
        if (to_string(o) == s) return o;
    throw ConfigError("unknown output '" + std::string(s) + "'");
}

}  // namespace

const std::vector<Output>& all_outputs() {
    static const std::vector<Output> all{Output::path,    Output::t1,     Output::t2,         Output::identities,
                                         Output::remarks, Output::bounds, Output::convergence};
    return all;
}

std::string_view to_string(Output o) {
    switch (o) {
        case Output::path: return "path";
        case Output::t1: return "t1";
        case Output::t2: return "t2";
        case Output::identities: return "identities";
        case Output::remarks: return "remarks";
        case Output::bounds: return "bounds";
        case Output::convergence: return "convergence";
    }
    return "?";
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    std::vector<std::uint64_t> seeds;
    if (trim(text).empty()) return seeds;
    for (auto item : split(text, ',')) {
        if (const auto dots = item.find(".."); dots != std::string_view::npos) {
            const auto lo = to_integer(item.substr(0, dots), "seeds");
            const auto hi = to_integer(item.substr(dots + 2), "seeds");
            if (lo < 0 || hi < lo) throw ConfigError("bad seed range '" + std::string(item) + "'");
            for (auto s = lo; s <= hi; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
        } else {
            const auto s = to_integer(item, "seeds");
            if (s < 0) throw ConfigError("seeds must be non-negative");
            seeds.push_back(static_cast<std::uint64_t>(s));
        }
    }
    return seeds;
}

CoefficientSpec<double> parse_coefficient(std::string_view text, const std::filesystem::path& base_dir) {
    text = trim(text);
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ConfigError("coefficient '" + std::string(text) + "' needs a kind prefix (const:, sin:, state:, file:)");
    const auto kind = trim(text.substr(0, colon));
    const auto args = trim(text.substr(colon + 1));
    if (kind == "const") return CoefficientSpec<double>::constant(to_double(args, "const"));
    if (kind == "state") return CoefficientSpec<double>::state_bounded(to_double(args, "state"));
    if (kind == "sin") {
        const auto p = split(args, ',');
        if (p.size() != 3) throw ConfigError("sin: expects <c0>,<c1>,<omega>");
        return CoefficientSpec<double>::sinusoidal(to_double(p[0], "sin"), to_double(p[1], "sin"),
                                                   to_double(p[2], "sin"));
    }
    if (kind == "file") {
        std::filesystem::path file(std::string{args});
        if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
        std::ifstream in(file);
        if (!in) throw ConfigError("cannot read grid samples from '" + file.string() + "'");
        std::vector<double> values;
        std::string token;
        while (in >> token) values.push_back(to_double(token, "file samples"));
        return CoefficientSpec<double>::samples(Eigen::Map<Eigen::VectorXd>(values.data(), Eigen::Index(values.size())));
    }
    throw ConfigError("unknown coefficient kind '" + std::string(kind) + "'");
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    cfg.outputs.insert(all_outputs().begin(), all_outputs().end());
    std::map<std::string, std::size_t, std::less<>> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!seen.emplace(std::string(key), line_no).second)
            throw ConfigError("duplicate key '" + std::string(key) + "'", line_no);

        try {
            if (key == "t_max") {
                cfg.t_max = to_double(value, key);
                if (!(cfg.t_max > 0)) throw ConfigError("t_max must be > 0");
            } else if (key == "n_steps") {
                const auto n = to_integer(value, key);
                if (n < 1) throw ConfigError("n_steps must be >= 1");
                cfg.n_steps = n;
            } else if (key == "x0") {
                cfg.x0 = to_double(value, key);
            } else if (key == "a") {
                cfg.a = parse_coefficient(value, base_dir);
                cfg.a_text = value;
            } else if (key == "sigma") {
                cfg.sigma = parse_coefficient(value, base_dir);
                cfg.sigma_text = value;
            } else if (key == "u" || key == "psi") {
                if (seen.count(key == "u" ? "psi" : "u"))
                    throw ConfigError("'u' and 'psi' are mutually exclusive");
                cfg.u = parse_coefficient(value, base_dir);
                cfg.u_text = value;
                cfg.corollary = key == "psi";
            } else if (key == "seeds") {
                cfg.seeds = parse_seed_list(value);
                if (cfg.seeds.empty()) throw ConfigError("seeds must not be empty");
            } else if (key == "outputs") {
                cfg.outputs.clear();
                if (value == "all") cfg.outputs.insert(all_outputs().begin(), all_outputs().end());
                else if (!value.empty())
                    for (auto item : split(value, ',')) cfg.outputs.insert(parse_output(item));
            } else if (key == "output_dir") {
                if (value.empty()) throw ConfigError("output_dir must not be empty");
                cfg.output_dir = value;
            } else if (key == "levels") {
                const auto l = to_integer(value, key);
                if (l < 3 || l > 30) throw ConfigError("levels must be in [3, 30]");
                cfg.levels = static_cast<int>(l);
            } else if (key == "oracle_ceiling") {
                const auto c = to_integer(value, key);
                if (c < 1) throw ConfigError("oracle_ceiling must be >= 1");
                cfg.oracle_ceiling = c;
            } else {
                throw ConfigError("unknown key '" + std::string(key) + "'");
            }
        } catch (const ConfigError& e) {
            if (e.line()) throw;
            throw ConfigError(e.what(), line_no);
        }
    }

    for (const char* required : {"t_max", "n_steps", "a", "sigma", "seeds"})
        if (!seen.count(required)) throw ConfigError(std::string("missing key '") + required + "'");
    if (!seen.count("u") && !seen.count("psi")) throw ConfigError("missing key 'u' (or 'psi')");

    const auto grid = cfg.grid();
    for (const auto& [spec, name] : {std::pair{&cfg.a, "a"}, std::pair{&cfg.sigma, "sigma"},
                                     std::pair{&cfg.u, cfg.corollary ? "psi" : "u"}}) {
        try {
            spec->validate_for(grid);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(name) + ": " + e.what(), seen.find(name)->second);
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + file.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), file.parent_path());
}

std::string to_text(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "t_max = " << format_double(c.t_max) << '\n'
        << "n_steps = " << c.n_steps << '\n'
        << "x0 = " << format_double(c.x0) << '\n'
        << "a = " << c.a_text << '\n'
        << "sigma = " << c.sigma_text << '\n'
        << (c.corollary ? "psi = " : "u = ") << c.u_text << '\n'
        << "seeds = ";
    for (std::size_t i = 0; i < c.seeds.size(); ++i) out << (i ? "," : "") << c.seeds[i];
    out << "\noutputs = ";
    bool first = true;
    for (Output o : all_outputs())
        if (c.wants(o)) {
            out << (first ? "" : ",") << to_string(o);
            first = false;
        }
    out << "\noutput_dir = " << c.output_dir << '\n'
        << "levels = " << c.levels << '\n'
        << "oracle_ceiling = " << c.oracle_ceiling << '\n';
    return out.str();
}

}  // namespace rangebound
