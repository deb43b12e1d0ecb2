#include "mzbath/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mzbath/dynamics.hpp"
#include "mzbath/errors.hpp"

namespace mzbath {

namespace {

enum class Kind { number, boolean, string, array };

struct KeySpec {
    const char* name;
    Kind kind;
};

const std::vector<KeySpec>& known_keys() {
    static const std::vector<KeySpec> keys{
        {"bath.temperature", Kind::number},
        {"bath.cutoff", Kind::number},
        {"bath.coupling", Kind::number},
        {"bath.system_frequency", Kind::number},
        {"bath.omega_over_T", Kind::number},
        {"bath.cutoff_ratio", Kind::number},
        {"interferometer.phase", Kind::number},
        {"interferometer.path_difference", Kind::number},
        {"interferometer.pointer_separation", Kind::number},
        {"interferometer.phases", Kind::array},
        {"interferometer.snapshots", Kind::array},
        {"grid.start", Kind::number},
        {"grid.stop", Kind::number},
        {"grid.count", Kind::number},
        {"grid.spacing", Kind::string},
        {"grid.step_factor", Kind::number},
        {"grid.eval_times", Kind::array},
        {"grid.sweep_axis", Kind::string},
        {"grid.sweep_values", Kind::array},
        {"grid.sweep_start", Kind::number},
        {"grid.sweep_stop", Kind::number},
        {"grid.sweep_count", Kind::number},
        {"output.out", Kind::string},
        {"output.svg", Kind::boolean},
        {"output.quiet", Kind::boolean},
        {"output.seed", Kind::number},
    };
    return keys;
}

const KeySpec* find_key(const std::string& full) {
    for (const auto& k : known_keys())
        if (full == k.name) return &k;
    return nullptr;
}

// "cutoff" -> "bath.cutoff"; full names pass through.
std::string resolve_key(const std::string& key) {
    if (find_key(key)) return key;
    if (key.find('.') != std::string::npos) throw ConfigError(key, "unknown key");
    for (const auto& k : known_keys()) {
        const std::string name = k.name;
        if (name.substr(name.find('.') + 1) == key) return name;
    }
    throw ConfigError(key, "unknown key");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(const std::string& text) {
    std::string t = text;
    t.erase(std::remove(t.begin(), t.end(), '_'), t.end());
    if (!t.empty() && t.front() == '+') t.erase(0, 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) return std::nullopt;
    return v;
}

std::string unquote(const std::string& key, const std::string& text) {
    if (text.size() < 2 || text.back() != text.front())
        throw ConfigError(key, "unterminated string");
    return text.substr(1, text.size() - 2);
}

// `loose` accepts bare words as strings (command-line overrides).
ConfigValue parse_value(const std::string& key, const std::string& raw, Kind kind, bool loose) {
    const std::string text = trim(raw);
    if (text.empty()) throw ConfigError(key, "missing value");
    switch (kind) {
        case Kind::number: {
            if (auto v = parse_number(text)) return *v;
            throw ConfigError(key, "expected a number, got '" + text + "'");
        }
        case Kind::boolean:
            if (text == "true") return true;
            if (text == "false") return false;
            throw ConfigError(key, "expected true or false, got '" + text + "'");
        case Kind::string:
            if (text.front() == '"' || text.front() == '\'') return unquote(key, text);
            if (loose) return text;
            throw ConfigError(key, "expected a quoted string");
        case Kind::array: {
            std::string body = text;
            if (body.front() == '[') {
                if (body.back() != ']') throw ConfigError(key, "unterminated array");
                body = body.substr(1, body.size() - 2);
            } else if (!loose) {
                throw ConfigError(key, "expected an array");
            }
            std::vector<double> out;
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item.empty()) continue;
                const auto v = parse_number(item);
                if (!v) throw ConfigError(key, "expected a number in array, got '" + item + "'");
                out.push_back(*v);
            }
            return out;
        }
    }
    throw ConfigError(key, "unsupported value");
}

std::string strip_comment(const std::string& line) {
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_array(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s + "]";
}

const char* spacing_name(GridSpacing s) { return s == GridSpacing::log ? "log" : "linear"; }

const char* axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::temperature: return "temperature";
        case SweepAxis::time: return "time";
        default: return "omega_over_T";
    }
}

std::vector<double> log_space(double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    const double la = std::log10(a), lb = std::log10(b);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::pow(10.0, la + (lb - la) * i / (n - 1));
    out.front() = a;
    out.back() = b;
    return out;
}

int as_count(const std::string& key, double v) {
    if (v != std::floor(v) || v < 0.0 || v > 1e8) throw ConfigError(key, "expected a non-negative integer");
    return static_cast<int>(v);
}

}  // namespace

ConfigTable parse_toml(const std::string& text) {
    ConfigTable table;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = "line " + std::to_string(lineno);
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "bath" && section != "interferometer" && section != "grid" &&
                section != "output")
                throw ConfigError(section, "unknown section");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where, "expected key = value");
        if (section.empty()) throw ConfigError(where, "key outside a section");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const KeySpec* spec = find_key(key);
        if (!spec) throw ConfigError(key, "unknown key");
        table[key] = parse_value(key, line.substr(eq + 1), spec->kind, false);
    }
    return table;
}

void apply_overrides(ConfigTable& table, const std::vector<std::string>& args) {
    for (const auto& arg : args) {
        if (arg.rfind("--", 0) != 0) throw ConfigError(arg, "unexpected argument");
        const auto eq = arg.find('=');
        if (eq == std::string::npos) throw ConfigError(arg.substr(2), "override needs --key=value");
        const std::string key = resolve_key(arg.substr(2, eq - 2));
        table[key] = parse_value(key, arg.substr(eq + 1), find_key(key)->kind, true);
    }
}

std::vector<double> TimeGridSpec::points(double default_stop) const {
    const double b = stop.value_or(default_stop);
    if (count < 2) throw ConfigError("grid.count", "time grid needs at least 2 points");
    if (!(start >= 0.0) || !std::isfinite(start)) throw ConfigError("grid.start", "must be >= 0");
    if (!(b > start) || !std::isfinite(b)) throw ConfigError("grid.stop", "must exceed grid.start");
    if (spacing == GridSpacing::log) {
        if (start <= 0.0) throw ConfigError("grid.start", "log spacing needs start > 0");
        return log_space(start, b, count);
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = start + (b - start) * i / (count - 1);
    out.back() = b;
    for (std::size_t i = 1; i < out.size(); ++i)
        if (!(out[i] > out[i - 1])) throw ConfigError("grid.count", "time grid is not strictly increasing");
    return out;
}

std::vector<double> SweepSpec::points() const {
    if (!values.empty()) return values;
    if (count < 2) throw ConfigError("grid.sweep_count", "sweep needs at least 2 points");
    if (!(start > 0.0) || !(stop > start)) throw ConfigError("grid.sweep_start", "need 0 < start < stop");
    return log_space(start, stop, count);
}

void RunConfig::validate() const {
    try {
        bath.validate();
    } catch (const DomainError& e) {
        throw ConfigError("bath", e.what());
    }
    if (!std::isfinite(phase)) throw ConfigError("interferometer.phase", "must be finite");
    for (double p : phases)
        if (!std::isfinite(p)) throw ConfigError("interferometer.phases", "must be finite");
    for (double t : snapshots)
        if (!(t >= 0.0)) throw ConfigError("interferometer.snapshots", "times must be >= 0");
    for (double t : eval_times)
        if (!(t >= 0.0)) throw ConfigError("grid.eval_times", "times must be >= 0");
    if (!(step_factor > 0.0) || step_factor > kMaxStepFactor)
        throw ConfigError("grid.step_factor", "must lie in (0, 0.01]");
    if (grid.count < 2) throw ConfigError("grid.count", "time grid needs at least 2 points");
    if (grid.stop) grid.points(*grid.stop);
    for (double v : sweep.points())
        if (!(v > 0.0) && !(sweep.axis == SweepAxis::time && v == 0.0))
            throw ConfigError("grid.sweep_values", "sweep values must be positive");
    interferometer(phase).validate();
}

MarkovParameters RunConfig::markov() const { return markov_parameters(bath); }

InterferometerConfig RunConfig::interferometer(double phi) const {
    auto c = InterferometerConfig::with_defaults(phi, bath.system_frequency, markov());
    if (path_difference) c.path_difference = *path_difference;
    if (pointer_separation) c.pointer_separation = *pointer_separation;
    return c;
}

std::string RunConfig::to_toml() const {
    std::ostringstream s;
    s << "[bath]\n"
      << "temperature = " << format_double(bath.temperature) << "\n"
      << "cutoff = " << format_double(bath.cutoff) << "\n"
      << "coupling = " << format_double(bath.coupling) << "\n"
      << "system_frequency = " << format_double(bath.system_frequency) << "\n";
    const auto ic = interferometer(phase);
    s << "[interferometer]\n"
      << "phase = " << format_double(phase) << "\n"
      << "path_difference = " << format_double(ic.path_difference) << "\n"
      << "pointer_separation = " << format_double(ic.pointer_separation) << "\n"
      << "phases = " << format_array(phases) << "\n"
      << "snapshots = " << format_array(snapshots) << "\n";
    s << "[grid]\n"
      << "start = " << format_double(grid.start) << "\n";
    if (grid.stop) s << "stop = " << format_double(*grid.stop) << "\n";
    s << "count = " << grid.count << "\n"
      << "spacing = \"" << spacing_name(grid.spacing) << "\"\n"
      << "step_factor = " << format_double(step_factor) << "\n"
      << "eval_times = " << format_array(eval_times) << "\n"
      << "sweep_axis = \"" << axis_name(sweep.axis) << "\"\n";
    if (!sweep.values.empty()) {
        s << "sweep_values = " << format_array(sweep.values) << "\n";
    } else {
        s << "sweep_start = " << format_double(sweep.start) << "\n"
          << "sweep_stop = " << format_double(sweep.stop) << "\n"
          << "sweep_count = " << sweep.count << "\n";
    }
    s << "[output]\n"
      << "svg = " << (svg ? "true" : "false") << "\n"
      << "seed = " << seed << "\n";
    return s.str();
}

RunConfig RunConfig::from_table(const ConfigTable& t) {
    RunConfig c;
    auto num = [&](const char* key) -> std::optional<double> {
        auto it = t.find(key);
        if (it == t.end()) return std::nullopt;
        return std::get<double>(it->second);
    };
    auto arr = [&](const char* key) -> std::optional<std::vector<double>> {
        auto it = t.find(key);
        if (it == t.end()) return std::nullopt;
        return std::get<std::vector<double>>(it->second);
    };
    auto str = [&](const char* key) -> std::optional<std::string> {
        auto it = t.find(key);
        if (it == t.end()) return std::nullopt;
        return std::get<std::string>(it->second);
    };
    auto flag = [&](const char* key) -> std::optional<bool> {
        auto it = t.find(key);
        if (it == t.end()) return std::nullopt;
        return std::get<bool>(it->second);
    };

    if (auto v = num("bath.system_frequency")) c.bath.system_frequency = *v;
    if (auto v = num("bath.coupling")) c.bath.coupling = *v;
    if (auto v = num("bath.cutoff")) c.bath.cutoff = *v;
    if (auto v = num("bath.temperature")) c.bath.temperature = *v;
    if (auto v = num("bath.cutoff_ratio")) {
        if (num("bath.cutoff")) throw ConfigError("bath.cutoff_ratio", "conflicts with bath.cutoff");
        if (!(*v > 0.0)) throw ConfigError("bath.cutoff_ratio", "must be > 0");
        c.bath.cutoff = *v * c.bath.system_frequency;
    }
    if (auto v = num("bath.omega_over_T")) {
        if (num("bath.temperature")) throw ConfigError("bath.omega_over_T", "conflicts with bath.temperature");
        if (!(*v > 0.0)) throw ConfigError("bath.omega_over_T", "must be > 0");
        c.bath.temperature = c.bath.system_frequency / *v;
    }

    if (auto v = num("interferometer.phase")) c.phase = *v;
    if (auto v = num("interferometer.path_difference")) c.path_difference = *v;
    if (auto v = num("interferometer.pointer_separation")) c.pointer_separation = *v;
    if (auto v = arr("interferometer.phases")) c.phases = *v;
    if (auto v = arr("interferometer.snapshots")) c.snapshots = *v;

    if (auto v = num("grid.start")) c.grid.start = *v;
    if (auto v = num("grid.stop")) c.grid.stop = *v;
    if (auto v = num("grid.count")) c.grid.count = as_count("grid.count", *v);
    if (auto v = str("grid.spacing")) {
        if (*v == "linear") c.grid.spacing = GridSpacing::linear;
        else if (*v == "log") c.grid.spacing = GridSpacing::log;
        else throw ConfigError("grid.spacing", "expected linear or log, got '" + *v + "'");
    }
    if (auto v = num("grid.step_factor")) c.step_factor = *v;
    if (auto v = arr("grid.eval_times")) c.eval_times = *v;
    if (auto v = str("grid.sweep_axis")) {
        if (*v == "omega_over_T") c.sweep.axis = SweepAxis::omega_over_T;
        else if (*v == "temperature") c.sweep.axis = SweepAxis::temperature;
        else if (*v == "time") c.sweep.axis = SweepAxis::time;
        else throw ConfigError("grid.sweep_axis", "expected omega_over_T, temperature or time, got '" + *v + "'");
    }
    if (auto v = arr("grid.sweep_values")) c.sweep.values = *v;
    if (auto v = num("grid.sweep_start")) c.sweep.start = *v;
    if (auto v = num("grid.sweep_stop")) c.sweep.stop = *v;
    if (auto v = num("grid.sweep_count")) c.sweep.count = as_count("grid.sweep_count", *v);
    if (c.sweep.axis == SweepAxis::temperature && !num("grid.sweep_start") && !num("grid.sweep_stop")) {
        c.sweep.start = 1.0;
        c.sweep.stop = 1e4;
    }
    if (c.sweep.axis == SweepAxis::time && !num("grid.sweep_start") && !num("grid.sweep_stop")) {
        c.sweep.start = 1e-13;
        c.sweep.stop = 1e-9;
    }

    if (auto v = str("output.out")) c.out = *v;
    if (auto v = flag("output.svg")) c.svg = *v;
    if (auto v = flag("output.quiet")) c.quiet = *v;
    if (auto v = num("output.seed")) {
        if (*v < 0.0 || *v != std::floor(*v) || *v > 9007199254740992.0)
            throw ConfigError("output.seed", "expected an integer in [0, 2^53]");
        c.seed = static_cast<std::uint64_t>(*v);
    }
    return c;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    ConfigTable table;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("config", "cannot read '" + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        table = parse_toml(buf.str());
    }
    apply_overrides(table, overrides);
    RunConfig c = RunConfig::from_table(table);
    c.validate();
    return c;
}

}  // namespace mzbath
