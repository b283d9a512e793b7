#include "visclab/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace visclab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// name(arg1, arg2, ...) -> {name, args}; bare names have no args.
std::pair<std::string, std::vector<double>> parse_call(const std::string& raw) {
    const std::string v = trim(raw);
    const auto open = v.find('(');
    if (open == std::string::npos) return {lower(v), {}};
    const auto close = v.rfind(')');
    if (close == std::string::npos || close < open)
        throw ConfigError("malformed value: " + raw);
    const std::string name = lower(trim(v.substr(0, open)));
    std::vector<double> args;
    std::stringstream ss(v.substr(open + 1, close - open - 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        args.push_back(std::stod(t));
    }
    return {name, args};
}

}  // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::stringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = lower(trim(line.substr(0, eq)));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        cfg.data_[section][key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config: " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = data_.find(section);
    return s != data_.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
    const auto s = data_.find(section);
    if (s == data_.end() || !s->second.count(key))
        throw ConfigError("missing [" + section + "] " + key);
    return s->second.at(key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    try {
        return std::stod(get(section, key));
    } catch (const std::invalid_argument&) {
        throw ConfigError("[" + section + "] " + key + " is not a number");
    }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_int_or(const std::string& section, const std::string& key,
                        long fallback) const {
    return has(section, key) ? std::stol(get(section, key)) : fallback;
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
    std::string v = get(section, key);
    std::replace(v.begin(), v.end(), '(', ' ');
    std::replace(v.begin(), v.end(), ')', ' ');
    std::replace(v.begin(), v.end(), '[', ' ');
    std::replace(v.begin(), v.end(), ']', ' ');
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(std::stod(t));
    }
    return out;
}

ProblemSpec problem_from_config(const Config& cfg) {
    ProblemSpec spec;

    const auto [fname, fargs] = parse_call(cfg.get("problem", "flux"));
    if (fname == "burgers") {
        spec.flux.kind = FluxKind::Burgers;
    } else if (fname == "linear_advection") {
        spec.flux.kind = FluxKind::LinearAdvection;
        spec.flux.speed = fargs.empty() ? 1.0 : fargs[0];
    } else if (fname == "polynomial") {
        spec.flux.kind = FluxKind::Polynomial;
        spec.flux.coefficients = fargs;
    } else {
        throw ConfigError("unknown flux: " + fname);
    }

    const auto [dname, dargs] = parse_call(cfg.get("problem", "diffusion"));
    if (dname == "constant") {
        spec.diffusion.kind = DiffusionKind::Constant;
        spec.diffusion.value = dargs.empty() ? 1.0 : dargs[0];
    } else if (dname == "rational_bump") {
        spec.diffusion.kind = DiffusionKind::RationalBump;
        if (dargs.size() != 2) throw ConfigError("rational_bump needs (base, amplitude)");
        spec.diffusion.base = dargs[0];
        spec.diffusion.amplitude = dargs[1];
    } else {
        throw ConfigError("unknown diffusion: " + dname);
    }

    const auto [iname, iargs] = parse_call(cfg.get("problem", "initial"));
    if (iname == "compact_bump") {
        spec.initial.kind = InitialKind::CompactBump;
        if (iargs.size() != 3) throw ConfigError("compact_bump needs (center, width, height)");
        spec.initial.center = iargs[0];
        spec.initial.width = iargs[1];
        spec.initial.height = iargs[2];
    } else if (iname == "mollified_riemann") {
        spec.initial.kind = InitialKind::MollifiedRiemann;
        if (iargs.size() != 4)
            throw ConfigError("mollified_riemann needs (left, right, jump, smoothing)");
        spec.initial.left = iargs[0];
        spec.initial.right = iargs[1];
        spec.initial.jump_location = iargs[2];
        spec.initial.smoothing = iargs[3];
    } else if (iname == "sine_pocket") {
        spec.initial.kind = InitialKind::SinePocket;
        spec.initial.modes = iargs.empty() ? std::vector<double>{1.0} : iargs;
    } else {
        throw ConfigError("unknown initial: " + iname);
    }

    const auto dom = cfg.get_list("problem", "domain");
    if (dom.size() != 2) throw ConfigError("domain needs two endpoints");
    spec.domain = {dom[0], dom[1]};
    spec.horizon = cfg.get_double("problem", "horizon");

    const std::string cls = lower(cfg.get_or("problem", "class", "a"));
    if (cls == "a")
        spec.hypothesis_class = HypothesisClass::A;
    else if (cls == "b")
        spec.hypothesis_class = HypothesisClass::B;
    else if (cls == "c")
        spec.hypothesis_class = HypothesisClass::C;
    else
        throw ConfigError("unknown hypothesis class: " + cls);

    validate_shape(spec);
    return spec;
}

}  // namespace visclab
