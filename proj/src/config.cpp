// Config front end: `[section]` headers, `key = value`, `#` comments.
// Bare values are SI base units; quoted values take one engineering suffix.
// Unknown sections and keys are hard errors so typos never pass silently.
#include "oscide/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "oscide/errors.hpp"

namespace oscide::config {

double parse_engineering(const std::string& text) {
    if (text.empty()) throw ParseError("empty numeric value");
    const char* s = text.c_str();
    char* end = nullptr;
    const double base = std::strtod(s, &end);
    if (end == s) throw ParseError("not a number: '" + text + "'");
    std::string suffix(end);
    if (suffix.empty()) return base;
    if (suffix.size() > 1) throw ParseError("bad engineering suffix '" + suffix + "' in '" + text + "'");
    switch (suffix[0]) {
    case 'f': return base * 1e-15;
    case 'p': return base * 1e-12;
    case 'n': return base * 1e-9;
    case 'u': return base * 1e-6;
    case 'm': return base * 1e-3;
    case 'k': return base * 1e3;
    case 'M': return base * 1e6;
    case 'G': return base * 1e9;
    default: throw ParseError(std::string("unknown engineering suffix '") + suffix[0] + "' in '" + text + "'");
    }
}

namespace {

struct RawValue {
    std::string text;
    int line = 0;
    bool quoted = false;
};

using Section = std::map<std::string, RawValue>;

struct RawConfig {
    std::string origin;
    std::map<std::string, Section> sections; // "" holds top-level keys

    std::string at(int line) const { return origin + ":" + std::to_string(line); }
};

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// known (section, key) pairs; "" = top level
const std::map<std::string, std::set<std::string>> kSchema = {
    {"", {"topology"}},
    {"device", {"gm", "gm_triode", "ro", "cgs", "beta", "vt"}},
    {"tank", {"l", "rp", "cp", "cl"}},
    {"varactor", {"c_min", "c_max", "v_mid", "alpha"}},
    {"noise", {"v_max", "temperature"}},
    {"sim", {"dt", "t_end", "v_perturb", "record_stride", "method"}},
    {"sweep", {"v_lo", "v_hi", "n"}},
};

RawConfig tokenize(const std::string& text, const std::string& origin) {
    RawConfig raw;
    raw.origin = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments outside quotes
        bool in_quote = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quote = !in_quote;
            if (!in_quote && (line[i] == '#' || line[i] == ';')) {
                line.erase(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(raw.at(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!kSchema.count(section)) throw ParseError(raw.at(lineno) + ": unknown section [" + section + "]");
            raw.sections[section]; // mark present even if empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(raw.at(lineno) + ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError(raw.at(lineno) + ": expected `key = value`");
        const auto known = kSchema.find(section);
        if (known == kSchema.end() || !known->second.count(key))
            throw ValidationError(raw.at(lineno) + ": unknown key '" + key + "'" +
                                  (section.empty() ? " at top level" : " in [" + section + "]"));
        bool quoted = false;
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"')
                throw ParseError(raw.at(lineno) + ": unterminated string value");
            value = value.substr(1, value.size() - 2);
            quoted = true;
        }
        auto& sec = raw.sections[section];
        if (sec.count(key)) throw ParseError(raw.at(lineno) + ": duplicate key '" + key + "'");
        sec[key] = {value, lineno, quoted};
    }
    return raw;
}

class Reader {
public:
    explicit Reader(const RawConfig& raw) : raw_(raw) {}

    bool has_section(const std::string& s) const { return raw_.sections.count(s) != 0; }

    void require_section(const std::string& s) const {
        if (!has_section(s)) throw ValidationError(raw_.origin + ": missing [" + s + "] section");
    }

    const RawValue* find(const std::string& sec, const std::string& key) const {
        const auto s = raw_.sections.find(sec);
        if (s == raw_.sections.end()) return nullptr;
        const auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    double number(const std::string& sec, const std::string& key) const {
        const RawValue* v = find(sec, key);
        if (!v)
            throw ValidationError(raw_.origin + ": missing required key '" + key + "' in [" + sec + "]");
        return to_number(*v);
    }

    double number_or(const std::string& sec, const std::string& key, double dflt) const {
        const RawValue* v = find(sec, key);
        return v ? to_number(*v) : dflt;
    }

    int integer_or(const std::string& sec, const std::string& key, int dflt) const {
        const RawValue* v = find(sec, key);
        if (!v) return dflt;
        const double d = to_number(*v);
        const int i = static_cast<int>(d);
        if (double(i) != d) throw ValidationError(raw_.at(v->line) + ": " + key + " must be an integer");
        return i;
    }

    std::string word(const std::string& sec, const std::string& key, const std::string& dflt) const {
        const RawValue* v = find(sec, key);
        return v ? v->text : dflt;
    }

    int line_of(const std::string& sec, const std::string& key) const {
        const RawValue* v = find(sec, key);
        return v ? v->line : 0;
    }

    void check(bool ok, const std::string& sec, const std::string& key, const std::string& what) const {
        if (ok) return;
        const RawValue* v = find(sec, key);
        const std::string where = v ? raw_.at(v->line) : raw_.origin;
        const std::string field = sec.empty() ? key : sec + "." + key;
        throw ValidationError(where + ": " + field + " " + what);
    }

private:
    double to_number(const RawValue& v) const {
        try {
            if (v.quoted) return parse_engineering(v.text);
            // bare numbers must be plain SI values, no suffix
            char* end = nullptr;
            const double d = std::strtod(v.text.c_str(), &end);
            if (end == v.text.c_str() || *end != '\0')
                throw ParseError("not a number: '" + v.text + "' (quote it to use an engineering suffix)");
            return d;
        } catch (const ParseError& e) {
            throw ParseError(raw_.at(v.line) + ": " + e.what());
        }
    }

    const RawConfig& raw_;
};

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    const RawConfig raw = tokenize(text, origin);
    const Reader r(raw);
    RunConfig cfg;

    const std::string topo = r.word("", "topology", "");
    if (topo.empty()) throw ValidationError(origin + ": missing required key 'topology'");
    if (topo == "cascode")
        cfg.topology = Topology::Cascode;
    else if (topo == "conventional")
        cfg.topology = Topology::Conventional;
    else
        throw ValidationError(origin + ": topology must be \"cascode\" or \"conventional\", got \"" + topo + "\"");

    r.require_section("device");
    cfg.device.gm = r.number("device", "gm");
    cfg.device.gm_triode = r.number_or("device", "gm_triode", cfg.device.gm);
    cfg.device.ro = r.number("device", "ro");
    cfg.device.cgs = r.number("device", "cgs");
    cfg.device.beta = r.number("device", "beta");
    cfg.device.vt = r.number("device", "vt");
    r.check(cfg.device.gm > 0.0, "device", "gm", "must be > 0");
    r.check(cfg.device.gm_triode > 0.0, "device", "gm_triode", "must be > 0");
    r.check(cfg.device.ro > 0.0, "device", "ro", "must be > 0");
    r.check(cfg.device.cgs >= 0.0, "device", "cgs", "must be >= 0");
    r.check(cfg.device.beta > 0.0, "device", "beta", "must be > 0");
    r.check(cfg.device.vt >= 0.0, "device", "vt", "must be >= 0");

    r.require_section("tank");
    cfg.tank.l = r.number("tank", "l");
    cfg.tank.rp = r.number("tank", "rp");
    cfg.tank.cp = r.number("tank", "cp");
    cfg.tank.cl = r.number("tank", "cl");
    r.check(cfg.tank.l > 0.0, "tank", "l", "must be > 0");
    r.check(cfg.tank.rp > 0.0, "tank", "rp", "must be > 0");
    r.check(cfg.tank.cp >= 0.0, "tank", "cp", "must be >= 0");
    r.check(cfg.tank.cl >= 0.0, "tank", "cl", "must be >= 0");

    r.require_section("varactor");
    cfg.varactor.c_min = r.number("varactor", "c_min");
    cfg.varactor.c_max = r.number("varactor", "c_max");
    cfg.varactor.v_mid = r.number("varactor", "v_mid");
    cfg.varactor.alpha = r.number("varactor", "alpha");
    r.check(cfg.varactor.c_min > 0.0, "varactor", "c_min", "must be > 0");
    r.check(cfg.varactor.c_max >= cfg.varactor.c_min, "varactor", "c_max", "must be >= c_min");
    r.check(cfg.varactor.alpha > 0.0, "varactor", "alpha", "must be > 0");

    if (r.has_section("noise")) {
        NoiseSection ns{};
        ns.v_max = r.number("noise", "v_max"); // no default by design
        ns.temperature = r.number("noise", "temperature");
        r.check(ns.v_max > 0.0, "noise", "v_max", "must be > 0");
        r.check(ns.temperature > 0.0, "noise", "temperature", "must be > 0");
        cfg.noise = ns;
    }

    if (r.has_section("sim")) {
        transient::SimConfig sc{};
        sc.dt = r.number("sim", "dt");
        sc.t_end = r.number("sim", "t_end");
        sc.v_perturb = r.number_or("sim", "v_perturb", 1e-3);
        sc.record_stride = r.integer_or("sim", "record_stride", 1);
        const std::string method = r.word("sim", "method", "rk4");
        r.check(method == "rk4", "sim", "method", "must be \"rk4\"");
        r.check(sc.dt > 0.0, "sim", "dt", "must be > 0");
        r.check(sc.t_end > 0.0, "sim", "t_end", "must be > 0");
        r.check(sc.v_perturb > 0.0, "sim", "v_perturb", "must be > 0");
        r.check(sc.record_stride >= 1, "sim", "record_stride", "must be >= 1");
        cfg.sim = sc;
    }

    cfg.sweep.v_lo = r.number_or("sweep", "v_lo", 0.0);
    cfg.sweep.v_hi = r.number_or("sweep", "v_hi", 1.0);
    cfg.sweep.n = r.integer_or("sweep", "n", 101);
    r.check(cfg.sweep.v_lo < cfg.sweep.v_hi, "sweep", "v_lo", "must be below v_hi");
    r.check(cfg.sweep.n >= 3, "sweep", "n", "must be >= 3");

    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

} // namespace oscide::config
