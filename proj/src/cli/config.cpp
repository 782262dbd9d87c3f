#include "loclab/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "loclab/errors.hpp"

namespace loclab::cli {
namespace {

// Walks one JSON object, remembering which keys were read so that leftovers
// can be reported as unknown fields.
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail("", "expected an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError("config field '" + field(key) + "': " + what);
    }

    std::string field(const std::string& key) const {
        if (key.empty()) return path_.empty() ? "<root>" : path_;
        return path_.empty() ? key : path_ + "." + key;
    }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            if (s == "inf") return std::numeric_limits<double>::infinity();
        }
        fail(key, "expected a number");
    }

    std::uint64_t integer(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer()) fail(key, "expected a non-negative integer");
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
        }
        fail(key, "expected a non-negative integer");
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_boolean()) fail(key, "expected true or false");
        return v.get<bool>();
    }

    std::string string(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_string()) fail(key, "expected a string");
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_array()) fail(key, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) fail(key, "expected an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    template <class T>
    std::vector<T> integers(const std::string& key, std::vector<T> fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_array()) fail(key, "expected an array of non-negative integers");
        std::vector<T> out;
        for (const auto& e : v) {
            if (!e.is_number_unsigned()) fail(key, "expected an array of non-negative integers");
            out.push_back(static_cast<T>(e.get<std::uint64_t>()));
        }
        return out;
    }

    Reader child(const std::string& key) {
        raw(key);
        return Reader(j_.at(key), field(key));
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError("unknown config field '" + field(it.key()) + "'");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

SigmaSchedule read_sigma(Reader r) {
    const auto kind = r.string("kind", "constant");
    SigmaSchedule s;
    if (kind == "constant") {
        s = SigmaSchedule::constant(r.number("value", 1.0));
    } else if (kind == "power") {
        s = SigmaSchedule::power(r.number("scale", 1.0), r.number("exponent", 0.0));
    } else if (kind == "explicit") {
        if (!r.has("values")) r.fail("values", "required for explicit sigma");
        s = SigmaSchedule::explicit_values(r.numbers("values", {}));
    } else {
        r.fail("kind", "unknown sigma kind '" + kind + "' (expected constant, power or explicit)");
    }
    s.zero_prefix = r.integer("zero_prefix", 0);
    r.finish();
    return s;
}

json sigma_json(const SigmaSchedule& s) {
    json j;
    switch (s.kind) {
        case SigmaSchedule::Kind::Constant:
            j = {{"kind", "constant"}, {"value", s.value}};
            break;
        case SigmaSchedule::Kind::Power:
            j = {{"kind", "power"}, {"scale", s.value}, {"exponent", s.exponent}};
            break;
        case SigmaSchedule::Kind::Explicit:
            j = {{"kind", "explicit"}, {"values", s.values}};
            break;
    }
    j["zero_prefix"] = s.zero_prefix;
    return j;
}

GeneratorSpec read_generator(Reader r) {
    const auto family = r.string("family", "");
    GeneratorSpec g{PrimeBernoulli{}, 0};
    auto sigma = [&] { return r.has("sigma") ? read_sigma(r.child("sigma")) : SigmaSchedule::constant(1.0); };
    if (family == "rademacher") {
        g.kind = Rademacher{sigma()};
    } else if (family == "gaussian") {
        g.kind = Gaussian{sigma()};
    } else if (family == "prime_bernoulli") {
        g.kind = PrimeBernoulli{};
    } else if (family == "lacunary") {
        g.kind = LacunaryFractional{r.integer("ratio", 2)};
    } else {
        r.fail("family", "unknown generator family '" + family +
                             "' (expected rademacher, gaussian, prime_bernoulli or lacunary)");
    }
    r.finish();
    try {
        validate(g);
    } catch (const SpecError& e) {
        r.fail("", e.what());
    }
    return g;
}

json generator_json(const GeneratorSpec& g) {
    return std::visit(
        [](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Rademacher>)
                return {{"family", "rademacher"}, {"sigma", sigma_json(k.sigma)}};
            else if constexpr (std::is_same_v<K, Gaussian>)
                return {{"family", "gaussian"}, {"sigma", sigma_json(k.sigma)}};
            else if constexpr (std::is_same_v<K, PrimeBernoulli>)
                return {{"family", "prime_bernoulli"}};
            else
                return {{"family", "lacunary"}, {"ratio", k.ratio}};
        },
        g.kind);
}

WindowFamily read_window(Reader r) {
    const auto family = r.string("family", "");
    auto make = [&]() -> WindowFamily {
        if (family == "power_log") return WindowFamily::power_log(r.number("M", 1.0));
        if (family == "growing_log") {
            const auto xi = r.string("xi", "loglog");
            XiShape shape;
            try {
                shape = xi_shape_from_string(xi);
            } catch (const Error&) {
                r.fail("xi", "unknown xi shape '" + xi + "' (expected loglog, log1p_log or sqrt_log)");
            }
            return WindowFamily::growing_log(shape, r.number("scale", 1.0), r.boolean("cap", false));
        }
        if (family == "constant") return WindowFamily::constant(r.number("c", 2.0));
        r.fail("family", "unknown window family '" + family + "' (expected power_log, growing_log or constant)");
    };
    try {
        auto w = make();
        r.finish();
        return w;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        r.fail("", e.what());
    }
}

json window_json(const WindowFamily& w) {
    switch (w.kind()) {
        case WindowFamily::Kind::PowerLog:
            return {{"family", "power_log"}, {"M", w.exponent()}};
        case WindowFamily::Kind::GrowingLog:
            return {{"family", "growing_log"}, {"xi", to_string(w.xi())}, {"scale", w.exponent()}, {"cap", w.capped()}};
        case WindowFamily::Kind::Constant:
            return {{"family", "constant"}, {"c", w.exponent()}};
    }
    return {};
}

ScheduleMode read_mode(Reader r) {
    const auto kind = r.string("kind", "");
    ScheduleMode m = PaperExact{};
    if (kind == "scaled_surrogate") {
        ScaledSurrogate s;
        s.base = r.number("base", s.base);
        s.growth = r.number("growth", s.growth);
        m = s;
    } else if (kind != "paper_exact") {
        r.fail("kind", "unknown schedule mode '" + kind + "' (expected paper_exact or scaled_surrogate)");
    }
    r.finish();
    return m;
}

json mode_json(const ScheduleMode& m) {
    if (const auto* s = std::get_if<ScaledSurrogate>(&m))
        return {{"kind", "scaled_surrogate"}, {"base", s->base}, {"growth", s->growth}};
    return {{"kind", "paper_exact"}};
}

GridRule read_grid_rule(Reader r) {
    const auto kind = r.string("kind", "");
    GridRule g = GeometricGrid{};
    if (kind == "geometric") {
        g = GeometricGrid{static_cast<unsigned>(r.integer("points_per_octave", 64))};
    } else if (kind == "uniform") {
        g = UniformGrid{r.number("step", 1.0)};
    } else {
        r.fail("kind", "unknown grid rule '" + kind + "' (expected geometric or uniform)");
    }
    r.finish();
    return g;
}

json grid_rule_json(const GridRule& g) {
    if (const auto* u = std::get_if<UniformGrid>(&g)) return {{"kind", "uniform"}, {"step", u->step}};
    return {{"kind", "geometric"}, {"points_per_octave", std::get<GeometricGrid>(g).points_per_octave}};
}

LevelGrid read_level_grid(Reader& r, LevelGrid fallback) {
    const auto s = r.string("grid", fallback == LevelGrid::Dense ? "dense" : "geometric");
    if (s == "geometric") return LevelGrid::Geometric;
    if (s == "dense") return LevelGrid::Dense;
    r.fail("grid", "unknown level grid '" + s + "' (expected geometric or dense)");
}

GRule read_g_rule(Reader r) {
    const auto kind = r.string("kind", "constant");
    GRule g;
    if (kind == "constant") {
        g.kind = GRule::Kind::Constant;
        g.value = r.number("value", g.value);
    } else if (kind == "loglog_power") {
        g.kind = GRule::Kind::LogLogPower;
        g.value = r.number("floor", g.value);
        g.exponent = r.number("exponent", g.exponent);
    } else {
        r.fail("kind", "unknown g rule '" + kind + "' (expected constant or loglog_power)");
    }
    if (!(g.value > 1.0)) r.fail(kind == "constant" ? "value" : "floor", "g must exceed 1");
    r.finish();
    return g;
}

json g_rule_json(const GRule& g) {
    if (g.kind == GRule::Kind::Constant) return {{"kind", "constant"}, {"value", g.value}};
    return {{"kind", "loglog_power"}, {"floor", g.value}, {"exponent", g.exponent}};
}

// +inf is not representable in JSON numbers
json number_or_inf(double v) {
    if (std::isinf(v) && v > 0) return "inf";
    return v;
}

void require(Reader& r, bool ok, const std::string& key, const std::string& what) {
    if (!ok) r.fail(key, what);
}

Params read_params(const std::string& command, Reader r) {
    Params out;
    if (command == "kolmogorov") {
        KolmogorovParams p;
        if (r.has("generator")) p.generator = read_generator(r.child("generator"));
        p.lambdas = r.numbers("lambdas", p.lambdas);
        p.ks = r.integers<std::size_t>("ks", p.ks);
        p.trials = r.integer("trials", p.trials);
        require(r, !p.lambdas.empty(), "lambdas", "must not be empty");
        for (double l : p.lambdas) require(r, l > 0.0, "lambdas", "every lambda must be positive");
        require(r, !p.ks.empty(), "ks", "must not be empty");
        for (auto k : p.ks) require(r, k > 0, "ks", "every k must be positive");
        require(r, p.trials > 0, "trials", "must be positive");
        out = p;
    } else if (command == "localized") {
        LocalizedParams p;
        if (r.has("generator")) p.generator = read_generator(r.child("generator"));
        if (r.has("window")) p.window = read_window(r.child("window"));
        p.n_max = r.integer("n_max", p.n_max);
        p.trials = r.integer("trials", p.trials);
        p.G = r.number("G", p.G);
        p.exponent = r.number("exponent", p.exponent);
        p.grid = read_level_grid(r, p.grid);
        if (r.has("events")) {
            Reader e = r.child("events");
            EventParams ev;
            ev.M = e.number("M", ev.M);
            if (e.has("mode")) ev.mode = read_mode(e.child("mode"));
            ev.j = e.integer("j", ev.j);
            ev.trials = e.integer("trials", ev.trials);
            require(e, ev.M > 0.0, "M", "must be positive");
            require(e, ev.j >= 1, "j", "must be >= 1");
            require(e, ev.trials > 0, "trials", "must be positive");
            e.finish();
            p.events = ev;
        }
        require(r, p.n_max > 0, "n_max", "must be positive");
        require(r, p.trials > 0, "trials", "must be positive");
        require(r, p.G >= 2.0, "G", "must be >= 2");
        require(r, p.exponent >= 1.0, "exponent", "must be >= 1");
        out = p;
    } else if (command == "brownian") {
        BrownianParams p;
        if (r.has("window")) p.window = read_window(r.child("window"));
        if (r.has("grid")) p.grid = read_grid_rule(r.child("grid"));
        p.T = r.number("T", p.T);
        p.t0 = r.number("t0", p.t0);
        p.refinements = static_cast<unsigned>(r.integer("refinements", p.refinements));
        p.trials = r.integer("trials", p.trials);
        p.G = r.number("G", p.G);
        p.exponent = r.number("exponent", p.exponent);
        require(r, p.t0 >= 1.0, "t0", "must be >= 1");
        require(r, p.T >= p.t0, "T", "must be >= t0");
        require(r, p.trials > 0, "trials", "must be positive");
        require(r, p.G >= 2.0, "G", "must be >= 2");
        require(r, p.exponent >= 1.0, "exponent", "must be >= 1");
        out = p;
    } else if (command == "omega-scan") {
        OmegaScanParams p;
        p.x = r.integer("x", p.x);
        p.ms = r.integers<std::uint64_t>("ms", p.ms);
        p.thresholds = r.integers<std::uint64_t>("thresholds", p.thresholds);
        p.t_max = r.integer("t_max", p.t_max);
        require(r, p.x >= 2, "x", "must be >= 2");
        require(r, !p.ms.empty(), "ms", "must not be empty");
        for (auto m : p.ms) require(r, m >= 2 && m <= p.x, "ms", "every m must lie in [2, x]");
        require(r, !p.thresholds.empty() || p.t_max >= 2, "t_max",
                "needs t_max >= 2 when no explicit thresholds are given");
        out = p;
    } else if (command == "density") {
        DensityParams p;
        p.x = r.integer("x", p.x);
        const auto probe = r.string("probe", "bound");
        require(r, probe == "bound" || probe == "growth", "probe", "expected \"bound\" or \"growth\"");
        p.bound_probe = probe == "bound";
        if (r.has("g")) p.g = read_g_rule(r.child("g"));
        if (r.has("window")) p.window = read_window(r.child("window"));
        p.K = r.number("K", p.K);
        p.level = r.number("level", p.level);
        p.c = r.number("c", p.c);
        p.u = r.number("u", p.u);
        require(r, p.K >= 0.0, "K", "must be >= 0");
        require(r, p.c > 0.0 && p.c < 1.0, "c", "must lie in (0, 1)");
        require(r, p.u >= 0.0, "u", "must be >= 0 (0 selects sqrt(loglog x))");
        out = p;
    } else if (command == "kubilius") {
        KubiliusParams p;
        p.x = r.integer("x", p.x);
        p.r = r.integer("r", p.r);
        const auto stat = r.string("statistic", to_string(p.statistic));
        try {
            p.statistic = statistic_rule_from_string(stat);
        } catch (const ConfigError& e) {
            r.fail("statistic", e.what());
        }
        p.trials = r.integer("trials", p.trials);
        p.c = r.number("c", p.c);
        require(r, p.trials > 0, "trials", "must be positive");
        require(r, p.c > 0.0 && p.c < 1.0, "c", "must lie in (0, 1)");
        out = p;
    } else if (command == "schedule") {
        ScheduleParams p;
        p.M = r.number("M", p.M);
        p.j_max = r.integer("j_max", p.j_max);
        if (r.has("mode")) p.mode = read_mode(r.child("mode"));
        if (r.has("star")) {
            Reader s = r.child("star");
            StarParams sp;
            if (s.has("window")) sp.window = read_window(s.child("window"));
            sp.D = s.number("D", sp.D);
            sp.j_max = s.integer("j_max", sp.j_max);
            require(s, sp.D >= 1.0, "D", "must be >= 1");
            require(s, sp.j_max >= 1, "j_max", "must be >= 1");
            s.finish();
            p.star = sp;
        }
        require(r, p.M > 0.0, "M", "must be positive");
        require(r, p.j_max >= 2, "j_max", "must be >= 2");
        out = p;
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }
    r.finish();
    return out;
}

std::size_t command_index(const std::string& command) {
    const auto& names = command_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == command) return i;
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown command '" + command + "' (expected one of " + list + ")");
}

}  // namespace

std::string to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

Format format_from_string(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ConfigError("unknown output format '" + s + "' (expected csv or json)");
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"kolmogorov", "localized", "brownian", "omega-scan",
                                                "density",    "kubilius",  "schedule"};
    return names;
}

ExperimentConfig default_config(const std::string& command) {
    command_index(command);
    ExperimentConfig c;
    c.command = command;
    c.params = read_params(command, Reader(json::object(), "params"));
    return c;
}

ExperimentConfig parse_config(const std::string& text, const std::string& command) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line and column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << "config parse error at line " << line << ", column " << col << ": " << e.what();
        throw ConfigError(os.str());
    }
    Reader r(j, "");
    ExperimentConfig c;
    c.command = r.string("command", command);
    if (c.command.empty()) r.fail("command", "missing (give it in the file or on the command line)");
    if (!command.empty() && command != c.command)
        r.fail("command", "file is for '" + c.command + "' but '" + command + "' was requested");
    command_index(c.command);
    c.seed = r.integer("seed", c.seed);
    c.threads = static_cast<unsigned>(r.integer("threads", c.threads));
    try {
        c.format = format_from_string(r.string("format", "csv"));
    } catch (const ConfigError& e) {
        r.fail("format", e.what());
    }
    c.out = r.string("out", "");
    c.params = r.has("params") ? read_params(c.command, r.child("params"))
                               : read_params(c.command, Reader(json::object(), "params"));
    r.finish();
    return c;
}

ExperimentConfig load_config(const std::string& path, const std::string& command) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), command);
}

json params_to_json(const Params& params) {
    return std::visit(
        [](const auto& p) -> json {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, KolmogorovParams>) {
                return {{"generator", generator_json(p.generator)},
                        {"lambdas", p.lambdas},
                        {"ks", p.ks},
                        {"trials", p.trials}};
            } else if constexpr (std::is_same_v<P, LocalizedParams>) {
                json j = {{"generator", generator_json(p.generator)},
                          {"window", window_json(p.window)},
                          {"n_max", p.n_max},
                          {"trials", p.trials},
                          {"G", p.G},
                          {"exponent", p.exponent},
                          {"grid", p.grid == LevelGrid::Dense ? "dense" : "geometric"}};
                if (p.events)
                    j["events"] = {{"M", p.events->M},
                                   {"mode", mode_json(p.events->mode)},
                                   {"j", p.events->j},
                                   {"trials", p.events->trials}};
                return j;
            } else if constexpr (std::is_same_v<P, BrownianParams>) {
                return {{"window", window_json(p.window)}, {"grid", grid_rule_json(p.grid)},
                        {"T", p.T},                        {"t0", p.t0},
                        {"refinements", p.refinements},    {"trials", p.trials},
                        {"G", p.G},                        {"exponent", p.exponent}};
            } else if constexpr (std::is_same_v<P, OmegaScanParams>) {
                return {{"x", p.x}, {"ms", p.ms}, {"thresholds", p.thresholds}, {"t_max", p.t_max}};
            } else if constexpr (std::is_same_v<P, DensityParams>) {
                return {{"x", p.x},
                        {"probe", p.bound_probe ? "bound" : "growth"},
                        {"g", g_rule_json(p.g)},
                        {"window", window_json(p.window)},
                        {"K", number_or_inf(p.K)},
                        {"level", p.level},
                        {"c", p.c},
                        {"u", p.u}};
            } else if constexpr (std::is_same_v<P, KubiliusParams>) {
                return {{"x", p.x}, {"r", p.r}, {"statistic", to_string(p.statistic)}, {"trials", p.trials},
                        {"c", p.c}};
            } else {
                json j = {{"M", p.M}, {"j_max", p.j_max}, {"mode", mode_json(p.mode)}};
                if (p.star)
                    j["star"] = {{"window", window_json(p.star->window)}, {"D", p.star->D}, {"j_max", p.star->j_max}};
                return j;
            }
        },
        params);
}

json to_json(const ExperimentConfig& config) {
    json j = {{"command", config.command},
              {"seed", config.seed},
              {"threads", config.threads},
              {"format", to_string(config.format)},
              {"params", params_to_json(config.params)}};
    if (!config.out.empty()) j["out"] = config.out;
    return j;
}

std::string config_hash(const ExperimentConfig& config) {
    const json j = {{"command", config.command}, {"params", params_to_json(config.params)}};
    const std::string canon = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace loclab::cli
