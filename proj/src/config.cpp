#include "coexsim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace coexsim {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& reason) {
    std::ostringstream os;
    os << "config line " << line << ", key '" << key << "': " << reason;
    throw ConfigError(os.str());
}

double parse_num(int line, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) fail(line, key, "trailing characters after number '" + v + "'");
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(line, key, "not a number: '" + v + "'");
    }
}

std::uint64_t parse_u64(int line, const std::string& key, const std::string& v) {
    std::uint64_t x = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        fail(line, key, "not a non-negative integer: '" + v + "'");
    return x;
}

int parse_int(int line, const std::string& key, const std::string& v) {
    const double x = parse_num(line, key, v);
    if (x != std::floor(x)) fail(line, key, "must be an integer");
    return static_cast<int>(x);
}

bool parse_bool(int line, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(line, key, "expected true/false");
}

std::vector<double> parse_grid(int line, const std::string& key, const std::string& v) {
    std::vector<double> grid;
    // range syntax start:step:stop, else comma list
    if (v.find(':') != std::string::npos) {
        double a, s, b;
        if (std::sscanf(v.c_str(), "%lf:%lf:%lf", &a, &s, &b) != 3)
            fail(line, key, "range must be start:step:stop");
        if (s <= 0.0) fail(line, key, "range step must be positive");
        for (double x = a; x <= b + 1e-9 * s; x += s) grid.push_back(x);
        return grid;
    }
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(parse_num(line, key, trim(tok)));
    return grid;
}

void check_beta(int line, const std::string& key, double beta) {
    if (beta < 0.0 || beta >= 1.0) fail(line, key, "roll-off must satisfy 0 <= beta < 1");
}

struct OfdmKeys {
    int n = 128;
    double bandwidth = 1.25e6;
    double cp_fraction = 0.25;
    double beta = 0.0;
    Modulation mod = Modulation::qpsk;
    double sigma_a2 = 1.0;
    int oversampling = 4;
    int nulled = 0;
    OfdmConfig build() const {
        OfdmConfig c = make_ofdm_config(n, bandwidth, cp_fraction, beta, mod, sigma_a2, oversampling);
        if (nulled > 0) c = null_edge_subcarriers(c, nulled, Edge::high);
        return c;
    }
};

}  // namespace

SweepSpec parse_config(const std::string& text) {
    SweepSpec spec;
    ScenarioConfig& scn = spec.scenario;
    OfdmKeys ofdm1, ofdm2;
    bool saw_ofdm2 = false;

    std::string section = "scenario";
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, s, "unterminated section header");
            section = s.substr(1, s.size() - 2);
            if (section != "scenario" && section != "sweep")
                fail(line, section, "unknown section (expected [scenario] or [sweep])");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, s, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (val.empty()) fail(line, key, "empty value");

        if (section == "sweep") {
            if (key == "axis") {
                if (val == "f_n") spec.axis = SweepAxis::f_n;
                else if (val == "sir_db") spec.axis = SweepAxis::sir_db;
                else if (val == "beta") spec.axis = SweepAxis::beta;
                else if (val == "nulled_count") spec.axis = SweepAxis::nulled_count;
                else if (val == "cu_subcarriers") spec.axis = SweepAxis::cu_subcarriers;
                else if (val == "eb_no_db") spec.axis = SweepAxis::eb_no_db;
                else fail(line, key, "unknown axis '" + val + "'");
            } else if (key == "grid") {
                spec.grid = parse_grid(line, key, val);
            } else if (key == "seed") {
                spec.seed = parse_u64(line, key, val);
            } else if (key == "min_errors") {
                spec.stop.min_errors = parse_u64(line, key, val);
            } else if (key == "bit_budget") {
                spec.stop.bit_budget = parse_u64(line, key, val);
            } else if (key == "target_ber") {
                spec.target_ber = parse_num(line, key, val);
            } else if (key == "name") {
                spec.name = val;
            } else {
                fail(line, key, "unknown key in [sweep]");
            }
            continue;
        }

        // [scenario]
        if (key == "victim") {
            if (val == "nb") scn.victim = SystemKind::nb;
            else if (val == "ofdm") scn.victim = SystemKind::ofdm;
            else fail(line, key, "expected nb or ofdm");
        } else if (key == "interferer") {
            if (val == "nb") scn.interferer = SystemKind::nb;
            else if (val == "ofdm") scn.interferer = SystemKind::ofdm;
            else if (val == "none") scn.has_interferer = false;
            else fail(line, key, "expected nb, ofdm or none");
        } else if (key == "channel") {
            if (val == "awgn") scn.channel = ChannelKind::awgn;
            else if (val == "fading") scn.channel = ChannelKind::fading;
            else fail(line, key, "expected awgn or fading");
        } else if (key == "sir_db") {
            scn.sir_db = (val == "inf") ? std::numeric_limits<double>::infinity()
                                        : parse_num(line, key, val);
        } else if (key == "eb_no_db") {
            scn.eb_no_db = parse_num(line, key, val);
        } else if (key == "f_n") {
            scn.f_n = parse_num(line, key, val);
            if (scn.f_n < 0.0) fail(line, key, "f_n must be >= 0");
        } else if (key == "composite_rate") {
            scn.composite_rate = parse_num(line, key, val);
        } else if (key == "literal_fn") {
            scn.literal_fn = parse_bool(line, key, val);
        } else if (key == "fade_interferer") {
            scn.fade_interferer = parse_bool(line, key, val);
        } else if (key == "sir_reference") {
            if (val == "paper") scn.sir_reference = SirReference::paper;
            else if (val == "co_channel") scn.sir_reference = SirReference::co_channel;
            else if (val == "input_power") scn.sir_reference = SirReference::input_power;
            else fail(line, key, "expected paper, co_channel or input_power");
        } else if (key == "symbols_per_trial") {
            scn.victim_symbols_per_trial = parse_int(line, key, val);
        } else if (key == "pdp_taps") {
            scn.pdp_taps = parse_int(line, key, val);
        } else if (key == "pdp_decay") {
            scn.pdp_decay = parse_num(line, key, val);
        } else if (key == "tap_spacing") {
            scn.tap_spacing = parse_num(line, key, val);
        } else if (key == "nb_bandwidth") {
            scn.nb.bw_n = parse_num(line, key, val);
        } else if (key == "nb_alpha") {
            scn.nb.alpha = parse_num(line, key, val);
        } else if (key == "nb_sigma_b2") {
            scn.nb.sigma_b2 = parse_num(line, key, val);
        } else if (key == "nb_tx_span") {
            scn.nb.tx_span = parse_int(line, key, val);
        } else if (key == "nb_rx_span") {
            scn.nb.rx_span = parse_int(line, key, val);
        } else if (key == "ofdm_n") {
            ofdm1.n = parse_int(line, key, val);
        } else if (key == "ofdm_bandwidth") {
            ofdm1.bandwidth = parse_num(line, key, val);
        } else if (key == "ofdm_cp_fraction") {
            ofdm1.cp_fraction = parse_num(line, key, val);
        } else if (key == "ofdm_beta") {
            ofdm1.beta = parse_num(line, key, val);
            check_beta(line, key, ofdm1.beta);
        } else if (key == "ofdm_modulation") {
            if (val == "qpsk") ofdm1.mod = Modulation::qpsk;
            else if (val == "bpsk") ofdm1.mod = Modulation::bpsk;
            else fail(line, key, "expected qpsk or bpsk");
        } else if (key == "ofdm_sigma_a2") {
            ofdm1.sigma_a2 = parse_num(line, key, val);
        } else if (key == "ofdm_oversampling") {
            ofdm1.oversampling = parse_int(line, key, val);
        } else if (key == "ofdm_nulled") {
            ofdm1.nulled = parse_int(line, key, val);
        } else if (key == "ofdm2_n") {
            ofdm2.n = parse_int(line, key, val); saw_ofdm2 = true;
        } else if (key == "ofdm2_bandwidth") {
            ofdm2.bandwidth = parse_num(line, key, val); saw_ofdm2 = true;
        } else if (key == "ofdm2_cp_fraction") {
            ofdm2.cp_fraction = parse_num(line, key, val); saw_ofdm2 = true;
        } else if (key == "ofdm2_beta") {
            ofdm2.beta = parse_num(line, key, val);
            check_beta(line, key, ofdm2.beta);
            saw_ofdm2 = true;
        } else if (key == "ofdm2_modulation") {
            if (val == "qpsk") ofdm2.mod = Modulation::qpsk;
            else if (val == "bpsk") ofdm2.mod = Modulation::bpsk;
            else fail(line, key, "expected qpsk or bpsk");
            saw_ofdm2 = true;
        } else if (key == "ofdm2_sigma_a2") {
            ofdm2.sigma_a2 = parse_num(line, key, val); saw_ofdm2 = true;
        } else if (key == "ofdm2_oversampling") {
            ofdm2.oversampling = parse_int(line, key, val); saw_ofdm2 = true;
        } else if (key == "ofdm2_nulled") {
            ofdm2.nulled = parse_int(line, key, val); saw_ofdm2 = true;
        } else {
            fail(line, key, "unknown key in [scenario]");
        }
    }

    try {
        scn.ofdm = ofdm1.build();
        if (scn.victim == SystemKind::ofdm && scn.interferer == SystemKind::ofdm) {
            scn.ofdm2 = saw_ofdm2 ? ofdm2.build() : ofdm1.build();
        }
        spec.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config validation: ") + e.what());
    }
    return spec;
}

std::string render_config(const SweepSpec& spec) {
    std::ostringstream os;
    const ScenarioConfig& s = spec.scenario;
    os << "[scenario]\n";
    os << "victim = " << (s.victim == SystemKind::nb ? "nb" : "ofdm") << "\n";
    os << "interferer = "
       << (!s.has_interferer ? "none" : (s.interferer == SystemKind::nb ? "nb" : "ofdm")) << "\n";
    os << "channel = " << (s.channel == ChannelKind::awgn ? "awgn" : "fading") << "\n";
    os << "sir_db = " << s.sir_db << "\n";
    os << "eb_no_db = " << s.eb_no_db << "\n";
    os << "f_n = " << s.f_n << "\n";
    os << "composite_rate = " << s.composite_rate << "\n";
    os << "nb_bandwidth = " << s.nb.bw_n << "\n";
    os << "nb_alpha = " << s.nb.alpha << "\n";
    os << "ofdm_n = " << s.ofdm.n_total << "\n";
    os << "ofdm_bandwidth = " << s.ofdm.bandwidth() << "\n";
    os << "ofdm_beta = " << s.ofdm.beta << "\n";
    os << "ofdm_nulled = " << s.ofdm.n_total - s.ofdm.n_active() << "\n";
    os << "\n[sweep]\n";
    os << "name = " << spec.name << "\n";
    os << "axis = " << axis_name(spec.axis) << "\n";
    os << "grid = ";
    for (std::size_t i = 0; i < spec.grid.size(); ++i) os << (i ? "," : "") << spec.grid[i];
    os << "\nseed = " << spec.seed << "\n";
    os << "min_errors = " << spec.stop.min_errors << "\n";
    os << "bit_budget = " << spec.stop.bit_budget << "\n";
    os << "target_ber = " << spec.target_ber << "\n";
    return os.str();
}

}  // namespace coexsim
